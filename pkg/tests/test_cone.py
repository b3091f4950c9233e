import random
from fractions import Fraction

import pytest

from conftest import CTX, kappa_star
from torusperiods.cone import certify_nonresonant, kappa_profile, lambda_admissible, mu_threshold
from torusperiods.lattice import BlowupClass, blowup_pairing, pairing

r = CTX.sqrt


class TestNonresonance:
    def test_kappa_star(self):
        res = certify_nonresonant(kappa_star())
        assert res.nonresonant and res.witness is None
        assert res.to_json() == {"nonresonant": True}

    def test_documented_resonant_example(self):
        k = (CTX.one(), CTX.one(), r(2), r(3), r(5), r(6))
        res = certify_nonresonant(k)
        assert not res.nonresonant
        assert pairing(k, res.witness) == 0
        assert any(res.witness)
        # the witness is unique up to sign here: only kappa_1 and kappa_2 are rational
        assert res.witness in ((0, 0, 0, 0, 1, 1), (0, 0, 0, 0, -1, -1))

    def test_rational_kappa_is_resonant(self):
        k = tuple(CTX.rational(x) for x in (1, 2, -3, 4, Fraction(1, 2), 7))
        res = certify_nonresonant(k)
        assert not res.nonresonant
        assert pairing(k, res.witness) == 0

    def test_no_small_relation_for_kappa_star(self):
        k = kappa_star()
        rng = random.Random(1)
        for _ in range(10 ** 4):
            a = tuple(rng.randint(-100, 100) for _ in range(6))
            if any(a):
                assert pairing(k, a).sign() != 0

    def test_witnesses_are_exact(self):
        rng = random.Random(2)
        for _ in range(30):
            # rank-deficient kappa: one coordinate a rational combination of others
            k = [r(2), r(3), r(5), r(7), CTX.one(), r(6)]
            i, j = rng.sample(range(6), 2)
            k[i] = k[j] * rng.randint(1, 4)
            res = certify_nonresonant(tuple(k))
            assert not res.nonresonant
            assert pairing(tuple(k), res.witness) == 0


class TestProfile:
    def test_kappa_squared(self, profile):
        assert profile.kappa_sq == 2 * (r(7) - 2 * r(3) + r(15))
        lo, hi = profile.kappa_sq.to_interval(40)
        assert Fraction(6109, 1000) < lo and hi < Fraction(6110, 1000)

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            kappa_profile((CTX.one(), 0, 0, 0, 0, CTX.rational(-1)))
        with pytest.raises(ValueError):
            kappa_profile((CTX.one(),) * 5)


class TestLambda:
    def test_examples(self):
        k = kappa_star()
        assert lambda_admissible(k, 2)
        assert not lambda_admissible(k, 3)
        assert not lambda_admissible(k, 0)
        assert not lambda_admissible(k, -1)

    def test_monotone(self):
        k = kappa_star()
        for q in (Fraction(1, 100), Fraction(1, 2), Fraction(3, 2), Fraction(247, 100)):
            assert lambda_admissible(k, q)
        assert not lambda_admissible(k, Fraction(248, 100))  # sqrt 6.109 = 2.4717...


class TestMu:
    def test_threshold_example(self):
        k = kappa_star()
        mu = mu_threshold(k, (1, 1, 0, 0, 0, 0), 2)
        assert mu == 2 - (r(7) - r(6)) * Fraction(1, 2)
        lo, hi = mu.to_interval(40)
        assert Fraction(19018, 10000) < lo and hi < Fraction(19020, 10000)

    def test_pairing_vanishes_at_threshold_and_is_negative_above(self):
        k = kappa_star()
        delta = (-12, -13, 0, 0, 0, 0)
        lam = CTX.rational(2)
        mu = mu_threshold(k, delta, lam)

        def bp(m):
            return blowup_pairing(BlowupClass(tuple(-d for d in delta), 2), BlowupClass(k, m - lam))

        assert bp(mu).is_zero()
        for t in (Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)):
            assert bp(mu + (lam - mu) * t).sign() < 0

    def test_pairing_equal_lambda(self):
        # a kappa with <kappa, v1> = lambda exactly
        k = (CTX.one(), 0, 0, 0, 0, CTX.rational(2))
        assert mu_threshold(k, (1, 0, 0, 0, 0, 0), 2) == CTX.one()
