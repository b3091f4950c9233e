import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CTX
from torusperiods.enumeration import (RationalRatioError, brute_force_delta_box, cf_small_combination,
                                      delta_class, enumerate_delta_in_ellipsoid, finiteness_radius,
                                      generator_pump, is_delta_member, lattice_points_in_ellipsoid,
                                      short_vectors)
from torusperiods.lattice import pairing
from torusperiods.period import pluecker, search_polarized_period

r = CTX.sqrt


def naive_box(profile, lam, box):
    """Independent oracle: plain loops and exact field comparisons."""
    lam = CTX.coerce(lam)
    out = set()
    for v in itertools.product(range(-box, box + 1), repeat=6):
        if not any(v) or v[0] * v[5] - v[1] * v[4] + v[2] * v[3] != 0 or math.gcd(*v) != 1:
            continue
        p = profile.pairing_with(v)
        if p.sign() > 0 and (lam - p).sign() >= 0:
            out.add(v)
    return out


@pytest.fixture(scope="module")
def random_points(profile):
    return [pluecker(search_polarized_period(profile, [], seed=s), repair=False) for s in range(6)]


class TestContinuedFractions:
    def test_examples(self):
        assert cf_small_combination(r(7), r(6), Fraction(1, 5)) == (1, 1)
        p1, p2 = cf_small_combination(r(7), r(6), Fraction(1, 10))
        assert (abs(p1), abs(p2)) == (12, 13)
        val = p1 * r(7) - p2 * r(6)
        assert 0 < val.sign()
        lo, hi = val.to_interval(40)
        assert Fraction(94, 1000) < lo and hi < Fraction(95, 1000)

    def test_rational_ratio(self):
        with pytest.raises(RationalRatioError):
            cf_small_combination(r(6) * 2, r(6), Fraction(1, 1000))

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([2, 3, 5, 6, 7, 10, 14]), st.sampled_from([3, 5, 7, 15, 21]),
           st.integers(1, 40))
    def test_bound_respected(self, m, n, k):
        if m == n:
            return
        a, b = r(m), r(n)
        bound = Fraction(1, k)
        p1, p2 = cf_small_combination(a, b, bound)
        v = p1 * a - p2 * b
        assert v.sign() > 0 and (bound - v).sign() > 0


class TestPump:
    def test_first_two(self, profile):
        ds = generator_pump(profile, 2, 2)
        assert ds[0].delta == (1, 1, 0, 0, 0, 0)
        assert ds[0].pairing_with_kappa == r(7) - r(6)
        assert ds[1].delta == (-12, -13, 0, 0, 0, 0)
        assert ds[1].pairing_with_kappa == 13 * r(6) - 12 * r(7)

    def test_empty(self, profile):
        assert generator_pump(profile, 2, 0) == []

    def test_fifty(self, profile):
        ds = generator_pump(profile, 2, 50)
        assert len({d.delta for d in ds}) == 50
        for d in ds:
            assert is_delta_member(d.delta, profile, 2)
            assert (d.d1, d.d2) == (1, 0)
            assert pairing(d.delta, d.delta) == 0
            lo, hi = d.pairing_interval
            assert lo <= hi and lo > 0
        assert all((a.pairing_with_kappa - b.pairing_with_kappa).sign() > 0 for a, b in zip(ds, ds[1:]))

    def test_requires_admissible_lambda(self, profile):
        with pytest.raises(ValueError):
            generator_pump(profile, 3, 1)


class TestDeltaClass:
    def test_rejections(self, profile):
        for bad in [(0,) * 6, (1, 0, 0, 0, 0, 1), (2, 2, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0)]:
            with pytest.raises(ValueError):
                delta_class(bad, profile, 2)

    def test_membership(self, profile):
        assert is_delta_member((1, 1, 0, 0, 0, 0), profile, 2)
        assert not is_delta_member((1, 1, 0, 0, 0, 0), profile, Fraction(1, 10))
        assert not is_delta_member((-1, -1, 0, 0, 0, 0), profile, 2)


class TestMajorant:
    def test_zero_slack_bound(self, profile, random_points):
        for pt in random_points[:3]:
            form = finiteness_radius(profile, pt.x1, pt.x2, 2, 0)
            assert form.bound == 8 / profile.kappa_sq
            lo, hi = form.bound.to_interval(30)
            assert Fraction(1309, 1000) < lo and hi < Fraction(1310, 1000)
            assert all(m.sign() > 0 for m in form.leading_minors())

    def test_zero_lambda(self, profile, random_points):
        pt = random_points[0]
        form = finiteness_radius(profile, pt.x1, pt.x2, 0, 0)
        assert form.bound.is_zero()
        assert enumerate_delta_in_ellipsoid(form, profile, 2) == []
        assert lattice_points_in_ellipsoid(form) == [(0,) * 6]

    def test_rejects_degenerate_plane(self, profile):
        with pytest.raises(ValueError):
            finiteness_radius(profile, profile.kappa, profile.kappa, 2)

    def test_majorant_dominates_on_isotropic(self, profile, random_points):
        pt = random_points[1]
        form = finiteness_radius(profile, pt.x1, pt.x2, 2, Fraction(1))
        rng = random.Random(9)
        for _ in range(200):
            v = tuple(rng.randint(-4, 4) for _ in range(6))
            # q(v) >= |<v, v>| for every v: q = P-part minus N-part, <,> = P-part plus N-part
            q = form.value(v)
            assert (q - abs(CTX.rational(pairing(v, v)))).sign() >= 0


class TestShortVectors:
    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(-3, 3), min_size=9, max_size=9), st.integers(1, 30))
    def test_against_box_scan(self, entries, bound):
        a = [entries[0:3], entries[3:6], entries[6:9]]
        gram = [[Fraction(sum(a[k][i] * a[k][j] for k in range(3))) + (i == j) for j in range(3)]
                for i in range(3)]
        got = set(short_vectors(gram, Fraction(bound)))
        want = set()
        # q(y) >= |y|^2 since gram - I is PSD, so the box of radius sqrt(bound) suffices
        rad = math.isqrt(bound)
        for y in itertools.product(range(-rad, rad + 1), repeat=3):
            if sum(y[i] * gram[i][j] * y[j] for i in range(3) for j in range(3)) <= bound:
                want.add(y)
        assert got == want


class TestBruteForce:
    def test_box_one(self, profile):
        got = {d.delta for d in brute_force_delta_box(profile, 2, 1)}
        assert (1, 1, 0, 0, 0, 0) in got
        assert (1, 0, 0, 0, 0, 0) not in got
        assert got == naive_box(profile, 2, 1)

    def test_box_two_matches_naive(self, profile):
        got = {d.delta for d in brute_force_delta_box(profile, 2, 2)}
        assert got == naive_box(profile, 2, 2)

    def test_trivial(self, profile):
        assert brute_force_delta_box(profile, 2, 0) == []
        assert brute_force_delta_box(profile, Fraction(1, 10 ** 6), 2) == []

    def test_parallel_is_identical(self, profile):
        a = [d.delta for d in brute_force_delta_box(profile, 2, 3)]
        b = [d.delta for d in brute_force_delta_box(profile, 2, 3, jobs=2)]
        assert a == b and a == sorted(a)


class TestEllipsoid:
    @pytest.mark.parametrize("slack", [0, Fraction(1, 2), 1])
    def test_matches_box_oracle(self, profile, random_points, slack):
        box = 4
        oracle = {d.delta for d in brute_force_delta_box(profile, 2, box)}
        for pt in random_points:
            form = finiteness_radius(profile, pt.x1, pt.x2, 2, slack)
            ell = [d.delta for d in enumerate_delta_in_ellipsoid(form, profile, 2)]
            assert ell == sorted(ell)
            assert all(form.contains(d) for d in ell)
            assert {d for d in ell if max(map(abs, d)) <= box} == {d for d in oracle if form.contains(d)}

    def test_contains_pumped_delta_on_its_hyperplane(self, profile):
        for dc in generator_pump(profile, 2, 3):
            pt = pluecker(search_polarized_period(profile, [dc.delta]), repair=False)
            assert pt.pairing(dc.delta).is_zero()
            form = finiteness_radius(profile, pt.x1, pt.x2, 2, 0)
            assert form.contains(dc.delta)
            assert dc.delta in {d.delta for d in enumerate_delta_in_ellipsoid(form, profile, 2)}

    def test_every_member_satisfies_the_pairing_box(self, profile, random_points):
        pt = random_points[2]
        slack = 1
        form = finiteness_radius(profile, pt.x1, pt.x2, 2, slack)
        for d in enumerate_delta_in_ellipsoid(form, profile, 2):
            assert is_delta_member(d.delta, profile, 2)
