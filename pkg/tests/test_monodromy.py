import cmath
import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import CTX, random_disc
from torusperiods.enumeration import brute_force_delta_box, generator_pump
from torusperiods.exact_scalar import ComplexFieldElement
from torusperiods.monodromy import (DiscFamily, DiscInHyperplane, LoopTouchesHyperplane, ParityCertificate,
                                    RootOnBoundary, adequate_samples, boundary_samples, crossing_parity,
                                    generator_loop, kronecker_matrix, pairing_poly, pl_loop_parity,
                                    winding_parity)
from torusperiods.period import PeriodPoint, rho_candidates, search_polarized_period

ZERO = ComplexFieldElement(CTX.zero())


def cz(re, im=0):
    return ComplexFieldElement.from_parts(CTX, Fraction(re), Fraction(im))


def v1_loop(values):
    """Period-point records whose pairing with v1 = (1,0,0,0,0,0) is the given value."""
    return [PeriodPoint((ZERO,) * 5 + (v,)) for v in values]


@pytest.fixture(scope="module")
def pumped(profile):
    return generator_pump(profile, 2, 4)


@pytest.fixture(scope="module")
def loop0(profile, pumped):
    return generator_loop(pumped[0], profile, 2)


@pytest.fixture(scope="module")
def simple_disc(profile):
    pm = search_polarized_period(profile, [])
    r, s = pm.rows
    from torusperiods.period import polarized_solution_space
    _, basis = polarized_solution_space(profile, r)
    return DiscFamily(r, s, tuple(basis[-1]), cz(0), Fraction(1))


class TestDiscFamily:
    def test_validation(self, simple_disc):
        with pytest.raises(ValueError):
            simple_disc.with_radius(0)
        with pytest.raises(ValueError):
            DiscFamily(simple_disc.rho, simple_disc.sigma, simple_disc.sigma_p,
                       ComplexFieldElement(CTX.sqrt(2), CTX.zero()), Fraction(1))

    def test_points_are_polarized_and_on_quadric(self, profile, simple_disc):
        assert simple_disc.is_polarized(profile.kappa)
        for z in (cz(0), cz(1, 2), cz(Fraction(-1, 3), Fraction(5, 7))):
            pt = simple_disc.point(z)
            assert pt.quadric().is_zero()
            assert pt.pairing(profile.kappa).is_zero()

    def test_pairing_poly_two_point_oracle(self, simple_disc):
        rng = random.Random(0)
        for _ in range(20):
            d = tuple(rng.randint(-5, 5) for _ in range(6))
            a, b = pairing_poly(simple_disc, d)
            assert simple_disc.point(cz(0)).pairing(d) == a
            assert simple_disc.point(cz(1)).pairing(d) == a + b

    def test_json_round_trip(self, simple_disc):
        back = DiscFamily.from_json(json.loads(json.dumps(simple_disc.to_json())))
        assert back == simple_disc


class TestCrossingParity:
    def test_disc_inside_hyperplane(self, simple_disc):
        with pytest.raises(DiscInHyperplane):
            crossing_parity(simple_disc, (0,) * 6)

    def test_root_location(self, simple_disc):
        d = (1, 1, 0, 0, 0, 0)
        a, b = pairing_poly(simple_disc, d)
        root = -(a / b)
        rc = complex(float(root.re), float(root.im))
        center = cz(Fraction(rc.real).limit_denominator(10 ** 9), Fraction(rc.imag).limit_denominator(10 ** 9))
        assert crossing_parity(DiscFamily(simple_disc.rho, simple_disc.sigma, simple_disc.sigma_p,
                                          center, Fraction(1, 10 ** 3)), d) == 1
        far = cz(Fraction(rc.real).limit_denominator(100) + abs(rc) + 5)
        assert crossing_parity(DiscFamily(simple_disc.rho, simple_disc.sigma, simple_disc.sigma_p,
                                          far, Fraction(1, 2)), d) == 0

    def test_root_on_boundary(self, simple_disc):
        # with sigma' = sigma the pairing is A (1 + z), whose root -1 is rational
        d = (1, 1, 0, 0, 0, 0)
        disc = DiscFamily(simple_disc.rho, simple_disc.sigma, simple_disc.sigma, cz(0), Fraction(1))
        with pytest.raises(RootOnBoundary):
            crossing_parity(disc, d)
        assert crossing_parity(disc.with_radius(Fraction(1, 2)), d) == 0
        assert crossing_parity(disc.with_radius(2), d) == 1


class TestGeneratorLoop:
    def test_first_generator(self, profile, pumped, loop0):
        disc, cert = loop0
        d0 = pumped[0].delta
        assert cert.delta0 == d0
        assert cert.parities()[d0] == 1
        assert all(p == 0 for d, p in cert.parities().items() if d != d0)
        assert cert.verify()
        assert disc.is_polarized(profile.kappa)
        # the center lies on H_delta0
        assert disc.point(disc.center).pairing(d0).is_zero()

    def test_box_oracle(self, profile, pumped, loop0):
        disc, _ = loop0
        for dc in brute_force_delta_box(profile, 2, 3):
            expected = 1 if dc.delta == pumped[0].delta else 0
            assert crossing_parity(disc, dc.delta) == expected

    def test_shrinking_keeps_parities(self, loop0):
        disc, cert = loop0
        for k in (2, 4, 1024):
            small = disc.with_radius(disc.radius / k)
            assert all(crossing_parity(small, d) == p for d, p in cert.parities().items())

    def test_boundary_loop_parity(self, loop0, pumped):
        disc, _ = loop0
        d0 = pumped[0].delta
        n = adequate_samples(disc, d0)
        assert pl_loop_parity(boundary_samples(disc, n), d0) == 1
        assert pl_loop_parity(boundary_samples(disc, 64), pumped[1].delta) == 0

    def test_certificate_round_trip(self, loop0):
        _, cert = loop0
        obj = json.loads(json.dumps(cert.to_json()))
        back = ParityCertificate.from_json(obj)
        assert back.verify()
        assert back.parities() == cert.parities()

    def test_tampered_certificate_fails(self, loop0):
        _, cert = loop0
        obj = cert.to_json()
        flipped = json.loads(json.dumps(obj))
        flipped["entries"][0]["parity"] ^= 1
        assert not ParityCertificate.from_json(flipped).verify()
        grown = json.loads(json.dumps(obj))
        grown["disc"]["radius"] = str(Fraction(obj["disc"]["radius"]) * 10 ** 6)
        assert not ParityCertificate.from_json(grown).verify()

    def test_lambda_below_pairing(self, profile, pumped):
        with pytest.raises(ValueError):
            generator_loop(pumped[0], profile, Fraction(1, 10))


class TestKronecker:
    def test_single(self, profile, pumped):
        m, certs = kronecker_matrix(pumped[:1], profile, 2)
        assert m == [[1]]
        assert certs[0].verify()

    def test_three(self, profile, pumped):
        m, certs = kronecker_matrix(pumped[:3], profile, 2)
        assert m == [[int(i == j) for j in range(3)] for i in range(3)]

    def test_duplicates(self, profile, pumped):
        with pytest.raises(ValueError):
            kronecker_matrix([pumped[0], pumped[0]], profile, 2)


class TestWinding:
    def test_square(self):
        assert winding_parity([cz(0, 1), cz(-1), cz(0, -1), cz(1)]) == 1
        assert pl_loop_parity(v1_loop([cz(0, 1), cz(-1), cz(0, -1), cz(1)]), (1, 0, 0, 0, 0, 0)) == 1

    def test_right_half_plane(self):
        assert winding_parity([cz(1, 1), cz(2), cz(1, -1), cz(3, 5)]) == 0

    def test_twice_around(self):
        pts = [cz(1), cz(0, 1), cz(-1), cz(0, -1)] * 2
        assert winding_parity(pts) == 0

    def test_diagonal_jumps(self):
        # edges crossing two quadrants at once, passing on either side of 0
        assert winding_parity([cz(1, 1), cz(-2, -1), cz(1, -2)]) == 1
        assert winding_parity([cz(1, 1), cz(-1, -2), cz(2, -1)]) == 0
        assert winding_parity([cz(1, 1), cz(-1, Fraction(1, 2)), cz(-1, -1), cz(1, -1)]) == 1

    def test_touching(self):
        with pytest.raises(LoopTouchesHyperplane):
            winding_parity([cz(1), cz(-1), cz(0, 1)])
        with pytest.raises(LoopTouchesHyperplane):
            winding_parity([cz(0), cz(1), cz(0, 1)])

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), min_size=3, max_size=12))
    def test_matches_float_winding(self, pts):
        vals = [complex(x, y) for x, y in pts]
        # skip polygons passing near 0 so the float oracle is reliable
        for a, b in zip(vals, vals[1:] + vals[:1]):
            seg = b - a
            t = 0 if seg == 0 else max(0.0, min(1.0, -(a.conjugate() * seg).real / abs(seg) ** 2))
            assume(abs(a + t * seg) > 1e-6)
        turn = sum(cmath.phase(b / a) for a, b in zip(vals, vals[1:] + vals[:1]))
        wind = round(turn / (2 * math.pi))
        assert winding_parity([cz(x, y) for x, y in pts]) == wind % 2


class TestRandomDiscs:
    def test_agreement(self, profile):
        deltas = [d.delta for d in brute_force_delta_box(profile, 2, 1)]
        rows = list(rho_candidates(CTX, 50, seed=3))
        rng = random.Random(7)
        for _ in range(20):
            disc, d, n = random_disc(profile, rng, deltas, rows)
            assert crossing_parity(disc, d) == pl_loop_parity(boundary_samples(disc, n), d)
