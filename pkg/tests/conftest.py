import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from torusperiods.cone import kappa_profile
from torusperiods.exact_scalar import ComplexFieldElement, FieldContext

RADICANDS = (2, 3, 5, 7)
CTX = FieldContext(RADICANDS)


def kappa_star(ctx=CTX):
    return (ctx.one(), ctx.sqrt(2), ctx.sqrt(3), ctx.sqrt(5), ctx.sqrt(6), ctx.sqrt(7))


@pytest.fixture(scope="session")
def ctx():
    return CTX


@pytest.fixture(scope="session")
def profile():
    return kappa_profile(kappa_star(), CTX)


def random_element(rng: random.Random, ctx=CTX, terms=3, size=9):
    coeffs = {}
    for m in rng.sample(ctx.basis, terms):
        coeffs[m] = Fraction(rng.randint(-size, size), rng.randint(1, 4))
    return ctx.element(coeffs)


def random_complex(rng: random.Random, ctx=CTX, terms=2):
    return ComplexFieldElement(random_element(rng, ctx, terms), random_element(rng, ctx, terms))


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def field_elements(draw, ctx=CTX):
    coeffs = draw(st.dictionaries(st.sampled_from(ctx.basis), rationals, max_size=5))
    return ctx.element(coeffs)


lattice_vectors = st.lists(st.integers(-50, 50), min_size=6, max_size=6).map(tuple)


def random_disc(profile, rng: random.Random, deltas, rows):
    """A pencil disc whose boundary passes at a random distance from the root for a random delta.

    Returns (disc, delta, sample count) with the root safely off the circle.
    """
    from torusperiods.monodromy import DiscFamily, RootOnBoundary, adequate_samples, crossing_parity
    from torusperiods.period import complex_pairing, polarized_solution_space, wedge
    ctx = profile.ctx
    while True:
        rho = rows[rng.randrange(len(rows))]
        r, basis = polarized_solution_space(profile, rho)
        s, sp = basis[0], basis[1]
        d = rng.choice(deltas)
        a = complex_pairing(d, wedge(r, s))
        b = complex_pairing(d, wedge(r, sp))
        if b.is_zero():
            continue
        root = -(a / b)
        rc = complex(float(root.re), float(root.im))
        scale = abs(rc) + 1e-3
        center = ComplexFieldElement.from_parts(
            ctx, Fraction(rc.real + rng.uniform(-1, 1) * scale).limit_denominator(10 ** 6),
            Fraction(rc.imag + rng.uniform(-1, 1) * scale).limit_denominator(10 ** 6))
        radius = Fraction(scale * rng.uniform(0.2, 2)).limit_denominator(10 ** 6)
        disc = DiscFamily(tuple(r), tuple(s), tuple(sp), center, radius)
        try:
            crossing_parity(disc, d)
            n = adequate_samples(disc, d)
        except RootOnBoundary:
            continue
        return disc, d, n
