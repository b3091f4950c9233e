"""The real class kappa: non-resonance, Kahler-cone admissibility of lambda, mu threshold."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .exact_scalar import FieldContext, FieldElement
from .lattice import BlowupClass, blowup_pairing, gram_dual, pairing

__all__ = [
    "KappaProfile",
    "Resonance",
    "certify_nonresonant",
    "kappa_profile",
    "lambda_admissible",
    "mu_threshold",
]


@dataclass(frozen=True)
class Resonance:
    """Outcome of the non-resonance test.

    ``witness`` is a primitive integral a != 0 with <kappa, a> = 0, present
    exactly when ``nonresonant`` is False.
    """

    nonresonant: bool
    witness: tuple[int, ...] | None = None
    rank: int = 6

    def to_json(self) -> dict:
        if self.nonresonant:
            return {"nonresonant": True}
        return {"nonresonant": False, "witness": list(self.witness)}


def certify_nonresonant(kappa: Sequence[FieldElement]) -> Resonance:
    """Decide whether <kappa, a> != 0 for every nonzero integral a.

    <kappa, a> = sum_i a_i (G kappa)_i, so an integral relation is a rational
    linear relation among the coefficient vectors of the six entries of
    G kappa.  Full rank means none exists.
    """
    ctx = _context_of(kappa)
    dual = [ctx.coerce(x) for x in gram_dual(kappa)]
    rows = [x.coefficient_vector() for x in dual]
    r = _linalg.rank(rows)
    if r == 6:
        return Resonance(True, None, 6)
    # a^T rows = 0  <=>  rows^T a = 0
    cols = _linalg.transpose(rows)
    kernel = _linalg.nullspace(cols, 6, Fraction(0), Fraction(1))
    witness = tuple(_linalg.clear_denominators(kernel[0]))
    assert pairing(kappa, witness) == 0
    return Resonance(False, witness, r)


@dataclass(frozen=True)
class KappaProfile:
    kappa: tuple[FieldElement, ...]
    resonance: Resonance
    kappa_sq: FieldElement

    @property
    def ctx(self) -> FieldContext:
        return self.kappa_sq.ctx

    @property
    def nonresonant(self) -> bool:
        return self.resonance.nonresonant

    def pairing_with(self, x: Sequence) -> FieldElement:
        return self.ctx.coerce(pairing(self.kappa, x))


def kappa_profile(kappa: Sequence, ctx: FieldContext | None = None) -> KappaProfile:
    if len(kappa) != 6:
        raise ValueError(f"kappa needs 6 coordinates, got {len(kappa)}")
    ctx = ctx or _context_of(kappa)
    k = tuple(ctx.coerce(x) for x in kappa)
    ksq = ctx.coerce(pairing(k, k))
    if ksq.sign() <= 0:
        raise ValueError(f"<kappa, kappa> = {ksq} is not positive")
    return KappaProfile(k, certify_nonresonant(k), ksq)


def lambda_admissible(kappa: Sequence, lam) -> bool:
    """0 < lambda < sqrt(<kappa, kappa>), decided without square roots."""
    ctx = _context_of(kappa)
    lam = ctx.coerce(lam)
    if lam.sign() <= 0:
        return False
    return (ctx.coerce(pairing(kappa, kappa)) - lam * lam).sign() > 0


def mu_threshold(kappa: Sequence, delta: Sequence[int], lam) -> FieldElement:
    """Smallest mu with <2e - delta, kappa - (lambda - mu) e> <= 0.

    The pairing equals 2(lambda - mu) - <kappa, delta>, so the threshold is
    lambda - <kappa, delta>/2; at it the pairing vanishes.
    """
    ctx = _context_of(kappa)
    lam = ctx.coerce(lam)
    mu = lam - ctx.coerce(pairing(kappa, delta)) * Fraction(1, 2)
    check = blowup_pairing(BlowupClass(tuple(-d for d in delta), 2),
                           BlowupClass(tuple(kappa), mu - lam))
    assert ctx.coerce(check).is_zero()
    return mu


def _context_of(values: Sequence) -> FieldContext:
    for x in values:
        if isinstance(x, FieldElement):
            return x.ctx
    return FieldContext([])
