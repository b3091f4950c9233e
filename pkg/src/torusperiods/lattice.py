"""The even lattice E = Lambda^2(L*) of signature (3, 3) and its blowup extension.

Coordinates are taken in the wedge basis

    v1 = u1^u2, v2 = u1^u3, v3 = u1^u4, v4 = u2^u3, v5 = u2^u4, v6 = u3^u4

of an admissible basis u1..u4 (u1^u2^u3^u4 = +1).  Integral classes are
plain length-6 tuples of ints; real classes are length-6 tuples of field
elements; complex classes (period points) hold ComplexFieldElements.  The
pairing below is written out so that it works for any mix of those.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg

__all__ = [
    "GRAM",
    "WEDGE_PAIRS",
    "BlowupClass",
    "FrobeniusForm",
    "alt_form_of",
    "blowup_pairing",
    "delta_of_alt_form",
    "frobenius_normal_form",
    "gram_dual",
    "is_indivisible",
    "kernel_sublattice",
    "pairing",
    "signature",
]

WEDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

GRAM = (
    (0, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, -1, 0),
    (0, 0, 0, 1, 0, 0),
    (0, 0, 1, 0, 0, 0),
    (0, -1, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0),
)


def pairing(x: Sequence, y: Sequence):
    """Cup-product pairing x^T G y."""
    return (x[0] * y[5] + x[5] * y[0]
            - x[1] * y[4] - x[4] * y[1]
            + x[2] * y[3] + x[3] * y[2])


def gram_dual(x: Sequence) -> tuple:
    """G x, so that pairing(x, y) = sum_i (G x)_i y_i."""
    return (x[5], -x[4], x[3], x[2], -x[1], x[0])


def signature(vectors: Sequence[Sequence[int]] | None = None) -> tuple[int, int]:
    """Signature of the pairing on E, or on the span of the given vectors."""
    if vectors is None:
        gram = GRAM
    else:
        gram = [[pairing(a, b) for b in vectors] for a in vectors]
    return _linalg.symmetric_signature(gram)


def is_indivisible(delta: Sequence[int]) -> bool:
    if not any(delta):
        raise ValueError("the zero class has no divisibility")
    return math.gcd(*delta) == 1


def alt_form_of(delta: Sequence) -> list[list]:
    """The 4x4 alternating matrix M with M[i][j] = delta(e_i, e_j)."""
    zero = delta[0] * 0
    m = [[zero] * 4 for _ in range(4)]
    for k, (i, j) in enumerate(WEDGE_PAIRS):
        m[i][j] = delta[k]
        m[j][i] = -delta[k]
    return m


def delta_of_alt_form(m: Sequence[Sequence]) -> tuple:
    for i in range(4):
        if m[i][i]:
            raise ValueError("alternating form has nonzero diagonal")
        for j in range(4):
            if m[i][j] != -m[j][i]:
                raise ValueError("matrix is not antisymmetric")
    return tuple(m[i][j] for i, j in WEDGE_PAIRS)


@dataclass(frozen=True)
class FrobeniusForm:
    """U^T M U = d1 (u1^v1) + d2 (u2^v2) with basis order (u1, v1, u2, v2).

    ``basis`` holds the columns of U.  det U = +1, d1 >= 0 and d1 | d2; the
    sign of the Pfaffian is carried by d2 so that <delta, delta> = 2 d1 d2.
    """

    basis: tuple[tuple[int, ...], ...]
    d1: int
    d2: int

    @property
    def matrix(self) -> list[list[int]]:
        return [[self.basis[c][r] for c in range(4)] for r in range(4)]

    def canonical(self) -> list[list[int]]:
        d1, d2 = self.d1, self.d2
        return [[0, d1, 0, 0], [-d1, 0, 0, 0], [0, 0, 0, d2], [0, 0, -d2, 0]]


def _form(m, x, y):
    return sum(x[i] * m[i][j] * y[j] for i in range(4) for j in range(4) if m[i][j])


def frobenius_normal_form(m: Sequence[Sequence[int]]) -> FrobeniusForm:
    """Symplectic normal form of an integral alternating 4x4 matrix.

    Pivot-driven reduction on basis vectors: the pivot is the smallest
    nonzero |entry| (ties to the lowest (i, j)), moved to slot (0, 1) by
    determinant-one moves, then used to clear row/column 0 and 1 by
    Euclidean steps.  A nonzero remainder is always smaller than the pivot,
    which bounds the loop.
    """
    delta_of_alt_form(m)
    basis = [[int(i == j) for j in range(4)] for i in range(4)]
    while True:
        a = [[_form(m, basis[i], basis[j]) for j in range(4)] for i in range(4)]
        entries = [(abs(a[i][j]), i, j) for i in range(4) for j in range(i + 1, 4) if a[i][j]]
        if not entries:
            return FrobeniusForm(tuple(tuple(b) for b in basis), 0, 0)
        _, i, j = min(entries)
        _move_pivot(basis, i, j)
        a = [[_form(m, basis[i], basis[j]) for j in range(4)] for i in range(4)]
        p = a[0][1]
        clean = True
        for k in (2, 3):
            q0 = a[0][k] // p
            q1 = -(a[1][k] // p)
            # b_k -= q0 b_1 changes a[0][k] by -q0 p; b_k -= q1 b_0 changes a[1][k] by +q1 p
            if q0 or q1:
                basis[k] = [x - q0 * y - q1 * z for x, y, z in zip(basis[k], basis[1], basis[0])]
            if a[0][k] - q0 * p or a[1][k] + q1 * p:
                clean = False
        if not clean:
            continue
        a23 = _form(m, basis[2], basis[3])
        if a23 % p:
            # b_0 += b_2 puts a23 into row 0, where the next pass reduces it mod p
            basis[0] = [x + y for x, y in zip(basis[0], basis[2])]
            continue
        if p < 0:
            basis[0] = [-x for x in basis[0]]
            basis[2] = [-x for x in basis[2]]
            a23 = -a23
        return FrobeniusForm(tuple(tuple(b) for b in basis), abs(p), a23)


def _move_pivot(basis, i, j):
    """Bring basis vectors i < j to slots 0, 1 using only det +1 moves."""
    def rot(a, b):  # (b_a, b_b) <- (b_b, -b_a)
        basis[a], basis[b] = basis[b], [-x for x in basis[a]]

    if i != 0:
        rot(0, i)
    if j != 1:
        rot(1, j)


def kernel_sublattice(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Saturated integral basis of ker(M), in row Hermite normal form."""
    delta_of_alt_form(m)
    ker = _linalg.int_kernel(m, 4)
    return _linalg.hermite_rows(ker)


@dataclass(frozen=True)
class BlowupClass:
    """A class torus + e_coeff * e in E (+) <e>, with e.e = -1 and e orthogonal to E."""

    torus: tuple
    e: object = 0

    def to_json(self) -> dict:
        from .jsonio import scalar_to_json, vector_to_json
        return {"torus": vector_to_json(self.torus), "e": scalar_to_json(self.e)}


def blowup_pairing(x: BlowupClass, y: BlowupClass):
    return pairing(x.torus, y.torus) - x.e * y.e


def exceptional_class() -> BlowupClass:
    return BlowupClass((0,) * 6, 1)


def rational_gram(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(pairing(a, b)) for b in vectors] for a in vectors]
