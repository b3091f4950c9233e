"""Period matrices, Pluecker period points and the polarized period domain.

A period matrix is a 2x4 complex matrix whose columns are the images
r(e_1), ..., r(e_4) of a lattice basis in C^2.  Its period point is the
class of dz1 ^ dz2 in E (x) C, i.e. the six 2x2 column minors in the wedge
basis order.  Two identities tie the pieces together and are used as
checks throughout:

    <phi, phi>    = 0                      (Pluecker relation)
    <phi, phibar> = 4 det Re(Pi)           (Re(Pi) rows: Re r1, Im r1, Re r2, Im r2)

so the period-domain positivity <phi, phibar> > 0 is exactly "the lattice
basis is positively oriented in the complex orientation of C^2".
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .cone import KappaProfile
from .enumeration import (IsotropicFamily, IsotropicPlane, _int_range, _solve_linear_2, delta_candidates,
                          family_pairing_range, finiteness_radius, short_vectors)
from .exact_scalar import ComplexFieldElement, FieldContext, FieldElement
from .jsonio import complex_from_json, scalar_to_json
from .lattice import WEDGE_PAIRS, alt_form_of, gram_dual, pairing

__all__ = [
    "MembershipCertificate",
    "PeriodMatrix",
    "PeriodPoint",
    "PositivityError",
    "certify_in_D_lambda",
    "complex_pairing",
    "family_zeros",
    "genericity_up_to_radius",
    "hermitian",
    "kernel_rows",
    "integral_orthogonal_classes",
    "is_kahler_component",
    "on_hyperplane",
    "plane_zeros",
    "pluecker",
    "polarized_period",
    "polarized_point",
    "polarized_solution_space",
    "random_polarized_period",
    "rho_candidates",
    "search_polarized_period",
    "wedge",
]


class PositivityError(ValueError):
    """No candidate in the admissible solution space lands in the period domain."""


def _c(ctx: FieldContext, x) -> ComplexFieldElement:
    if isinstance(x, ComplexFieldElement):
        return x
    return ComplexFieldElement(ctx.coerce(x), ctx.zero())


@dataclass(frozen=True)
class PeriodMatrix:
    rows: tuple[tuple[ComplexFieldElement, ...], tuple[ComplexFieldElement, ...]]

    @classmethod
    def from_rows(cls, ctx: FieldContext, rho: Sequence, sigma: Sequence) -> "PeriodMatrix":
        return cls((tuple(_c(ctx, x) for x in rho), tuple(_c(ctx, x) for x in sigma)))

    @property
    def ctx(self) -> FieldContext:
        return self.rows[0][0].ctx

    def realification(self) -> list[list[FieldElement]]:
        r1, r2 = self.rows
        return [[z.re for z in r1], [z.im for z in r1], [z.re for z in r2], [z.im for z in r2]]

    def real_det(self) -> FieldElement:
        return _linalg.det(self.realification())

    def lattice_ok(self) -> bool:
        """C^2 / r(L) is compact iff the realified matrix is invertible."""
        return not self.real_det().is_zero()

    def conjugate(self) -> "PeriodMatrix":
        return PeriodMatrix(tuple(tuple(z.conjugate() for z in r) for r in self.rows))

    def kahler_class(self) -> tuple[FieldElement, ...]:
        """Class of the flat form (i/2)(dz1 ^ dz1bar + dz2 ^ dz2bar) on the lattice."""
        out = []
        for i, j in WEDGE_PAIRS:
            acc = self.ctx.zero()
            for r in self.rows:
                acc = acc + (r[i].conjugate() * r[j]).im
            out.append(acc)
        return tuple(out)

    def to_json(self) -> dict:
        return {"radicands": list(self.ctx.radicands),
                "rows": [[scalar_to_json(z) for z in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj, ctx: FieldContext | None = None) -> "PeriodMatrix":
        ctx = ctx or FieldContext(obj["radicands"])
        r1, r2 = obj["rows"]
        return cls((tuple(complex_from_json(x, ctx) for x in r1),
                    tuple(complex_from_json(x, ctx) for x in r2)))


def wedge(rho: Sequence[ComplexFieldElement], sigma: Sequence[ComplexFieldElement]) -> tuple:
    return tuple(rho[i] * sigma[j] - rho[j] * sigma[i] for i, j in WEDGE_PAIRS)


def complex_pairing(x: Sequence, phi: Sequence[ComplexFieldElement]) -> ComplexFieldElement:
    """<x, phi> for integral, real or complex x."""
    return ComplexFieldElement.from_parts(phi[0].ctx) + pairing(x, phi)


@dataclass(frozen=True)
class PeriodPoint:
    phi: tuple[ComplexFieldElement, ...]
    source: PeriodMatrix | None = field(default=None, compare=False)
    repaired: bool = field(default=False, compare=False)

    @property
    def ctx(self) -> FieldContext:
        return self.phi[0].ctx

    @property
    def x1(self) -> tuple[FieldElement, ...]:
        return tuple(z.re for z in self.phi)

    @property
    def x2(self) -> tuple[FieldElement, ...]:
        return tuple(z.im for z in self.phi)

    def quadric(self) -> ComplexFieldElement:
        return pairing(self.phi, self.phi)

    def hermitian_norm(self) -> FieldElement:
        """<phi, phibar> (real)."""
        x1, x2 = self.x1, self.x2
        return self.ctx.coerce(pairing(x1, x1) + pairing(x2, x2))

    def pairing(self, x: Sequence) -> ComplexFieldElement:
        return complex_pairing(x, self.phi)

    def in_period_domain(self) -> bool:
        return self.quadric().is_zero() and self.hermitian_norm().sign() > 0

    def to_json(self) -> dict:
        out = {"radicands": list(self.ctx.radicands),
               "phi": [scalar_to_json(z) for z in self.phi]}
        if self.source is not None:
            out["period_matrix"] = self.source.to_json()["rows"]
        if self.repaired:
            out["orientation_repaired"] = True
        return out

    @classmethod
    def from_json(cls, obj, ctx: FieldContext | None = None) -> "PeriodPoint":
        ctx = ctx or FieldContext(obj["radicands"])
        src = None
        if "period_matrix" in obj:
            src = PeriodMatrix.from_json({"rows": obj["period_matrix"]}, ctx)
        if "phi" in obj:
            phi = tuple(complex_from_json(x, ctx) for x in obj["phi"])
        elif src is not None:
            phi = wedge(*src.rows)
        else:
            raise ValueError("period point record needs 'phi' or 'period_matrix'")
        return cls(phi, src)


def pluecker(pm: PeriodMatrix, repair: bool = True) -> PeriodPoint:
    """Period point of a period matrix.

    If the basis is negatively oriented (<phi, phibar> < 0) and ``repair`` is
    set, the second row is conjugated, i.e. the torus with coordinates
    (z1, conj z2) is used instead, and the point is flagged as repaired.
    """
    phi = wedge(*pm.rows)
    if all(z.is_zero() for z in phi):
        raise ValueError("period matrix has rank < 2: all minors vanish")
    pt = PeriodPoint(phi, pm)
    assert pt.quadric().is_zero()
    h = pt.hermitian_norm()
    if h.sign() < 0 and repair:
        fixed = PeriodMatrix((pm.rows[0], tuple(z.conjugate() for z in pm.rows[1])))
        return replace(pluecker(fixed, repair=False), repaired=True)
    return pt


def on_hyperplane(phi: PeriodPoint, delta: Sequence[int]) -> bool:
    return phi.pairing(delta).is_zero()


def polarization_row(rho: Sequence[ComplexFieldElement], y: Sequence) -> list[ComplexFieldElement]:
    """Coefficients c with <y, rho ^ sigma> = sum_j c_j sigma_j."""
    a = alt_form_of(tuple(gram_dual(y)))
    ctx = rho[0].ctx
    return [sum((rho[i] * a[i][j] for i in range(4) if a[i][j]), start=_c(ctx, 0)) for j in range(4)]


def polarized_solution_space(profile: KappaProfile, rho: Sequence, constraints: Sequence = ()):
    """Vectors sigma, independent modulo rho, with <kappa, rho^sigma> = <delta, rho^sigma> = 0."""
    ctx = profile.ctx
    rho = tuple(_c(ctx, x) for x in rho)
    if all(z.is_zero() for z in rho):
        raise ValueError("first row is zero")
    rows = [polarization_row(rho, profile.kappa)] + [polarization_row(rho, d) for d in constraints]
    zero, one = _c(ctx, 0), _c(ctx, 1)
    basis = _linalg.nullspace(rows, 4, zero, one)
    kept: list[list] = []
    for v in basis:
        if _linalg.rank([list(rho)] + kept + [v]) == len(kept) + 2:
            kept.append(v)
    return rho, kept


def is_kahler_component(pm: PeriodMatrix, kappa: Sequence) -> bool:
    """kappa lies in the Kahler cone of the torus (same cone as the flat Kahler class)."""
    return pairing(kappa, pm.kahler_class()).sign() > 0


def hermitian(phi: Sequence[ComplexFieldElement], psi: Sequence[ComplexFieldElement]) -> ComplexFieldElement:
    """<phi, psibar>, linear in phi and antilinear in psi."""
    return complex_pairing(phi, [z.conjugate() for z in psi])


def _positive_vector(rho, vectors):
    """Some sigma in the span with <rho^sigma, conj(rho^sigma)> > 0, or None.

    Hermitian Gauss elimination: a positive diagonal entry is returned at
    once, a negative one is split off, and a hyperbolic pair v_i + s v_j
    with all diagonal entries zero gives 2|H_ij|^2 > 0.
    """
    ctx = rho[0].ctx
    vecs = [list(v) for v in vectors]

    def h(u, w):
        return hermitian(wedge(rho, u), wedge(rho, w))

    while vecs:
        diag = [h(v, v).re for v in vecs]
        for v, d in zip(vecs, diag):
            if d.sign() > 0:
                return v
        piv = next((i for i, d in enumerate(diag) if not d.is_zero()), None)
        if piv is None:
            for i, j in itertools.combinations(range(len(vecs)), 2):
                s = h(vecs[i], vecs[j])
                if not s.is_zero():
                    return [a + b * s for a, b in zip(vecs[i], vecs[j])]
            return None
        p = vecs.pop(piv)
        hp = ComplexFieldElement(diag[piv], ctx.zero())
        vecs = [[a - b * (h(v, p) / hp) for a, b in zip(v, p)] for v in vecs]
    return None


def polarized_period(profile: KappaProfile, rho: Sequence, constraints: Sequence = ()) -> PeriodMatrix:
    """A period matrix with first row rho whose point is polarized and meets every H_delta given.

    The second row is chosen exactly inside the solution space of the
    linear conditions so that <phi, phibar> > 0; the matrix is then
    conjugated if needed so that kappa lies in the Kahler cone.
    """
    rho, basis = polarized_solution_space(profile, rho, constraints)
    if not basis:
        raise ValueError("solution space is trivial: too many constraints for this first row")
    sigma = _positive_vector(rho, basis)
    if sigma is None:
        raise PositivityError("<phi, phibar> <= 0 on the whole solution space for this first row")
    pm = PeriodMatrix((rho, tuple(sigma)))
    if not is_kahler_component(pm, profile.kappa):
        pm = pm.conjugate()
    assert pm.lattice_ok()
    return pm


def rho_candidates(ctx: FieldContext, count: int, seed: int = 0):
    """Deterministic first rows (1, z2, z3, z4) with z_k in (Z + iZ)/4, |Re|, |Im| <= 3/4.

    Small entries keep the row near e1, where the constrained solutions are
    most often positive.
    """
    rng = random.Random(seed)
    for _ in range(count):
        yield (ComplexFieldElement.from_parts(ctx, 1),) + tuple(
            ComplexFieldElement.from_parts(ctx, Fraction(rng.randint(-3, 3), 4),
                                           Fraction(rng.randint(-3, 3), 4))
            for _ in range(3))


def kernel_rows(ctx: FieldContext, constraints: Sequence, count: int = 8):
    """First rows inside the common kernel of the constraint forms.

    For rho in that kernel every <delta, rho^sigma> vanishes, so only the
    kappa condition cuts down sigma; rho = k1 + tau k2 with tau off the real
    axis keeps rho and its conjugate independent.
    """
    if not constraints:
        return
    rows = [r for d in constraints for r in alt_form_of(tuple(gram_dual(d)))]
    ker = _linalg.nullspace([[Fraction(x) for x in r] for r in rows], 4, Fraction(0), Fraction(1))
    if len(ker) < 2:
        return
    yield from _tau_rows(ctx, ker[0], ker[1], count)


def _tau_rows(ctx, k1, k2, count):
    for n in range(1, count + 1):
        tau = ComplexFieldElement.from_parts(ctx, Fraction((-1) ** n * (n // 2), 2), Fraction(n + 1, 2))
        yield tuple(tau * b + a for a, b in zip(k1, k2))


def _kernel(delta):
    m = alt_form_of(tuple(gram_dual(delta)))
    return _linalg.nullspace([[Fraction(x) for x in r] for r in m], 4, Fraction(0), Fraction(1))


def _split_kernel_periods(profile: KappaProfile, constraints: Sequence, count: int = 8):
    """Matrices for two isotropic constraints: rho in ker(delta1), sigma in ker(delta2).

    <delta_i, rho^sigma> then vanishes identically and the kappa condition
    fixes sigma in the 2-dimensional kernel up to scale.
    """
    if len(constraints) != 2:
        return
    ctx = profile.ctx
    for d1, d2 in (constraints, constraints[::-1]):
        k1, k2 = _kernel(d1), _kernel(d2)
        if len(k1) != 2 or len(k2) != 2:
            return
        m1, m2 = ([_c(ctx, x) for x in v] for v in k2)
        for rho in _tau_rows(ctx, k1[0], k1[1], count):
            row = polarization_row(rho, profile.kappa)
            c1 = sum((a * b for a, b in zip(row, m1)), start=_c(ctx, 0))
            c2 = sum((a * b for a, b in zip(row, m2)), start=_c(ctx, 0))
            sigma = tuple(c2 * a - c1 * b for a, b in zip(m1, m2))
            if all(z.is_zero() for z in sigma):
                continue
            phi = wedge(rho, sigma)
            if hermitian(phi, phi).re.sign() <= 0:
                continue
            pm = PeriodMatrix((tuple(rho), sigma))
            if not is_kahler_component(pm, profile.kappa):
                pm = pm.conjugate()
            if pm.lattice_ok():
                yield pm


def search_polarized_period(profile: KappaProfile, constraints: Sequence = (),
                            attempts: int = 64, seed: int = 0) -> PeriodMatrix:
    """polarized_period over deterministic first rows until one succeeds.

    Rows from the constraint kernels are tried before generic small rows;
    a pair of isotropic constraints is first met with split kernels.
    """
    ctx = profile.ctx
    pm = next(_split_kernel_periods(profile, list(constraints)), None)
    if pm is not None:
        return pm
    rows = itertools.chain(kernel_rows(ctx, constraints), rho_candidates(ctx, attempts, seed))
    for rho in rows:
        try:
            return polarized_period(profile, rho, constraints)
        except (PositivityError, ValueError):
            continue
    raise PositivityError(f"no polarized period found in {attempts} first rows")


def _random_entry(ctx: FieldContext, rng: random.Random) -> ComplexFieldElement:
    """A small Gaussian rational plus a rational multiple of one basis radical."""
    m = rng.choice(ctx.basis[1:])
    rad = ctx.sqrt(m, Fraction(rng.randint(-4, 4), rng.randint(2, 6)))
    re = ctx.rational(Fraction(rng.randint(-6, 6), 8))
    im = ctx.rational(Fraction(rng.randint(-6, 6), 8))
    if rng.random() < 0.5:
        re = re + rad
    else:
        im = im + rad
    return ComplexFieldElement(re, im)


def random_polarized_period(profile: KappaProfile, seed: int = 0, constraints: Sequence = (),
                            attempts: int = 64) -> PeriodMatrix:
    """A polarized period matrix with random field entries.

    The first row has irrational entries and the second row is a random
    combination of the whole solution space around a positive vector, so
    the point avoids the special lattices of small rational first rows.
    """
    ctx = profile.ctx
    rng = random.Random(seed)
    for _ in range(attempts):
        rho = (ComplexFieldElement.from_parts(ctx, 1),) + tuple(_random_entry(ctx, rng) for _ in range(3))
        rho, basis = polarized_solution_space(profile, rho, constraints)
        sigma = _positive_vector(rho, basis) if basis else None
        if sigma is None:
            continue
        coeffs = [ComplexFieldElement.from_parts(ctx, Fraction(rng.randint(-9, 9), 10),
                                                 Fraction(rng.randint(-9, 9), 10)) for _ in basis]
        for scale in range(12):
            t = Fraction(1, 2 ** scale)
            cand = [a + sum((b[k] * c * t for b, c in zip(basis, coeffs)), start=ComplexFieldElement.from_parts(ctx))
                    for k, a in enumerate(sigma)]
            if hermitian(wedge(rho, cand), wedge(rho, cand)).re.sign() > 0:
                sigma = cand
                break
        pm = PeriodMatrix((rho, tuple(sigma)))
        if not is_kahler_component(pm, profile.kappa):
            pm = pm.conjugate()
        if pm.lattice_ok():
            return pm
    raise PositivityError(f"no random polarized period found in {attempts} attempts")


def polarized_point(profile: KappaProfile, rho: Sequence, constraints: Sequence = ()) -> PeriodPoint:
    pt = pluecker(polarized_period(profile, rho, constraints), repair=False)
    assert pt.pairing(profile.kappa).is_zero() and pt.in_period_domain()
    return pt


# -- D_lambda membership -------------------------------------------------------------

@dataclass(frozen=True)
class MembershipCertificate:
    """Outcome of the D_lambda test.

    ``candidates`` are the isolated members of Delta in the ellipsoid and
    ``families`` the isotropic lines (restricted to the pairing range) and
    ``planes`` the isotropic planes that cover the rest.  ``checked`` counts
    line members individually and planes once each.
    """

    point: PeriodPoint
    lam: FieldElement
    bound: FieldElement
    checked: int
    candidates: tuple[tuple[int, ...], ...]
    families: tuple[IsotropicFamily, ...]
    violation: tuple[int, ...] | None
    planes: tuple[IsotropicPlane, ...] = ()

    @property
    def verdict(self) -> str:
        return "in_D_lambda" if self.violation is None else "violated"

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "lambda": scalar_to_json(self.lam),
            "ellipsoid_bound": scalar_to_json(self.bound),
            "checked": self.checked,
            "candidates": [list(c) for c in self.candidates],
            "families": [f.to_json() for f in self.families],
            "planes": [p.to_json() for p in self.planes],
            "point": self.point.to_json(),
        }
        if self.violation is not None:
            out["violation"] = list(self.violation)
        return out


def family_zeros(phi: PeriodPoint, fam: IsotropicFamily) -> range | list[int]:
    """The n in the family range with <phi, base + n step> = 0."""
    alpha = phi.pairing(fam.base)
    beta = phi.pairing(fam.step)
    if beta.is_zero():
        return range(fam.lo, fam.hi + 1) if alpha.is_zero() else []
    ratio = -(alpha / beta)
    if not ratio.im.is_zero() or not ratio.re.is_rational():
        return []
    q = ratio.re.rational_value()
    if q.denominator != 1 or not fam.lo <= q <= fam.hi:
        return []
    return [int(q)]


def _coeff_rows(z):
    return z.re.coefficient_vector() + z.im.coefficient_vector()


def plane_zeros(phi: PeriodPoint, pl: IsotropicPlane) -> list[IsotropicFamily]:
    """Integral (y0, y1) in the plane's ellipse with <phi, base + y0 b0 + y1 b1> = 0.

    The condition is a rational linear system in (y0, y1).  Its solutions
    are returned as isotropic families: a single point, a line, or the
    plane itself split into lines.
    """
    a = _coeff_rows(phi.pairing(pl.base))
    b = _coeff_rows(phi.pairing(pl.b0))
    c = _coeff_rows(phi.pairing(pl.b1))
    eqs = [(bk, ck, -ak) for ak, bk, ck in zip(a, b, c)]
    nz = [e for e in eqs if e[0] or e[1]]
    if not nz:
        return list(pl.lines()) if not any(e[2] for e in eqs) else []
    b1, c1, r1 = nz[0]
    second = next((e for e in nz if b1 * e[1] - c1 * e[0] != 0), None)
    d0, d1, m, c0, cc1, rem = pl.ellipse

    def inside(y0, y1):
        return d0 * (y0 + m * y1 + c0) ** 2 + d1 * (y1 + cc1) ** 2 <= rem

    if second is not None:
        b2, c2, r2 = second
        det = b1 * c2 - c1 * b2
        y0, y1 = (r1 * c2 - c1 * r2) / det, (b1 * r2 - r1 * b2) / det
        if y0.denominator != 1 or y1.denominator != 1:
            return []
        if any(bk * y0 + ck * y1 != rk for bk, ck, rk in eqs) or not inside(y0, y1):
            return []
        v = tuple(p + int(y0) * u + int(y1) * w for p, u, w in zip(pl.base, pl.b0, pl.b1))
        return [IsotropicFamily(v, v, 0, 0)]
    # rank one: b1 y0 + c1 y1 = r1 with integer coefficients after scaling
    den = math.lcm(Fraction(b1).denominator, Fraction(c1).denominator, Fraction(r1).denominator)
    sol = _solve_linear_2(int(b1 * den), int(c1 * den), int(r1 * den))
    if sol is None:
        return []
    (p0, p1), (t0, t1) = sol
    if any(bk * p0 + ck * p1 != rk for bk, ck, rk in eqs):
        return []
    # ellipse restricted to the line: A t^2 + B t + C <= 0
    u0, u1 = t0 + m * t1, t1
    w0, w1 = p0 + m * p1 + c0, p1 + cc1
    qa = d0 * u0 * u0 + d1 * u1 * u1
    qb = 2 * (d0 * u0 * w0 + d1 * u1 * w1)
    qc = d0 * w0 * w0 + d1 * w1 * w1 - rem
    lo, hi = _int_range(-qb / (2 * qa), (qb * qb - 4 * qa * qc) / (4 * qa * qa))
    if lo > hi:
        return []
    base = tuple(p + p0 * u + p1 * w for p, u, w in zip(pl.base, pl.b0, pl.b1))
    step = tuple(t0 * u + t1 * w for u, w in zip(pl.b0, pl.b1))
    return [IsotropicFamily(base, step, lo, hi)]


def certify_in_D_lambda(phi: PeriodPoint, profile: KappaProfile, lam, jobs: int = 1) -> MembershipCertificate:
    """Decide <phi, delta> != 0 for every delta in Delta_{kappa,lambda}.

    A delta on H_delta pairs to zero with Re phi and Im phi, so it lies in the
    majorant ellipsoid of span(kappa, Re phi, Im phi) with zero slack; only
    those finitely many candidates need checking.  Isotropic lines inside
    the ellipsoid are solved for their zero instead of being walked.
    """
    ctx = profile.ctx
    lam = ctx.coerce(lam)
    if not phi.pairing(profile.kappa).is_zero():
        raise ValueError("point is not polarized: <kappa, phi> != 0")
    if not phi.in_period_domain():
        raise ValueError("point is not in the period domain")
    form = finiteness_radius(profile, phi.x1, phi.x2, lam, 0)
    classes, families, planes = delta_candidates(form, profile, lam, jobs)
    hits = [dc.delta for dc in classes if on_hyperplane(phi, dc.delta)]
    for fam in families:
        for n in family_zeros(phi, fam):
            v = fam.member(n)
            if math.gcd(*v) == 1:
                hits.append(v)
                break
    # zeros inside isotropic planes come out as families of zeros
    for pl in planes:
        for fam in plane_zeros(phi, pl):
            fam = family_pairing_range(fam, profile, lam)
            v = next((v for v in fam.members() if any(v) and math.gcd(*v) == 1), None)
            if v is not None:
                hits.append(v)
    checked = len(classes) + sum(len(f) for f in families) + len(planes)
    return MembershipCertificate(phi, lam, form.bound, checked,
                                 tuple(dc.delta for dc in classes), tuple(families),
                                 min(hits) if hits else None, tuple(planes))


# -- genericity ------------------------------------------------------------------------

def integral_orthogonal_classes(phi: PeriodPoint, radius: int) -> list[tuple[int, ...]]:
    """Integral a with 0 < max|a_i| <= radius and <phi, a> = 0, one of each +-pair.

    <phi, a> = 0 is a rational linear system on a (real and imaginary
    coefficient vectors of G phi); its integral solutions form a saturated
    sublattice, whose short vectors are enumerated exactly.
    """
    if radius <= 0:
        return []
    g = gram_dual(phi.phi)
    cols = [z.re.coefficient_vector() + z.im.coefficient_vector() for z in g]
    rows = _linalg.transpose(cols)
    kernel = _linalg.nullspace(rows, 6, Fraction(0), Fraction(1))
    if not kernel:
        return []
    ints = [_linalg.clear_denominators(v) for v in kernel]
    # saturate: integral points of the rational span
    comp = _linalg.int_kernel(ints, 6)
    sat = _linalg.int_kernel(comp, 6) if comp else [[int(i == j) for j in range(6)] for i in range(6)]
    gram = [[Fraction(sum(a * b for a, b in zip(u, v))) for v in sat] for u in sat]
    out = set()
    for c in short_vectors(gram, Fraction(6 * radius * radius)):
        a = tuple(sum(ci * u[k] for ci, u in zip(c, sat)) for k in range(6))
        if any(a) and max(abs(x) for x in a) <= radius:
            out.add(_canon_sign(a))
    res = sorted(out)
    assert all(phi.pairing(a).is_zero() for a in res)
    return res


def _canon_sign(a):
    first = next(x for x in a if x)
    return tuple(-x for x in a) if first < 0 else tuple(a)


def genericity_up_to_radius(phi: PeriodPoint, radius: int) -> bool:
    """No nonzero integral a with max-norm <= radius is orthogonal to phi.

    A finite partial check of genericity.
    """
    return not integral_orthogonal_classes(phi, radius)
