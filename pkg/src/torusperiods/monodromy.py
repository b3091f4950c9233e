"""Pencil discs in the polarized period domain and Z/2 crossing parities.

A disc is the pencil g(z) = rho ^ (sigma + z sigma') for |z - center| <= r.
Every hyperplane pairing <delta, g(z)> = A + B z is affine in z, so the
disc meets H_delta at most once and the crossing parity is a root-location
fact decided in exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .cone import KappaProfile
from .enumeration import (DeltaClass, IsotropicFamily, IsotropicPlane, delta_candidates,
                          family_pairing_range, finiteness_radius, is_delta_member)
from .exact_scalar import ComplexFieldElement, FieldContext, FieldElement
from .jsonio import complex_from_json, scalar_to_json
from .lattice import pairing
from .period import (PeriodPoint, PositivityError, complex_pairing, hermitian, kernel_rows,
                     polarized_period, polarized_solution_space, wedge)

__all__ = [
    "DiscFamily",
    "DiscInHyperplane",
    "FamilyBound",
    "LoopTouchesHyperplane",
    "ParityCertificate",
    "RootOnBoundary",
    "adequate_samples",
    "boundary_samples",
    "crossing_parity",
    "generator_loop",
    "kronecker_matrix",
    "pairing_poly",
    "pl_loop_parity",
    "winding_parity",
]


class DiscInHyperplane(ValueError):
    """<delta, g(z)> vanishes identically on the disc."""


class RootOnBoundary(ValueError):
    """The crossing with H_delta lies on the boundary circle."""


class LoopTouchesHyperplane(ValueError):
    """A PL loop meets H_delta."""


# -- rational bounds -----------------------------------------------------------------

_SQRT_BITS = 64


def _upper(x) -> Fraction:
    return x.tight_interval(64)[1] if isinstance(x, FieldElement) else Fraction(x)


def _lower(x) -> Fraction:
    return x.tight_interval(64)[0] if isinstance(x, FieldElement) else Fraction(x)


def _sqrt_up(q: Fraction) -> Fraction:
    if q <= 0:
        return Fraction(0)
    s = 1 << (2 * _SQRT_BITS)
    return Fraction(math.isqrt(-(-q.numerator * s // q.denominator)) + 1, 1 << _SQRT_BITS)


def _sqrt_down(q: Fraction) -> Fraction:
    if q <= 0:
        return Fraction(0)
    s = 1 << (2 * _SQRT_BITS)
    return Fraction(math.isqrt(q.numerator * s // q.denominator), 1 << _SQRT_BITS)


def _abs_up(z: ComplexFieldElement) -> Fraction:
    return _sqrt_up(_upper(z.norm_sq()))


def _abs_down(z: ComplexFieldElement) -> Fraction:
    return _sqrt_down(_lower(z.norm_sq()))


def _cfloat(z: ComplexFieldElement) -> complex:
    return complex(float(z.re), float(z.im))


def _re_mul_conj(a: ComplexFieldElement, b: ComplexFieldElement) -> FieldElement:
    """Re(a * conj b)."""
    return a.re * b.re + a.im * b.im


# -- discs -----------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscFamily:
    rho: tuple[ComplexFieldElement, ...]
    sigma: tuple[ComplexFieldElement, ...]
    sigma_p: tuple[ComplexFieldElement, ...]
    center: ComplexFieldElement
    radius: Fraction

    def __post_init__(self):
        if Fraction(self.radius) <= 0:
            raise ValueError("radius must be positive")
        if not (self.center.re.is_rational() and self.center.im.is_rational()):
            raise ValueError("center must be complex rational")

    @property
    def ctx(self) -> FieldContext:
        return self.rho[0].ctx

    @property
    def phi0(self) -> tuple[ComplexFieldElement, ...]:
        return wedge(self.rho, self.sigma)

    @property
    def psi(self) -> tuple[ComplexFieldElement, ...]:
        return wedge(self.rho, self.sigma_p)

    def point(self, z) -> PeriodPoint:
        z = ComplexFieldElement.from_parts(self.ctx) + z
        return PeriodPoint(tuple(a + b * z for a, b in zip(self.phi0, self.psi)))

    def with_radius(self, radius) -> "DiscFamily":
        return DiscFamily(self.rho, self.sigma, self.sigma_p, self.center, Fraction(radius))

    def is_polarized(self, kappa: Sequence) -> bool:
        return (complex_pairing(kappa, self.phi0).is_zero()
                and complex_pairing(kappa, self.psi).is_zero())

    def to_json(self) -> dict:
        return {
            "radicands": list(self.ctx.radicands),
            "rho": [scalar_to_json(z) for z in self.rho],
            "sigma": [scalar_to_json(z) for z in self.sigma],
            "sigma_prime": [scalar_to_json(z) for z in self.sigma_p],
            "center": scalar_to_json(self.center),
            "radius": str(self.radius),
        }

    @classmethod
    def from_json(cls, obj, ctx: FieldContext | None = None) -> "DiscFamily":
        ctx = ctx or FieldContext(obj["radicands"])

        def row(key):
            return tuple(complex_from_json(x, ctx) for x in obj[key])

        return cls(row("rho"), row("sigma"), row("sigma_prime"),
                   complex_from_json(obj.get("center", 0), ctx), Fraction(obj["radius"]))


def pairing_poly(disc: DiscFamily, delta: Sequence[int]) -> tuple[ComplexFieldElement, ComplexFieldElement]:
    """(A, B) with <delta, g(z)> = A + B z."""
    return complex_pairing(delta, disc.phi0), complex_pairing(delta, disc.psi)


def crossing_parity(disc: DiscFamily, delta: Sequence[int]) -> int:
    """Number of points of g(D) on H_delta, mod 2 (the root count of A + B z in D)."""
    a, b = pairing_poly(disc, delta)
    if a.is_zero() and b.is_zero():
        raise DiscInHyperplane(f"disc lies inside H_{tuple(delta)}")
    if b.is_zero():
        return 0
    # |root - center|^2 < r^2  <=>  |A + B center|^2 < r^2 |B|^2
    val = (a + b * disc.center).norm_sq() - b.norm_sq() * (disc.radius ** 2)
    s = val.sign()
    if s == 0:
        raise RootOnBoundary(f"root of <{tuple(delta)}, g> lies on the boundary circle")
    return 1 if s < 0 else 0


# -- root-distance bounds for families -------------------------------------------------

def _quadratic_positive(c2: FieldElement, c1: FieldElement, c0: FieldElement,
                        lo: int | None, hi: int | None) -> bool:
    """c2 n^2 + c1 n + c0 > 0 for every integer n in [lo, hi] (None = unbounded)."""
    s2 = c2.sign()
    if s2 <= 0 and (lo is None or hi is None):
        if s2 == 0 and c1.is_zero():
            return c0.sign() > 0
        return False
    pts = {p for p in (lo, hi) if p is not None}
    if s2 > 0:
        v = (-c1 / (c2 * 2)).floor()
        for p in (v, v + 1):
            if (lo is None or p >= lo) and (hi is None or p <= hi):
                pts.add(p)
    return all((c2 * (n * n) + c1 * n + c0).sign() > 0 for n in pts)


@dataclass(frozen=True)
class FamilyBound:
    """Every member v of a family has its root at distance > ``radius`` from 0.

    kind "line": v = base + n step, lo <= n <= hi; checked as the quadratic
    |A(n)|^2 - r^2 |B(n)|^2 > 0.  kind "plane": v = base + m w + n delta0,
    all integers m (m != 0 when ``exclude_m0``), with |n| bounded through the
    pairing range; checked against the rational majorants ``a_up + b_up |m|``
    of |B|.
    """

    kind: str
    base: tuple[int, ...]
    step: tuple[int, ...]
    lo: int | None
    hi: int | None
    radius: Fraction
    a_up: Fraction = Fraction(0)
    b_up: Fraction = Fraction(0)
    exclude_m0: bool = False

    def check(self, disc: DiscFamily) -> bool:
        r2 = self.radius ** 2
        al, be = pairing_poly(disc, self.base)
        als, bes = pairing_poly(disc, self.step)
        if self.kind == "line":
            c2 = als.norm_sq() - bes.norm_sq() * r2
            c1 = (_re_mul_conj(al, als) - _re_mul_conj(be, bes) * r2) * 2
            c0 = al.norm_sq() - be.norm_sq() * r2
            return _quadratic_positive(c2, c1, c0, self.lo, self.hi)
        a, b = self.a_up, self.b_up
        if self.exclude_m0:
            # base in the plane: |m| |A_w| vs r (a + b |m|), increasing in |m|
            return (als.norm_sq() - r2 * (a + b) ** 2).sign() > 0
        cross = _re_mul_conj(al, als) * 2
        ctx = disc.ctx
        c2 = als.norm_sq() - ctx.rational(r2 * b * b)
        c0 = al.norm_sq() - ctx.rational(r2 * a * a)
        lin = ctx.rational(2 * r2 * a * b)
        return (_quadratic_positive(c2, cross - lin, c0, 0, None)
                and _quadratic_positive(c2, -cross - lin, c0, 0, None))

    def to_json(self) -> dict:
        out = {"kind": self.kind, "base": list(self.base), "step": list(self.step),
               "radius": str(self.radius)}
        if self.kind == "line":
            out["n_range"] = [self.lo, self.hi]
        else:
            out.update({"a_up": str(self.a_up), "b_up": str(self.b_up),
                        "exclude_m0": self.exclude_m0})
        return out

    @classmethod
    def from_json(cls, obj) -> "FamilyBound":
        lo, hi = obj.get("n_range", [None, None])
        return cls(obj["kind"], tuple(obj["base"]), tuple(obj["step"]), lo, hi,
                   Fraction(obj["radius"]), Fraction(obj.get("a_up", 0)),
                   Fraction(obj.get("b_up", 0)), bool(obj.get("exclude_m0", False)))


def _line_estimate(disc, fam: IsotropicFamily) -> float:
    """Float estimate of min |root| over the line's members."""
    al, be = (_cfloat(x) for x in pairing_poly(disc, fam.base))
    als, bes = (_cfloat(x) for x in pairing_poly(disc, fam.step))
    a2, a1, a0 = abs(als) ** 2, 2 * (al * als.conjugate()).real, abs(al) ** 2
    b2, b1, b0 = abs(bes) ** 2, 2 * (be * bes.conjugate()).real, abs(be) ** 2
    pts = {fam.lo, fam.hi}
    qa, qb, qc = a2 * b1 - a1 * b2, 2 * (a2 * b0 - a0 * b2), a1 * b0 - a0 * b1
    roots = []
    if qa:
        disc_ = qb * qb - 4 * qa * qc
        if disc_ >= 0:
            roots = [(-qb + s * math.sqrt(disc_)) / (2 * qa) for s in (1, -1)]
    elif qb:
        roots = [-qc / qb]
    for x in roots:
        if math.isfinite(x):
            for p in (math.floor(x), math.floor(x) + 1):
                if fam.lo <= p <= fam.hi:
                    pts.add(p)
    best = math.inf
    for n in pts:
        num, den = abs(al + n * als), abs(be + n * bes)
        if den:
            best = min(best, num / den)
    return best


def _split_line(fam: IsotropicFamily, delta0) -> list[IsotropicFamily]:
    """The line with delta0 (if it is a member) removed."""
    diff = [d - b for d, b in zip(delta0, fam.base)]
    k = next((i for i, s in enumerate(fam.step) if s), None)
    if k is None or diff[k] % fam.step[k]:
        return [fam]
    n0 = diff[k] // fam.step[k]
    if fam.member(n0) != tuple(delta0) or not fam.lo <= n0 <= fam.hi:
        return [fam]
    parts = [IsotropicFamily(fam.base, fam.step, fam.lo, n0 - 1),
             IsotropicFamily(fam.base, fam.step, n0 + 1, fam.hi)]
    return [p for p in parts if len(p)]


def _plane_coordinates(pl: IsotropicPlane, delta0):
    """(w, in_plane_offset) with Z b0 + Z b1 = Z w + Z delta0, or None if delta0 is not in it."""
    rows = [list(pl.b0), list(pl.b1)]
    sol = _linalg.nullspace([[Fraction(rows[0][i]), Fraction(rows[1][i]), Fraction(-delta0[i])]
                             for i in range(6)], 3, Fraction(0), Fraction(1))
    if len(sol) != 1 or sol[0][2] == 0:
        return None
    a, b = sol[0][0] / sol[0][2], sol[0][1] / sol[0][2]
    if a.denominator != 1 or b.denominator != 1:
        return None
    a, b = int(a), int(b)
    # complete (a, b) to a unimodular matrix [[a, c], [b, d]]
    g, x, y = _ext_gcd(a, b)
    if g != 1:
        return None
    c, d = -y, x
    w = tuple(c * u + d * v for u, v in zip(pl.b0, pl.b1))
    return w


def _ext_gcd(a: int, b: int):
    x0, y0, x1, y1, r0, r1 = 1, 0, 0, 1, a, b
    while r1:
        q = r0 // r1
        x0, x1, y0, y1, r0, r1 = x1, x0 - q * x1, y1, y0 - q * y1, r1, r0 - q * r1
    if r0 < 0:
        x0, y0, r0 = -x0, -y0, -r0
    return r0, x0, y0


def _in_span(v, a, b) -> bool:
    return _linalg.rank([list(a), list(b), list(v)]) == 2 or not any(v)


def _plane_bound(disc, pl: IsotropicPlane, delta0, profile: KappaProfile, lam):
    """FamilyBound data and a float estimate for a plane containing delta0, or None."""
    w = _plane_coordinates(pl, delta0)
    if w is None:
        return None
    eps = _lower(profile.pairing_with(delta0))
    lam_up = _upper(lam)
    be0 = pairing_poly(disc, delta0)[1]
    als, bes = pairing_poly(disc, w)
    beta0_up = _abs_up(be0)
    p_w = _upper(abs(profile.pairing_with(w)))
    b_up = _abs_up(bes) + p_w * beta0_up / eps
    inside = _in_span(pl.base, pl.b0, pl.b1)
    base = (0,) * 6 if inside else pl.base
    al, be = pairing_poly(disc, base)
    p_base = _upper(abs(profile.pairing_with(base))) if any(base) else Fraction(0)
    a_up = _abs_up(be) + (lam_up + p_base) * beta0_up / eps
    fa, faw = _cfloat(al), _cfloat(als)
    a_f, b_f = float(a_up), float(b_up)
    if inside:
        est = abs(faw) / (a_f + b_f)
    else:
        ms = {0}
        if faw:
            x = -(fa / faw).real
            ms.update({math.floor(x), math.floor(x) + 1})
        est = min([abs(fa + m * faw) / (a_f + b_f * abs(m)) for m in ms] + [abs(faw) / b_f])
    return dict(kind="plane", base=base, step=w, lo=None, hi=None,
                a_up=a_up, b_up=b_up, exclude_m0=inside), est


# -- certificates ------------------------------------------------------------------------

@dataclass(frozen=True)
class ParityCertificate:
    """Exact record of where every relevant hyperplane meets the disc.

    ``entries`` hold (delta, parity, root) for isolated candidates, root
    being None when B = 0; ``families`` carry bounds placing whole lines
    and planes of candidates outside the disc; ``margin`` is a rational lower
    bound on min |root| - radius over the entries with parity 0 and over the
    families.  ``positivity`` = (h0_lower, w_upper, h2_upper) certifies
    <g(z), conj g(z)> > 0 on the closed disc.
    """

    disc: DiscFamily
    delta0: tuple[int, ...]
    entries: tuple[tuple[tuple[int, ...], int, ComplexFieldElement | None], ...]
    families: tuple[FamilyBound, ...]
    margin: Fraction
    positivity: tuple[Fraction, Fraction, Fraction]
    slack: Fraction = Fraction(0)
    r0: Fraction = Fraction(0)

    def parities(self) -> dict[tuple[int, ...], int]:
        return {d: p for d, p, _ in self.entries}

    def verify(self) -> bool:
        """Re-check every recorded fact from the stored exact data (no enumeration)."""
        disc = self.disc
        if self.margin <= 0:
            return False
        for delta, parity, root in self.entries:
            a, b = pairing_poly(disc, delta)
            if crossing_parity(disc, delta) != parity:
                return False
            if root is not None and not (a + b * root).is_zero():
                return False
            if root is not None and parity == 0:
                reach = disc.radius + self.margin
                if ((root - disc.center).norm_sq() - reach * reach).sign() < 0:
                    return False
            if tuple(delta) == self.delta0 and parity != 1:
                return False
            if tuple(delta) != self.delta0 and parity != 0:
                return False
        if any(not f.check(disc) or f.radius <= disc.radius for f in self.families):
            return False
        h0, wu, h2 = self.positivity
        r = disc.radius + abs(disc.center.re.rational_value()) + abs(disc.center.im.rational_value())
        phi0, psi = disc.phi0, disc.psi
        ok = (h0 <= _lower(hermitian(phi0, phi0).re) and wu >= _abs_up(hermitian(phi0, psi))
              and h2 >= _upper(abs(hermitian(psi, psi).re)))
        return ok and h0 - 2 * wu * r - h2 * r * r > 0

    def to_json(self) -> dict:
        return {
            "disc": self.disc.to_json(),
            "delta0": list(self.delta0),
            "entries": [{"delta": list(d), "parity": p,
                         "root": None if z is None else scalar_to_json(z)}
                        for d, p, z in self.entries],
            "families": [f.to_json() for f in self.families],
            "margin": str(self.margin),
            "positivity": [str(x) for x in self.positivity],
            "slack": str(self.slack),
            "r0": str(self.r0),
        }

    @classmethod
    def from_json(cls, obj) -> "ParityCertificate":
        disc = DiscFamily.from_json(obj["disc"])
        entries = tuple((tuple(e["delta"]), int(e["parity"]),
                         None if e["root"] is None else complex_from_json(e["root"], disc.ctx))
                        for e in obj["entries"])
        return cls(disc, tuple(obj["delta0"]), entries,
                   tuple(FamilyBound.from_json(f) for f in obj["families"]),
                   Fraction(obj["margin"]), tuple(Fraction(x) for x in obj["positivity"]),
                   Fraction(obj.get("slack", 0)), Fraction(obj.get("r0", 0)))


def _quad_form(mat, y) -> FieldElement:
    acc = mat[0][0] * 0
    for i in range(6):
        if y[i].is_zero():
            continue
        acc = acc + mat[i][i] * y[i] * y[i]
        for j in range(i + 1, 6):
            if not y[j].is_zero():
                acc = acc + mat[i][j] * y[i] * y[j] * 2
    return acc


def _centered_pencils(profile: KappaProfile, delta0, attempts: int):
    """(first row, sigma, sigma' candidates) with rho ^ sigma on H_delta0 and polarized."""
    ctx = profile.ctx
    for rho in kernel_rows(ctx, [delta0], attempts):
        try:
            pm = polarized_period(profile, rho, [delta0])
        except (PositivityError, ValueError):
            continue
        r, s = pm.rows
        # rho lies in the kernel of delta0's form, so B_delta0 would vanish; use sigma first
        first, second = s, tuple(-z for z in r)
        _, basis = polarized_solution_space(profile, first)
        sps = [tuple(v) for v in basis]
        sps = [v for v in sps if not complex_pairing(delta0, wedge(first, v)).is_zero()]
        if sps:
            yield first, second, sps


def generator_loop(dc: DeltaClass, profile: KappaProfile, lam, jobs: int = 1,
                   attempts: int = 8) -> tuple[DiscFamily, ParityCertificate]:
    """A disc crossing H_delta0 once, transversally, and missing every other H_delta.

    The center g(0) is a polarized point on H_delta0.  If a delta in Delta
    has its root within r0 of the center, with r0^2 <= s / (4K)
    (s = <Re g(0), Re g(0)>, K = q(Re psi) + q(Im psi) in the majorant of
    g(0)), then q(delta) <= 4 lambda^2 / <kappa, kappa> and hence
    |<delta, Re g(0)>|, |<delta, Im g(0)>| <= r0 sqrt(4 K lambda^2 / kappa^2).
    The ellipsoid with that slack therefore lists every hyperplane that can
    reach the disc; the radius is then taken below all their root distances.
    """
    ctx = profile.ctx
    lam = ctx.coerce(lam)
    delta0 = tuple(dc.delta)
    if not is_delta_member(delta0, profile, lam):
        raise ValueError(f"{delta0} is not in Delta for lambda = {float(lam):.6g}")
    if not profile.nonresonant:
        raise ValueError("kappa is resonant")
    failures = []
    for first, second, sps in _centered_pencils(profile, delta0, attempts):
        for sp in sps:
            try:
                return _certify_pencil(profile, lam, delta0, first, second, sp, jobs)
            except PositivityError as exc:
                failures.append(str(exc))
    raise PositivityError(f"no certified disc for {delta0}: {failures[:3]}")


def _certify_pencil(profile, lam, delta0, first, second, sp, jobs):
    ctx = profile.ctx
    zero = ComplexFieldElement.from_parts(ctx)
    disc = DiscFamily(first, second, sp, zero, Fraction(1))
    phi0, psi = disc.phi0, disc.psi
    pt = PeriodPoint(phi0)
    assert pt.pairing(delta0).is_zero() and pt.pairing(profile.kappa).is_zero()
    form0 = finiteness_radius(profile, pt.x1, pt.x2, lam, 0)
    s = ctx.coerce(pairing(pt.x1, pt.x1))
    k = _quad_form(form0.matrix, [z.re for z in psi]) + _quad_form(form0.matrix, [z.im for z in psi])
    r0 = min(Fraction(1), _sqrt_down(_lower(s / (k * 4))))
    slack = r0 * _sqrt_up(_upper(k * 4 * lam * lam / profile.kappa_sq))
    form = finiteness_radius(profile, pt.x1, pt.x2, lam, slack)
    classes, lines, planes = delta_candidates(form, profile, lam, jobs)

    singles = []
    estimates = [float(r0)]
    for c in classes:
        if c.delta == delta0:
            continue
        a, b = pairing_poly(disc, c.delta)
        if a.is_zero():
            raise PositivityError(f"center also lies on H_{c.delta}")
        if b.is_zero():
            singles.append((c.delta, None))
            continue
        root = -(a / b)
        singles.append((c.delta, root))
        estimates.append(abs(_cfloat(root)))
    line_fams = []
    plane_data = []
    for pl in planes:
        got = _plane_bound(disc, pl, delta0, profile, lam)
        if got is None:
            line_fams.extend(f for f in (family_pairing_range(f, profile, lam) for f in pl.lines())
                             if len(f))
        else:
            plane_data.append(got[0])
            estimates.append(got[1])
    for fam in lines:
        line_fams.extend(_split_line(fam, delta0))
    for fam in line_fams:
        estimates.append(_line_estimate(disc, fam))
    est = min(estimates)
    if not est > 0:
        raise PositivityError("a candidate hyperplane passes through the center")
    radius = min(r0 / 2, Fraction(est / 4))

    h0 = _lower(hermitian(phi0, phi0).re)
    wu = _abs_up(hermitian(phi0, psi))
    h2 = _upper(abs(hermitian(psi, psi).re))
    for _ in range(80):
        bounds = [FamilyBound(radius=radius * 2, **d) for d in plane_data]
        bounds += [FamilyBound("line", f.base, f.step, f.lo, f.hi, radius * 2) for f in line_fams]
        roots_ok = all(z is None or (z.norm_sq() - radius * radius * 4).sign() > 0 for _, z in singles)
        pos_ok = h0 - 2 * wu * radius - h2 * radius * radius > 0
        if roots_ok and pos_ok and radius < r0 and all(b.check(disc) for b in bounds):
            break
        radius /= 2
    else:
        raise PositivityError("could not certify a radius")
    disc = disc.with_radius(radius)
    entries = [(delta0, crossing_parity(disc, delta0), zero)]
    for d, z in singles:
        entries.append((d, crossing_parity(disc, d), z))
    entries.sort(key=lambda e: e[0])
    # margin: every recorded root and family is beyond 2 * radius
    margin = radius
    cert = ParityCertificate(disc, delta0, tuple(entries), tuple(bounds), margin,
                             (h0, wu, h2), slack, r0)
    assert cert.verify()
    return disc, cert


def kronecker_matrix(deltas: Sequence[DeltaClass], profile: KappaProfile, lam,
                     jobs: int = 1) -> tuple[list[list[int]], list[ParityCertificate]]:
    """Entry (i, j) is the parity of H_{delta_j} along the generator loop of delta_i."""
    keys = [tuple(d.delta) for d in deltas]
    if len(set(keys)) != len(keys):
        raise ValueError("deltas must be distinct")
    certs = [generator_loop(d, profile, lam, jobs)[1] for d in deltas]
    matrix = [[crossing_parity(c.disc, k) for k in keys] for c in certs]
    return matrix, certs


# -- PL loops --------------------------------------------------------------------------

def _quadrant(re: int, im: int) -> int:
    # quadrants 0..3 counterclockwise, axes assigned to the quadrant they open
    if re > 0 and im >= 0:
        return 0
    if re <= 0 and im > 0:
        return 1
    if re < 0 and im <= 0:
        return 2
    return 3


def _cross_sign(a: ComplexFieldElement, b: ComplexFieldElement) -> int:
    """Sign of Im(conj(a) b), the orientation of 0, a, b."""
    return (a.re * b.im - a.im * b.re).sign()


def _segment_hits_zero(a: ComplexFieldElement, b: ComplexFieldElement) -> bool:
    """Whether the segment [a, b] of C contains 0."""
    if a.is_zero() or b.is_zero():
        return True
    if _cross_sign(a, b) != 0:
        return False
    # collinear with 0: zero between them iff a and b point in opposite directions
    return _re_mul_conj(a, b).sign() < 0


def winding_parity(values: Sequence[ComplexFieldElement]) -> int:
    """Winding number mod 2 around 0 of the closed polygon through ``values``.

    Exact quadrant counting: each edge moves between adjacent quadrants or
    jumps across 0 by two, and the orientation test decides the sign of the jump.
    """
    n = len(values)
    if n < 2:
        raise ValueError("a loop needs at least two vertices")
    total = 0
    for i in range(n):
        a, b = values[i], values[(i + 1) % n]
        if _segment_hits_zero(a, b):
            raise LoopTouchesHyperplane("loop passes through 0")
        qa = _quadrant(a.re.sign(), a.im.sign())
        qb = _quadrant(b.re.sign(), b.im.sign())
        d = (qb - qa) % 4
        if d == 3:
            d = -1
        elif d == 2:
            d = 2 if _cross_sign(a, b) > 0 else -2
        total += d
    assert total % 4 == 0
    return (total // 4) % 2


def pl_loop_parity(loop: Sequence[PeriodPoint], delta: Sequence[int]) -> int:
    """Parity of the loop's winding around H_delta.

    The loop interpolates Plucker coordinates affinely, so t -> <delta, phi(t)>
    is affine on each edge and the loop's image is the polygon through the
    vertex pairings.
    """
    vals = [pt.pairing(delta) for pt in loop]
    return winding_parity(vals)


def _unit_point(t: Fraction) -> tuple[Fraction, Fraction]:
    """Rational point on the unit circle at parameter t = tan(theta / 2)."""
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


def boundary_samples(disc: DiscFamily, n: int = 64) -> list[PeriodPoint]:
    """n points on the boundary circle, counterclockwise, at exact rational positions.

    The angles approximate 2 pi k / n; each point is exactly on the circle.
    """
    if n < 3:
        raise ValueError("need at least three samples")
    pts = []
    for k in range(n):
        theta = 2 * math.pi * k / n
        if k == n // 2 and n % 2 == 0:
            c, s = Fraction(-1), Fraction(0)
        else:
            t = Fraction(math.tan(theta / 2)).limit_denominator(1 << 20)
            c, s = _unit_point(t)
        z = disc.center + ComplexFieldElement.from_parts(disc.ctx, c * disc.radius, s * disc.radius)
        pts.append(disc.point(z))
    return pts


def inscribed_fraction(n: int) -> float:
    """A lower bound on inradius / radius of the sample polygon of ``boundary_samples(., n)``."""
    # angles are within 2^-19 of the regular ones
    return math.cos(math.pi / n + 2.0 ** -18)


def adequate_samples(disc: DiscFamily, delta: Sequence[int], start: int = 64,
                     limit: int = 1 << 16) -> int:
    """A sample count whose polygon keeps the root of <delta, g> on the same side as the circle.

    Roots outside the circle are outside every inscribed polygon; a root
    inside at distance d needs inradius > d.  Raises if d is too close to r.
    """
    a, b = pairing_poly(disc, delta)
    if b.is_zero():
        return start
    d = abs(_cfloat(a) / _cfloat(b) + _cfloat(disc.center))
    ratio = d / float(disc.radius)
    n = start
    while ratio < 1 and inscribed_fraction(n) <= ratio * (1 + 1e-9) + 1e-12:
        n *= 2
        if n > limit:
            raise RootOnBoundary("root too close to the boundary circle for PL sampling")
    return n
