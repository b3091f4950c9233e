"""Elements of Delta_{kappa,lambda}: the continued-fraction pump and finite enumerations.

Delta_{kappa,lambda} is the set of indivisible integral delta with
<delta, delta> = 0 and 0 < <kappa, delta> <= lambda.  It is infinite for
non-resonant kappa; ``generator_pump`` produces as many elements as asked.
Near a polarized period point only finitely many of them matter, and
``finiteness_radius`` / ``enumerate_delta_in_ellipsoid`` find those exactly.
``brute_force_delta_box`` is an independent exhaustive oracle.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _linalg
from .cone import KappaProfile, lambda_admissible
from .exact_scalar import FieldElement
from .lattice import GRAM, alt_form_of, frobenius_normal_form, gram_dual, is_indivisible, pairing

__all__ = [
    "DeltaClass",
    "IsotropicFamily",
    "IsotropicPlane",
    "MajorantForm",
    "RationalRatioError",
    "brute_force_delta_box",
    "cf_small_combination",
    "delta_candidates",
    "delta_class",
    "enumerate_delta_in_ellipsoid",
    "finiteness_radius",
    "family_pairing_range",
    "generator_pump",
    "isotropic_points_in_ellipsoid",
    "is_delta_member",
    "lattice_points_in_ellipsoid",
    "short_vectors",
]

V1 = (1, 0, 0, 0, 0, 0)
V2 = (0, 1, 0, 0, 0, 0)


class RationalRatioError(ArithmeticError):
    """The continued fraction terminated: the two pairings are commensurable."""


@dataclass(frozen=True)
class DeltaClass:
    delta: tuple[int, ...]
    pairing_with_kappa: FieldElement
    pairing_interval: tuple[Fraction, Fraction]
    d1: int
    d2: int

    def to_json(self) -> dict:
        from .jsonio import scalar_to_json
        return {
            "delta": list(self.delta),
            "pairing": scalar_to_json(self.pairing_with_kappa),
            "pairing_interval": self.pairing_with_kappa.decimal_interval(30),
            "d1": self.d1,
            "d2": self.d2,
        }


def is_delta_member(delta: Sequence[int], profile: KappaProfile, lam) -> bool:
    if not any(delta) or pairing(delta, delta) != 0 or not is_indivisible(delta):
        return False
    p = profile.pairing_with(delta)
    return p.sign() > 0 and (profile.ctx.coerce(lam) - p).sign() >= 0


def delta_class(delta: Sequence[int], profile: KappaProfile, lam,
                pairing_value: FieldElement | None = None) -> DeltaClass:
    """Validate membership in Delta_{kappa,lambda} and attach certificates."""
    delta = tuple(int(x) for x in delta)
    if not any(delta):
        raise ValueError("zero vector is not in Delta")
    if pairing(delta, delta) != 0:
        raise ValueError(f"{delta} is not isotropic")
    if not is_indivisible(delta):
        raise ValueError(f"{delta} is divisible")
    p = pairing_value if pairing_value is not None else profile.pairing_with(delta)
    lam = profile.ctx.coerce(lam)
    if p.sign() <= 0 or (lam - p).sign() < 0:
        raise ValueError(f"<kappa, {delta}> = {float(p):.6g} is outside (0, {float(lam):.6g}]")
    f = frobenius_normal_form(alt_form_of(delta))
    assert (f.d1, f.d2) == (1, 0)
    return DeltaClass(delta, p, p.tight_interval(64), f.d1, f.d2)


# -- continued fractions --------------------------------------------------------

def _floor_ratio(x: FieldElement, y: FieldElement) -> int:
    """floor(x / y) for x >= 0, y > 0, by interval bracketing plus exact checks."""
    bits = 64
    while True:
        xl, xh = x.to_interval(bits)
        yl, yh = y.to_interval(bits)
        if yl > 0:
            lo = math.floor(max(xl, Fraction(0)) / yh)
            hi = math.floor(xh / yl)
            if lo == hi:
                return lo
            if hi - lo <= 2:
                for q in range(hi, lo - 1, -1):
                    if (x - y * q).sign() >= 0:
                        return q
        bits *= 2
        if bits > (1 << 16):
            raise ArithmeticError("could not bracket ratio")


def _euclid(a: FieldElement, b: FieldElement):
    """Yield (r, s, t) with r = s*a + t*b for the remainder sequence of (a, b)."""
    prev = (a, 1, 0)
    cur = (b, 0, 1)
    yield prev
    yield cur
    while True:
        q = _floor_ratio(prev[0], cur[0])
        r = prev[0] - cur[0] * q
        nxt = (r, prev[1] - q * cur[1], prev[2] - q * cur[2])
        if r.is_zero():
            raise RationalRatioError(f"ratio of {a} and {b} is rational")
        yield nxt
        prev, cur = cur, nxt


def cf_small_combination(a: FieldElement, b: FieldElement, bound) -> tuple[int, int]:
    """Integers (p1, p2) with 0 < p1*a - p2*b < bound, via convergents of a/b."""
    if a.sign() <= 0 or b.sign() <= 0:
        raise ValueError("a and b must be positive")
    bound = a.ctx.coerce(bound)
    if bound.sign() <= 0:
        raise ValueError("bound must be positive")
    for r, s, t in _euclid(a, b):
        if (bound - r).sign() > 0:
            return s, -t
    raise AssertionError("unreachable")


def generator_pump(profile: KappaProfile, lam, n: int) -> list[DeltaClass]:
    """n distinct elements of Delta_{kappa,lambda} with strictly decreasing <kappa, delta>.

    Uses the isotropic orthogonal pair v1, v2: every primitive p*v1 + q*v2 is
    isotropic and indivisible, and the Euclidean remainders of |<kappa,v1>|,
    |<kappa,v2>| supply primitive (p, q) with ever smaller positive pairing.
    """
    if n <= 0:
        return []
    if not profile.nonresonant:
        raise ValueError("kappa is resonant; Delta may be finite")
    if not lambda_admissible(profile.kappa, lam):
        raise ValueError(f"lambda = {lam} is not admissible for kappa")
    ctx = profile.ctx
    lam = ctx.coerce(lam)
    a = profile.pairing_with(V1)
    b = profile.pairing_with(V2)
    sa, sb = a.sign(), b.sign()
    big, small = (abs(a), abs(b))
    swapped = (big - small).sign() < 0
    if swapped:
        big, small = small, big
    out: list[DeltaClass] = []
    last = None
    for r, s, t in _euclid(big, small):
        if last is not None and (last - r).sign() <= 0:
            continue
        last = r
        if (lam - r).sign() < 0:
            continue
        cb, cs = (t, s) if swapped else (s, t)
        # r = cb*|a| + cs*|b| = <kappa, cb*sa*v1 + cs*sb*v2>
        p, q = cb * sa, cs * sb
        delta = (p, q, 0, 0, 0, 0)
        out.append(delta_class(delta, profile, lam, pairing_value=r))
        if len(out) == n:
            return out
    raise AssertionError("unreachable")


# -- majorant ellipsoid -----------------------------------------------------------

@dataclass(frozen=True)
class MajorantForm:
    """q(d) = <d_P, d_P> - <d_N, d_N> for the positive 3-space P = span(kappa, x1, x2).

    ``matrix`` is the 6x6 Gram of q; every integral isotropic delta with
    |<delta, kappa>| <= lam and |<delta, x_i>| <= slack satisfies q <= bound.
    """

    matrix: tuple[tuple[FieldElement, ...], ...]
    bound: FieldElement
    plane: tuple[tuple, tuple, tuple]
    plane_gram_inverse: tuple[tuple[FieldElement, ...], ...]
    lam: FieldElement
    slack: Fraction

    def value(self, v: Sequence[int]) -> FieldElement:
        m = self.matrix
        acc = self.bound.ctx.zero()
        for i in range(6):
            if not v[i]:
                continue
            acc = acc + m[i][i] * (v[i] * v[i])
            for j in range(i + 1, 6):
                if v[j]:
                    acc = acc + m[i][j] * (2 * v[i] * v[j])
        return acc

    def contains(self, v: Sequence[int]) -> bool:
        return (self.bound - self.value(v)).sign() >= 0

    def leading_minors(self) -> list[FieldElement]:
        return _linalg.leading_minors(self.matrix)


def _quad3(ginv, t):
    return sum((ginv[a][b] * (t[a] * t[b]) for a in range(3) for b in range(3)),
               start=ginv[0][0] * 0)


def finiteness_radius(profile: KappaProfile, x1: Sequence, x2: Sequence, lam,
                      slack=0) -> MajorantForm:
    """Majorant form of span(kappa, x1, x2) and the ellipsoid bound for the pairing box.

    For isotropic delta, q(delta) = 2 t^T Gamma^-1 t with t the pairings of
    delta against kappa, x1, x2 and Gamma their Gram matrix; the bound is the
    maximum of that over the box, attained at a vertex.
    """
    ctx = profile.ctx
    lam = ctx.coerce(lam)
    slack = Fraction(slack)
    if lam.sign() < 0 or slack < 0:
        raise ValueError("lambda and slack must be nonnegative")
    plane = (tuple(profile.kappa), tuple(ctx.coerce(x) for x in x1), tuple(ctx.coerce(x) for x in x2))
    gamma = [[ctx.coerce(pairing(p, q)) for q in plane] for p in plane]
    minors = _linalg.leading_minors(gamma)
    if len(minors) < 3 or any(m.sign() <= 0 for m in minors):
        raise ValueError("kappa, x1, x2 do not span a positive definite 3-space")
    one, zero = ctx.one(), ctx.zero()
    aug = [row + [one if i == j else zero for j in range(3)] for i, row in enumerate(gamma)]
    red, _ = _linalg.rref(aug)
    ginv = tuple(tuple(row[3:]) for row in red)
    duals = [gram_dual(p) for p in plane]
    mat = [[None] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(i, 6):
            acc = ctx.rational(-GRAM[i][j])
            for a in range(3):
                da = duals[a][i]
                for b in range(3):
                    acc = acc + ginv[a][b] * da * duals[b][j] * 2
            mat[i][j] = mat[j][i] = acc
    best = None
    for s1 in (1, -1):
        for s2 in (1, -1):
            val = _quad3(ginv, (lam, ctx.rational(s1 * slack), ctx.rational(s2 * slack)))
            if best is None or (val - best).sign() > 0:
                best = val
    return MajorantForm(tuple(tuple(r) for r in mat), best * 2, plane, ginv, lam, slack)


def _interval_matrix(mat, bits):
    return [[x.to_interval(bits) for x in row] for row in mat]


def _mid(iv):
    return (iv[0] + iv[1]) / 2


def _int_range(c: Fraction, r2: Fraction) -> tuple[int, int]:
    """All integers v with (v - c)^2 <= r2, as an inclusive range (empty if lo > hi)."""
    if r2 < 0:
        return 1, 0
    s = math.sqrt(float(r2)) if r2 < 10 ** 300 else float(r2) ** 0.5
    lo = math.floor(c - s) - 1
    hi = math.ceil(c + s) + 1
    while lo <= hi and (lo - c) ** 2 > r2:
        lo += 1
    while hi >= lo and (hi - c) ** 2 > r2:
        hi -= 1
    return lo, hi


def _fp_subtree(d, mu, bound, top_value):
    n = len(d)
    y = [0] * n
    out = []

    def rec(i, rem):
        c = -sum((mu[i][j] * y[j] for j in range(i + 1, n) if y[j]), start=Fraction(0))
        lo, hi = _int_range(c, rem / d[i])
        for v in range(lo, hi + 1):
            t = rem - d[i] * (v - c) ** 2
            if t < 0:
                continue
            y[i] = v
            if i == 0:
                out.append(tuple(y))
            else:
                rec(i - 1, t)
        y[i] = 0

    i = n - 1
    t = bound - d[i] * top_value ** 2
    if t >= 0:
        y[i] = top_value
        if i == 0:
            out.append(tuple(y))
        else:
            rec(i - 1, t)
    return out


def _map(fn: Callable, args: Iterable[tuple], jobs: int) -> list:
    args = list(args)
    if jobs <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, *zip(*args)))


def short_vectors(gram: Sequence[Sequence[Fraction]], bound: Fraction,
                  jobs: int = 1) -> list[tuple[int, ...]]:
    """All integral y with y^T gram y <= bound for a rational PD Gram matrix (exact)."""
    n = len(gram)
    t = _linalg.lll_gram(gram)
    tcols = _linalg.transpose(t)
    red = [[sum(tcols[i][a] * gram[a][b] * tcols[j][b] for a in range(n) for b in range(n))
            for j in range(n)] for i in range(n)]
    dec = _linalg.ldl(red)
    if dec is None:
        raise ValueError("Gram matrix is not positive definite")
    ys = _fincke_pohst(dec, Fraction(bound), jobs)
    return sorted(tuple(sum(t[r][c] * y[c] for c in range(n)) for r in range(n)) for y in ys)


def _fincke_pohst(dec, bound: Fraction, jobs: int) -> list[tuple[int, ...]]:
    d, mu = dec
    n = len(d)
    top_lo, top_hi = _int_range(Fraction(0), bound / d[n - 1])
    chunks = _map(_fp_subtree, [(d, mu, bound, v) for v in range(top_lo, top_hi + 1)], jobs)
    return [y for chunk in chunks for y in chunk]


def _reduced_setup(form: MajorantForm):
    """LLL basis T for q and a rational lower form q_low <= T^T q T, with its LDL data.

    A rational approximation of q is LLL-reduced to get the unimodular T;
    the exact reduced form is then rounded outward to q_low.
    """
    mat = form.matrix
    bits = 96
    while True:
        approx = [[_mid(iv) for iv in row] for row in _interval_matrix(mat, bits)]
        if _linalg.ldl(approx) is None:
            bits *= 2
            if bits > 1 << 14:
                raise ArithmeticError("majorant form is not numerically positive definite")
            continue
        t = _linalg.lll_gram(approx)
        tcols = _linalg.transpose(t)
        reduced = [[_bilinear(mat, tcols[i], tcols[j]) for j in range(6)] for i in range(6)]
        ivs = _interval_matrix(reduced, bits)
        eps = max(max(iv[1] - iv[0] for iv in row) for row in ivs) / 2
        # y^T (q - q_mid) y >= -eps (sum |y_i|)^2 >= -6 eps |y|^2
        low = [[_mid(ivs[i][j]) - (6 * eps if i == j else 0) for j in range(6)] for i in range(6)]
        dec = _linalg.ldl(low)
        if dec is not None:
            return t, tcols, dec, ivs, bits
        bits *= 2


def _check_points(form, t, ivs, bits, ys):
    blo, bhi = form.bound.to_interval(bits)
    out = []
    for y in ys:
        v = tuple(sum(t[r][c] * y[c] for c in range(6)) for r in range(6))
        lo, hi = _quad_interval(ivs, y)
        if hi <= blo or (lo <= bhi and form.contains(v)):
            out.append(v)
    out.sort()
    return out


def lattice_points_in_ellipsoid(form: MajorantForm, jobs: int = 1) -> list[tuple[int, ...]]:
    """Every integral v with q(v) <= bound, sorted lexicographically.

    Fincke-Pohst on the outward-rounded reduced form, then an exact check
    of every candidate against q.
    """
    if form.bound.sign() < 0:
        return []
    t, _, dec, ivs, bits = _reduced_setup(form)
    _, bhi = form.bound.to_interval(bits)
    return _check_points(form, t, ivs, bits, _fincke_pohst(dec, bhi, jobs))


@dataclass(frozen=True)
class IsotropicFamily:
    """The isotropic vectors base + n*step for lo <= n <= hi.

    base and step are isotropic and orthogonal, so every member is isotropic.
    """

    base: tuple[int, ...]
    step: tuple[int, ...]
    lo: int
    hi: int

    def __len__(self):
        return max(0, self.hi - self.lo + 1)

    def member(self, n: int) -> tuple[int, ...]:
        return tuple(a + n * b for a, b in zip(self.base, self.step))

    def members(self):
        for n in range(self.lo, self.hi + 1):
            yield self.member(n)

    def to_json(self) -> dict:
        return {"base": list(self.base), "step": list(self.step), "n_range": [self.lo, self.hi]}


@dataclass(frozen=True)
class IsotropicPlane:
    """Isotropic vectors base + y0*b0 + y1*b1 with (y0, y1) in an ellipse.

    b0, b1 span a totally isotropic plane orthogonal to the isotropic base.
    The ellipse is d0 (y0 + m y1 + c0)^2 + d1 (y1 + c1)^2 <= rem.
    """

    base: tuple[int, ...]
    b0: tuple[int, ...]
    b1: tuple[int, ...]
    ellipse: tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction]

    def y1_range(self) -> tuple[int, int]:
        d0, d1, m, c0, c1, rem = self.ellipse
        return _int_range(-c1, rem / d1)

    def lines(self):
        """The plane as one IsotropicFamily (in the b0 direction) per y1."""
        d0, d1, m, c0, c1, rem = self.ellipse
        lo1, hi1 = self.y1_range()
        for y1 in range(lo1, hi1 + 1):
            r = rem - d1 * (y1 + c1) ** 2
            lo, hi = _int_range(-(m * y1 + c0), r / d0)
            if lo <= hi:
                base = tuple(a + y1 * b for a, b in zip(self.base, self.b1))
                yield IsotropicFamily(base, self.b0, lo, hi)

    def to_json(self) -> dict:
        return {"base": list(self.base), "b0": list(self.b0), "b1": list(self.b1),
                "ellipse": [str(x) for x in self.ellipse]}


def _solve_linear_2(a: int, b: int, c: int):
    """Integral (y0, y1) with a y0 + b y1 = c as (particular, direction), or None."""
    g = math.gcd(a, b)
    if c % g:
        return None
    # extended Euclid: a*x + b*y = g
    x0, y0, x1, y1, r0, r1 = 1, 0, 0, 1, a, b
    while r1:
        q = r0 // r1
        x0, x1, y0, y1, r0, r1 = x1, x0 - q * x1, y1, y0 - q * y1, r1, r0 - q * r1
    if r0 < 0:
        x0, y0 = -x0, -y0
    k = c // g
    return (x0 * k, y0 * k), (b // g, -a // g)


def _fp_isotropic(d, mu, bound, top_value, gred):
    """Fincke-Pohst with the innermost coordinates solved from isotropy.

    After reduction the first basis vectors are the shortest, so their
    coordinates have the longest ranges.  <y, y>_G is at most quadratic in
    y0, which pins it to two values, or leaves a whole isotropic line.  When
    b0, b1 span a totally isotropic plane, isotropy is linear in (y0, y1):
    the solutions form a line, or the whole plane.
    """
    n = len(d)
    y = [0] * n
    singles, lines, planes = [], [], []
    plane = gred[0][0] == 0 and gred[0][1] == 0 and gred[1][1] == 0

    def gw(i, start):
        return sum(gred[i][j] * y[j] for j in range(start, n) if y[j])

    def ww(start):
        return sum(gred[i][j] * y[i] * y[j] for i in range(start, n) if y[i]
                   for j in range(start, n) if y[j])

    def center(i):
        return sum((mu[i][j] * y[j] for j in range(i + 1, n) if y[j]), start=Fraction(0))

    def leaf0(rem):
        c = -center(0)
        lo, hi = _int_range(c, rem / d[0])
        if lo > hi:
            return
        c2, c1, c0 = gred[0][0], gw(0, 1), ww(1)
        if c2:
            disc = c1 * c1 - c2 * c0
            if disc < 0:
                return
            r = math.isqrt(disc)
            if r * r != disc:
                return
            roots = {num // c2 for num in (-c1 + r, -c1 - r) if num % c2 == 0}
        elif c1:
            roots = {-c0 // (2 * c1)} if c0 % (2 * c1) == 0 else set()
        else:
            if c0 == 0:
                lines.append((tuple(y), (1,) + (0,) * (n - 1), lo, hi))
            return
        for v in sorted(roots):
            if lo <= v <= hi:
                y[0] = v
                singles.append(tuple(y))
        y[0] = 0

    def leaf1(rem):
        # q_low in (y0, y1): d0 (y0 + mu01 y1 + k0)^2 + d1 (y1 + k1)^2 <= rem
        k0, k1, m01 = center(0), center(1), mu[0][1]
        if rem < 0:
            return
        a, b, c = 2 * gw(0, 2), 2 * gw(1, 2), -ww(2)
        if a == 0 and b == 0:
            if c == 0:
                planes.append((tuple(y), (d[0], d[1], m01, k0, k1, rem)))
            return
        sol = _solve_linear_2(a, b, c)
        if sol is None:
            return
        (p0, p1), (s0, s1) = sol
        # along (p0 + t s0, p1 + t s1): quadratic A t^2 + B t + C
        u0, u1 = p0 + m01 * p1 + k0, p1 + k1
        w0, w1 = s0 + m01 * s1, s1
        qa = d[0] * w0 * w0 + d[1] * w1 * w1
        qb = 2 * (d[0] * u0 * w0 + d[1] * u1 * w1)
        qc = d[0] * u0 * u0 + d[1] * u1 * u1
        cen = -qb / (2 * qa)
        lo, hi = _int_range(cen, (rem - qc) / qa + cen * cen)
        if lo <= hi:
            base = (p0, p1) + tuple(y[2:])
            lines.append((base, (s0, s1) + (0,) * (n - 2), lo, hi))

    def rec(i, rem):
        if i == 1 and plane:
            leaf1(rem)
            return
        if i == 0:
            leaf0(rem)
            return
        c = -center(i)
        lo, hi = _int_range(c, rem / d[i])
        for v in range(lo, hi + 1):
            t = rem - d[i] * (v - c) ** 2
            if t < 0:
                continue
            y[i] = v
            rec(i - 1, t)
        y[i] = 0

    t = bound - d[n - 1] * top_value ** 2
    if t >= 0:
        y[n - 1] = top_value
        rec(n - 2, t)
    return singles, lines, planes


def isotropic_points_in_ellipsoid(form: MajorantForm, jobs: int = 1):
    """Isotropic integral v != 0 with q(v) <= bound.

    Returns (singles, lines, planes).  Singles are checked exactly against
    q.  Lines (IsotropicFamily) and planes (IsotropicPlane) cover supersets
    of the ellipsoid points they contain, so callers filter their members
    with their own exact conditions.
    """
    if form.bound.sign() < 0:
        return [], [], []
    t, tcols, dec, ivs, bits = _reduced_setup(form)
    _, bhi = form.bound.to_interval(bits)
    gred = [[pairing(tcols[i], tcols[j]) for j in range(6)] for i in range(6)]
    d = dec[0]
    top_lo, top_hi = _int_range(Fraction(0), bhi / d[5])
    parts = _map(_fp_isotropic, [(d, dec[1], bhi, v, gred) for v in range(top_lo, top_hi + 1)], jobs)

    def vec(y):
        return tuple(sum(t[r][c] * y[c] for c in range(6)) for r in range(6))

    ys = [y for p in parts for y in p[0] if any(y)]
    singles = _check_points(form, t, ivs, bits, ys)
    lines = sorted((IsotropicFamily(vec(b), vec(s), lo, hi) for p in parts for b, s, lo, hi in p[1]),
                   key=lambda f: (f.base, f.step, f.lo))
    planes = sorted((IsotropicPlane(vec(b), tuple(tcols[0]), tuple(tcols[1]), e)
                     for p in parts for b, e in p[2]), key=lambda f: f.base)
    return singles, lines, planes


def family_pairing_range(fam: IsotropicFamily, profile: KappaProfile, lam) -> IsotropicFamily:
    """Restrict a family to the members with 0 < <kappa, v> <= lambda (exact)."""
    lam = profile.ctx.coerce(lam)
    pu = profile.pairing_with(fam.base)
    pb = profile.pairing_with(fam.step)
    if pb.is_zero():
        ok = pu.sign() > 0 and (lam - pu).sign() >= 0
        return fam if ok else IsotropicFamily(fam.base, fam.step, 1, 0)
    # 0 < pu + n pb <= lam
    a, b = -pu / pb, (lam - pu) / pb
    if pb.sign() > 0:
        lo, hi = a.floor() + 1, b.floor()
    else:
        lo, hi = -((-b).floor()), -((-a).floor()) - 1
    return IsotropicFamily(fam.base, fam.step, max(lo, fam.lo), min(hi, fam.hi))


def _bilinear(mat, x, y):
    acc = mat[0][0] * 0
    for i in range(6):
        if not x[i]:
            continue
        for j in range(6):
            if y[j]:
                acc = acc + mat[i][j] * (x[i] * y[j])
    return acc


def _quad_interval(ivs, y):
    lo = hi = Fraction(0)
    for i in range(6):
        if not y[i]:
            continue
        for j in range(6):
            if not y[j]:
                continue
            w = y[i] * y[j]
            a, b = ivs[i][j]
            if w > 0:
                lo += w * a
                hi += w * b
            else:
                lo += w * b
                hi += w * a
    return lo, hi


def delta_candidates(form: MajorantForm, profile: KappaProfile, lam, jobs: int = 1):
    """Elements of Delta_{kappa,lambda} in the ellipsoid, families kept compact.

    Returns (classes, lines, planes): ``classes`` are the isolated members;
    ``lines`` are isotropic lines restricted to the pairing range and
    ``planes`` isotropic planes, whose members still need the primitivity,
    pairing and ellipsoid tests.
    """
    singles, lines, planes = isotropic_points_in_ellipsoid(form, jobs)
    screen = PairingScreen(profile, lam)
    cands = [v for v in singles if math.gcd(*v) == 1]
    classes = []
    if cands:
        for v, p in screen.select(np.array(cands, dtype=object)):
            classes.append(delta_class(v, profile, lam, pairing_value=p))
    lines = [f for f in (family_pairing_range(f, profile, lam) for f in lines) if len(f)]
    return classes, lines, planes


def enumerate_delta_in_ellipsoid(form: MajorantForm, profile: KappaProfile, lam,
                                 jobs: int = 1, max_members: int = 10 ** 6) -> list[DeltaClass]:
    """All delta in Delta_{kappa,lambda} with q(delta) <= bound, sorted lexicographically.

    Isotropic families are expanded member by member; more than
    ``max_members`` of them raises ValueError.
    """
    classes, lines, planes = delta_candidates(form, profile, lam, jobs)
    for pl in planes:
        lines.extend(f for f in (family_pairing_range(f, profile, lam) for f in pl.lines()) if len(f))
    if sum(len(f) for f in lines) > max_members:
        raise ValueError(f"isotropic families hold more than max_members={max_members} vectors")
    seen = {dc.delta for dc in classes}
    for f in lines:
        for v in f.members():
            if v not in seen and any(v) and math.gcd(*v) == 1 and form.contains(v):
                seen.add(v)
                classes.append(delta_class(v, profile, lam))
    classes.sort(key=lambda dc: dc.delta)
    return classes


# -- exhaustive oracle ------------------------------------------------------------

class PairingScreen:
    """Batch test of 0 < <kappa, delta> <= lambda for many integral delta.

    A float evaluation with a rigorous error radius settles almost every
    vector; the rest are decided in exact arithmetic.
    """

    def __init__(self, profile: KappaProfile, lam):
        self.profile = profile
        self.lam = profile.ctx.coerce(lam)
        self.dual = [profile.ctx.coerce(x) for x in gram_dual(profile.kappa)]
        ivs = [x.to_interval(80) for x in self.dual]
        self.f = np.array([float(_mid(iv)) for iv in ivs])
        lam_iv = self.lam.to_interval(80)
        self.lam_lo = float(lam_iv[0]) - 1e-15 * (1 + abs(float(lam_iv[0])))
        self.lam_hi = float(lam_iv[1]) + 1e-15 * (1 + abs(float(lam_iv[1])))

    def exact(self, v) -> FieldElement:
        acc = self.profile.ctx.zero()
        for c, w in zip(v, self.dual):
            if c:
                acc = acc + w * int(c)
        return acc

    def select(self, vecs: np.ndarray) -> list[tuple[tuple[int, ...], FieldElement]]:
        """Rows of ``vecs`` passing the pairing range, with exact pairing values."""
        if len(vecs) == 0:
            return []
        small = vecs.dtype != object or max(abs(int(x)) for x in vecs.flat) < 2 ** 40
        out = []
        if small:
            fv = vecs.astype(np.float64)
            val = fv @ self.f
            err = (np.abs(fv) @ (np.abs(self.f) + 1.0)) * 2.0 ** -40
            sure_out = (val + err <= 0) | (val - err > self.lam_hi)
            keep = ~sure_out
            idx = np.nonzero(keep)[0]
        else:
            idx = range(len(vecs))
        for i in idx:
            v = tuple(int(x) for x in vecs[i])
            p = self.exact(v)
            if p.sign() > 0 and (self.lam - p).sign() >= 0:
                out.append((v, p))
        return out


def _box_slice(x1: int, bound: int):
    """All isotropic indivisible vectors with first coordinate x1 in the box."""
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    g2, g3, g4, g5 = np.meshgrid(r, r, r, r, indexing="ij")
    g2, g3, g4, g5 = (a.ravel() for a in (g2, g3, g4, g5))
    # isotropy: x1*x6 - x2*x5 + x3*x4 = 0
    num = g2 * g5 - g3 * g4
    if x1 != 0:
        ok = num % x1 == 0
        x6 = num[ok] // x1
        sel = np.abs(x6) <= bound
        rows = np.stack([np.full(sel.sum(), x1), g2[ok][sel], g3[ok][sel],
                         g4[ok][sel], g5[ok][sel], x6[sel]], axis=1)
    else:
        ok = num == 0
        base = np.stack([g2[ok], g3[ok], g4[ok], g5[ok]], axis=1)
        reps = len(r)
        rows = np.concatenate([
            np.repeat(np.zeros((len(base), 1), dtype=np.int64), reps, axis=0),
            np.repeat(base, reps, axis=0),
            np.tile(r, len(base)).reshape(-1, 1)], axis=1)
    if len(rows) == 0:
        return rows
    g = np.gcd.reduce(np.abs(rows), axis=1)
    return rows[g == 1]


def brute_force_delta_box(profile: KappaProfile, lam, box: int, jobs: int = 1) -> list[DeltaClass]:
    """Every element of Delta_{kappa,lambda} with max-norm <= box, by exhaustive scan."""
    if box <= 0:
        return []
    screen = PairingScreen(profile, lam)
    slices = _map(_box_slice, [(x1, box) for x1 in range(-box, box + 1)], jobs)
    out = []
    for rows in slices:
        for v, p in screen.select(rows):
            out.append(delta_class(v, profile, lam, pairing_value=p))
    out.sort(key=lambda dc: dc.delta)
    return out
