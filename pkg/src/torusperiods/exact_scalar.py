"""Exact arithmetic in a multiquadratic real field Q(sqrt d1, ..., sqrt dk).

Elements are stored as an integer numerator per basis radical over one
positive common denominator.  Zero testing is exact (all numerators zero);
this relies on the classical fact that square roots of distinct squarefree
integers are linearly independent over Q.  Signs of nonzero elements are
found by integer interval evaluation at doubling precision.
"""

from __future__ import annotations

import decimal
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "FieldContext",
    "FieldElement",
    "ComplexFieldElement",
    "ContextMismatch",
    "SignUndetermined",
]

MAX_SIGN_PRECISION = 1 << 16


class ContextMismatch(ValueError):
    """Operands live in different field contexts."""


class SignUndetermined(ArithmeticError):
    """Interval refinement hit the precision cap without excluding zero."""


def _squarefree_part(n: int) -> int:
    out = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return out * n


def _is_squarefree(n: int) -> bool:
    return n >= 1 and _squarefree_part(n) == n


@lru_cache(maxsize=4096)
def _sqrt_floor_scaled(m: int, bits: int) -> int:
    """floor(sqrt(m) * 2**bits)."""
    return math.isqrt(m << (2 * bits))


class FieldContext:
    """A fixed multiquadratic field, given by its generating radicands.

    The basis consists of the squarefree parts of all subset products of the
    radicands; the basis index of a subset is its bitmask.
    """

    __slots__ = ("radicands", "basis", "index", "_mul", "_conj_masks")

    def __init__(self, radicands: Iterable[int]):
        rads = tuple(int(d) for d in radicands)
        if len(set(rads)) != len(rads):
            raise ValueError(f"duplicate radicands: {rads}")
        for d in rads:
            if d < 2 or not _is_squarefree(d):
                raise ValueError(f"radicand {d} is not a squarefree integer >= 2")
        basis = []
        for mask in range(1 << len(rads)):
            prod = 1
            for i, d in enumerate(rads):
                if mask >> i & 1:
                    prod *= d
            basis.append(_squarefree_part(prod))
        if len(set(basis)) != len(basis):
            raise ValueError(
                f"radicands {rads} are multiplicatively dependent modulo squares")
        self.radicands = rads
        self.basis = tuple(basis)
        self.index = {m: i for i, m in enumerate(basis)}
        n = len(basis)
        # sqrt(m_i) * sqrt(m_j) = g * sqrt(m_(i xor j))
        self._mul = tuple(
            tuple((i ^ j, math.isqrt(basis[i] * basis[j] // basis[i ^ j]))
                  for j in range(n))
            for i in range(n))
        self._conj_masks = tuple(1 << i for i in range(len(rads)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self.radicands == other.radicands

    def __hash__(self):
        return hash(self.radicands)

    def __repr__(self):
        return f"FieldContext({list(self.radicands)})"

    def __reduce__(self):
        return (FieldContext, (self.radicands,))

    # constructors -------------------------------------------------------
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.dim, 1)

    def one(self) -> "FieldElement":
        return self.rational(1)

    def rational(self, q) -> "FieldElement":
        q = Fraction(q)
        nums = [0] * self.dim
        nums[0] = q.numerator
        return FieldElement(self, tuple(nums), q.denominator)

    def sqrt(self, m: int, coeff=1) -> "FieldElement":
        """coeff * sqrt(m) for a squarefree basis radical m."""
        if m not in self.index:
            raise ValueError(f"sqrt({m}) is not a basis radical of {self!r}")
        q = Fraction(coeff)
        nums = [0] * self.dim
        nums[self.index[m]] = q.numerator
        return FieldElement(self, tuple(nums), q.denominator)

    def element(self, coeffs: Mapping[int, object]) -> "FieldElement":
        """Build from a map {basis radical: rational coefficient}."""
        fr = {int(m): Fraction(c) for m, c in coeffs.items()}
        den = 1
        for c in fr.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [0] * self.dim
        for m, c in fr.items():
            if m not in self.index:
                raise ValueError(f"sqrt({m}) is not a basis radical of {self!r}")
            nums[self.index[m]] += c.numerator * (den // c.denominator)
        return FieldElement(self, tuple(nums), den)

    def coerce(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.ctx != self:
                raise ContextMismatch(f"{x.ctx!r} vs {self!r}")
            return x
        if isinstance(x, (int, Rational)):
            return self.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def to_json(self) -> list:
        return list(self.radicands)


Scalar = Union[int, Fraction, "FieldElement"]


class FieldElement:
    """Immutable element of a multiquadratic field."""

    __slots__ = ("ctx", "nums", "den")

    def __init__(self, ctx: FieldContext, nums: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums = tuple(-a for a in nums)
            den = -den
        g = math.gcd(den, *nums)
        if g != 1:
            nums = tuple(a // g for a in nums)
            den //= g
        self.ctx = ctx
        self.nums = tuple(nums)
        self.den = den

    # -- inspection --------------------------------------------------------
    def coefficients(self) -> dict[int, Fraction]:
        """Nonzero coefficients keyed by basis radical."""
        return {m: Fraction(a, self.den)
                for m, a in zip(self.ctx.basis, self.nums) if a}

    def coefficient_vector(self) -> list[Fraction]:
        return [Fraction(a, self.den) for a in self.nums]

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self.nums[0], self.den)

    def __bool__(self):
        return not self.is_zero()

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.nums[0], self.den))
        return hash((self.ctx, self.nums, self.den))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.nums == other.nums and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        return NotImplemented

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        terms = []
        for m, c in self.coefficients().items():
            terms.append(str(c) if m == 1 else f"{c}*sqrt({m})")
        return " + ".join(terms) if terms else "0"

    def __float__(self):
        if self.is_zero():
            return 0.0
        lo, hi = self.tight_interval(60)
        return float((lo + hi) / 2)

    # -- arithmetic --------------------------------------------------------
    def _other(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ctx.rational(other)
        return None

    def __neg__(self):
        return FieldElement(self.ctx, tuple(-a for a in self.nums), self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return FieldElement(self.ctx, tuple(a + b for a, b in zip(self.nums, o.nums)), self.den)
        return FieldElement(
            self.ctx,
            tuple(a * o.den + b * self.den for a, b in zip(self.nums, o.nums)),
            self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.ctx, tuple(a * other for a in self.nums), self.den)
        o = self._other(other)
        if o is None:
            return NotImplemented
        n = self.ctx.dim
        out = [0] * n
        table = self.ctx._mul
        bn = [(j, b) for j, b in enumerate(o.nums) if b]
        for i, a in enumerate(self.nums):
            if not a:
                continue
            row = table[i]
            for j, b in bn:
                k, g = row[j]
                out[k] += g * a * b
        return FieldElement(self.ctx, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def conjugate_over(self, i: int) -> "FieldElement":
        """Apply the automorphism sqrt(d_i) -> -sqrt(d_i)."""
        bit = self.ctx._conj_masks[i]
        return FieldElement(
            self.ctx,
            tuple(-a if k & bit else a for k, a in enumerate(self.nums)),
            self.den)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        acc = self.ctx.one()
        b = self
        for i in range(len(self.ctx.radicands)):
            c = b.conjugate_over(i)
            acc = acc * c
            b = b * c
        # b is now the (nonzero) rational norm
        return acc * Fraction(b.den, b.nums[0])

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            if not o.nums[0]:
                raise ZeroDivisionError("division by zero field element")
            return self * Fraction(o.den, o.nums[0])
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.ctx.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- order -------------------------------------------------------------
    def scaled_bounds(self, bits: int) -> tuple[int, int]:
        """Integers (L, U) with L <= self * den * 2**bits <= U."""
        lo = hi = 0
        for m, a in zip(self.ctx.basis, self.nums):
            if not a:
                continue
            if m == 1:
                v = a << bits
                lo += v
                hi += v
                continue
            s = _sqrt_floor_scaled(m, bits)
            if a > 0:
                lo += a * s
                hi += a * (s + 1)
            else:
                lo += a * (s + 1)
                hi += a * s
        return lo, hi

    def to_interval(self, precision: int) -> tuple[Fraction, Fraction]:
        """Rational interval [lo, hi] containing the element.

        The width is at most (sum of |coefficients|) * 2**-precision.
        """
        if precision < 1:
            raise ValueError("precision must be >= 1")
        lo, hi = self.scaled_bounds(precision)
        scale = self.den << precision
        return Fraction(lo, scale), Fraction(hi, scale)

    def interval_abs(self, target_bits: int) -> tuple[Fraction, Fraction]:
        """Interval of width at most 2**-target_bits, whatever the coefficient sizes."""
        mass = sum(abs(a) for a in self.nums) or 1
        bits = max(1, target_bits + mass.bit_length() - self.den.bit_length() + 2)
        return self.to_interval(bits)

    def tight_interval(self, rel_bits: int = 64) -> tuple[Fraction, Fraction]:
        """Interval whose width is at most 2**-rel_bits times the magnitude."""
        if self.is_rational():
            q = Fraction(self.nums[0], self.den)
            return q, q
        target = rel_bits
        while True:
            lo, hi = self.interval_abs(target)
            mag = min(abs(lo), abs(hi))
            if (lo > 0 or hi < 0) and (hi - lo) * (1 << rel_bits) <= mag:
                return lo, hi
            target *= 2

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.nums[0] > 0 else -1
        bits = 64
        while bits <= MAX_SIGN_PRECISION:
            lo, hi = self.scaled_bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
        raise SignUndetermined(f"could not separate {self} from 0 at {MAX_SIGN_PRECISION} bits")

    def _cmp(self, other) -> int:
        o = self._other(other)
        if o is None:
            raise TypeError(f"cannot compare FieldElement with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        if self.is_rational():
            return self.nums[0] // self.den
        bits = 64
        while True:
            lo, hi = self.to_interval(bits)
            a, b = math.floor(lo), math.floor(hi)
            if a == b:
                return a
            # candidate boundary b lies inside the interval: decide exactly
            if (self - b).sign() >= 0:
                return b
            if b - a == 1:
                return a
            bits *= 2

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "radicands": list(self.ctx.radicands),
            "coeffs": {str(m): str(c) for m, c in self.coefficients().items()},
        }

    @staticmethod
    def from_json(obj: Mapping, ctx: FieldContext | None = None) -> "FieldElement":
        rc = FieldContext(obj["radicands"]) if "radicands" in obj else None
        if ctx is None:
            if rc is None:
                raise ValueError("field element JSON lacks radicands and no context given")
            ctx = rc
        elif rc is not None and rc != ctx:
            raise ContextMismatch(f"{rc!r} vs {ctx!r}")
        return ctx.element({int(k): Fraction(v) for k, v in obj["coeffs"].items()})

    def decimal_interval(self, digits: int = 30) -> list[str]:
        """[lo, hi] as decimal strings with ``digits`` significant digits, rounded outward."""
        if self.is_zero():
            return ["0", "0"]
        lo, hi = self.tight_interval(int(digits * 3.33) + 8)
        return [_fmt_decimal(lo, digits, decimal.ROUND_FLOOR),
                _fmt_decimal(hi, digits, decimal.ROUND_CEILING)]


def _fmt_decimal(q: Fraction, digits: int, rounding: str) -> str:
    ctx = decimal.Context(prec=digits, rounding=rounding)
    return str(ctx.divide(decimal.Decimal(q.numerator), decimal.Decimal(q.denominator)))


class ComplexFieldElement:
    """re + i*im with re, im in a real multiquadratic field."""

    __slots__ = ("re", "im")

    def __init__(self, re: FieldElement, im: FieldElement | None = None):
        if im is None:
            im = re.ctx.zero()
        if re.ctx != im.ctx:
            raise ContextMismatch(f"{re.ctx!r} vs {im.ctx!r}")
        self.re = re
        self.im = im

    @property
    def ctx(self) -> FieldContext:
        return self.re.ctx

    @classmethod
    def from_parts(cls, ctx: FieldContext, re=0, im=0) -> "ComplexFieldElement":
        return cls(ctx.coerce(re), ctx.coerce(im))

    def _other(self, other):
        if isinstance(other, ComplexFieldElement):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other
        if isinstance(other, (FieldElement, int, Rational)):
            return ComplexFieldElement(self.ctx.coerce(other), self.ctx.zero())
        return None

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"ComplexFieldElement({self.re} + i*({self.im}))"

    def __neg__(self):
        return ComplexFieldElement(-self.re, -self.im)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ComplexFieldElement(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ComplexFieldElement(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational, FieldElement)):
            return ComplexFieldElement(self.re * other, self.im * other)
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ComplexFieldElement(self.re * o.re - self.im * o.im,
                                   self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "ComplexFieldElement":
        return ComplexFieldElement(self.re, -self.im)

    def norm_sq(self) -> FieldElement:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "ComplexFieldElement":
        n = self.norm_sq()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero complex field element")
        ninv = n.inverse()
        return ComplexFieldElement(self.re * ninv, -self.im * ninv)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, FieldElement)):
            inv = self.ctx.coerce(other).inverse()
            return ComplexFieldElement(self.re * inv, self.im * inv)
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    @staticmethod
    def from_json(obj: Mapping, ctx: FieldContext | None = None) -> "ComplexFieldElement":
        re = FieldElement.from_json(obj["re"], ctx)
        return ComplexFieldElement(re, FieldElement.from_json(obj["im"], re.ctx))


def sign(a) -> int:
    """Sign of a field element or rational."""
    if isinstance(a, FieldElement):
        return a.sign()
    return (a > 0) - (a < 0)


def to_interval(a, precision: int) -> tuple[Fraction, Fraction]:
    if isinstance(a, FieldElement):
        return a.to_interval(precision)
    q = Fraction(a)
    return q, q
