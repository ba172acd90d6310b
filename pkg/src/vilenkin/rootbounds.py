"""Rational enclosures for fractional powers of rationals.

The divergence certificates compare quantities such as M**(1/p - 1 - a) or
sqrt(Q*M**a) that are irrational unless the exponents are integers.  Every
such quantity is carried as an interval with exact rational endpoints; strict
inequalities are decided once the endpoints separate, and the caller retries
with more precision when they do not.  Rational quantities are carried as
point intervals, so the common all-integer-exponent case stays fully exact
with no refinement loop at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _iroot_floor(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0 using integer Newton iteration."""
    if n < 0:
        raise ValueError("negative radicand")
    if k == 1 or n in (0, 1):
        return n
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


@dataclass(frozen=True)
class Interval:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("inverted interval")

    @classmethod
    def point(cls, x) -> "Interval":
        f = Fraction(x)
        return cls(f, f)

    @staticmethod
    def _as_interval(x) -> "Interval":
        return x if isinstance(x, Interval) else Interval.point(x)

    def __add__(self, other):
        o = self._as_interval(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._as_interval(other))

    def __rsub__(self, other):
        return self._as_interval(other) - self

    def __mul__(self, other):
        o = self._as_interval(other)
        if self.lo == self.hi and o.lo == o.hi:   # point fast path (big rationals)
            p = self.lo * o.lo
            return Interval(p, p)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._as_interval(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval denominator straddles zero")
        if self.lo == self.hi and o.lo == o.hi:
            q = self.lo / o.lo
            return Interval(q, q)
        quots = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(min(quots), max(quots))

    def __rtruediv__(self, other):
        return self._as_interval(other) / self

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def is_point(self) -> bool:
        return self.lo == self.hi

    def mid_float(self) -> float:
        return float((self.lo + self.hi) / 2)

    # three-valued comparisons: True / False when decided, None when the
    # intervals overlap and more precision is needed
    def ge(self, other):
        o = self._as_interval(other)
        if self.lo >= o.hi:
            return True
        if self.hi < o.lo:
            return False
        return None

    def gt(self, other):
        o = self._as_interval(other)
        if self.lo > o.hi:
            return True
        if self.hi <= o.lo:
            return False
        return None

    def le(self, other):
        return self._as_interval(other).ge(self)

    def lt(self, other):
        return self._as_interval(other).gt(self)


class RootContext:
    """Computes rational-endpoint enclosures at a fixed precision (bits)."""

    def __init__(self, bits: int = 64):
        if bits < 4:
            raise ValueError("bits too small")
        self.bits = bits

    def nth_root(self, value: Fraction, k: int) -> Interval:
        """Enclosure of value ** (1/k) for value >= 0, integer k >= 1."""
        value = Fraction(value)
        if value < 0:
            raise ValueError("negative radicand")
        if k == 1:
            return Interval.point(value)
        if value == 0:
            return Interval.point(Fraction(0))
        scale = 1 << self.bits
        scaled = value * Fraction(scale) ** k
        m = scaled.numerator // scaled.denominator
        r = _iroot_floor(m, k)
        return Interval(Fraction(r, scale), Fraction(r + 2, scale))

    def power(self, base: Fraction, exponent: Fraction) -> Interval:
        """Enclosure of base ** exponent for base >= 0, rational exponent."""
        base = Fraction(base)
        exponent = Fraction(exponent)
        if base < 0:
            raise ValueError("negative base")
        if exponent < 0:
            if base == 0:
                raise ZeroDivisionError("0 to a negative power")
            return Interval.point(Fraction(1)) / self.power(base, -exponent)
        if exponent.denominator == 1:
            return Interval.point(base ** exponent.numerator)
        if base == 0:
            return Interval.point(Fraction(0))
        return self.nth_root(base ** exponent.numerator, exponent.denominator)

    def power_iv(self, base: Interval, exponent: Fraction) -> Interval:
        """Monotone extension of power() to nonnegative interval bases."""
        if base.lo < 0:
            raise ValueError("negative base interval")
        exponent = Fraction(exponent)
        lo = self.power(base.lo, exponent)
        hi = self.power(base.hi, exponent)
        if exponent >= 0:
            return Interval(lo.lo, hi.hi)
        return Interval(hi.lo, lo.hi)

    def sqrt(self, value) -> Interval:
        if isinstance(value, Interval):
            return self.power_iv(value, Fraction(1, 2))
        return self.power(Fraction(value), Fraction(1, 2))


#: precision ladder used by callers that must decide strict inequalities
PRECISION_LADDER = (64, 192, 512, 1536)


def decide(check, what: str = "comparison"):
    """Run check(ctx) over the precision ladder until it returns a bool.

    check must return True/False when the comparison is decided at the given
    precision and None otherwise.
    """
    for bits in PRECISION_LADDER:
        verdict = check(RootContext(bits))
        if verdict is not None:
            return verdict
    raise ArithmeticError(f"could not separate {what} at {PRECISION_LADDER[-1]} bits "
                          "(possible exact tie of irrational quantities)")
