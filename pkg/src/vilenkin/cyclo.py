"""Exact scalars: rational combinations of roots of unity.

The exact value mode represents every number as a finite sum

    c_0 * zeta**e_0 + c_1 * zeta**e_1 + ...

with rational c_i, where zeta = exp(2*pi*i/L) and L is the lcm of the group
radices.  Single terms (coefficient, exponent) cover characters, Dirichlet
kernel values and the adversarial block coefficients; sums of terms are what
transforms and inner products produce, and the set is closed under + and *.
Zero tests and rationality tests reduce modulo the L-th cyclotomic
polynomial, so they are exact rather than numerical.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import lcm

_RATIONAL = (int, Fraction)


def _divexact(num: list[int], den: list[int]) -> list[int]:
    # little-endian integer polynomial division by a monic divisor; must be exact
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Integer coefficients of the order-th cyclotomic polynomial, little-endian."""
    if order < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (order - 1) + [1]
    for d in range(1, order):
        if order % d == 0:
            poly = _divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class Cyclo:
    """An exact element of Q(zeta_L), stored sparsely as {exponent: coefficient}.

    Exponents are canonicalized mod L; when L is even, zeta**(L/2) = -1 is
    folded into the coefficient sign so exponents stay below L/2.  All-radix-2
    groups therefore degenerate to plain rationals with a single 0 exponent.
    """

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms=None):
        self.order = order
        folded: dict[int, Fraction] = {}
        if terms:
            half = order // 2 if order % 2 == 0 else None
            for e, c in terms.items():
                if not isinstance(c, _RATIONAL):
                    raise TypeError(f"exact coefficients must be rational, got {type(c)!r}")
                c = Fraction(c)
                e %= order
                if half is not None and e >= half:
                    e -= half
                    c = -c
                if c:
                    acc = folded.get(e)
                    if acc is None:
                        folded[e] = c
                    else:
                        acc = acc + c
                        if acc:
                            folded[e] = acc
                        else:
                            del folded[e]
        self.terms = folded

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Cyclo":
        return cls(order, None)

    @classmethod
    def rational(cls, order: int, value) -> "Cyclo":
        return cls(order, {0: Fraction(value)})

    @classmethod
    def root(cls, order: int, exponent: int, coeff=1) -> "Cyclo":
        """coeff * zeta_order**exponent."""
        return cls(order, {exponent: Fraction(coeff)})

    # ---- helpers ------------------------------------------------------

    def _lift(self, order: int) -> "Cyclo":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("cannot lift to a non-multiple order")
        k = order // self.order
        return Cyclo(order, {e * k: c for e, c in self.terms.items()})

    @staticmethod
    def _coerce(value, order: int) -> "Cyclo":
        if isinstance(value, Cyclo):
            return value
        if isinstance(value, _RATIONAL):
            return Cyclo.rational(order, value)
        raise TypeError(f"cannot mix Cyclo with {type(value)!r}")

    def _pair(self, other):
        other = self._coerce(other, self.order)
        order = lcm(self.order, other.order)
        return self._lift(order), other._lift(order), order

    # ---- arithmetic ---------------------------------------------------

    def __add__(self, other):
        a, b, order = self._pair(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Cyclo(order, terms)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other, self.order))

    def __rsub__(self, other):
        return self._coerce(other, self.order) - self

    def __mul__(self, other):
        if isinstance(other, _RATIONAL):
            if not other:
                return Cyclo.zero(self.order)
            f = Fraction(other)
            return Cyclo(self.order, {e: c * f for e, c in self.terms.items()})
        a, b, order = self._pair(other)
        terms: dict[int, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = (e1 + e2) % order
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Cyclo(order, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL):
            return self * (Fraction(1) / Fraction(other))
        raise TypeError("division only by rational scalars")

    def times_root(self, exponent: int) -> "Cyclo":
        """Multiply by zeta**exponent (cheap sparse shift)."""
        return Cyclo(self.order, {e + exponent: c for e, c in self.terms.items()})

    def conj(self) -> "Cyclo":
        return Cyclo(self.order, {-e: c for e, c in self.terms.items()})

    def abs2(self) -> "Cyclo":
        """|value|**2 = value * conj(value)."""
        return self * self.conj()

    # ---- exact predicates ----------------------------------------------

    def reduce(self) -> tuple[Fraction, ...]:
        """Coefficients in the power basis 1, zeta, ..., zeta**(phi(L)-1)."""
        phi = cyclotomic_polynomial(self.order)
        deg = len(phi) - 1
        dense = [Fraction(0)] * self.order
        for e, c in self.terms.items():
            dense[e] += c
        if len(dense) < deg:
            dense += [Fraction(0)] * (deg - len(dense))
        for i in range(len(dense) - 1, deg - 1, -1):
            c = dense[i]
            if c:
                dense[i] = Fraction(0)
                for j in range(deg):
                    dense[i - deg + j] -= c * phi[j]
        return tuple(dense[:deg])

    def is_zero(self) -> bool:
        if not self.terms:
            return True
        return not any(self.reduce())

    def as_fraction(self):
        """The value as a Fraction if it is rational, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and 0 in self.terms:
            return self.terms[0]
        red = self.reduce()
        if any(red[1:]):
            return None
        return red[0]

    def is_rational(self) -> bool:
        return self.as_fraction() is not None

    def __eq__(self, other):
        try:
            diff = self - other
        except TypeError:
            return NotImplemented
        return diff.is_zero()

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    def to_complex(self) -> complex:
        out = 0j
        for e, c in self.terms.items():
            out += float(c) * cmath.exp(2j * cmath.pi * e / self.order)
        return out

    def __repr__(self):
        if not self.terms:
            return "Cyclo(0)"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            bits.append(f"{c}" if e == 0 else f"{c}*z{self.order}^{e}")
        return "Cyclo(" + " + ".join(bits) + ")"
