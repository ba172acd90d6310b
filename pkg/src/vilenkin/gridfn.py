"""Grid functions and spectra on a level-N truncation.

Two value modes share one interface: float mode stores a complex128 numpy
array, exact mode stores a list of Cyclo scalars (rational combinations of
roots of unity).  Haar measure is the normalized counting measure, so the
integral of a grid function is the plain mean of its values.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cyclo import Cyclo
from .errors import ExactArithmeticError, PreconditionError
from .group import MAX_DENSE_POINTS, VilenkinGroup

FLOAT = "float"
EXACT = "exact"


def _check_dense(group: VilenkinGroup):
    if group.size > MAX_DENSE_POINTS:
        raise PreconditionError(
            f"dense grid with {group.size} points exceeds the {MAX_DENSE_POINTS} cap")


def _to_cyclo(group: VilenkinGroup, value) -> Cyclo:
    if isinstance(value, Cyclo):
        return value._lift(group.zeta_order) if group.zeta_order % value.order == 0 else value
    return Cyclo.rational(group.zeta_order, value)


class GridFunction:
    """Complex values, one per point of the level-N grid."""

    __slots__ = ("group", "values")

    def __init__(self, group: VilenkinGroup, values):
        _check_dense(group)
        if isinstance(values, np.ndarray):
            values = np.asarray(values, dtype=np.complex128)
            if values.shape != (group.size,):
                raise PreconditionError("value array has the wrong length")
        else:
            values = [_to_cyclo(group, v) for v in values]
            if len(values) != group.size:
                raise PreconditionError("value list has the wrong length")
        self.group = group
        self.values = values

    # ---- constructors -------------------------------------------------

    @classmethod
    def constant(cls, group: VilenkinGroup, value, mode: str = FLOAT) -> "GridFunction":
        if mode == FLOAT:
            return cls(group, np.full(group.size, complex(value), dtype=np.complex128))
        return cls(group, [_to_cyclo(group, value) for _ in range(group.size)])

    @classmethod
    def zero(cls, group: VilenkinGroup, mode: str = FLOAT) -> "GridFunction":
        return cls.constant(group, 0, mode)

    @classmethod
    def cylinder_indicator(cls, group: VilenkinGroup, level: int, base_digits,
                           mode: str = FLOAT) -> "GridFunction":
        """Indicator of the cylinder of points agreeing with base_digits up to level."""
        base = group.cylinder_base(level, base_digits)
        m = group.scales[level]
        if mode == FLOAT:
            vals = np.zeros(group.size, dtype=np.complex128)
            vals[np.arange(group.size) % m == base] = 1.0
            return cls(group, vals)
        one = Cyclo.rational(group.zeta_order, 1)
        zero = Cyclo.zero(group.zeta_order)
        return cls(group, [one if g % m == base else zero for g in range(group.size)])

    # ---- properties ----------------------------------------------------

    @property
    def mode(self) -> str:
        return FLOAT if isinstance(self.values, np.ndarray) else EXACT

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    def __len__(self) -> int:
        return self.group.size

    # ---- measure and norms ----------------------------------------------

    def integral(self):
        """Integral against normalized Haar measure: (1/M_N) * sum of values."""
        if self.mode == FLOAT:
            return complex(self.values.mean())
        acc = Cyclo.zero(self.group.zeta_order)
        for v in self.values:
            acc = acc + v
        return acc * Fraction(1, self.group.size)

    def abs_values(self) -> np.ndarray:
        if self.mode == FLOAT:
            return np.abs(self.values)
        return np.abs(self.to_float().values)

    def norm_lp(self, p: float) -> float:
        a = self.abs_values()
        if p == np.inf:
            return float(a.max(initial=0.0))
        return float((a ** p).mean() ** (1.0 / p))

    def norm_l1(self) -> float:
        return float(self.abs_values().mean())

    def norm_linf(self) -> float:
        return float(self.abs_values().max(initial=0.0))

    # ---- arithmetic ------------------------------------------------------

    def _require_same(self, other: "GridFunction"):
        if self.group is not other.group and self.group != other.group:
            raise PreconditionError("grid functions live on different groups")
        if self.mode != other.mode:
            raise PreconditionError("mixed value modes")

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._require_same(other)
        if self.mode == FLOAT:
            return GridFunction(self.group, self.values + other.values)
        return GridFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        self._require_same(other)
        if self.mode == FLOAT:
            return GridFunction(self.group, self.values - other.values)
        return GridFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def scaled(self, c) -> "GridFunction":
        if self.mode == FLOAT:
            return GridFunction(self.group, self.values * complex(c))
        return GridFunction(self.group, [v * c for v in self.values])

    # ---- conversions ------------------------------------------------------

    def to_float(self) -> "GridFunction":
        if self.mode == FLOAT:
            return self
        return GridFunction(self.group,
                            np.array([v.to_complex() for v in self.values], dtype=np.complex128))

    def values_as_fractions(self) -> list[Fraction]:
        """Exact real rational values; raises if any value is not rational."""
        if self.mode != EXACT:
            raise ExactArithmeticError("not an exact grid function")
        out = []
        for v in self.values:
            f = v.as_fraction()
            if f is None:
                raise ExactArithmeticError("value is not rational")
            out.append(f)
        return out

    def max_abs_diff(self, other: "GridFunction") -> float:
        a = self.to_float().values
        b = other.to_float().values
        return float(np.abs(a - b).max(initial=0.0))


class Spectrum:
    """Vilenkin-Fourier coefficients f_hat(n) for n < M_N, dense storage."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: VilenkinGroup, coeffs):
        _check_dense(group)
        if isinstance(coeffs, np.ndarray):
            coeffs = np.asarray(coeffs, dtype=np.complex128)
            if coeffs.shape != (group.size,):
                raise PreconditionError("coefficient array has the wrong length")
        else:
            coeffs = [_to_cyclo(group, c) for c in coeffs]
            if len(coeffs) != group.size:
                raise PreconditionError("coefficient list has the wrong length")
        self.group = group
        self.coeffs = coeffs

    @classmethod
    def zero(cls, group: VilenkinGroup, mode: str = FLOAT) -> "Spectrum":
        if mode == FLOAT:
            return cls(group, np.zeros(group.size, dtype=np.complex128))
        return cls(group, [Cyclo.zero(group.zeta_order) for _ in range(group.size)])

    @classmethod
    def delta(cls, group: VilenkinGroup, n: int, value=1, mode: str = FLOAT) -> "Spectrum":
        s = cls.zero(group, mode)
        if mode == FLOAT:
            s.coeffs[n] = complex(value)
        else:
            s.coeffs[n] = _to_cyclo(group, value)
        return s

    @property
    def mode(self) -> str:
        return FLOAT if isinstance(self.coeffs, np.ndarray) else EXACT

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    def __len__(self) -> int:
        return self.group.size

    def coeff(self, n: int):
        return self.coeffs[n]

    def energy(self):
        """sum |f_hat(n)|**2 over the truncation (Parseval left-hand side)."""
        if self.mode == FLOAT:
            return float(np.sum(np.abs(self.coeffs) ** 2))
        acc = Cyclo.zero(self.group.zeta_order)
        for c in self.coeffs:
            acc = acc + c.abs2()
        return acc

    def to_float(self) -> "Spectrum":
        if self.mode == FLOAT:
            return self
        return Spectrum(self.group,
                        np.array([c.to_complex() for c in self.coeffs], dtype=np.complex128))

    def copy(self) -> "Spectrum":
        if self.mode == FLOAT:
            return Spectrum(self.group, self.coeffs.copy())
        return Spectrum(self.group, list(self.coeffs))

    def max_abs_diff(self, other: "Spectrum") -> float:
        a = self.to_float().coeffs
        b = other.to_float().coeffs
        return float(np.abs(a - b).max(initial=0.0))
