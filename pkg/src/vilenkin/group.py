"""Bounded Vilenkin group truncations and mixed-radix index arithmetic.

A group is described by its radix sequence m_0, m_1, ... (each >= 2).  All
computation lives on the level-N quotient: points keep their first N
coordinates, the grid has M_N points, and indices n < M_N expand uniquely in
the generalized number system M_0 = 1, M_{k+1} = m_k * M_k.  Digit order is
little-endian throughout: digit 0 is the fastest-varying coordinate, and a
grid point with digits (x_0, ..., x_{N-1}) sits at flat index sum x_j * M_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import PreconditionError

#: refuse dense grids beyond this many points (exact index arithmetic is unbounded)
MAX_DENSE_POINTS = 1 << 22


@dataclass(frozen=True)
class VilenkinGroup:
    """Level-N truncation of a bounded Vilenkin group.

    radices: the retained m_0 .. m_{N-1}
    scales:  M_0 .. M_N
    lam:     max radix over the truncation
    zeta_order: lcm of the radices; root-of-unity order for exact values
    """

    radices: tuple[int, ...]
    scales: tuple[int, ...]
    lam: int
    zeta_order: int

    @property
    def level(self) -> int:
        return len(self.radices)

    @property
    def size(self) -> int:
        return self.scales[-1]

    def digits(self, n: int) -> tuple[int, ...]:
        """Digit expansion of an index (or grid point) n < M_N."""
        if not 0 <= n < self.size:
            raise PreconditionError(f"index {n} outside [0, {self.size})")
        out = []
        for m in self.radices:
            out.append(n % m)
            n //= m
        return tuple(out)

    def index(self, digits) -> int:
        digits = tuple(digits)
        if len(digits) != self.level:
            raise PreconditionError(f"expected {self.level} digits, got {len(digits)}")
        n = 0
        for d, m, mk in zip(digits, self.radices, self.scales):
            if not 0 <= d < m:
                raise PreconditionError(f"digit {d} outside Z_{m}")
            n += d * mk
        return n

    def translate(self, x, y, sign: int = 1) -> tuple[int, ...]:
        """Coordinatewise (x +/- y) mod m_k; sign=+1 adds, sign=-1 subtracts."""
        if sign not in (1, -1):
            raise PreconditionError("sign must be +1 or -1")
        x, y = tuple(x), tuple(y)
        if len(x) != self.level or len(y) != self.level:
            raise PreconditionError("point has wrong number of digits")
        return tuple((a + sign * b) % m for a, b, m in zip(x, y, self.radices))

    def translate_index(self, g: int, h: int, sign: int = 1) -> int:
        return self.index(self.translate(self.digits(g), self.digits(h), sign))

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.level

    def cylinder_measure(self, level: int) -> Fraction:
        """Haar measure of a level-`level` cylinder: 1 / M_level."""
        if not 0 <= level <= self.level:
            raise PreconditionError("cylinder level outside truncation")
        return Fraction(1, self.scales[level])

    def cylinder_base(self, level: int, digits) -> int:
        """Flat residue identifying the cylinder I_level(digits): sum d_j*M_j, j < level."""
        digits = tuple(digits)
        if len(digits) < level:
            raise PreconditionError("not enough digits for the cylinder level")
        base = 0
        for j in range(level):
            d = digits[j]
            if not 0 <= d < self.radices[j]:
                raise PreconditionError(f"digit {d} outside Z_{self.radices[j]}")
            base += d * self.scales[j]
        return base

    def in_cylinder(self, g: int, level: int, base: int) -> bool:
        return g % self.scales[level] == base


def make_group(radices, level: int | None = None) -> VilenkinGroup:
    """Build a level-N truncation from an explicit radix sequence.

    level defaults to len(radices); it may be smaller (extra radices are
    dropped) but not larger.  Use make_group_cycle for repeating patterns.
    """
    radices = tuple(int(m) for m in radices)
    if level is None:
        level = len(radices)
    if level < 1:
        raise PreconditionError("level must be at least 1")
    if level > len(radices):
        raise PreconditionError("fewer radices than requested level; use make_group_cycle")
    radices = radices[:level]
    if any(m < 2 for m in radices):
        raise PreconditionError("every radix must be >= 2")
    scales = [1]
    for m in radices:
        scales.append(scales[-1] * m)
    return VilenkinGroup(
        radices=radices,
        scales=tuple(scales),
        lam=max(radices),
        zeta_order=lcm(*radices),
    )


def make_group_cycle(cycle, level: int) -> VilenkinGroup:
    """Group whose radix sequence repeats `cycle` out to the requested level."""
    cycle = tuple(int(m) for m in cycle)
    if not cycle:
        raise PreconditionError("empty radix cycle")
    if level < 1:
        raise PreconditionError("level must be at least 1")
    reps = -(-level // len(cycle))
    return make_group(cycle * reps, level)


def scales_for_cycle(cycle, count: int) -> list[int]:
    """M_0 .. M_count for a repeating radix cycle, without building a grid."""
    cycle = tuple(int(m) for m in cycle)
    if not cycle or any(m < 2 for m in cycle):
        raise PreconditionError("cycle must consist of radices >= 2")
    scales = [1]
    for j in range(count):
        scales.append(scales[-1] * cycle[j % len(cycle)])
    return scales
