"""The Vilenkin character system and its transform on a level-N truncation.

The characters are products of generalized Rademacher functions,

    r_k(x) = exp(2*pi*i*x_k/m_k),      chi_n(x) = prod_k r_k(x)**n_k,

indexed by the mixed-radix digits of n.  Because the truncated group is a
product of cyclic groups, the analysis transform factorizes into one small
dense character matrix per coordinate; the fast paths below cost
O(M_N * sum m_k) instead of the O(M_N**2) of the literal defining sums, which
are kept as independent oracles for testing.

Conventions: coefficients are f_hat(n) = integral of f * conj(chi_n) with
normalized Haar measure; synthesis is sum f_hat(n) * chi_n with no extra
factor, so analysis carries the 1/M_N.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

import numpy as np

from .cyclo import Cyclo
from .errors import PreconditionError
from .gridfn import EXACT, FLOAT, GridFunction, Spectrum
from .group import VilenkinGroup


# ---------------------------------------------------------------------------
# pointwise characters
# ---------------------------------------------------------------------------

def rademacher(group: VilenkinGroup, k: int, x) -> complex:
    """r_k(x) = exp(2*pi*i*x_k/m_k)."""
    digits = tuple(x)
    if not 0 <= k < group.level:
        raise PreconditionError(f"coordinate {k} outside the truncation")
    return cmath.exp(2j * cmath.pi * digits[k] / group.radices[k])


def rademacher_exact(group: VilenkinGroup, k: int, x) -> Cyclo:
    digits = tuple(x)
    if not 0 <= k < group.level:
        raise PreconditionError(f"coordinate {k} outside the truncation")
    step = group.zeta_order // group.radices[k]
    return Cyclo.root(group.zeta_order, digits[k] * step)


def _character_exponent(group: VilenkinGroup, n: int, g: int) -> int:
    """Exponent e with chi_n(x_g) = zeta_L**e."""
    e = 0
    order = group.zeta_order
    for nk, xk, m in zip(group.digits(n), group.digits(g), group.radices):
        e += nk * xk * (order // m)
    return e % order


def character(group: VilenkinGroup, n: int, x) -> complex:
    """chi_n at the point with the given digits (unit modulus, chi_0 = 1)."""
    g = group.index(tuple(x))
    e = _character_exponent(group, n, g)
    return cmath.exp(2j * cmath.pi * e / group.zeta_order)


def character_exact(group: VilenkinGroup, n: int, x) -> Cyclo:
    g = group.index(tuple(x))
    return Cyclo.root(group.zeta_order, _character_exponent(group, n, g))


def character_grid(group: VilenkinGroup, n: int, mode: str = FLOAT) -> GridFunction:
    """chi_n sampled on the whole grid."""
    if not 0 <= n < group.size:
        raise PreconditionError(f"character index {n} outside [0, {group.size})")
    if mode == EXACT:
        return GridFunction(group, [Cyclo.root(group.zeta_order,
                                               _character_exponent(group, n, g))
                                    for g in range(group.size)])
    out = np.ones(1, dtype=np.complex128)
    for nk, m in zip(group.digits(n), group.radices):
        phase = np.exp(2j * np.pi * nk * np.arange(m) / m)
        out = np.kron(phase, out)
    return GridFunction(group, out)


# ---------------------------------------------------------------------------
# fast factorized transform
# ---------------------------------------------------------------------------

def _tensor_shape(group: VilenkinGroup) -> tuple[int, ...]:
    # row-major layout: last axis is digit 0 (fastest-varying)
    return tuple(reversed(group.radices))


def _apply_axis(arr: np.ndarray, mat: np.ndarray, axis: int) -> np.ndarray:
    moved = np.moveaxis(arr, axis, 0)
    out = np.tensordot(mat, moved, axes=(1, 0))
    return np.moveaxis(out, 0, axis)


def _float_pass(values: np.ndarray, group: VilenkinGroup, sign: int) -> np.ndarray:
    arr = values.reshape(_tensor_shape(group))
    for k, m in enumerate(group.radices):
        idx = np.arange(m)
        mat = np.exp(sign * 2j * np.pi * np.outer(idx, idx) / m)
        arr = _apply_axis(arr, mat, group.level - 1 - k)
    return arr.reshape(group.size)


def _exact_pass(values, group: VilenkinGroup, sign: int):
    order = group.zeta_order
    vals = list(values)
    for k, m in enumerate(group.radices):
        mk = group.scales[k]
        block = mk * m
        step = order // m
        new = list(vals)
        for start in range(0, group.size, block):
            for low in range(mk):
                idx = [start + low + d * mk for d in range(m)]
                old = [vals[i] for i in idx]
                for a in range(m):
                    acc = Cyclo.zero(order)
                    for b in range(m):
                        if old[b].terms:
                            acc = acc + old[b].times_root(sign * a * b * step)
                    new[idx[a]] = acc
        vals = new
    return vals


def forward_transform(f: GridFunction) -> Spectrum:
    """Analysis via the per-coordinate factorization (fast path)."""
    group = f.group
    if f.mode == FLOAT:
        out = _float_pass(f.values, group, sign=-1) / group.size
        return Spectrum(group, out)
    vals = _exact_pass(f.values, group, sign=-1)
    inv = Fraction(1, group.size)
    return Spectrum(group, [v * inv for v in vals])


def inverse_transform(s: Spectrum) -> GridFunction:
    """Synthesis sum f_hat(n) * chi_n (fast path)."""
    group = s.group
    if s.mode == FLOAT:
        return GridFunction(group, _float_pass(s.coeffs, group, sign=+1))
    return GridFunction(group, _exact_pass(s.coeffs, group, sign=+1))


# ---------------------------------------------------------------------------
# literal defining sums; quadratic-time oracles for the fast paths
# ---------------------------------------------------------------------------

def forward_transform_naive(f: GridFunction) -> Spectrum:
    group = f.group
    if f.mode == FLOAT:
        out = np.empty(group.size, dtype=np.complex128)
        for n in range(group.size):
            chi = character_grid(group, n).values
            out[n] = np.dot(f.values, np.conj(chi)) / group.size
        return Spectrum(group, out)
    inv = Fraction(1, group.size)
    coeffs = []
    for n in range(group.size):
        acc = Cyclo.zero(group.zeta_order)
        for g, v in enumerate(f.values):
            if v.terms:
                acc = acc + v.times_root(-_character_exponent(group, n, g))
        coeffs.append(acc * inv)
    return Spectrum(group, coeffs)


def inverse_transform_naive(s: Spectrum) -> GridFunction:
    group = s.group
    if s.mode == FLOAT:
        out = np.zeros(group.size, dtype=np.complex128)
        for n in range(group.size):
            c = s.coeffs[n]
            if c:
                out += c * character_grid(group, n).values
        return GridFunction(group, out)
    vals = [Cyclo.zero(group.zeta_order) for _ in range(group.size)]
    for n in range(group.size):
        c = s.coeffs[n]
        if c.terms:
            for g in range(group.size):
                vals[g] = vals[g] + c.times_root(_character_exponent(group, n, g))
    return GridFunction(group, vals)


# ---------------------------------------------------------------------------
# Dirichlet kernels and partial sums
# ---------------------------------------------------------------------------

def dirichlet_kernel(group: VilenkinGroup, n: int, method: str = "brute",
                     mode: str = FLOAT) -> GridFunction:
    """Kernel of the n-th partial sum: sum of the first n characters.

    method="brute" evaluates the literal character sum for any 1 <= n <= M_N.
    method="closed" is only defined at scale indices n = M_k, where the kernel
    collapses to M_k on the level-k cylinder about 0 and vanishes elsewhere.
    """
    if not 1 <= n <= group.size:
        raise PreconditionError(f"kernel index {n} outside [1, {group.size}]")
    if method == "closed":
        if n not in group.scales:
            raise PreconditionError(f"closed form requires a scale index, got {n}")
        k = group.scales.index(n)
        m = group.scales[k]
        if mode == FLOAT:
            vals = np.zeros(group.size, dtype=np.complex128)
            vals[np.arange(group.size) % m == 0] = m
            return GridFunction(group, vals)
        big = Cyclo.rational(group.zeta_order, m)
        zero = Cyclo.zero(group.zeta_order)
        return GridFunction(group, [big if g % m == 0 else zero for g in range(group.size)])
    if method != "brute":
        raise PreconditionError(f"unknown Dirichlet method {method!r}")
    if mode == FLOAT:
        coeffs = np.zeros(group.size, dtype=np.complex128)
        coeffs[:n] = 1.0
        return inverse_transform(Spectrum(group, coeffs))
    one = Cyclo.rational(group.zeta_order, 1)
    zero = Cyclo.zero(group.zeta_order)
    coeffs = [one if j < n else zero for j in range(group.size)]
    return inverse_transform(Spectrum(group, coeffs))


def partial_sum(s: Spectrum, n: int) -> GridFunction:
    """n-th partial sum of the Fourier series: synthesis of coefficients below n."""
    group = s.group
    if not 1 <= n <= group.size:
        raise PreconditionError(f"partial sum index {n} outside [1, {group.size}]")
    t = s.copy()
    if s.mode == FLOAT:
        t.coeffs[n:] = 0.0
    else:
        zero = Cyclo.zero(group.zeta_order)
        for j in range(n, group.size):
            t.coeffs[j] = zero
    return inverse_transform(t)


def cylinder_average(f: GridFunction, level: int) -> GridFunction:
    """Conditional expectation onto level-`level` cylinders (averages each block).

    At scale indices the partial sum operator coincides with this projection,
    which is the identity both constructions lean on.
    """
    group = f.group
    if not 0 <= level <= group.level:
        raise PreconditionError("cylinder level outside truncation")
    m = group.scales[level]
    blocks = group.size // m
    if f.mode == FLOAT:
        avg = f.values.reshape(blocks, m).mean(axis=0)
        return GridFunction(group, np.tile(avg, blocks))
    inv = Fraction(1, blocks)
    avgs = []
    for low in range(m):
        acc = Cyclo.zero(group.zeta_order)
        for hi in range(blocks):
            acc = acc + f.values[low + hi * m]
        avgs.append(acc * inv)
    return GridFunction(group, [avgs[g % m] for g in range(group.size)])


def inner_product(f: GridFunction, g: GridFunction):
    """(1/M_N) * sum f * conj(g); exact when both arguments are exact."""
    if f.group != g.group:
        raise PreconditionError("inner product across different groups")
    if f.mode == FLOAT and g.mode == FLOAT:
        return complex(np.dot(f.values, np.conj(g.values)) / f.group.size)
    if f.mode != g.mode:
        raise PreconditionError("mixed value modes")
    acc = Cyclo.zero(f.group.zeta_order)
    for a, b in zip(f.values, g.values):
        acc = acc + a * b.conj()
    return acc * Fraction(1, f.group.size)
