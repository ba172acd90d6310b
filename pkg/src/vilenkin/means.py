"""Summability means, their kernels, and maximal operators.

Three independent routes to the same mean are kept on purpose:

  * norlund_mean        literal weighted sum (1/Q_n) * sum q_{n-k} S_k f
  * norlund_mean_abel   the summation-by-parts form driven by the running
                        arithmetic means:  (1/Q_n) * (sum (q_{n-j}-q_{n-j-1})
                        * j * sigma_j f + q_0 * n * sigma_n f)
  * mean_via_multiplier the spectral form: coefficient v is damped by
                        Q_{n-v}/Q_n (an exact rearrangement of the first)

The first two must agree for every scheme; the multiplier route is the fast
path the sweeps use, cross-checked against the definitional one in the test
suite.  The riesz-log mean (1/l_n) * sum_{k<n} S_k f / k is not of weighted
(n-k) type; the same engine serves it through its own multiplier
(l_n - l_{v+1})/l_n and a dedicated branch of the definitional loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclo import Cyclo
from .errors import ExactArithmeticError, PreconditionError
from .gridfn import EXACT, FLOAT, GridFunction, Spectrum
from .group import VilenkinGroup
from .transform import character_grid, dirichlet_kernel, inverse_transform
from .weights import WeightScheme


def _check_index(scheme: WeightScheme, n: int, group: VilenkinGroup):
    if n > group.size:
        raise PreconditionError(f"mean index {n} exceeds the grid size {group.size}")
    if n < scheme.min_mean_index:
        raise PreconditionError(
            f"{scheme.kind} mean undefined for n = {n} (needs n >= {scheme.min_mean_index})")
    if scheme.partial(n) <= 0:
        raise PreconditionError(f"Q_{n} is not positive for scheme {scheme}")


def _definitional_weights(scheme: WeightScheme, n: int, exact: bool):
    """Weight applied to S_k f for k = 1..n."""
    if scheme.kind == "riesz-log":
        if exact:
            return [Fraction(1, k) if k < n else Fraction(0) for k in range(1, n + 1)]
        return [1.0 / k if k < n else 0.0 for k in range(1, n + 1)]
    if exact:
        return [scheme.weight_exact(n - k) for k in range(1, n + 1)]
    return [scheme.weight(n - k) for k in range(1, n + 1)]


def _normalizer(scheme: WeightScheme, n: int, exact: bool):
    # riesz-log normalizes by l_n, which equals the norlund-log partial sum
    if scheme.kind == "riesz-log":
        from .weights import norlund_log_weights
        log = norlund_log_weights()
        return log.partial_exact(n) if exact else log.partial(n)
    return scheme.partial_exact(n) if exact else scheme.partial(n)


def norlund_mean(spectrum: Spectrum, scheme: WeightScheme, n: int) -> GridFunction:
    """The n-th mean of the Fourier series by the literal defining sum."""
    group = spectrum.group
    _check_index(scheme, n, group)
    exact = spectrum.is_exact
    if exact and scheme.float_only:
        raise PreconditionError(f"{scheme.kind} scheme cannot drive exact means")
    weights = _definitional_weights(scheme, n, exact)
    norm = _normalizer(scheme, n, exact)
    if not exact:
        S = np.zeros(group.size, dtype=np.complex128)
        acc = np.zeros(group.size, dtype=np.complex128)
        for k in range(1, n + 1):
            c = spectrum.coeffs[k - 1]
            if c:
                S = S + c * character_grid(group, k - 1).values
            w = weights[k - 1]
            if w:
                acc = acc + w * S
        return GridFunction(group, acc / norm)
    order = group.zeta_order
    S = [Cyclo.zero(order) for _ in range(group.size)]
    acc = [Cyclo.zero(order) for _ in range(group.size)]
    for k in range(1, n + 1):
        c = spectrum.coeffs[k - 1]
        if c.terms:
            chi = character_grid(group, k - 1, EXACT)
            S = [s + c * x for s, x in zip(S, chi.values)]
        w = weights[k - 1]
        if w:
            acc = [a + s * w for a, s in zip(acc, S)]
    inv = Fraction(1) / norm
    return GridFunction(group, [a * inv for a in acc])


def norlund_mean_abel(spectrum: Spectrum, scheme: WeightScheme, n: int) -> GridFunction:
    """The same mean through summation by parts over the arithmetic means.

    Uses j*sigma_j f = S_1 f + ... + S_j f, so the difference weights
    q_{n-j} - q_{n-j-1} multiply running partial-sum totals.  Only defined for
    weighted (n-k) schemes; the riesz-log mean has no such form.
    """
    group = spectrum.group
    if not scheme.is_norlund:
        raise PreconditionError("summation-by-parts form requires a weighted (n-k) scheme")
    _check_index(scheme, n, group)
    exact = spectrum.is_exact
    if exact and scheme.float_only:
        raise PreconditionError(f"{scheme.kind} scheme cannot drive exact means")
    norm = _normalizer(scheme, n, exact)
    if not exact:
        S = np.zeros(group.size, dtype=np.complex128)
        cum = np.zeros(group.size, dtype=np.complex128)
        acc = np.zeros(group.size, dtype=np.complex128)
        for j in range(1, n + 1):
            c = spectrum.coeffs[j - 1]
            if c:
                S = S + c * character_grid(group, j - 1).values
            cum = cum + S
            if j < n:
                dw = scheme.weight(n - j) - scheme.weight(n - j - 1)
                if dw:
                    acc = acc + dw * cum
            else:
                acc = acc + scheme.weight(0) * cum
        return GridFunction(group, acc / norm)
    order = group.zeta_order
    S = [Cyclo.zero(order) for _ in range(group.size)]
    cum = [Cyclo.zero(order) for _ in range(group.size)]
    acc = [Cyclo.zero(order) for _ in range(group.size)]
    for j in range(1, n + 1):
        c = spectrum.coeffs[j - 1]
        if c.terms:
            chi = character_grid(group, j - 1, EXACT)
            S = [s + c * x for s, x in zip(S, chi.values)]
        cum = [u + s for u, s in zip(cum, S)]
        if j < n:
            dw = scheme.weight_exact(n - j) - scheme.weight_exact(n - j - 1)
        else:
            dw = scheme.weight_exact(0)
        if dw:
            acc = [a + u * dw for a, u in zip(acc, cum)]
    inv = Fraction(1) / norm
    return GridFunction(group, [a * inv for a in acc])


def mean_multipliers(scheme: WeightScheme, n: int) -> np.ndarray:
    """Damping factors on coefficients 0..n-1: Q_{n-v}/Q_n (divisor form for riesz)."""
    if scheme.kind == "riesz-log":
        from .weights import norlund_log_weights
        ell = norlund_log_weights().partials_upto(n)
        return (ell[n] - ell[1:n + 1]) / ell[n]
    Q = scheme.partials_upto(n)
    return Q[n - np.arange(n)] / Q[n]


def mean_via_multiplier(spectrum: Spectrum, scheme: WeightScheme, n: int) -> GridFunction:
    """Fast route: scale the spectrum by the eigen-multipliers and synthesize."""
    group = spectrum.group
    _check_index(scheme, n, group)
    if spectrum.is_exact:
        raise ExactArithmeticError("multiplier fast path is float-only; "
                                   "use norlund_mean for exact means")
    mult = np.zeros(group.size, dtype=np.complex128)
    mult[:n] = mean_multipliers(scheme, n)
    return inverse_transform(Spectrum(group, spectrum.coeffs * mult))


@dataclass
class KernelFunction:
    """Convolution kernel of the n-th mean, with its provenance."""

    values: GridFunction
    n: int
    scheme: WeightScheme

    def integral(self):
        return self.values.integral()


def norlund_kernel(scheme: WeightScheme, n: int, group: VilenkinGroup,
                   mode: str = FLOAT, method: str = "fast") -> KernelFunction:
    """Kernel (1/Q_n) * sum q_{n-k} D_k whose convolution realizes the mean.

    method="fast" synthesizes from the multipliers; method="definitional"
    sums brute-force Dirichlet kernels and serves as the oracle.
    """
    _check_index(scheme, n, group)
    if method == "fast":
        if mode != FLOAT:
            raise ExactArithmeticError("fast kernel path is float-only")
        mult = np.zeros(group.size, dtype=np.complex128)
        mult[:n] = mean_multipliers(scheme, n)
        vals = inverse_transform(Spectrum(group, mult))
        return KernelFunction(vals, n, scheme)
    if method != "definitional":
        raise PreconditionError(f"unknown kernel method {method!r}")
    exact = mode == EXACT
    weights = _definitional_weights(scheme, n, exact)
    norm = _normalizer(scheme, n, exact)
    if not exact:
        acc = np.zeros(group.size, dtype=np.complex128)
        for k in range(1, n + 1):
            w = weights[k - 1]
            if w:
                acc = acc + w * dirichlet_kernel(group, k).values
        return KernelFunction(GridFunction(group, acc / norm), n, scheme)
    order = group.zeta_order
    acc = [Cyclo.zero(order) for _ in range(group.size)]
    for k in range(1, n + 1):
        w = weights[k - 1]
        if w:
            dk = dirichlet_kernel(group, k, "brute", EXACT)
            acc = [a + d * w for a, d in zip(acc, dk.values)]
    inv = Fraction(1) / norm
    return KernelFunction(GridFunction(group, [a * inv for a in acc]), n, scheme)


def fejer_kernel(group: VilenkinGroup, n: int, mode: str = FLOAT) -> GridFunction:
    """Kernel of the plain arithmetic mean of the first n partial sums."""
    from .weights import fejer_weights
    return norlund_kernel(fejer_weights(), n, group, mode=mode).values


def convolve(f: GridFunction, kernel: GridFunction) -> GridFunction:
    """(f * kernel)(x) = integral f(t) kernel(x - t) dmu(t) on the truncation."""
    group = f.group
    if kernel.group != group:
        raise PreconditionError("convolution across different groups")
    if group.size > 4096:
        raise PreconditionError("quadratic convolution capped at 4096 points")
    if f.mode == FLOAT and kernel.mode == FLOAT:
        out = np.zeros(group.size, dtype=np.complex128)
        for g in range(group.size):
            idx = [group.translate_index(g, t, -1) for t in range(group.size)]
            out[g] = np.dot(f.values, kernel.values[idx]) / group.size
        return GridFunction(group, out)
    if f.mode != kernel.mode:
        raise PreconditionError("mixed value modes")
    order = group.zeta_order
    inv = Fraction(1, group.size)
    vals = []
    for g in range(group.size):
        acc = Cyclo.zero(order)
        for t in range(group.size):
            acc = acc + f.values[t] * kernel.values[group.translate_index(g, t, -1)]
        vals.append(acc * inv)
    return GridFunction(group, vals)


def maximal_mean(spectrum: Spectrum, scheme: WeightScheme, n_max: int) -> GridFunction:
    """Pointwise sup of |mean_n f| over the finite index range up to n_max.

    Starts at n = 2 for the logarithmic means (undefined below), else at 1.
    Float spectra run the multiplier fast path; exact spectra are supported
    when every mean value is rational (all-radix-2 groups and rational
    coefficients), which the translation-invariance probes rely on.
    """
    group = spectrum.group
    start = scheme.min_mean_index
    if n_max < start:
        raise PreconditionError(f"n_max = {n_max} below the first defined mean")
    if n_max > group.size:
        raise PreconditionError("n_max exceeds the grid size")
    if not spectrum.is_exact:
        best = np.zeros(group.size)
        for n in range(start, n_max + 1):
            vals = np.abs(mean_via_multiplier(spectrum, scheme, n).values)
            best = np.maximum(best, vals)
        return GridFunction(group, best.astype(np.complex128))
    best: list[Fraction] = [Fraction(0)] * group.size
    for n in range(start, n_max + 1):
        mean = norlund_mean(spectrum, scheme, n)
        for g, v in enumerate(mean.values):
            f = v.as_fraction()
            if f is None:
                raise ExactArithmeticError(
                    "exact maximal means need rational mean values "
                    "(use an all-radix-2 group or float mode)")
            best[g] = max(best[g], abs(f))
    return GridFunction(group, best)


@dataclass
class DominationRatio:
    """Empirical constant for the scale-kernel domination estimate."""

    ratio: float
    argmax_index: int
    skipped: int
    n: int
    alpha: float


def kernel_domination_ratio(scheme: WeightScheme, alpha: float, n: int,
                            group: VilenkinGroup) -> DominationRatio:
    """sup_x |F_n(x)| / (n**-alpha * sum_j M_j**alpha * |K_{M_j}(x)|).

    F_n is the scheme's kernel, K_{M_j} the arithmetic-mean kernels at scale
    indices M_j <= n.  The j = 0 term is |K_1| = 1 everywhere, so the
    denominator never vanishes; points where it would are skipped and counted
    anyway for the report.
    """
    if not 0 < alpha <= 1:
        raise PreconditionError("alpha must lie in (0, 1]")
    F = norlund_kernel(scheme, n, group).values
    top = 0
    while top + 1 < len(group.scales) and group.scales[top + 1] <= n:
        top += 1
    denom = np.zeros(group.size)
    for j in range(top + 1):
        mj = group.scales[j]
        denom += mj ** alpha * np.abs(fejer_kernel(group, mj).values)
    denom *= float(n) ** (-alpha)
    mask = denom > 0
    skipped = int(np.sum(~mask))
    ratios = np.abs(F.values[mask]) / denom[mask]
    arg = int(np.argmax(ratios))
    return DominationRatio(float(ratios[arg]), arg, skipped, n, float(alpha))
