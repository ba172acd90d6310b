"""Weight schemes for Norlund-type summability means.

A scheme generates the weights q_0, q_1, ... and their partial sums
Q_n = q_0 + ... + q_{n-1}.  Named families:

    fejer        q_k = 1                     Q_n = n
    cesaro(a)    q_k = C_k^(a-1)             Q_n = C_{n-1}^a,  0 < a <= 1
    norlund-log  q_0 = 0, q_k = 1/k          Q_n = l_n = 1 + 1/2 + ... + 1/(n-1)
    riesz-log    divisor on k, not n-k: the mean is (1/l_n) * sum S_k/k.
                 Not a Norlund mean; carried here so the one engine serves all.
    power-law(b) q_k = (k+1)**(-b)           float only; witness family for the
                 sharpness diagnostics of the q_0*n**a/Q_n blow-up condition
    custom       explicit rational sequence

C_n^a denotes the binomial-type coefficient (a+1)(a+2)...(a+n)/n! with
C_0^a = 1, computed by the recursion C_n = C_{n-1}*(a+n)/n.  With that
convention the weights telescope exactly: sum_{k<n} C_k^(a-1) = C_{n-1}^a,
so the cesaro scheme is a genuine Norlund scheme and cesaro(1) is fejer.

The general theory assumes q_0 > 0 and Q_n -> infinity; norlund-log violates
q_0 > 0 and is flagged (q0_positive = False) so predicate checks can exempt
it instead of silently lying.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import PreconditionError

_LOG_KINDS = ("riesz-log", "norlund-log")


# ---------------------------------------------------------------------------
# Cesaro coefficients
# ---------------------------------------------------------------------------

def _check_cesaro_order(alpha) -> None:
    if float(alpha) in (-1.0, -2.0, -3.0) or (
            isinstance(alpha, Fraction) and alpha.denominator == 1 and alpha <= -1):
        raise PreconditionError(f"cesaro order {alpha} is a negative integer")


def cesaro_coefficient(alpha: float, n: int) -> float:
    """C_n^alpha = (alpha+1)...(alpha+n)/n! with C_0 = 1."""
    _check_cesaro_order(alpha)
    if n < 0:
        raise PreconditionError("coefficient index must be nonnegative")
    out = 1.0
    for i in range(1, n + 1):
        out *= (alpha + i) / i
    return out


def cesaro_coefficient_exact(alpha: Fraction, n: int) -> Fraction:
    _check_cesaro_order(alpha)
    if n < 0:
        raise PreconditionError("coefficient index must be nonnegative")
    alpha = Fraction(alpha)
    out = Fraction(1)
    for i in range(1, n + 1):
        out *= Fraction(alpha + i, i)
    return out


def _prod_arith(s: int, t: int, lo: int, hi: int) -> int:
    # product of s + t*i for lo <= i <= hi, by binary splitting (keeps bigints balanced)
    if lo > hi:
        return 1
    if hi - lo < 16:
        out = 1
        for i in range(lo, hi + 1):
            out *= s + t * i
        return out
    mid = (lo + hi) // 2
    return _prod_arith(s, t, lo, mid) * _prod_arith(s, t, mid + 1, hi)


def _reduced_fraction(num: int, den: int) -> Fraction:
    """Fraction(num, den) with the reduction done in GMP when available.

    CPython's schoolbook gcd/division make Fraction construction quadratic in
    the operand size; at the multi-megabit integers the divergence
    certificates produce that costs seconds, so route through gmpy2 if it is
    importable and fall back to the stock constructor otherwise.
    """
    try:
        import gmpy2
    except ImportError:
        return Fraction(num, den)
    g = gmpy2.gcd(num, den)
    if g > 1:
        num = int(num // g)
        den = int(den // g)
    return Fraction(num, den)


def cesaro_cumulative_exact(alpha: Fraction, n: int) -> Fraction:
    """Exact Q_n = C_{n-1}^alpha for the cesaro(alpha) scheme, closed form.

    Usable at generalized-number-system scales (n around 2**20) where the
    term-by-term recursion would be hopeless: C_m^(s/t) = prod (s+t*i)/(t*i).
    """
    alpha = Fraction(alpha)
    _check_cesaro_order(alpha)
    if n < 1:
        raise PreconditionError("partial sums start at n = 1")
    m = n - 1
    s, t = alpha.numerator, alpha.denominator
    num = _prod_arith(s, t, 1, m)
    return _reduced_fraction(num, t ** m * math.factorial(m))


# ---------------------------------------------------------------------------
# the scheme object
# ---------------------------------------------------------------------------

@dataclass
class WeightScheme:
    kind: str
    alpha: Fraction | None = None
    beta: float | None = None
    custom: tuple[Fraction, ...] | None = None
    label: str | None = None
    _q: list = field(default_factory=list, repr=False)
    _Q: list = field(default_factory=list, repr=False)
    _Q_big: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind == "cesaro":
            if self.alpha is None or not 0 < self.alpha <= 1:
                raise PreconditionError("cesaro order must lie in (0, 1]")
            self.alpha = Fraction(self.alpha)
        if self.kind == "power-law":
            if self.beta is None or not 0 < self.beta < 1:
                raise PreconditionError("power-law exponent must lie in (0, 1)")
        if self.kind == "custom":
            if not self.custom:
                raise PreconditionError("custom scheme needs at least one weight")
            self.custom = tuple(Fraction(q) for q in self.custom)
            if any(q < 0 for q in self.custom):
                raise PreconditionError("custom weights must be nonnegative")
        self._Q = [Fraction(0)]

    # -- single weights ---------------------------------------------------

    @property
    def float_only(self) -> bool:
        return self.kind == "power-law"

    def weight_exact(self, k: int) -> Fraction:
        if k < 0:
            raise PreconditionError("weight index must be nonnegative")
        if self.kind == "fejer":
            return Fraction(1)
        if self.kind == "cesaro":
            while len(self._q) <= k:
                i = len(self._q)
                if i == 0:
                    self._q.append(Fraction(1))
                else:
                    self._q.append(self._q[-1] * (self.alpha - 1 + i) / i)
            return self._q[k]
        if self.kind in _LOG_KINDS:
            return Fraction(0) if k == 0 else Fraction(1, k)
        if self.kind == "custom":
            if k >= len(self.custom):
                raise PreconditionError(
                    f"custom scheme has {len(self.custom)} weights, index {k} requested")
            return self.custom[k]
        raise PreconditionError(f"scheme {self.kind!r} has no exact weights")

    def weights_upto(self, k_max: int) -> np.ndarray:
        """Float q_0 .. q_{k_max} as one array."""
        if k_max < 0:
            raise PreconditionError("weight index must be nonnegative")
        count = k_max + 1
        ks = np.arange(count, dtype=np.float64)
        if self.kind == "fejer":
            return np.ones(count)
        if self.kind == "cesaro":
            a = float(self.alpha)
            factors = np.ones(count)
            factors[1:] = (a - 1 + ks[1:]) / ks[1:]
            return np.cumprod(factors)
        if self.kind in _LOG_KINDS:
            q = np.zeros(count)
            q[1:] = 1.0 / ks[1:]
            return q
        if self.kind == "power-law":
            return (ks + 1.0) ** (-self.beta)
        if count > len(self.custom):
            raise PreconditionError(
                f"custom scheme has {len(self.custom)} weights, q_{k_max} requested")
        return np.array([float(v) for v in self.custom[:count]])

    def weight(self, k: int) -> float:
        if self.kind == "power-law":
            if k < 0:
                raise PreconditionError("weight index must be nonnegative")
            return (k + 1) ** (-self.beta)
        if self.kind == "cesaro" and k > 256:
            return float(self.weights_upto(k)[k])
        return float(self.weight_exact(k))

    # -- partial sums -------------------------------------------------------

    def partial_exact(self, n: int) -> Fraction:
        """Q_n as an exact rational.

        fejer and cesaro have closed forms valid at any n; the other kinds
        accumulate term by term, which is refused beyond 20000 terms because
        exact harmonic-type denominators grow exponentially.
        """
        if n < 0:
            raise PreconditionError("partial sum index must be nonnegative")
        if self.float_only:
            raise PreconditionError(f"{self.kind} scheme is float-only")
        if self.kind == "fejer":
            return Fraction(n)
        if self.kind == "cesaro" and n > 4096:
            if n not in self._Q_big:
                self._Q_big[n] = cesaro_cumulative_exact(self.alpha, n)
            return self._Q_big[n]
        if self.kind in _LOG_KINDS and n > 20000:
            raise PreconditionError("exact logarithmic partial sums capped at n = 20000")
        while len(self._Q) <= n:
            k = len(self._Q) - 1
            self._Q.append(self._Q[-1] + self.weight_exact(k))
        return self._Q[n]

    def partials_upto(self, n_max: int) -> np.ndarray:
        """Float Q_0 .. Q_{n_max} as one array (cached cumulative sums)."""
        if n_max < 0:
            raise PreconditionError("partial sum index must be nonnegative")
        if n_max > (1 << 24):
            raise PreconditionError("float partial-sum table capped at 2**24 entries")
        cache = getattr(self, "_Qf", None)
        if cache is None or len(cache) <= n_max:
            count = max(n_max, 256)
            if self.kind == "custom":
                count = min(count, len(self.custom))
                if count < n_max:
                    raise PreconditionError(
                        f"custom scheme has {len(self.custom)} weights, Q_{n_max} requested")
            ks = np.arange(count, dtype=np.float64)
            if self.kind == "fejer":
                q = np.ones(count)
            elif self.kind == "cesaro":
                a = float(self.alpha)
                factors = np.ones(count)
                factors[1:] = (a - 1 + ks[1:]) / ks[1:]
                q = np.cumprod(factors)
            elif self.kind in _LOG_KINDS:
                q = np.zeros(count)
                q[1:] = 1.0 / ks[1:]
            elif self.kind == "power-law":
                q = (ks + 1.0) ** (-self.beta)
            else:
                if count > len(self.custom):
                    raise PreconditionError(
                        f"custom scheme has {len(self.custom)} weights, Q_{n_max} requested")
                q = np.array([float(v) for v in self.custom[:count]])
            self._Qf = np.concatenate([[0.0], np.cumsum(q)])
            cache = self._Qf
        return cache[:n_max + 1]

    def partial(self, n: int) -> float:
        if self.kind == "fejer":
            return float(n)
        if self.kind == "cesaro" and n > 4096:
            a = float(self.alpha)
            return math.exp(math.lgamma(n + a) - math.lgamma(n) - math.lgamma(a + 1))
        return float(self.partials_upto(n)[n])

    # -- declared structure ---------------------------------------------------

    @property
    def q0_positive(self) -> bool:
        if self.kind in ("fejer", "cesaro", "power-law"):
            return True
        if self.kind == "norlund-log":
            return False
        if self.kind == "riesz-log":
            return False
        return self.custom[0] > 0

    @property
    def is_norlund(self) -> bool:
        return self.kind != "riesz-log"

    @property
    def min_mean_index(self) -> int:
        """Smallest n for which the associated mean is defined."""
        return 2 if self.kind in _LOG_KINDS else 1

    @property
    def nondecreasing(self) -> bool:
        if self.kind == "fejer":
            return True
        if self.kind == "cesaro":
            return self.alpha == 1
        if self.kind in _LOG_KINDS or self.kind == "power-law":
            return False
        qs = self.custom
        return all(a <= b for a, b in zip(qs, qs[1:]))

    @property
    def nonincreasing(self) -> bool:
        if self.kind in ("fejer", "cesaro", "power-law"):
            return True
        if self.kind in _LOG_KINDS:
            return False  # q jumps from q_0 = 0 to q_1 = 1
        qs = self.custom
        return all(a >= b for a, b in zip(qs, qs[1:]))

    @property
    def monotonicity(self) -> str:
        if self.nondecreasing and self.nonincreasing:
            return "constant"
        if self.nondecreasing:
            return "nondecreasing"
        if self.nonincreasing:
            return "nonincreasing"
        return "neither"

    # -- serialization ----------------------------------------------------------

    def spec_string(self) -> str:
        if self.kind == "cesaro":
            return f"cesaro:alpha={self.alpha}"
        if self.kind == "power-law":
            return f"power-law:beta={self.beta}"
        if self.kind == "custom":
            return self.label or "custom:<inline>"
        return self.kind

    def __str__(self):
        return self.spec_string()


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def fejer_weights() -> WeightScheme:
    return WeightScheme("fejer")


def cesaro_weights(alpha) -> WeightScheme:
    return WeightScheme("cesaro", alpha=Fraction(alpha))


def riesz_log_weights() -> WeightScheme:
    return WeightScheme("riesz-log")


def norlund_log_weights() -> WeightScheme:
    return WeightScheme("norlund-log")


def custom_weights(qs, label: str | None = None) -> WeightScheme:
    return WeightScheme("custom", custom=tuple(Fraction(q) for q in qs), label=label)


def power_law_weights(beta: float) -> WeightScheme:
    return WeightScheme("power-law", beta=float(beta))


def make_weights(kind: str, n_max: int = 1, **params) -> WeightScheme:
    """Dispatcher mirroring the text spec grammar; n_max pre-warms the caches."""
    if kind == "fejer":
        sch = fejer_weights()
    elif kind == "cesaro":
        sch = cesaro_weights(params["alpha"])
    elif kind == "riesz-log":
        sch = riesz_log_weights()
    elif kind == "norlund-log":
        sch = norlund_log_weights()
    elif kind == "custom":
        sch = custom_weights(params["q"], params.get("label"))
    elif kind == "power-law":
        sch = power_law_weights(params["beta"])
    else:
        raise PreconditionError(f"unknown weight kind {kind!r}")
    if n_max < 1:
        raise PreconditionError("n_max must be at least 1")
    if sch.kind == "custom" and n_max > len(sch.custom):
        raise PreconditionError(
            f"custom scheme has {len(sch.custom)} weights but n_max = {n_max}")
    return sch


def parse_scheme(spec: str) -> WeightScheme:
    """Parse a scheme spec string: fejer | cesaro:alpha=1/2 | riesz-log |
    norlund-log | power-law:beta=0.7 | custom:file=<path>."""
    spec = spec.strip()
    if spec in ("fejer", "riesz-log", "norlund-log"):
        return make_weights(spec)
    if spec.startswith("cesaro:"):
        body = spec[len("cesaro:"):]
        if not body.startswith("alpha="):
            raise PreconditionError(f"bad cesaro spec {spec!r}")
        return cesaro_weights(Fraction(body[len("alpha="):]))
    if spec.startswith("power-law:"):
        body = spec[len("power-law:"):]
        if not body.startswith("beta="):
            raise PreconditionError(f"bad power-law spec {spec!r}")
        return power_law_weights(float(Fraction(body[len("beta="):])))
    if spec.startswith("custom:file="):
        path = Path(spec[len("custom:file="):])
        try:
            lines = [ln.strip() for ln in path.read_text().splitlines()]
        except OSError as exc:
            raise PreconditionError(f"cannot read custom weights: {exc}") from exc
        qs = [Fraction(ln) for ln in lines if ln and not ln.startswith("#")]
        return custom_weights(qs, label=spec)
    raise PreconditionError(f"unknown scheme spec {spec!r}")


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

@dataclass
class RegularityReport:
    """Finite-range decay report for the ratios q_{n-1}/Q_n.

    A scheme with q_0 > 0 and Q_n -> infinity sums every convergent sequence
    to its limit exactly when this ratio tends to 0; no limit is asserted
    here, only the observed trend.  looks_regular is a heuristic: the trend
    must not be increasing and the final ratio must have dropped to at most
    max(0.05 * first ratio, 1e-9).
    """

    ns: np.ndarray
    ratios: np.ndarray
    trend: str
    first_ratio: float
    final_ratio: float
    looks_regular: bool


def regularity_probe(scheme: WeightScheme, n_max: int, n_min: int | None = None) -> RegularityReport:
    if n_min is None:
        n_min = scheme.min_mean_index
    if n_max < n_min:
        raise PreconditionError("empty probe range")
    ns = np.arange(n_min, n_max + 1)
    q = scheme.weights_upto(n_max - 1)[ns - 1]
    Q = scheme.partials_upto(n_max)[ns]
    if np.any(Q <= 0):
        raise PreconditionError("Q_n must be positive on the probe range")
    ratios = q / Q
    diffs = np.diff(ratios)
    if np.all(diffs <= 1e-15):
        trend = "decreasing"
    elif np.all(diffs >= -1e-15):
        trend = "increasing"
    else:
        trend = "mixed"
    first, final = float(ratios[0]), float(ratios[-1])
    looks = trend != "increasing" and final <= max(0.05 * first, 1e-9)
    return RegularityReport(ns, ratios, trend, first, final, looks)


@dataclass
class PredicateReport:
    which: str
    holds: bool | None
    exempt: bool
    rows: list[tuple]
    summary: dict


def condition_predicates(scheme: WeightScheme, which: str, *, alpha: float | None = None,
                         c: float = 1.0, n_max: int = 256) -> PredicateReport:
    """Finite-range evaluation of the monotone-scheme conditions.

    cond1: q_0/Q_n >= c/n              (lower bound used by the nondecreasing
                                        divergence construction)
    cond4: q_0/Q_n >= c/n**alpha       (nonincreasing variant)
    cond3: boundedness proxies n**alpha*q_0/Q_n and |q_n - q_{n+1}|*n**(2-alpha);
           verdict: max over the upper half of the range within 25% of the max
           over the lower half, for both proxies
    cond2: growth of q_0*n**alpha/Q_n; verdict: max over the last decade of
           the range at least 1.5x the max over the first decade

    Schemes with q_0 = 0 are exempt from cond1/cond2/cond4 (holds = None).
    """
    if which not in ("cond1", "cond2", "cond3", "cond4"):
        raise PreconditionError(f"unknown predicate {which!r}")
    if which in ("cond2", "cond3", "cond4"):
        if alpha is None or not 0 < alpha <= 1:
            raise PreconditionError("these predicates need alpha in (0, 1]")
    if n_max < scheme.min_mean_index:
        raise PreconditionError("n_max below the scheme's smallest mean index")
    ns = np.arange(scheme.min_mean_index, n_max + 1)
    Q = scheme.partials_upto(n_max)[ns]
    q0 = scheme.weight(0)
    exempt = not scheme.q0_positive and which in ("cond1", "cond2", "cond4")
    rows: list[tuple] = []
    summary: dict = {"n_max": n_max, "c": c, "alpha": alpha, "q0": q0}
    if exempt:
        summary["reason"] = "q_0 = 0 violates the standing assumption; predicate vacuous"
        return PredicateReport(which, None, True, rows, summary)

    if which in ("cond1", "cond4"):
        rhs = c / ns if which == "cond1" else c / ns ** float(alpha)
        lhs = q0 / Q
        ok = lhs >= rhs - 1e-15
        rows = list(zip(ns.tolist(), lhs.tolist(), rhs.tolist(), ok.tolist()))
        holds = bool(np.all(ok))
        summary["violations"] = int(np.sum(~ok))
        return PredicateReport(which, holds, False, rows, summary)

    if which == "cond2":
        g = q0 * ns ** float(alpha) / Q
        rows = list(zip(ns.tolist(), g.tolist()))
        # blow-up trend: compare the first and last decades of the probe range
        lo_mask = ns <= max(10 * ns[0], ns[0] + 9)
        hi_mask = ns >= max(n_max // 10, ns[0])
        lo, hi = float(np.max(g[lo_mask])), float(np.max(g[hi_mask]))
        summary.update(max_first_decade=lo, max_last_decade=hi)
        return PredicateReport(which, bool(hi >= 1.5 * lo), False, rows, summary)

    # cond3
    b1 = ns ** float(alpha) * q0 / Q
    qtab = scheme.weights_upto(n_max + 1)
    qn = qtab[ns]
    qn1 = qtab[ns + 1]
    b2 = np.abs(qn - qn1) * ns ** (2.0 - float(alpha))
    rows = list(zip(ns.tolist(), b1.tolist(), b2.tolist()))
    half = len(ns) // 2
    ok1 = float(np.max(b1[half:])) <= 1.25 * float(np.max(b1[:half])) + 1e-15
    ok2 = float(np.max(b2[half:])) <= 1.25 * float(np.max(b2[:half])) + 1e-15
    summary.update(proxy1_max=float(np.max(b1)), proxy2_max=float(np.max(b2)),
                   proxy1_bounded=ok1, proxy2_bounded=ok2)
    return PredicateReport(which, bool(ok1 and ok2), False, rows, summary)


def abel_weight_identity_holds(scheme: WeightScheme, n: int) -> bool:
    """Exact check of Q_n = sum_{j<n} (q_{n-j} - q_{n-j-1})*j + q_0*n."""
    if scheme.float_only:
        raise PreconditionError("identity check needs exact weights")
    if n < 1:
        raise PreconditionError("n must be at least 1")
    total = Fraction(0)
    for j in range(1, n):
        total += (scheme.weight_exact(n - j) - scheme.weight_exact(n - j - 1)) * j
    total += scheme.weight_exact(0) * n
    return total == scheme.partial_exact(n)
