"""Martingale Hardy-space machinery: atoms, synthesis, maximal functions,
and the weak-type tail probe.

A p-atom is a bounded function supported on one cylinder I with zero mean
over I and sup norm at most mu(I)**(-1/p).  Martingales are synthesized from
coefficient/atom lists; the level-n function applies the scale partial sum
(equivalently, the conditional expectation onto level-n cylinders) to every
atom, which makes the martingale property automatic and exactly checkable.
Only the synthesis direction is built; decomposing a given martingale into
atoms is out of scope here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .cyclo import Cyclo
from .errors import ExactArithmeticError, PreconditionError
from .gridfn import EXACT, FLOAT, GridFunction
from .group import VilenkinGroup
from .means import maximal_mean
from .transform import cylinder_average, forward_transform
from .weights import WeightScheme

_FLOAT_SLACK = 1e-12


# ---------------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------------

@dataclass
class Atom:
    """Candidate p-atom: values on the grid, declared support cylinder, exponent."""

    values: GridFunction
    level: int
    base_digits: tuple[int, ...]
    p: Fraction

    def __post_init__(self):
        self.base_digits = tuple(self.base_digits)
        self.p = Fraction(self.p)
        if not 0 < self.p <= 1:
            raise PreconditionError("atom exponent must lie in (0, 1]")
        group = self.values.group
        if not 0 <= self.level <= group.level:
            raise PreconditionError("support level outside the truncation")

    @property
    def group(self) -> VilenkinGroup:
        return self.values.group

    @property
    def support_base(self) -> int:
        return self.group.cylinder_base(self.level, self.base_digits)

    def support_mask(self) -> np.ndarray:
        group = self.group
        return np.arange(group.size) % group.scales[self.level] == self.support_base

    def sup_bound(self) -> float:
        """mu(I)**(-1/p) = M_level**(1/p)."""
        return float(self.group.scales[self.level]) ** (1.0 / float(self.p))


@dataclass
class AtomVerdict:
    mean_zero: bool
    sup_ok: bool
    supported: bool
    details: dict

    @property
    def ok(self) -> bool:
        return self.mean_zero and self.sup_ok and self.supported


def validate_atom(atom: Atom) -> AtomVerdict:
    """Check the three atom conditions; exact for exact rational-modulus values."""
    group = atom.group
    mask = atom.support_mask()
    details: dict = {"level": atom.level, "p": str(atom.p)}
    if atom.values.mode == EXACT:
        mean = Cyclo.zero(group.zeta_order)
        sup2 = Fraction(0)  # max |value|**2
        supported = True
        for g, v in enumerate(atom.values.values):
            if mask[g]:
                mean = mean + v
                a2 = v.abs2().as_fraction()
                if a2 is None:
                    raise ExactArithmeticError("atom values must have rational modulus "
                                               "for exact validation")
                sup2 = max(sup2, a2)
            elif v.terms and not v.is_zero():
                supported = False
        mean_zero = mean.is_zero()
        # |a| <= M**(v/u) for p = u/v  <=>  |a|**(2u) <= M**(2v)
        u, v = atom.p.numerator, atom.p.denominator
        bound_ok = sup2 ** u <= Fraction(group.scales[atom.level]) ** (2 * v)
        details["sup_squared"] = str(sup2)
        return AtomVerdict(mean_zero, bound_ok, supported, details)
    vals = atom.values.values
    mean = vals[mask].mean() if mask.any() else 0.0
    sup = float(np.abs(vals[mask]).max(initial=0.0))
    off = float(np.abs(vals[~mask]).max(initial=0.0))
    details["mean"] = abs(mean)
    details["sup"] = sup
    details["off_support_max"] = off
    return AtomVerdict(abs(mean) <= _FLOAT_SLACK,
                       sup <= atom.sup_bound() * (1 + _FLOAT_SLACK) + _FLOAT_SLACK,
                       off <= _FLOAT_SLACK,
                       details)


def random_atom(group: VilenkinGroup, level: int, p, rng: np.random.Generator,
                mode: str = EXACT) -> Atom:
    """A valid random p-atom: random rational values on a random cylinder,
    centered to zero mean, scaled to saturate the sup bound when possible."""
    p = Fraction(p)
    base_digits = tuple(int(rng.integers(0, m)) for m in group.radices[:level]) + \
        (0,) * (group.level - level)
    base = group.cylinder_base(level, base_digits)
    m = group.scales[level]
    count = group.size // m
    if mode == EXACT:
        raw = [Fraction(int(rng.integers(-8, 9)), int(rng.integers(1, 9)))
               for _ in range(count)]
        mean = sum(raw, Fraction(0)) / count
        raw = [v - mean for v in raw]
        top = max((abs(v) for v in raw), default=Fraction(0))
        # target sup: M**(1/p) when that is rational (integer 1/p), else M
        ip = 1 / p
        target = Fraction(group.scales[level]) ** ip.numerator if ip.denominator == 1 \
            else Fraction(group.scales[level])
        if top:
            raw = [v * target / top for v in raw]
        vals = [Cyclo.zero(group.zeta_order) for _ in range(group.size)]
        for j, v in enumerate(raw):
            vals[base + j * m] = Cyclo.rational(group.zeta_order, v)
        return Atom(GridFunction(group, vals), level, base_digits, p)
    raw = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    raw -= raw.mean()
    top = np.abs(raw).max(initial=0.0)
    if top > 0:
        raw *= float(group.scales[level]) ** (1.0 / float(p)) / top
    vals = np.zeros(group.size, dtype=np.complex128)
    vals[base + np.arange(count) * m] = raw
    return Atom(GridFunction(group, vals), level, base_digits, p)


def translate_atom(atom: Atom, shift_digits) -> Atom:
    """The atom moved to the cylinder about base + shift (group translation)."""
    group = atom.group
    shift = tuple(shift_digits)
    if atom.values.mode == EXACT:
        vals = [atom.values.values[group.translate_index(g, group.index(shift), -1)]
                for g in range(group.size)]
    else:
        idx = [group.translate_index(g, group.index(shift), -1) for g in range(group.size)]
        vals = atom.values.values[idx]
    new_base = group.translate(atom.base_digits + (0,) * (group.level - len(atom.base_digits)),
                               shift, +1)
    return Atom(GridFunction(group, vals), atom.level, new_base[:group.level], atom.p)


# ---------------------------------------------------------------------------
# martingales from atoms
# ---------------------------------------------------------------------------

@dataclass
class MartingaleSpec:
    """Martingale synthesized as sum mu_k * (level-n projection of atom_k)."""

    group: VilenkinGroup
    coefficients: tuple
    atoms: tuple[Atom, ...]
    p: Fraction

    def level_function(self, n: int) -> GridFunction:
        """f at filtration level n: conditional expectation applied atomwise."""
        if not 0 <= n <= self.group.level:
            raise PreconditionError("level outside the truncation")
        mode = self.atoms[0].values.mode if self.atoms else FLOAT
        out = GridFunction.zero(self.group, mode)
        for mu, atom in zip(self.coefficients, self.atoms):
            out = out + cylinder_average(atom.values, n).scaled(mu)
        return out

    def coefficient_bound(self) -> float:
        """(sum |mu_k|**p)**(1/p): the synthesis-side Hardy-norm upper bound."""
        p = float(self.p)
        total = sum(abs(float(mu)) ** p for mu in self.coefficients)
        return total ** (1.0 / p) if total else 0.0

    def maximal_function(self, n_max: int | None = None) -> GridFunction:
        """Pointwise sup of |level functions| up to n_max (default: full depth)."""
        if n_max is None:
            n_max = self.group.level
        if not 0 <= n_max <= self.group.level:
            raise PreconditionError("level outside the truncation")
        levels = [self.level_function(n) for n in range(n_max + 1)]
        if levels[0].mode == FLOAT:
            best = np.zeros(self.group.size)
            for lv in levels:
                best = np.maximum(best, np.abs(lv.values))
            return GridFunction(self.group, best.astype(np.complex128))
        best = [Fraction(0)] * self.group.size
        for lv in levels:
            for g, v in enumerate(lv.values):
                f = v.as_fraction()
                if f is None:
                    raise ExactArithmeticError("exact maximal function needs rational values")
                best[g] = max(best[g], abs(f))
        return GridFunction(self.group, best)

    def hardy_quasinorm(self, n_max: int | None = None) -> float:
        """L_p quasinorm of the maximal function at the truncation."""
        return self.maximal_function(n_max).norm_lp(float(self.p))


def martingale_from_atoms(coefficients, atoms, p) -> MartingaleSpec:
    p = Fraction(p)
    atoms = tuple(atoms)
    coefficients = tuple(coefficients)
    if len(coefficients) != len(atoms):
        raise PreconditionError("coefficient and atom lists differ in length")
    if not atoms:
        raise PreconditionError("synthesis needs at least one atom (use a zero atom)")
    group = atoms[0].group
    for atom in atoms:
        if atom.group != group:
            raise PreconditionError("atoms live on different groups")
        verdict = validate_atom(atom)
        if not verdict.ok:
            raise PreconditionError(f"invalid atom: {verdict.details}")
    return MartingaleSpec(group, coefficients, atoms, p)


# ---------------------------------------------------------------------------
# weak-L_p quasinorm
# ---------------------------------------------------------------------------

@dataclass
class WeakLpResult:
    raw: float            # sup_t t**p * mu(|g| > t)
    quasinorm: float      # raw**(1/p)
    witness_value: float
    witness_measure: Fraction


def weak_lp_quasinorm(values, p: float, total: int | None = None) -> WeakLpResult:
    """Exact evaluation of the weak-L_p functional over a finite value set.

    On finitely many values the sup over thresholds t of t**p * mu(|g| > t)
    is attained just below an attained value, so it equals
    max over distinct values v of v**p * mu(|g| >= v).
    """
    if p <= 0:
        raise PreconditionError("p must be positive")
    if isinstance(values, GridFunction):
        a = values.abs_values()
        total = len(values)
    else:
        a = np.abs(np.asarray(values, dtype=np.complex128))
        if total is None:
            total = len(a)
    if len(a) == 0 or not np.any(a > 0):
        return WeakLpResult(0.0, 0.0, 0.0, Fraction(0))
    order = np.sort(a)[::-1]
    distinct, first_pos = np.unique(-order, return_index=True)
    distinct = -distinct            # descending distinct values
    counts = np.concatenate([first_pos[1:], [len(order)]])
    # counts[i] = number of entries >= distinct[i]
    best_raw, best_v, best_mu = 0.0, 0.0, Fraction(0)
    for v, c in zip(distinct, counts):
        if v <= 0:
            continue
        mu = Fraction(int(c), total)
        raw = float(v) ** p * float(mu)
        if raw > best_raw:
            best_raw, best_v, best_mu = raw, float(v), mu
    return WeakLpResult(best_raw, best_raw ** (1.0 / p), best_v, best_mu)


# ---------------------------------------------------------------------------
# weak-type tail probe for maximal means of atoms
# ---------------------------------------------------------------------------

@dataclass
class TailProbeResult:
    raw: float
    witness_value: Fraction | float
    witness_measure: Fraction
    complement_measure: Fraction
    exact: bool

    def witness(self) -> tuple:
        return (self.witness_value, self.witness_measure)


def atom_tail_weak_type_probe(scheme: WeightScheme, atom: Atom, p, n_max: int) -> TailProbeResult:
    """sup_rho rho**p * mu{x outside supp(a): maximal mean of a exceeds rho}.

    This is the hypothesis quantity of the atomic weak-type criterion: the
    maximal operator applied to an atom, measured off the atom's support.  No
    theoretical constant is asserted; the value is reported as-is.  Exact
    atoms yield an exact witness pair (value, measure), selected by comparing
    v**num(p) * mu**den(p) in rational arithmetic, so translation invariance
    can be asserted with equality.
    """
    p = Fraction(p)
    if not 0 < p <= 1:
        raise PreconditionError("probe exponent must lie in (0, 1]")
    group = atom.group
    spectrum = forward_transform(atom.values)
    maximal = maximal_mean(spectrum, scheme, n_max)
    mask = ~atom.support_mask()
    comp_measure = Fraction(int(mask.sum()), group.size)
    if not mask.any():
        return TailProbeResult(0.0, Fraction(0), Fraction(0), comp_measure,
                               maximal.mode == EXACT)
    if maximal.mode == EXACT:
        vals = []
        for g in range(group.size):
            if mask[g]:
                f = maximal.values[g].as_fraction()
                if f is None:
                    raise ExactArithmeticError("exact probe needs rational maximal values")
                vals.append(abs(f))
        vals.sort(reverse=True)
        best_key = Fraction(-1)
        best_v, best_mu = Fraction(0), Fraction(0)
        i = 0
        while i < len(vals):
            v = vals[i]
            j = i
            while j < len(vals) and vals[j] == v:
                j += 1
            if v > 0:
                mu = Fraction(j, group.size)   # entries 0..j-1 are all >= v
                key = v ** p.numerator * mu ** p.denominator
                if key > best_key:
                    best_key, best_v, best_mu = key, v, mu
            i = j
        raw = float(best_v) ** float(p) * float(best_mu) if best_v else 0.0
        return TailProbeResult(raw, best_v, best_mu, comp_measure, True)
    off_vals = maximal.values[mask]
    res = weak_lp_quasinorm(off_vals, float(p), total=group.size)
    return TailProbeResult(res.raw, res.witness_value, res.witness_measure,
                           comp_measure, False)


# ---------------------------------------------------------------------------
# atom files
# ---------------------------------------------------------------------------

def atom_to_json(atom: Atom) -> dict:
    group = atom.group
    out = {
        "radices": list(group.radices),
        "level": atom.level,
        "base_digits": list(atom.base_digits),
        "p": str(atom.p),
    }
    if atom.values.mode == EXACT:
        vals = []
        for v in atom.values.values:
            f = v.as_fraction()
            if f is None:
                raise ExactArithmeticError("only rational-valued atoms serialize exactly")
            vals.append(str(f))
        out["values"] = vals
        out["mode"] = "exact"
    else:
        out["values"] = [[float(v.real), float(v.imag)] for v in atom.values.values]
        out["mode"] = "float"
    return out


def atom_from_json(data: dict) -> Atom:
    from .group import make_group
    group = make_group(data["radices"])
    if data.get("mode", "float") == "exact":
        vals = [Fraction(s) for s in data["values"]]
        gf = GridFunction(group, vals)
    else:
        gf = GridFunction(group, np.array([complex(re, im) for re, im in data["values"]],
                                          dtype=np.complex128))
    return Atom(gf, int(data["level"]), tuple(data["base_digits"]), Fraction(data["p"]))


def save_atom(atom: Atom, path) -> None:
    Path(path).write_text(json.dumps(atom_to_json(atom), indent=1))


def load_atom(path) -> Atom:
    return atom_from_json(json.loads(Path(path).read_text()))
