"""Linear combinations and products of approximable atoms.

A :class:`FunctionSpec` is a flat expression: a single atom, a weighted sum
of atoms, or a product of atoms. Chebyshev atoms are functions of x in
[-1, 1]; Laurent atoms are functions of y through ``z = exp(i y)``.

Budgets: a linear combination gives every atom ``delta / max(1, C)`` with
``C = sum |coef|``; a product of K atoms gives every atom ``delta / K``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import chebapprox as ca
from . import laurentapprox as la
from .chebapprox import ApproxReport
from .errors import ParameterError, UsageError, ValidationError
from .polyops import (
    ChebyshevSeries,
    LaurentPoly,
    cheb_eval,
    cheb_mul,
    laurent_eval,
    laurent_mul,
    poly_from_dict,
    sup_norm_error,
)

FAMILIES = ("monomial", "exp", "gauss", "erf")
BASES = ("chebyshev", "laurent-cos", "laurent-sin")
PARAM_NAMES = {"monomial": "n", "exp": "beta", "gauss": "gamma", "erf": "lambda"}

MIN_ATOM_BUDGET = 1e-12
LARGE_C_WARNING = 1e3

_BASIS_ALIASES = {
    "chebyshev": "chebyshev",
    "chebyshev-x": "chebyshev",
    "cheb": "chebyshev",
    "x": "chebyshev",
    "laurent-cos": "laurent-cos",
    "cos": "laurent-cos",
    "cosine": "laurent-cos",
    "laurent-sin": "laurent-sin",
    "sin": "laurent-sin",
    "sine": "laurent-sin",
}


@dataclass(frozen=True)
class Atom:
    family: str
    param: float
    basis: str = "chebyshev"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        basis = _BASIS_ALIASES.get(str(self.basis).lower())
        if basis is None:
            raise ValidationError(f"unknown basis {self.basis!r}; expected one of {BASES}")
        object.__setattr__(self, "basis", basis)
        p = self.param
        if isinstance(p, bool) or not isinstance(p, (int, float)) or not math.isfinite(p):
            raise ValidationError(f"atom parameter must be a finite number, got {p!r}")
        if self.family == "monomial":
            if not float(p).is_integer() or p < 1:
                raise ValidationError(f"monomial order n must be an integer >= 1, got {p}")
            object.__setattr__(self, "param", int(p))
        elif self.family == "gauss":
            if p < 0:
                raise ValidationError(f"gauss gamma must be >= 0, got {p}")
            object.__setattr__(self, "param", float(p))
        else:
            if p <= 0:
                raise ValidationError(f"{self.family} {PARAM_NAMES[self.family]} must be > 0, got {p}")
            object.__setattr__(self, "param", float(p))

    @property
    def is_laurent(self) -> bool:
        return self.basis != "chebyshev"

    @property
    def variant(self) -> str:
        return "sine" if self.basis == "laurent-sin" else "cosine"

    def label(self) -> str:
        return f"{self.family}:{PARAM_NAMES[self.family]}={self.param},basis={self.basis}"

    def to_dict(self) -> dict:
        return {"op": "atom", "family": self.family, "basis": self.basis, "param": self.param}

    def exact(self):
        """Vectorized reference function of x (Chebyshev) or y (Laurent)."""
        trig = {"chebyshev": None, "laurent-cos": np.cos, "laurent-sin": np.sin}[self.basis]
        base = {
            "monomial": ca.monomial_target,
            "exp": ca.exp_target,
            "gauss": ca.gauss_target,
            "erf": ca.erf_target,
        }[self.family](self.param)
        if trig is None:
            return base
        return lambda y: base(trig(np.asarray(y, dtype=float)))


@dataclass(frozen=True)
class LinearComb:
    terms: tuple  # of (coef, Atom)

    def __post_init__(self):
        terms = tuple((float(c), a) for c, a in self.terms)
        if not terms:
            raise ValidationError("linear combination needs at least one term")
        for c, a in terms:
            if not isinstance(a, Atom):
                raise ValidationError(
                    "linear-combination children must be atoms; expand nested expressions by hand"
                )
            if not math.isfinite(c):
                raise ValidationError("coefficients must be finite")
        object.__setattr__(self, "terms", terms)

    def to_dict(self) -> dict:
        return {
            "op": "lincomb",
            "children": [{"coef": c, "atom": a.to_dict()} for c, a in self.terms],
        }


@dataclass(frozen=True)
class Product:
    factors: tuple  # of Atom

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ValidationError("product needs at least one factor")
        for a in factors:
            if not isinstance(a, Atom):
                raise ValidationError(
                    "product children must be atoms; expand nested expressions by hand"
                )
        object.__setattr__(self, "factors", factors)

    def to_dict(self) -> dict:
        return {"op": "product", "children": [{"atom": a.to_dict()} for a in self.factors]}


FunctionSpec = Atom | LinearComb | Product


@dataclass(frozen=True)
class DegreeTuple:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValidationError("degrees must be nonnegative")

    def to_dict(self) -> dict:
        return {"cheb_degree": self.n, "laurent_degree": self.m}


# ------------------------------------------------------------ (de)serialize

def _atom_from_dict(d: dict) -> Atom:
    if not isinstance(d, dict):
        raise ValidationError("atom must be a JSON object")
    if d.get("op", "atom") != "atom":
        raise ValidationError(
            f"nested '{d.get('op')}' inside a composite is not supported; expand it by hand"
        )
    family = d.get("family")
    param = d.get("param")
    if param is None and family in PARAM_NAMES:
        param = d.get(PARAM_NAMES[family])
    if param is None:
        raise ValidationError(f"atom {d!r} is missing its parameter")
    return Atom(family=family, param=param, basis=d.get("basis", "chebyshev"))


def spec_from_dict(d: dict) -> FunctionSpec:
    if not isinstance(d, dict):
        raise ValidationError("function spec must be a JSON object")
    op = d.get("op", "atom")
    if op == "atom":
        return _atom_from_dict(d)
    children = d.get("children")
    if not isinstance(children, list) or not children:
        raise ValidationError(f"'{op}' needs a nonempty children list")
    if op == "lincomb":
        terms = []
        for ch in children:
            if "atom" not in ch:
                raise ValidationError("lincomb child needs an 'atom' entry")
            terms.append((ch.get("coef", 1.0), _atom_from_dict(ch["atom"])))
        return LinearComb(tuple(terms))
    if op == "product":
        factors = []
        for ch in children:
            atom = ch.get("atom", ch)
            if float(ch.get("coef", 1.0)) != 1.0:
                raise ValidationError("product children carry no coefficients (coef must be 1)")
            factors.append(_atom_from_dict(atom))
        return Product(tuple(factors))
    raise ValidationError(f"unknown op {op!r}; expected atom, lincomb or product")


def spec_atoms(spec: FunctionSpec) -> list[tuple[float, Atom]]:
    if isinstance(spec, Atom):
        return [(1.0, spec)]
    if isinstance(spec, LinearComb):
        return list(spec.terms)
    if isinstance(spec, Product):
        return [(1.0, a) for a in spec.factors]
    raise ValidationError(f"not a function spec: {spec!r}")


def spec_summary(spec: FunctionSpec) -> str:
    if isinstance(spec, Atom):
        return spec.label()
    if isinstance(spec, LinearComb):
        return " + ".join(f"{c:g}*[{a.label()}]" for c, a in spec.terms)
    return " * ".join(f"[{a.label()}]" for a in spec.factors)


# ---------------------------------------------------------------- budgets

def coeff_budget_constant(spec: FunctionSpec) -> float:
    """``C = sum |a_i| + sum |b_j|`` of a linear combination."""
    if not isinstance(spec, LinearComb):
        raise UsageError("coeff_budget_constant applies to linear combinations only")
    return math.fsum(abs(c) for c, _ in spec.terms)


def atom_budget(spec: FunctionSpec, delta: float) -> float:
    if isinstance(spec, Atom):
        return delta
    if isinstance(spec, LinearComb):
        C = coeff_budget_constant(spec)
        if C > LARGE_C_WARNING:
            warnings.warn(
                f"coefficient constant C={C:g} is large; per-atom budgets shrink to delta/C",
                stacklevel=3,
            )
        return delta / max(1.0, C)
    return delta / len(spec.factors)


def approximate_atom(atom: Atom, delta: float, measure: bool = True):
    """Dispatch one atom to its approximation routine."""
    p = atom.param
    if atom.basis == "chebyshev":
        fn = {
            "monomial": ca.monomial_approx,
            "exp": ca.exp_approx,
            "gauss": ca.gauss_approx,
            "erf": ca.erf_approx,
        }[atom.family]
        return fn(p, delta, measure=measure)
    fn = {
        "monomial": la.trig_power_approx,
        "exp": la.exp_trig_approx,
        "gauss": la.gauss_trig_approx,
        "erf": la.erf_trig_approx,
    }[atom.family]
    return fn(p, delta, atom.variant, measure=measure)


def _raw_degree(atom: Atom, report: ApproxReport) -> int:
    # monomials report n; the exponential families report their truncation order t
    return int(report.truncation_degree)


def degree_of(spec: FunctionSpec, delta: float = 1e-2) -> DegreeTuple:
    """Raw degree tuple: n for monomials, truncation order t otherwise.

    ``t`` depends on the budget through ``ln(2/delta)``, so the per-atom
    allocation of ``delta`` is applied first. Sums combine by max, products
    by sum; an empty side is 0.
    """
    budget = atom_budget(spec, delta)
    cheb, laur = [], []
    for _, atom in spec_atoms(spec):
        _, rep = approximate_atom(atom, budget, measure=False)
        (laur if atom.is_laurent else cheb).append(_raw_degree(atom, rep))
    agg = sum if isinstance(spec, Product) else (lambda v: max(v, default=0))
    return DegreeTuple(int(agg(cheb)), int(agg(laur)))


# ----------------------------------------------------------- mixed approx

@dataclass
class MixedApprox:
    """Assembled approximant; ``combine`` is ``sum`` or ``product``.

    An absent part contributes 0 to a sum and 1 to a product.
    """

    cheb_part: ChebyshevSeries | None
    laurent_part: LaurentPoly | None
    combine: str
    budget_log: list = field(default_factory=list)

    def evaluate(self, x, theta):
        """Evaluate on matching-shape arrays ``x`` and ``theta``."""
        neutral = 0.0 if self.combine == "sum" else 1.0
        cx = cheb_eval(self.cheb_part, x) if self.cheb_part is not None else neutral
        lz = laurent_eval(self.laurent_part, theta) if self.laurent_part is not None else neutral
        return cx + lz if self.combine == "sum" else cx * lz

    @property
    def degrees(self) -> DegreeTuple:
        return DegreeTuple(
            self.cheb_part.degree if self.cheb_part is not None else 0,
            self.laurent_part.degree if self.laurent_part is not None else 0,
        )

    def to_dict(self) -> dict:
        return {
            "kind": "mixed",
            "combine": self.combine,
            "cheb_part": self.cheb_part.to_dict() if self.cheb_part is not None else None,
            "laurent_part": self.laurent_part.to_dict() if self.laurent_part is not None else None,
            "budget_log": self.budget_log,
        }

    @classmethod
    def from_dict(cls, d: dict) -> MixedApprox:
        if d.get("kind") != "mixed" or d.get("combine") not in ("sum", "product"):
            raise ValidationError("malformed mixed approximation")
        cp = poly_from_dict(d["cheb_part"]) if d.get("cheb_part") else None
        lp = poly_from_dict(d["laurent_part"]) if d.get("laurent_part") else None
        return cls(cp, lp, d["combine"], list(d.get("budget_log", [])))


def exact_function(spec: FunctionSpec):
    """Reference ``F(x, y)`` / ``G(x, y)`` as a function of two arrays."""
    pairs = spec_atoms(spec)
    product = isinstance(spec, Product)

    def f(x, y):
        acc = np.ones(np.broadcast(x, y).shape) if product else np.zeros(np.broadcast(x, y).shape)
        for c, a in pairs:
            v = a.exact()(y if a.is_laurent else x)
            acc = acc * v if product else acc + c * v
        return acc

    return f


def measure_composite_error(spec: FunctionSpec, mixed: MixedApprox, grid: int = 300) -> float:
    """Max deviation over a ``grid x grid`` product grid in (x, theta)."""
    if grid < 2:
        raise ParameterError("grid must have at least two points per axis")
    x = np.linspace(-1.0, 1.0, grid)
    th = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    X, TH = np.meshgrid(x, th, indexing="ij")
    approx = mixed.evaluate(X, TH)
    exact = exact_function(spec)(X, TH)
    return float(np.max(np.abs(approx - exact)))


def _product_bound(bounds: list[float]) -> float:
    """Telescoping bound for a product of factors each bounded by 1.

    ``|prod f - prod p| <= sum_i eps_i prod_{k<i} (1 + eps_k)``.
    """
    total, growth = 0.0, 1.0
    for e in bounds:
        total += e * growth
        growth *= 1.0 + e
    return total


def approximate(spec: FunctionSpec, delta: float, grid: int = 300, measure: bool = True):
    """Approximate a composite at total error ``delta`` in (0, 1/2]."""
    delta = ca._check_delta(delta)
    if not isinstance(spec, (Atom, LinearComb, Product)):
        raise ValidationError(f"not a function spec: {spec!r}")

    if isinstance(spec, Atom):
        poly, rep = approximate_atom(spec, delta, measure=measure)
        mixed = MixedApprox(
            poly if not spec.is_laurent else None,
            poly if spec.is_laurent else None,
            "sum",
            [_log_entry(1.0, spec, delta, rep)],
        )
        rep.extra["degrees"] = mixed.degrees.to_dict()
        rep.extra["raw_degrees"] = _raw_tuple(spec, [rep]).to_dict()
        rep.extra["nominal_degrees"] = _nominal_tuple(spec, [rep]).to_dict()
        return mixed, rep

    budget = atom_budget(spec, delta)
    if budget < MIN_ATOM_BUDGET:
        raise ParameterError(
            f"per-atom budget {budget:.3g} is below {MIN_ATOM_BUDGET:g}; "
            "reduce the coefficients or raise delta"
        )
    pairs = spec_atoms(spec)
    reports, log = [], []
    cheb: ChebyshevSeries | None = None
    laur: LaurentPoly | None = None
    product = isinstance(spec, Product)
    for c, atom in pairs:
        poly, rep = approximate_atom(atom, budget, measure=False)
        reports.append(rep)
        log.append(_log_entry(c, atom, budget, rep))
        if atom.is_laurent:
            if product:
                laur = poly if laur is None else laurent_mul(laur, poly)
            else:
                laur = c * poly if laur is None else laur + c * poly
        else:
            if product:
                cheb = poly if cheb is None else cheb_mul(cheb, poly)
            else:
                cheb = c * poly if cheb is None else cheb + c * poly

    mixed = MixedApprox(cheb, laur, "product" if product else "sum", log)
    bounds = [r.guaranteed_bound for r in reports]
    if product:
        guaranteed = _product_bound(bounds)
        params = {"delta": delta, "factor_count": len(pairs), "atom_budget": budget}
    else:
        guaranteed = math.fsum(abs(c) * b for (c, _), b in zip(pairs, bounds))
        params = {"delta": delta, "C": coeff_budget_constant(spec), "atom_budget": budget}
    degs = mixed.degrees
    report = ApproxReport(
        target_name="product" if product else "lincomb",
        parameters=params,
        truncation_degree=max(_raw_tuple(spec, reports).n, _raw_tuple(spec, reports).m),
        approx_degree=max(degs.n, degs.m),
        nominal_degree=max(_nominal_tuple(spec, reports).n, _nominal_tuple(spec, reports).m),
        guaranteed_bound=guaranteed,
        extra={
            "degrees": degs.to_dict(),
            "raw_degrees": _raw_tuple(spec, reports).to_dict(),
            "nominal_degrees": _nominal_tuple(spec, reports).to_dict(),
            "spec": spec_summary(spec),
        },
    )
    if measure:
        if cheb is not None and laur is not None:
            report.measured_sup_error = measure_composite_error(spec, mixed, grid)
        else:
            f = exact_function(spec)
            if laur is None:
                report.measured_sup_error = sup_norm_error(lambda x: f(x, 0.0), cheb)
            else:
                report.measured_sup_error = sup_norm_error(lambda y: f(0.0, y), laur)
    return mixed, report


def _combine(spec, values_by_side):
    agg = sum if isinstance(spec, Product) else (lambda v: max(v, default=0))
    return DegreeTuple(int(agg(values_by_side[0])), int(agg(values_by_side[1])))


def _raw_tuple(spec, reports) -> DegreeTuple:
    sides = ([], [])
    for (_, a), r in zip(spec_atoms(spec), reports):
        sides[a.is_laurent].append(_raw_degree(a, r))
    return _combine(spec, sides)


def _nominal_tuple(spec, reports) -> DegreeTuple:
    sides = ([], [])
    for (_, a), r in zip(spec_atoms(spec), reports):
        sides[a.is_laurent].append(int(r.nominal_degree))
    return _combine(spec, sides)


def _log_entry(coef, atom, budget, rep) -> dict:
    return {
        "atom": atom.label(),
        "coef": float(coef),
        "allocated_delta": float(budget),
        "degree": int(rep.approx_degree),
        "nominal_degree": int(rep.nominal_degree),
        "bound": float(rep.guaranteed_bound),
    }
