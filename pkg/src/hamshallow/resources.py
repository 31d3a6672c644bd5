"""Circuit-depth scaling estimates for functions of a Pauli-sum Hamiltonian.

All asymptotic constants are set to one. The numbers are scaling
estimates, not gate counts.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from . import composer
from .chebapprox import _check_delta
from .errors import ParameterError
from .hamiltonian import PauliHamiltonian, depth_DB
from .trotter import SUPPORTED_ORDERS

WATERMARK = "scaling estimate (unit constants)"


@dataclass
class DepthReport:
    function: str
    raw_degrees: dict
    approx_degrees: dict
    D_B_estimate: int
    D_ST_estimate: float
    depth_raw: float
    depth_approx: float
    v: int
    delta: float
    hamiltonian: dict
    label: str = WATERMARK

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> DepthReport:
        return cls(**d)

    def table(self) -> str:
        """Two-row text table: unapproximated vs approximated."""
        rows = [
            ("function", self.function),
            ("D_B", f"{self.D_B_estimate}"),
            ("D_ST", f"{self.D_ST_estimate:.6g}"),
        ]
        head = f"{'':<14}{'(n, m)':>16}{'depth':>16}"
        lines = [f"# {self.label}", *(f"{k:<14}{v}" for k, v in rows), head]
        for name, deg, depth in (
            ("raw", self.raw_degrees, self.depth_raw),
            ("approximated", self.approx_degrees, self.depth_approx),
        ):
            tup = f"({deg['cheb_degree']}, {deg['laurent_degree']})"
            lines.append(f"{name:<14}{tup:>16}{depth:>16.6g}")
        lines.append(f"{'ratio':<14}{'':>16}{self.depth_approx / self.depth_raw if self.depth_raw else float('nan'):>16.6g}")
        return "\n".join(lines)


def d_st(h: PauliHamiltonian, delta: float, v: int) -> float:
    """``5^{v-1} J k / delta^{1/(2v)}``."""
    return 5.0 ** (v - 1) * h.J * h.locality / delta ** (1.0 / (2 * v))


def depth_formula(n: int, m: int, db: float, dst: float, v: int) -> float:
    """``n D_B + m^{(1+v)/v} D_ST``."""
    return n * db + (m ** ((1.0 + v) / v)) * dst


def depth_report(spec, h: PauliHamiltonian, delta: float, v: int = 2) -> DepthReport:
    delta = _check_delta(delta)
    if v not in SUPPORTED_ORDERS:
        raise ParameterError(f"v must be one of {SUPPORTED_ORDERS}, got {v}")
    _, rep = composer.approximate(spec, delta, measure=False)
    raw = rep.extra["raw_degrees"]
    approx = rep.extra["nominal_degrees"]
    db = depth_DB(h)
    dst = d_st(h, delta, v)
    return DepthReport(
        function=composer.spec_summary(spec),
        raw_degrees=raw,
        approx_degrees=approx,
        D_B_estimate=db,
        D_ST_estimate=dst,
        depth_raw=depth_formula(raw["cheb_degree"], raw["laurent_degree"], db, dst, v),
        depth_approx=depth_formula(approx["cheb_degree"], approx["laurent_degree"], db, dst, v),
        v=int(v),
        delta=float(delta),
        hamiltonian=h.summary(),
    )


def reduction_ratio_normalized(n: int, delta: float, h: PauliHamiltonian, v: int = 2) -> float:
    """``(depth_approx / depth_raw) / sqrt(ln(1/delta) / n)`` for the x^n row."""
    rep = depth_report(composer.Atom("monomial", n), h, delta, v)
    return (rep.depth_approx / rep.depth_raw) / math.sqrt(math.log(1.0 / delta) / n)
