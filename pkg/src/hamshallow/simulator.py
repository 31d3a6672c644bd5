"""Dense end-to-end checks: approximate, synthesize, build the circuit, compare.

Every circuit is built as a full matrix, checked for unitarity, and its
encoded block compared with ``f(H/alpha)`` from the eigendecomposition.
Parity and real/imaginary pieces, and the two sides of a mixed function,
are recombined at the matrix level rather than with extra LCU ancillas.

Laurent atoms see the eigenvalue itself as their angle: ``z = e^{i lambda}``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import composer
from .errors import ParameterError, SizeError, UsageError, ValidationError
from .hamiltonian import PauliHamiltonian, block_encoding, evolution_unitary, function_of
from .qsp import DEFAULT_TOL, gqsp_circuit, real_qsp_circuit, synthesize_chebyshev, synthesize_laurent
from .trotter import signal_unitary, trotter_steps

MAX_SIM_QUBITS = 10
UNITARITY_TOL = 1e-9
BUDGET_SLACK = 1e-8
PIPELINES = ("qsp", "gqsp-exact-U", "gqsp-trotter", "mixed")


@dataclass
class VerificationReport:
    spec: str
    hamiltonian: dict
    delta: float
    pipeline: str
    measured_block_error: float
    certified_budget: float
    passed: bool
    solver_residual: float = 0.0
    trotter_allowance: float = 0.0
    details: dict = field(default_factory=dict)

    def recompute_pass(self) -> bool:
        return bool(self.measured_block_error <= self.certified_budget)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        d = dict(d)
        try:
            d["passed"] = bool(d.pop("pass"))
            return cls(**d)
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed verification report: {exc}") from exc


def _check_size(h: PauliHamiltonian):
    if h.qubits > MAX_SIM_QUBITS:
        raise SizeError(f"{h.qubits} qubits exceeds the simulation cap of {MAX_SIM_QUBITS}")


def _check_unitary(m: np.ndarray, what: str):
    err = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
    if err > UNITARITY_TOL:
        raise ValidationError(f"{what} is not unitary (deviation {err:.2e})")


def exact_function_matrix(spec, h: PauliHamiltonian) -> np.ndarray:
    """``F(H/alpha)`` with both arguments replaced by the same operator."""
    _check_size(h)
    f = composer.exact_function(spec)
    return function_of(h, lambda w: f(w, w))


# ------------------------------------------------------------ side blocks

def _cheb_block(series, h, tol):
    """Unscaled QSP block of ``series(H/alpha)`` and its certified solver error."""
    be = block_encoding(h)
    n = be.system_dim
    total = np.zeros((n, n), dtype=complex)
    err, info = 0.0, []
    for comp in synthesize_chebyshev(series, tol):
        prog = comp.program
        circ = real_qsp_circuit(prog, be)
        _check_unitary(circ, "QSP circuit")
        total += comp.weight * circ[:n, :n] / prog.scale
        err += prog.residual / prog.scale
        info.append({"parity": prog.parity, "degree": prog.degree, "scale": prog.scale, "residual": prog.residual})
    return total, err, info


def _laurent_block(poly, U, components=None):
    n = U.shape[0]
    comps = components if components is not None else synthesize_laurent(poly)
    total = np.zeros((n, n), dtype=complex)
    err, info = 0.0, []
    for comp in comps:
        prog = comp.program
        circ = gqsp_circuit(prog, U)
        _check_unitary(circ, "GQSP circuit")
        total += comp.weight * circ[:n, :n] / prog.scale
        err += prog.residual / prog.scale
        info.append({
            "weight": [comp.weight.real, comp.weight.imag],
            "degree": prog.degree,
            "scale": prog.scale,
            "residual": prog.residual,
        })
    return total, err, comps, info


def _parse_u_mode(u_mode, poly, delta):
    """Return (pipeline, v, r) from ``"exact"``, ``("trotter", v, r)`` or ``("trotter", v, None)``."""
    if u_mode in (None, "exact"):
        return "gqsp-exact-U", None, None
    if isinstance(u_mode, (tuple, list)) and len(u_mode) == 3 and u_mode[0] == "trotter":
        _, v, r = u_mode
        v = int(v)
        if r in (None, "auto"):
            r = trotter_steps(max(poly.degree, 1), delta, v)
        return "gqsp-trotter", v, int(r)
    raise ParameterError(f"unknown u_mode {u_mode!r}; use 'exact' or ('trotter', v, r|None)")


def _laurent_side(poly, h, delta, u_mode):
    """Block, solver error, Trotter allowance and details for the Laurent side."""
    pipeline, v, r = _parse_u_mode(u_mode, poly, delta)
    exact_u = evolution_unitary(h, 1.0)
    block, err, comps, info = _laurent_block(poly, exact_u)
    allowance = 0.0
    details = {"components": info}
    if pipeline == "gqsp-trotter":
        trot, _, _, _ = _laurent_block(poly, signal_unitary(h, v, r), comps)
        # spectral norm so the allowance also bounds products of blocks
        allowance = float(np.linalg.norm(trot - block, 2))
        block = trot
        details["trotter"] = {"v": v, "r": r}
    return pipeline, block, err, allowance, details


def _report(spec, h, delta, pipeline, block, budget, residual, allowance, details):
    measured = float(np.max(np.abs(block - exact_function_matrix(spec, h))))
    return VerificationReport(
        spec=composer.spec_summary(spec),
        hamiltonian=h.summary(),
        delta=float(delta),
        pipeline=pipeline,
        measured_block_error=measured,
        certified_budget=float(budget),
        passed=bool(measured <= budget),
        solver_residual=float(residual),
        trotter_allowance=float(allowance),
        details=details,
    )


# ------------------------------------------------------------ pipelines

def verify_qsp(spec, h: PauliHamiltonian, delta: float, tol: float = DEFAULT_TOL) -> VerificationReport:
    _check_size(h)
    mixed, _ = composer.approximate(spec, delta, measure=False)
    if mixed.laurent_part is not None:
        raise UsageError("verify_qsp needs a Chebyshev-only spec")
    if mixed.combine == "product" and mixed.cheb_part is None:
        raise UsageError("empty product")
    block, err, info = _cheb_block(mixed.cheb_part, h, tol)
    budget = delta + err + BUDGET_SLACK
    return _report(spec, h, delta, "qsp", block, budget, err, 0.0, {"components": info})


def verify_gqsp(spec, h: PauliHamiltonian, delta: float, u_mode="exact") -> VerificationReport:
    _check_size(h)
    mixed, _ = composer.approximate(spec, delta, measure=False)
    if mixed.cheb_part is not None:
        raise UsageError("verify_gqsp needs a Laurent-only spec")
    pipeline, block, err, allowance, details = _laurent_side(mixed.laurent_part, h, delta, u_mode)
    budget = delta + err + allowance + BUDGET_SLACK
    return _report(spec, h, delta, pipeline, block, budget, err, allowance, details)


def verify_mixed(spec, h: PauliHamiltonian, delta: float, tol: float = DEFAULT_TOL, u_mode="exact") -> VerificationReport:
    _check_size(h)
    mixed, _ = composer.approximate(spec, delta, measure=False)
    if mixed.laurent_part is None:
        return verify_qsp(spec, h, delta, tol)
    if mixed.cheb_part is None:
        return verify_gqsp(spec, h, delta, u_mode)
    cb, ce, cinfo = _cheb_block(mixed.cheb_part, h, tol)
    lpipe, lb, le, allowance, ldetails = _laurent_side(mixed.laurent_part, h, delta, u_mode)
    details = {"chebyshev": cinfo, "laurent": ldetails, "combine": mixed.combine, "laurent_pipeline": lpipe}
    side_err = ce + le + allowance
    if mixed.combine == "sum":
        block = cb + lb
        budget = delta + side_err
    else:
        block = cb @ lb
        # |f| <= 1 on each side, so each polynomial side is within 1 + delta
        le_t = le + allowance
        budget = delta + (1 + delta) * (ce + le_t) + ce * le_t
    budget += BUDGET_SLACK
    return _report(spec, h, delta, "mixed", block, budget, ce + le, allowance, details)


def verify(spec, h: PauliHamiltonian, delta: float, pipeline: str | None = None, tol: float = DEFAULT_TOL, u_mode="exact"):
    """Dispatch on the spec, or on an explicit ``qsp``/``gqsp``/``mixed`` choice."""
    if pipeline in (None, "auto", "mixed"):
        return verify_mixed(spec, h, delta, tol, u_mode)
    if pipeline == "qsp":
        return verify_qsp(spec, h, delta, tol)
    if pipeline == "gqsp":
        return verify_gqsp(spec, h, delta, u_mode)
    raise ParameterError(f"unknown pipeline {pipeline!r}; use qsp, gqsp or mixed")
