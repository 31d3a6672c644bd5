"""Symmetric Suzuki-Trotter product formulas for normalized Pauli sums.

``S_2(t)`` approximates ``exp(-i t H / alpha)``. The GQSP signal operator
``U = exp(+i H / alpha)`` is therefore ``suzuki_matrix(h, -1, v, r)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SizeError
from .hamiltonian import PauliHamiltonian, evolution_unitary, pauli_matrix

MAX_TROTTER_QUBITS = 10
SUPPORTED_ORDERS = (1, 2, 3)


@dataclass(frozen=True)
class TrotterConfig:
    v: int
    r: int
    t: float

    def __post_init__(self):
        if self.v not in SUPPORTED_ORDERS:
            raise ParameterError(f"order parameter v must be one of {SUPPORTED_ORDERS}, got {self.v}")
        if self.r < 1:
            raise ParameterError(f"steps r must be >= 1, got {self.r}")


def u_coefficient(v: int) -> float:
    """``u_v = 1 / (4 - 4^{1/(2v-1)})``."""
    if v < 2:
        raise ParameterError("u_v is defined for v >= 2")
    return 1.0 / (4.0 - 4.0 ** (1.0 / (2 * v - 1)))


def _check(h: PauliHamiltonian):
    if h.qubits > MAX_TROTTER_QUBITS:
        raise SizeError(f"{h.qubits} qubits exceeds the Trotter cap of {MAX_TROTTER_QUBITS}")


def _term_factors(h: PauliHamiltonian):
    return [(c, pauli_matrix(p)) for c, p in h.normalized_terms()]


def _s2(factors, dim: int, t: float) -> np.ndarray:
    # e^{-i theta P} = cos(theta) I - i sin(theta) P, theta = kappa t / 2
    halves = [
        math.cos(c * t / 2) * np.eye(dim) - 1j * math.sin(c * t / 2) * p for c, p in factors
    ]
    out = np.eye(dim, dtype=complex)
    for m in halves:
        out = out @ m
    for m in reversed(halves):
        out = out @ m
    return out


def _s2v(factors, dim: int, t: float, v: int) -> np.ndarray:
    if v == 1:
        return _s2(factors, dim, t)
    u = u_coefficient(v)
    outer = _s2v(factors, dim, u * t, v - 1)
    middle = _s2v(factors, dim, (1.0 - 4.0 * u) * t, v - 1)
    outer2 = outer @ outer
    return outer2 @ middle @ outer2


def s2_matrix(h: PauliHamiltonian, t: float) -> np.ndarray:
    """Palindromic second-order product of the 2J term exponentials."""
    _check(h)
    return _s2(_term_factors(h), 1 << h.qubits, t)


def suzuki_matrix(h: PauliHamiltonian, t: float, v: int, r: int) -> np.ndarray:
    """``S_{2v}(t / r)^r``."""
    cfg = TrotterConfig(int(v), int(r), float(t))
    _check(h)
    step = _s2v(_term_factors(h), 1 << h.qubits, cfg.t / cfg.r, cfg.v)
    return np.linalg.matrix_power(step, cfg.r)


def trotter_steps(d2: int, delta: float, v: int) -> int:
    """Step-count estimate ``ceil(d2^{1/v} / delta^{1/(2v)})`` with unit constant."""
    if d2 < 1 or not float(d2).is_integer():
        raise ParameterError(f"d2 must be a positive integer, got {d2}")
    if not (delta > 0) or not math.isfinite(delta):
        raise ParameterError(f"delta must be positive, got {delta}")
    if v not in SUPPORTED_ORDERS:
        raise ParameterError(f"v must be one of {SUPPORTED_ORDERS}, got {v}")
    raw = d2 ** (1.0 / v) / delta ** (1.0 / (2 * v))
    # guard against 160.00000000000003-style overshoot
    return max(1, math.ceil(raw * (1.0 - 1e-12)))


def measured_trotter_error(h: PauliHamiltonian, t: float, v: int, r: int) -> float:
    """Max-abs entry of ``S_{2v}(t/r)^r - exp(-i t H / alpha)``."""
    approx = suzuki_matrix(h, t, v, r)
    exact = evolution_unitary(h, -t)
    return float(np.max(np.abs(approx - exact)))


def signal_unitary(h: PauliHamiltonian, v: int, r: int) -> np.ndarray:
    """Trotterized ``exp(+i H / alpha)`` for the GQSP circuit."""
    return suzuki_matrix(h, -1.0, v, r)


def order_slope(h: PauliHamiltonian, t: float, v: int, rs=(1, 2, 4, 8, 16)) -> float:
    """Least-squares slope of log(error) against log(r)."""
    errs = [measured_trotter_error(h, t, v, r) for r in rs]
    return float(np.polyfit(np.log(rs), np.log(errs), 1)[0])
