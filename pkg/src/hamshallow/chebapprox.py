"""Reduced-degree Chebyshev approximations of x^n, exp, Gaussian and erf.

Degrees and truncation orders follow explicit ceiling rules so that every
approximation comes with a certified bound. The bound is then checked by
the grid oracle in :func:`hamshallow.polyops.sup_norm_error`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import special

from .errors import ParameterError, ValidationError
from .polyops import ChebyshevSeries, sup_norm_error

SQRT_PI = math.sqrt(math.pi)
_EPS = np.finfo(float).eps


def rounding_allowance(series) -> float:
    """Floating-point slack added to certified bounds.

    Clenshaw evaluation of a degree-d series with coefficient 1-norm A is
    accurate to a small multiple of ``(d + 1) * eps * A``.
    """
    return float(8.0 * _EPS * (series.degree + 1) * max(1.0, series.l1_norm()))


@dataclass
class ApproxReport:
    """Metadata attached to every approximant.

    ``approx_degree`` is the degree of the emitted (trimmed) polynomial.
    ``nominal_degree`` is the ceiling value the degree rule produced; the two
    differ by one when truncation lands on a coefficient that vanishes by
    parity.
    """

    target_name: str
    parameters: dict
    truncation_degree: int
    approx_degree: int
    nominal_degree: int
    guaranteed_bound: float
    measured_sup_error: float | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> ApproxReport:
        try:
            return cls(**data)
        except TypeError as exc:
            raise ValidationError(f"malformed ApproxReport: {exc}") from exc


# ---------------------------------------------------------------- validation

def _check_delta(delta, upper: float | None = 0.5):
    if not isinstance(delta, (int, float)) or not math.isfinite(delta) or delta <= 0:
        raise ParameterError(f"delta must be a positive finite number, got {delta!r}")
    if upper is not None and delta > upper:
        raise ParameterError(f"delta must lie in (0, {upper}], got {delta}")
    return float(delta)


def _check_order(n) -> int:
    if isinstance(n, bool) or not float(n).is_integer() or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    return int(n)


# ------------------------------------------------------------------ monomials

def monomial_coeffs(n: int) -> ChebyshevSeries:
    """Exact Chebyshev expansion of x^n.

    ``c_{n,j} = C(n, (n-j)/2) / 2^(n-1)`` for ``j > 0`` with ``n - j`` even,
    and ``c_{n,0} = C(n, n/2) / 2^n`` for even ``n``. Integer arithmetic keeps
    the coefficients correctly rounded for any n.
    """
    if isinstance(n, bool) or not float(n).is_integer() or n < 0:
        raise ParameterError(f"n must be a nonnegative integer, got {n!r}")
    n = int(n)
    if n == 0:
        return ChebyshevSeries([1.0])
    return ChebyshevSeries(_monomial_array(n))


def _monomial_array(n: int) -> np.ndarray:
    c = np.zeros(n + 1)
    if n == 0:
        c[0] = 1.0
        return c
    denom = 1 << (n - 1)
    for j in range(n % 2, n + 1, 2):
        if j == 0:
            c[0] = math.comb(n, n // 2) / (denom * 2)
        else:
            c[j] = math.comb(n, (n - j) // 2) / denom
    return c


def monomial_degree(n: int, delta: float) -> int:
    """``min(n, ceil(sqrt(2 n ln(2/delta))))``, clamped at zero for delta >= 2."""
    n = _check_order(n)
    delta = _check_delta(delta, upper=None)
    arg = 2.0 * n * math.log(2.0 / delta)
    if arg <= 0:
        return 0
    return min(n, math.ceil(math.sqrt(arg)))


def error_bound_monomial(n: int, d: int) -> float:
    """Uniform truncation bound ``2 exp(-d^2 / 2n)`` for x^n."""
    n = _check_order(n)
    if d < 0:
        raise ParameterError(f"d must be nonnegative, got {d}")
    return 2.0 * math.exp(-(d * d) / (2.0 * n))


def monomial_approx(n: int, delta: float, measure: bool = True):
    n = _check_order(n)
    d = monomial_degree(n, delta)
    series = ChebyshevSeries(_monomial_array(n)[: d + 1])
    report = ApproxReport(
        target_name="monomial",
        parameters={"n": n, "delta": float(delta)},
        truncation_degree=n,
        approx_degree=series.degree,
        nominal_degree=d,
        # d == n means no truncation at all
        guaranteed_bound=rounding_allowance(series) if d >= n else error_bound_monomial(n, d),
    )
    if measure:
        report.measured_sup_error = sup_norm_error(lambda x: x**n, series)
    return series, report


# ---------------------------------------------------------- exponential core

def exp_degrees(beta: float, delta: float) -> tuple[int, int]:
    """Truncation order t and inner degree d for ``exp(-beta (1 + x))``.

    ``t = ceil(max(beta e^2, ln(2/delta)))`` and
    ``d = min(t, ceil(sqrt(2 t ln(4/delta))))``.
    """
    t = math.ceil(max(beta * math.e**2, math.log(2.0 / delta)))
    d = min(t, math.ceil(math.sqrt(2.0 * t * math.log(4.0 / delta))))
    return t, d


def _exp_weights(beta: float, t: int) -> np.ndarray:
    """``e^-beta (-beta)^k / k!`` for k = 0..t via log-gamma."""
    k = np.arange(t + 1)
    logs = -beta + k * math.log(beta) - special.gammaln(k + 1)
    return np.where(k % 2 == 0, 1.0, -1.0) * np.exp(logs)


def _exp_core(beta: float, delta: float):
    """Chebyshev coefficients of the truncated Maclaurin/Chebyshev composite.

    Returns ``(coeffs, t, d, bound)``. The bound adds the Maclaurin tail
    (a regularized incomplete gamma function) to the weighted monomial
    truncation bounds.
    """
    t, d = exp_degrees(beta, delta)
    w = _exp_weights(beta, t)
    terms = np.zeros((t + 1, d + 1))
    for k in range(t + 1):
        row = _monomial_array(k)[: d + 1]
        terms[k, : len(row)] = row
    coeffs = np.array([math.fsum(w * terms[:, j]) for j in range(d + 1)])
    tail = float(special.gammainc(t + 1, beta))
    trunc = math.fsum(
        abs(w[k]) * error_bound_monomial(k, d) for k in range(max(d + 1, 1), t + 1)
    )
    return coeffs, t, d, tail + trunc


def _check_beta(beta) -> float:
    if not isinstance(beta, (int, float)) or not math.isfinite(beta) or beta <= 0:
        raise ParameterError(f"beta must be a positive finite number, got {beta!r}")
    return float(beta)


def exp_approx(beta: float, delta: float, measure: bool = True):
    """Approximate ``exp(-beta (1 + x))`` on [-1, 1]."""
    beta = _check_beta(beta)
    delta = _check_delta(delta)
    coeffs, t, d, bound = _exp_core(beta, delta)
    series = ChebyshevSeries(coeffs)
    report = ApproxReport(
        target_name="exp",
        parameters={"beta": beta, "delta": delta},
        truncation_degree=t,
        approx_degree=series.degree,
        nominal_degree=d,
        guaranteed_bound=bound + rounding_allowance(series),
    )
    if measure:
        report.measured_sup_error = sup_norm_error(exp_target(beta), series)
    return series, report


# ------------------------------------------------------------------- Gaussian

def _spread_even(c: np.ndarray) -> np.ndarray:
    """Coefficients of ``p(T_2(x))`` given those of ``p``: T_j -> T_2j."""
    out = np.zeros(2 * len(c) - 1)
    out[::2] = c
    return out


def _check_gamma(gamma) -> float:
    if not isinstance(gamma, (int, float)) or not math.isfinite(gamma) or gamma < 0:
        raise ParameterError(f"gamma must be a nonnegative finite number, got {gamma!r}")
    return float(gamma)


def gauss_core(gamma: float, delta: float):
    """Inner coefficients in the T_2 variable plus ``(t, d, bound)``.

    gamma = 0 short-circuits to the exact constant.
    """
    if gamma == 0:
        return np.ones(1), 0, 0, 0.0
    return _exp_core(gamma * gamma / 2.0, delta)


def gauss_approx(gamma: float, delta: float, measure: bool = True):
    """Approximate ``exp(-(gamma x)^2)`` through ``exp(-beta(1 + T_2(x)))``."""
    gamma = _check_gamma(gamma)
    delta = _check_delta(delta)
    inner, t, d, bound = gauss_core(gamma, delta)
    series = ChebyshevSeries(_spread_even(inner))
    report = ApproxReport(
        target_name="gauss",
        parameters={"gamma": gamma, "delta": delta},
        truncation_degree=t,
        approx_degree=series.degree,
        nominal_degree=2 * d,
        guaranteed_bound=bound + rounding_allowance(series),
    )
    if measure:
        report.measured_sup_error = sup_norm_error(gauss_target(gamma), series)
    return series, report


# ------------------------------------------------------------------------ erf

def erf_inner_delta(lam: float, delta: float) -> float:
    """Gaussian budget that keeps the integrated error below delta.

    Integration multiplies the pointwise error by at most ``2 lam / sqrt(pi)``.
    """
    return delta * min(1.0, SQRT_PI / (2.0 * lam))


def _check_lambda(lam) -> float:
    if not isinstance(lam, (int, float)) or not math.isfinite(lam) or lam <= 0:
        raise ParameterError(f"lambda must be a positive finite number, got {lam!r}")
    return float(lam)


def erf_core(lam: float, delta: float):
    """Gaussian inner coefficients (T_2 variable), prefactor and ``(t, d, bound)``."""
    inner_delta = erf_inner_delta(lam, delta)
    inner, t, d, gbound = _exp_core(lam * lam / 2.0, inner_delta)
    pref = 2.0 * lam / SQRT_PI
    return inner, pref, t, d, pref * gbound


def _integrate_even(inner: np.ndarray) -> np.ndarray:
    """Chebyshev coefficients of ``int_0^x sum_j a_j T_2j(u) du``.

    Uses ``int T_n = T_{n+1}/(2(n+1)) - T_{n-1}/(2(n-1))`` for n >= 2 and
    ``int T_0 = T_1``. Only odd indices are touched and every odd T_m vanishes
    at 0, so no integration constant appears.
    """
    d = len(inner) - 1
    out = np.zeros(2 * d + 2)
    out[1] += inner[0]
    for j in range(1, d + 1):
        out[2 * j + 1] += inner[j] / (2.0 * (2 * j + 1))
        out[2 * j - 1] -= inner[j] / (2.0 * (2 * j - 1))
    return out


def erf_approx(lam: float, delta: float, measure: bool = True):
    """Approximate ``erf(lam x)`` by integrating the Gaussian approximant."""
    lam = _check_lambda(lam)
    delta = _check_delta(delta)
    inner, pref, t, d, bound = erf_core(lam, delta)
    series = ChebyshevSeries(pref * _integrate_even(inner))
    report = ApproxReport(
        target_name="erf",
        parameters={"lambda": lam, "delta": delta},
        truncation_degree=t,
        approx_degree=series.degree,
        nominal_degree=2 * d + 1,
        guaranteed_bound=bound + rounding_allowance(series),
        extra={"inner_delta": erf_inner_delta(lam, delta)},
    )
    if measure:
        report.measured_sup_error = sup_norm_error(erf_target(lam), series)
    return series, report


# ------------------------------------------------------------ exact targets

def exp_target(beta):
    return lambda x: np.exp(-beta * (1.0 + np.asarray(x)))


def gauss_target(gamma):
    return lambda x: np.exp(-((gamma * np.asarray(x)) ** 2))


def erf_target(lam):
    return lambda x: special.erf(lam * np.asarray(x))


def monomial_target(n):
    return lambda x: np.asarray(x, dtype=float) ** n


def minimal_monomial_degree(n: int, delta: float, grid_points: int | None = None) -> int:
    """Smallest truncation degree whose measured sup error is at most delta.

    The truncation error of x^n is nonincreasing in d, so a bisection over
    the grid oracle suffices.
    """
    n = _check_order(n)
    delta = _check_delta(delta, upper=None)
    full = _monomial_array(n)
    target = monomial_target(n)

    def ok(d):
        return sup_norm_error(target, ChebyshevSeries(full[: d + 1]), grid_points) <= delta

    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo
