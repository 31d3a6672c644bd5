"""Laurent polynomial approximations of the cosine and sine function families.

With ``z = exp(i y)`` the cosine variants use ``T_j(cos y) = (z^j + z^-j)/2``.
The sine variants are written out explicitly from ``sin y = cos(pi/2 - y)``,
which gives ``exp(i(pi/2 - y)) = i z^-1``. Tests cross-check each sine
variant against the shifted cosine variant.
"""

from __future__ import annotations

from enum import Enum

import numpy as np
from scipy import special

from . import chebapprox as ca
from .chebapprox import ApproxReport
from .errors import ParameterError
from .polyops import ChebyshevSeries, LaurentPoly, sup_norm_error


class TrigVariant(str, Enum):
    COSINE = "cosine"
    SINE = "sine"

    @classmethod
    def parse(cls, value) -> TrigVariant:
        if isinstance(value, cls):
            return value
        aliases = {"cos": "cosine", "sin": "sine", "laurent-cos": "cosine", "laurent-sin": "sine"}
        key = aliases.get(str(value).lower(), str(value).lower())
        try:
            return cls(key)
        except ValueError as exc:
            raise ParameterError(f"unknown trig variant {value!r}") from exc


_I_POW = (1, 1j, -1, -1j)


def _ipow(k: int) -> complex:
    """Exact ``i**k`` for any integer k."""
    return _I_POW[k % 4]


def _place(terms: dict[int, complex]) -> LaurentPoly:
    return LaurentPoly.from_mapping(terms)


# ------------------------------------------------------- basis conversions

def _cos_image(c: np.ndarray) -> LaurentPoly:
    """``sum_j c_j T_j(cos y)`` as ``sum_j (c_j/2)(z^j + z^-j)``."""
    terms: dict[int, complex] = {}
    for j, cj in enumerate(c):
        if cj == 0:
            continue
        terms[j] = terms.get(j, 0) + cj / 2
        terms[-j] = terms.get(-j, 0) + cj / 2
    return _place(terms)


def _sin_image(c: np.ndarray) -> LaurentPoly:
    """``sum_j c_j T_j(sin y)`` as ``sum_j (c_j/2) i^j ((-z)^j + z^-j)``."""
    terms: dict[int, complex] = {}
    for j, cj in enumerate(c):
        if cj == 0:
            continue
        w = cj / 2 * _ipow(j)
        terms[j] = terms.get(j, 0) + w * (-1) ** j
        terms[-j] = terms.get(-j, 0) + w
    return _place(terms)


def _gauss_image(inner: np.ndarray, variant: TrigVariant) -> LaurentPoly:
    """``sum_j a_j T_2j(trig y)``; the sine variant picks up ``(-1)^j``."""
    terms: dict[int, complex] = {}
    for j, aj in enumerate(inner):
        if aj == 0:
            continue
        w = aj / 2 * ((-1) ** j if variant is TrigVariant.SINE else 1)
        terms[2 * j] = terms.get(2 * j, 0) + w
        terms[-2 * j] = terms.get(-2 * j, 0) + w
    return _place(terms)


def _erf_image(inner: np.ndarray, variant: TrigVariant) -> LaurentPoly:
    """``int_0^{trig y} sum_j a_j T_2j(u) du`` in Laurent form.

    Cosine: ``a_0 (z + z^-1)/2`` plus, for j >= 1,
    ``(a_j/2) [(z^{2j+1} + z^{-2j-1})/(2(2j+1)) - (z^{2j-1} + z^{-2j+1})/(2(2j-1))]``.
    Sine: ``-i a_0 (z - z^-1)/2`` plus
    ``(a_j/(2i)) (-1)^j [(z^{2j+1} - z^{-2j-1})/(2(2j+1)) + (z^{2j-1} - z^{-2j+1})/(2(2j-1))]``.
    """
    terms: dict[int, complex] = {}

    def add(k, v):
        terms[k] = terms.get(k, 0) + v

    if variant is TrigVariant.COSINE:
        add(1, inner[0] / 2)
        add(-1, inner[0] / 2)
        for j in range(1, len(inner)):
            h = inner[j] / 2
            up, dn = h / (2 * (2 * j + 1)), h / (2 * (2 * j - 1))
            add(2 * j + 1, up)
            add(-2 * j - 1, up)
            add(2 * j - 1, -dn)
            add(-2 * j + 1, -dn)
    else:
        add(1, -0.5j * inner[0])
        add(-1, 0.5j * inner[0])
        for j in range(1, len(inner)):
            h = inner[j] / 2j * (-1) ** j
            up, dn = h / (2 * (2 * j + 1)), h / (2 * (2 * j - 1))
            add(2 * j + 1, up)
            add(-2 * j - 1, -up)
            add(2 * j - 1, dn)
            add(-2 * j + 1, -dn)
    return _place(terms)


def _trig(variant: TrigVariant):
    return np.cos if variant is TrigVariant.COSINE else np.sin


def _laurent_bound(poly: LaurentPoly, bound: float) -> float:
    return float(bound + 8.0 * ca._EPS * (2 * poly.degree + 1) * max(1.0, poly.l1_norm()))


def _report(name, variant, params, t, poly, nominal, bound, target, measure):
    report = ApproxReport(
        target_name=f"{name}-{variant.value}",
        parameters=params,
        truncation_degree=t,
        approx_degree=poly.degree,
        nominal_degree=nominal,
        guaranteed_bound=_laurent_bound(poly, bound),
        extra={"variant": variant.value, "global_phase": [1.0, 0.0]},
    )
    if measure:
        report.measured_sup_error = sup_norm_error(target, poly)
    return report


# -------------------------------------------------------------- public API

def trig_power_approx(n: int, delta: float, variant="cosine", measure: bool = True):
    """Approximate ``cos^n y`` or ``sin^n y``."""
    variant = TrigVariant.parse(variant)
    n = ca._check_order(n)
    d = ca.monomial_degree(n, delta)
    c = ca._monomial_array(n)[: d + 1]
    poly = _cos_image(c) if variant is TrigVariant.COSINE else _sin_image(c)
    trig = _trig(variant)
    bound = 0.0 if d >= n else ca.error_bound_monomial(n, d)
    report = _report(
        "monomial", variant, {"n": n, "delta": float(delta)}, n, poly, d, bound,
        lambda y: trig(y) ** n, measure,
    )
    return poly, report


def exp_trig_approx(beta: float, delta: float, variant="cosine", measure: bool = True):
    """Approximate ``exp(-beta (1 + trig y))``."""
    variant = TrigVariant.parse(variant)
    beta = ca._check_beta(beta)
    delta = ca._check_delta(delta)
    coeffs, t, d, bound = ca._exp_core(beta, delta)
    poly = _cos_image(coeffs) if variant is TrigVariant.COSINE else _sin_image(coeffs)
    trig = _trig(variant)
    report = _report(
        "exp", variant, {"beta": beta, "delta": delta}, t, poly, d, bound,
        lambda y: np.exp(-beta * (1.0 + trig(y))), measure,
    )
    return poly, report


def gauss_trig_approx(gamma: float, delta: float, variant="cosine", measure: bool = True):
    """Approximate ``exp(-(gamma trig y)^2)``; only even powers of z appear."""
    variant = TrigVariant.parse(variant)
    gamma = ca._check_gamma(gamma)
    delta = ca._check_delta(delta)
    inner, t, d, bound = ca.gauss_core(gamma, delta)
    poly = _gauss_image(inner, variant)
    trig = _trig(variant)
    report = _report(
        "gauss", variant, {"gamma": gamma, "delta": delta}, t, poly, 2 * d, bound,
        lambda y: np.exp(-((gamma * trig(y)) ** 2)), measure,
    )
    return poly, report


def erf_trig_approx(lam: float, delta: float, variant="cosine", measure: bool = True):
    """Approximate ``erf(lam trig y)``; only odd powers of z appear.

    The sine variant has purely imaginary coefficients, but they come in
    conjugate pairs, so the polynomial is already real on the circle and the
    recorded global phase is 1.
    """
    variant = TrigVariant.parse(variant)
    lam = ca._check_lambda(lam)
    delta = ca._check_delta(delta)
    inner, pref, t, d, bound = ca.erf_core(lam, delta)
    poly = pref * _erf_image(inner, variant)
    trig = _trig(variant)
    report = _report(
        "erf", variant, {"lambda": lam, "delta": delta}, t, poly, 2 * d + 1, bound,
        lambda y: special.erf(lam * trig(y)), measure,
    )
    report.extra["inner_delta"] = ca.erf_inner_delta(lam, delta)
    return poly, report


def chebyshev_to_trig(series: ChebyshevSeries, variant="cosine") -> LaurentPoly:
    """Generic substitution ``x -> cos y`` or ``x -> sin y`` for any series."""
    variant = TrigVariant.parse(variant)
    c = np.asarray(series.coeffs)
    return _cos_image(c) if variant is TrigVariant.COSINE else _sin_image(c)


def shift_to_sine(poly: LaurentPoly) -> LaurentPoly:
    """Compose with ``y -> pi/2 - y``: ``z^k -> i^k z^-k``.

    This is the independent route used to check the explicit sine formulas.
    """
    d = poly.degree
    terms = {}
    for k in range(-d, d + 1):
        ck = poly.coeff(k)
        if ck != 0:
            terms[-k] = ck * _ipow(k)
    return LaurentPoly.from_mapping(terms)


__all__ = [
    "TrigVariant",
    "trig_power_approx",
    "exp_trig_approx",
    "gauss_trig_approx",
    "erf_trig_approx",
    "chebyshev_to_trig",
    "shift_to_sine",
]
