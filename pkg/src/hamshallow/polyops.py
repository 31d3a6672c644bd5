"""Chebyshev series and Laurent polynomials on the unit circle.

Both types are immutable value objects holding dense coefficient arrays.
Every other module builds on the arithmetic and evaluation defined here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from numbers import Number
from typing import Callable

import numpy as np

from .errors import DomainError, ParameterError, ValidationError

DEFAULT_GRID_POINTS = 10_000
GRID_ENV_VAR = "HAMSHALLOW_GRID_POINTS"

# slack for |x| <= 1 checks; eigenvalues of normalized matrices land a few ulp outside
_DOMAIN_SLACK = 1e-12


def default_grid_points() -> int:
    """Oracle grid size, overridable through ``HAMSHALLOW_GRID_POINTS``."""
    raw = os.environ.get(GRID_ENV_VAR)
    if raw is None:
        return DEFAULT_GRID_POINTS
    try:
        value = int(raw)
    except ValueError as exc:
        raise ParameterError(f"{GRID_ENV_VAR}={raw!r} is not an integer") from exc
    if value < 1000:
        raise ParameterError(f"{GRID_ENV_VAR} must be >= 1000, got {value}")
    return value


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ChebyshevSeries:
    """Finite sum ``sum_j coeffs[j] * T_j(x)``.

    Trailing coefficients that are exactly zero are trimmed, so ``degree`` is
    the index of the last nonzero coefficient. The zero series is ``[0.0]``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).ravel()
        if c.size == 0:
            c = np.zeros(1)
        if not np.all(np.isfinite(c)):
            raise ValidationError("Chebyshev coefficients must be finite")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1)
        object.__setattr__(self, "coeffs", _readonly(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def parity(self) -> str:
        """``"even"``, ``"odd"`` or ``"mixed"`` according to the nonzero indices."""
        odd = self.coeffs[1::2]
        even = self.coeffs[0::2]
        if not np.any(odd):
            return "even"
        if not np.any(even):
            return "odd"
        return "mixed"

    def __call__(self, x):
        return cheb_eval(self, x)

    def __add__(self, other: ChebyshevSeries) -> ChebyshevSeries:
        if not isinstance(other, ChebyshevSeries):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return ChebyshevSeries(out)

    def __mul__(self, other):
        if isinstance(other, ChebyshevSeries):
            return cheb_mul(self, other)
        if isinstance(other, Number):
            return ChebyshevSeries(self.coeffs * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def even_part(self) -> ChebyshevSeries:
        c = np.array(self.coeffs)
        c[1::2] = 0.0
        return ChebyshevSeries(c)

    def odd_part(self) -> ChebyshevSeries:
        c = np.array(self.coeffs)
        c[0::2] = 0.0
        return ChebyshevSeries(c)

    def truncate(self, degree: int) -> ChebyshevSeries:
        return ChebyshevSeries(self.coeffs[: degree + 1])

    def l1_norm(self) -> float:
        return float(np.abs(self.coeffs).sum())

    def to_dict(self) -> dict:
        return {
            "kind": "chebyshev",
            "degree": self.degree,
            "coeffs": [float(c) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> ChebyshevSeries:
        if data.get("kind") != "chebyshev":
            raise ValidationError(f"expected kind 'chebyshev', got {data.get('kind')!r}")
        series = cls(data["coeffs"])
        if "degree" in data and int(data["degree"]) != series.degree:
            raise ValidationError(
                f"declared degree {data['degree']} != coefficient degree {series.degree}"
            )
        return series

    def __repr__(self):
        return f"ChebyshevSeries(degree={self.degree}, parity={self.parity})"


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """``sum_{k=-d}^{d} coeffs[k + d] * z**k`` evaluated at ``z = exp(i*theta)``.

    ``coeffs`` is the centred complex array of length ``2d + 1``. Outer pairs
    that are both exactly zero are trimmed so that ``degree`` is the largest
    ``|k|`` carrying a nonzero coefficient.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        if c.size % 2 == 0:
            raise ValidationError("Laurent coefficient array must have odd length 2d+1")
        if not np.all(np.isfinite(c)):
            raise ValidationError("Laurent coefficients must be finite")
        while c.size > 1 and c[0] == 0 and c[-1] == 0:
            c = c[1:-1]
        object.__setattr__(self, "coeffs", _readonly(c))

    @classmethod
    def from_mapping(cls, terms: dict) -> LaurentPoly:
        """Build from ``{k: coefficient}``."""
        if not terms:
            return cls(np.zeros(1))
        d = max(abs(int(k)) for k in terms)
        c = np.zeros(2 * d + 1, dtype=complex)
        for k, v in terms.items():
            c[int(k) + d] += v
        return cls(c)

    @property
    def degree(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def coeff(self, k: int) -> complex:
        d = self.degree
        if abs(k) > d:
            return 0j
        return complex(self.coeffs[k + d])

    @property
    def indices(self) -> np.ndarray:
        d = self.degree
        return np.arange(-d, d + 1)

    def l1_norm(self) -> float:
        return float(np.abs(self.coeffs).sum())

    @property
    def real_on_circle(self) -> bool:
        """True iff ``coeff(-k) == conj(coeff(k))`` for every ``k``.

        The comparison allows rounding at the 1e-13 relative level; every
        constructor in this package produces exact conjugate pairs.
        """
        c = self.coeffs
        gap = np.abs(c[::-1] - np.conj(c)).max()
        return bool(gap <= 1e-13 * max(self.l1_norm(), 1e-300))

    def __call__(self, theta):
        return laurent_eval(self, theta)

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        d = max(self.degree, other.degree)
        out = np.zeros(2 * d + 1, dtype=complex)
        for p in (self, other):
            out[d - p.degree : d + p.degree + 1] += p.coeffs
        return LaurentPoly(out)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return laurent_mul(self, other)
        if isinstance(other, Number):
            return LaurentPoly(self.coeffs * complex(other))
        return NotImplemented

    __rmul__ = __mul__

    def parity_part(self, parity: int) -> LaurentPoly:
        """Keep only the indices ``k`` with ``k % 2 == parity``."""
        c = np.array(self.coeffs)
        c[(self.indices % 2) != parity] = 0
        return LaurentPoly(c)

    def to_dict(self) -> dict:
        return {
            "kind": "laurent",
            "degree": self.degree,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> LaurentPoly:
        if data.get("kind") != "laurent":
            raise ValidationError(f"expected kind 'laurent', got {data.get('kind')!r}")
        raw = data["coeffs"]
        c = np.array([complex(*pair) if isinstance(pair, (list, tuple)) else complex(pair) for pair in raw])
        poly = cls(c)
        if "degree" in data and int(data["degree"]) != poly.degree:
            raise ValidationError(
                f"declared degree {data['degree']} != coefficient degree {poly.degree}"
            )
        return poly

    def __repr__(self):
        return f"LaurentPoly(degree={self.degree}, real_on_circle={self.real_on_circle})"


def poly_from_dict(data: dict) -> ChebyshevSeries | LaurentPoly:
    kind = data.get("kind")
    if kind == "chebyshev":
        return ChebyshevSeries.from_dict(data)
    if kind == "laurent":
        return LaurentPoly.from_dict(data)
    raise ValidationError(f"unknown polynomial kind {kind!r}")


def cheb_eval(series: ChebyshevSeries, x):
    """Evaluate a Chebyshev series with the Clenshaw recurrence.

    Accepts scalars or arrays; raises :class:`DomainError` outside ``[-1, 1]``.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0 + _DOMAIN_SLACK):
        raise DomainError("Chebyshev evaluation requires |x| <= 1")
    c = series.coeffs
    if len(c) == 1:
        out = np.full_like(xa, c[0])
    else:
        b1 = np.zeros_like(xa)
        b2 = np.zeros_like(xa)
        two_x = 2.0 * xa
        for cj in c[:0:-1]:
            b1, b2 = cj + two_x * b1 - b2, b1
        out = c[0] + xa * b1 - b2
    return float(out) if np.ndim(out) == 0 else out


def laurent_eval(poly: LaurentPoly, theta):
    """Evaluate ``sum_k p_k exp(i k theta)``; Horner in ``z`` on the unit circle."""
    th = np.asarray(theta, dtype=float)
    z = np.exp(1j * th)
    acc = np.zeros_like(z)
    for ck in poly.coeffs[::-1]:
        acc = acc * z + ck
    out = acc * np.exp(-1j * poly.degree * th)
    return complex(out) if np.ndim(out) == 0 else out


def cheb_mul(a: ChebyshevSeries, b: ChebyshevSeries) -> ChebyshevSeries:
    """Product via ``T_m T_n = (T_{m+n} + T_{|m-n|}) / 2``.

    Implemented as a convolution of the symmetric Laurent images of both
    factors followed by folding negative indices back onto positive ones.
    """
    sa = _symmetric_image(a.coeffs)
    sb = _symmetric_image(b.coeffs)
    prod = np.convolve(sa, sb)
    d = a.degree + b.degree
    half = prod[d:]
    out = 2.0 * half
    out[0] = half[0]
    return ChebyshevSeries(out)


def _symmetric_image(c: np.ndarray) -> np.ndarray:
    half = c[1:] / 2.0
    return np.concatenate([half[::-1], c[:1], half])


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(np.convolve(a.coeffs, b.coeffs))


def cheb_to_laurent(series: ChebyshevSeries) -> LaurentPoly:
    """Substitute ``x = cos(theta)``: ``T_j -> (z^j + z^-j) / 2``."""
    return LaurentPoly(_symmetric_image(series.coeffs).astype(complex))


def uniform_grid(kind: str, grid_points: int) -> np.ndarray:
    if kind == "chebyshev":
        return np.linspace(-1.0, 1.0, grid_points)
    if kind == "laurent":
        return np.linspace(0.0, 2.0 * np.pi, grid_points, endpoint=False)
    raise ValidationError(f"unknown grid kind {kind!r}")


def sup_norm_error(
    f_exact: Callable,
    approx: ChebyshevSeries | LaurentPoly,
    grid_points: int | None = None,
) -> float:
    """Max of ``|f_exact - approx|`` over a uniform grid.

    The grid is ``[-1, 1]`` (endpoints included) for Chebyshev series and
    ``theta in [0, 2*pi)`` for Laurent polynomials. Being a grid maximum, the
    result lower-bounds the true sup norm. ``f_exact`` must accept arrays.
    """
    if grid_points is None:
        grid_points = default_grid_points()
    if grid_points < 1000:
        raise ParameterError(f"grid_points must be >= 1000, got {grid_points}")
    if isinstance(approx, ChebyshevSeries):
        grid = uniform_grid("chebyshev", grid_points)
        values = cheb_eval(approx, grid)
    elif isinstance(approx, LaurentPoly):
        grid = uniform_grid("laurent", grid_points)
        values = laurent_eval(approx, grid)
    else:
        raise ValidationError(f"unsupported approximant type {type(approx).__name__}")
    exact = np.asarray(f_exact(grid))
    return float(np.max(np.abs(exact - values)))
