"""Independent reference implementations used to check the package.

Nothing here calls the package's evaluators: Chebyshev sums go through
``numpy.polynomial.chebyshev``, matrix functions through ``scipy.linalg``
and Pauli matrices through explicit Kronecker products.
"""

from functools import reduce

import numpy as np
from numpy.polynomial import chebyshev as npcheb
from scipy import linalg, special

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def cheb_naive(coeffs, x):
    x = np.asarray(x, dtype=float)
    j = np.arange(len(coeffs))
    return np.cos(np.outer(np.arccos(np.clip(x, -1, 1)), j)) @ np.asarray(coeffs)


def cheb_np(coeffs, x):
    return npcheb.chebval(np.asarray(x, dtype=float), np.asarray(coeffs, dtype=float))


def monomial_cheb(n):
    """Chebyshev coefficients of x^n via numpy's basis conversion."""
    c = np.zeros(n + 1)
    c[n] = 1.0
    return npcheb.poly2cheb(c)


def exp_bessel_coeffs(beta, deg):
    """Exact Chebyshev coefficients of exp(-beta(1+x)) via modified Bessel functions."""
    k = np.arange(deg + 1)
    c = 2.0 * (-1.0) ** k * special.ive(k, beta)  # ive = e^{-beta} I_k(beta)
    c[0] /= 2.0
    return c


def laurent_naive(coeffs, theta):
    """``sum_k c_k e^{i k theta}`` for a centred coefficient array."""
    c = np.asarray(coeffs, dtype=complex)
    d = (len(c) - 1) // 2
    k = np.arange(-d, d + 1)
    return np.exp(1j * np.outer(np.asarray(theta, dtype=float), k)) @ c


def x_grid(n=10_000):
    return np.linspace(-1.0, 1.0, n)


def theta_grid(n=10_000):
    return np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)


def cheb_sup(f, coeffs, n=10_000):
    x = x_grid(n)
    return float(np.max(np.abs(f(x) - cheb_np(coeffs, x))))


def laurent_sup(f, coeffs, n=10_000):
    th = theta_grid(n)
    return float(np.max(np.abs(f(th) - laurent_naive(coeffs, th))))


def pauli_kron(s):
    return reduce(np.kron, [PAULI[ch] for ch in s])


def ham_matrix(terms, normalized=True):
    """Dense ``H`` (or ``H/alpha``) from (coeff, pauli) pairs using Kronecker products."""
    alpha = sum(abs(c) for c, _ in terms) if normalized else 1.0
    return sum(c / alpha * pauli_kron(p) for c, p in terms)


def matrix_function(hm, f):
    w, v = linalg.eigh(hm)
    return (v * f(w)) @ v.conj().T


def expm_evolution(hm, t):
    """``exp(-i t H)`` via scipy's Pade/scaling-squaring expm."""
    return linalg.expm(-1j * t * hm)


def qsp_product(phases, x):
    """``e^{i phi_0 Z} prod_j W(x) e^{i phi_j Z}`` via matrix exponentials."""
    z = PAULI["Z"]
    w = np.array([[x, 1j * np.sqrt(1 - x * x)], [1j * np.sqrt(1 - x * x), x]])
    out = linalg.expm(1j * phases[0] * z)
    for p in phases[1:]:
        out = out @ w @ linalg.expm(1j * p * z)
    return out


def gqsp_product(angles, theta):
    """Top-left entry of ``R(t0) prod_j A(z) R(tj)`` at ``z = e^{i theta}``."""
    z = np.exp(1j * theta)

    def rot(t):
        return np.array([[np.cos(t), 1j * np.sin(t)], [1j * np.sin(t), np.cos(t)]])

    a = np.diag([z, 1 / z])
    out = rot(angles[0])
    for t in angles[1:]:
        out = out @ a @ rot(t)
    return out
