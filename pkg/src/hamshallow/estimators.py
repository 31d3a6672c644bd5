"""scikit-learn style wrappers over the functional API.

``PolynomialApproximator`` fits a reduced-degree approximant for a function
spec and predicts its values on scalar inputs. ``HamiltonianFunction`` fits
phase programs for a spec and transforms Hamiltonians into the matrix their
circuit block implements.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import composer
from .hamiltonian import PauliHamiltonian, block_encoding, evolution_unitary
from .qsp import DEFAULT_TOL, gqsp_circuit, real_qsp_circuit, synthesize_chebyshev, synthesize_laurent
from .simulator import exact_function_matrix


def _as_spec(function):
    if isinstance(function, (composer.Atom, composer.LinearComb, composer.Product)):
        return function
    if isinstance(function, dict):
        return composer.spec_from_dict(function)
    if isinstance(function, str):
        from .cli import load_spec

        return load_spec(function)
    raise TypeError(f"cannot interpret {function!r} as a function spec")


class PolynomialApproximator(BaseEstimator):
    """Fit the approximant of ``function`` at total error ``delta``.

    ``X`` given to ``predict`` has one column (x, or the angle theta for a
    Laurent-only spec) or two columns (x, theta).
    """

    def __init__(self, function="monomial:n=10", delta=1e-2, measure=False):
        self.function = function
        self.delta = delta
        self.measure = measure

    def fit(self, X=None, y=None):
        spec = _as_spec(self.function)
        self.spec_ = spec
        self.approximation_, self.report_ = composer.approximate(spec, self.delta, measure=self.measure)
        self.degrees_ = self.approximation_.degrees
        return self

    def _columns(self, X):
        X = check_array(X, ensure_2d=False)
        if X.ndim == 1:
            X = X[:, None]
        if X.shape[1] == 2:
            return X[:, 0], X[:, 1]
        if X.shape[1] != 1:
            raise ValueError(f"expected 1 or 2 columns, got {X.shape[1]}")
        col = X[:, 0]
        if self.approximation_.cheb_part is None:
            return np.zeros_like(col), col
        return col, np.zeros_like(col)

    def predict(self, X):
        check_is_fitted(self, "approximation_")
        x, th = self._columns(X)
        return self.approximation_.evaluate(x, th)

    def score(self, X, y=None):
        """Negative max-abs deviation from the exact function."""
        check_is_fitted(self, "approximation_")
        x, th = self._columns(X)
        exact = composer.exact_function(self.spec_)(x, th)
        return -float(np.max(np.abs(self.predict(X) - exact)))


class HamiltonianFunction(TransformerMixin, BaseEstimator):
    """Map a ``PauliHamiltonian`` to the block its synthesized circuit encodes.

    ``fit`` approximates and solves phases once; ``transform`` builds the
    circuits for each Hamiltonian in ``X`` and returns the unscaled,
    recombined blocks.
    """

    def __init__(self, function="monomial:n=6", delta=1e-3, tol=DEFAULT_TOL):
        self.function = function
        self.delta = delta
        self.tol = tol

    def fit(self, X=None, y=None):
        spec = _as_spec(self.function)
        self.spec_ = spec
        self.approximation_, self.report_ = composer.approximate(spec, self.delta, measure=False)
        a = self.approximation_
        self.cheb_components_ = synthesize_chebyshev(a.cheb_part, self.tol) if a.cheb_part is not None else []
        self.laurent_components_ = synthesize_laurent(a.laurent_part) if a.laurent_part is not None else []
        return self

    def _one(self, h: PauliHamiltonian) -> np.ndarray:
        n = 1 << h.qubits
        a = self.approximation_
        neutral = np.zeros((n, n), complex) if a.combine == "sum" else np.eye(n, dtype=complex)
        cb = lb = neutral
        if self.cheb_components_:
            be = block_encoding(h)
            cb = sum(c.weight * real_qsp_circuit(c.program, be)[:n, :n] / c.program.scale for c in self.cheb_components_)
        if self.laurent_components_:
            U = evolution_unitary(h, 1.0)
            lb = sum(c.weight * gqsp_circuit(c.program, U)[:n, :n] / c.program.scale for c in self.laurent_components_)
        return cb + lb if a.combine == "sum" else cb @ lb

    def transform(self, X):
        check_is_fitted(self, "approximation_")
        hs = [X] if isinstance(X, PauliHamiltonian) else list(X)
        return [self._one(h) for h in hs]

    def score(self, X, y=None):
        """Negative worst max-abs block error over the Hamiltonians in ``X``."""
        hs = [X] if isinstance(X, PauliHamiltonian) else list(X)
        blocks = self.transform(hs)
        return -max(float(np.max(np.abs(b - exact_function_matrix(self.spec_, h)))) for b, h in zip(blocks, hs))
