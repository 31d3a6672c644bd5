import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from hamshallow.composer import Atom, Product
from hamshallow.estimators import HamiltonianFunction, PolynomialApproximator
from hamshallow.hamiltonian import random_hamiltonian
from hamshallow.simulator import exact_function_matrix


def test_params_and_clone():
    est = PolynomialApproximator(function="exp:beta=2", delta=1e-3)
    assert est.get_params() == {"function": "exp:beta=2", "delta": 1e-3, "measure": False}
    c = clone(est).set_params(delta=1e-2)
    assert c.delta == 1e-2 and est.delta == 1e-3


def test_predict_and_score():
    est = PolynomialApproximator(function="monomial:n=50", delta=1e-2).fit()
    x = np.linspace(-1, 1, 501)
    assert np.max(np.abs(est.predict(x) - x**50)) <= 1e-2
    assert -1e-2 <= est.score(x) <= 0
    assert est.degrees_.n == 24


def test_laurent_single_column():
    est = PolynomialApproximator(function=Atom("monomial", 10, "laurent-sin"), delta=1e-2).fit()
    th = np.linspace(0, 2 * np.pi, 200)
    assert np.max(np.abs(est.predict(th) - np.sin(th) ** 10)) <= 1e-2


def test_two_columns():
    est = PolynomialApproximator(function={"op": "product", "children": [
        {"atom": {"family": "erf", "param": 1.0}}, {"atom": {"family": "monomial", "basis": "laurent-cos", "param": 4}}]},
        delta=1e-2).fit()
    X = np.random.default_rng(0).uniform(-1, 1, (100, 2))
    assert est.score(X) >= -1e-2


def test_not_fitted():
    with pytest.raises(NotFittedError):
        PolynomialApproximator().predict([0.1])


def test_bad_columns():
    est = PolynomialApproximator().fit()
    with pytest.raises(ValueError):
        est.predict(np.zeros((3, 3)))


def test_hamiltonian_transform(rng):
    hs = [random_hamiltonian(2, 3, rng) for _ in range(3)]
    est = HamiltonianFunction(function=Product((Atom("monomial", 3), Atom("monomial", 2, "laurent-cos"))), delta=1e-2).fit()
    blocks = est.transform(hs)
    for b, h in zip(blocks, hs):
        assert np.max(np.abs(b - exact_function_matrix(est.spec_, h))) <= 2e-2
    assert est.score(hs) >= -2e-2
    assert len(est.fit_transform(hs)) == 3


def test_hamiltonian_not_fitted(rng):
    with pytest.raises(NotFittedError):
        HamiltonianFunction().transform([random_hamiltonian(1, 1, rng)])
