import math

import pytest

from hamshallow import resources as rs
from hamshallow.composer import Atom, LinearComb, Product
from hamshallow.errors import ParameterError
from hamshallow.hamiltonian import PauliHamiltonian

H4 = PauliHamiltonian(3, ((1, "ZZI"), (1, "XXI"), (1, "IYY"), (1, "IZX")))


def test_monomial_row():
    rep = rs.depth_report(Atom("monomial", 100), H4, 1e-3, 2)
    assert rep.D_B_estimate == 16
    assert rep.depth_raw == 1600
    assert rep.depth_approx == 624
    assert rep.approx_degrees == {"cheb_degree": 39, "laurent_degree": 0}
    assert "scaling estimate" in rep.label


def test_d_st():
    rep = rs.depth_report(Atom("monomial", 10), H4, 1e-2, 2)
    assert rep.D_ST_estimate == pytest.approx(5 * 4 * 2 / 1e-2 ** 0.25)


def test_laurent_only_uses_dst_branch():
    rep = rs.depth_report(Atom("monomial", 30, "laurent-cos"), H4, 1e-2, 1)
    m_raw, m_app = rep.raw_degrees["laurent_degree"], rep.approx_degrees["laurent_degree"]
    assert rep.raw_degrees["cheb_degree"] == 0
    assert rep.depth_raw == pytest.approx(m_raw**2 * rep.D_ST_estimate)
    assert rep.depth_approx == pytest.approx(m_app**2 * rep.D_ST_estimate)


@pytest.mark.parametrize("v", [1, 2, 3])
def test_mixed_formula(v):
    spec = LinearComb(((0.5, Atom("exp", 2.0)), (0.3, Atom("monomial", 40, "laurent-cos"))))
    rep = rs.depth_report(spec, H4, 1e-2, v)
    dst = 5 ** (v - 1) * 4 * 2 / (1e-2) ** (1 / (2 * v))
    n, m = rep.raw_degrees["cheb_degree"], rep.raw_degrees["laurent_degree"]
    assert rep.depth_raw == pytest.approx(n * 16 + m ** ((1 + v) / v) * dst)
    n, m = rep.approx_degrees["cheb_degree"], rep.approx_degrees["laurent_degree"]
    assert rep.depth_approx == pytest.approx(n * 16 + m ** ((1 + v) / v) * dst)
    assert n > 0 and m > 0
    assert rep.depth_approx <= rep.depth_raw


def test_product_degrees():
    rep = rs.depth_report(Product((Atom("monomial", 20), Atom("gauss", 3.0))), H4, 1e-2)
    assert rep.raw_degrees["cheb_degree"] == 54


def test_ratio_scaling():
    ratios = [rs.reduction_ratio_normalized(n, 1e-3, H4) for n in (64, 128, 256, 512, 1024)]
    assert max(ratios) / min(ratios) <= 2
    assert all(0.5 <= r <= 2 for r in ratios)


def test_bad_order():
    with pytest.raises(ParameterError):
        rs.depth_report(Atom("monomial", 3), H4, 1e-2, 4)


def test_table_and_roundtrip():
    rep = rs.depth_report(Atom("monomial", 100), H4, 1e-3)
    text = rep.table()
    assert "1600" in text and "624" in text
    assert rs.DepthReport.from_dict(rep.to_dict()) == rep
