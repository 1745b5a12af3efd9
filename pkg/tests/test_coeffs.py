import numpy as np
import pytest

from gfclt.analysis import cauchy_z_derivs, kernel_dz, phi_by_quadrature, phi_by_series
from gfclt.enums import PhiMethod
from gfclt.exceptions import KernelDomainError, QuadratureDomainError, SeriesOrderError
from gfclt.permlab import exact_distribution


@pytest.mark.parametrize("name", ["bernoulli_half", "defant"])
def test_origin_gives_ones(name, request):
    kernel = request.getfixturevalue(name)
    np.testing.assert_allclose(phi_by_series(kernel, 0.0, 40).values, np.ones(41), atol=1e-12)
    np.testing.assert_allclose(phi_by_quadrature(kernel, 0.0, 20, r=0.5).values, np.ones(21), atol=1e-10)


def test_iid_closed_form(bernoulli_half):
    x = 0.7
    expected = ((1 + np.exp(1j * x)) / 2) ** np.arange(31)
    np.testing.assert_allclose(phi_by_series(bernoulli_half, x, 30).values, expected, atol=1e-13)
    np.testing.assert_allclose(phi_by_quadrature(bernoulli_half, x, 30).values, expected, atol=1e-9)


def test_defant_series_matches_enumeration(defant):
    x = 0.3
    values = phi_by_series(defant, x, 7).values
    for n in range(1, 8):
        table = exact_distribution(n)
        expected = sum(count * np.exp(1j * x * m) for m, count in table.counts.items()) / table.total
        assert abs(values[n] - expected) < 1e-12


@pytest.mark.parametrize("name", ["bernoulli_half", "skewed", "defant"])
@pytest.mark.parametrize("x", [0.0, 0.2, -0.2, 0.5, -0.5])
def test_dual_path_agreement(name, x, request):
    kernel = request.getfixturevalue(name)
    series = phi_by_series(kernel, x, 40)
    quadrature = phi_by_quadrature(kernel, x, 40)
    np.testing.assert_allclose(quadrature.values, series.values, atol=1e-8)
    assert series.bounded()
    assert quadrature.bounded()


def test_hermitian_symmetry(defant):
    plus = phi_by_series(defant, 0.4, 40).values
    minus = phi_by_series(defant, -0.4, 40).values
    np.testing.assert_allclose(minus, np.conj(plus), atol=1e-10)


def test_node_doubling_is_stable(defant):
    coarse = phi_by_quadrature(defant, 0.2, 40, m_nodes=256)
    fine = phi_by_quadrature(defant, 0.2, 40, m_nodes=512)
    np.testing.assert_allclose(fine.values, coarse.values, atol=1e-10)
    assert (coarse.nodes, fine.nodes) == (256, 512)


def test_quadrature_radius_defaults(defant):
    result = phi_by_quadrature(defant, 0.2, 10)
    assert result.method is PhiMethod.quadrature
    assert result.nodes == 256
    assert 0.85 < result.radius < 0.95


@pytest.mark.parametrize("r", [1.5, 0.0, -0.3])
def test_quadrature_radius_outside_pole(bernoulli_half, r):
    with pytest.raises(QuadratureDomainError):
        phi_by_quadrature(bernoulli_half, 0.0, 10, r=r)


def test_series_order_limit(defant):
    with pytest.raises(SeriesOrderError):
        phi_by_series(defant, 0.2, 64)


def test_cauchy_derivatives(bernoulli_half, skewed):
    derivs = cauchy_z_derivs(bernoulli_half, 0.0, 2)
    np.testing.assert_allclose(derivs, [0, -1, 0], atol=1e-13)

    phi = skewed.dist.characteristic([0.4])
    np.testing.assert_allclose(cauchy_z_derivs(skewed, 0.4, 1)[1], -phi, atol=1e-13)
    assert kernel_dz(skewed, 0.4) == pytest.approx(-phi)

    with pytest.raises(KernelDomainError):
        cauchy_z_derivs(skewed, 0.4, 1, rho=1.5)


def test_cauchy_derivatives_defant(defant):
    analytic = defant.jet(0.3, 1.0).dz
    assert cauchy_z_derivs(defant, 0.3, 1)[1] == pytest.approx(analytic, abs=1e-9)


def test_phi_sequence_frame(bernoulli_half):
    frame = phi_by_series(bernoulli_half, 0.2, 5).to_frame()
    assert list(frame.columns) == ["n", "re", "im", "method"]
    assert frame.shape == (6, 4)
    assert set(frame["method"]) == {"series"}
