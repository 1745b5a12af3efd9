import jsonschema
import numpy as np
import pytest

from gfclt.analysis import compute_limits, finite_diff_partials, finite_difference_jet
from gfclt.enums import DerivMode
from gfclt.exceptions import StencilError
from gfclt.kernels import DiscreteDist, make_iid_kernel
from gfclt.utils.constants import DEFANT_MU, DEFANT_SIGMA2
from gfclt.utils.io import load_schema


def test_bernoulli_limits(bernoulli_half):
    params = compute_limits(bernoulli_half)
    np.testing.assert_allclose(params.mu, [0.5], atol=1e-12)
    np.testing.assert_allclose(params.sigma, [[0.25]], atol=1e-12)


def test_defant_limits(defant):
    params = compute_limits(defant)
    assert abs(params.mu[0] - DEFANT_MU) < 1e-8
    assert abs(params.sigma[0, 0] - DEFANT_SIGMA2) < 1e-7
    assert params.imag_residue < 1e-8
    assert params.psd_slack > -1e-8
    assert params.passed()


def test_point_mass_limits():
    params = compute_limits(make_iid_kernel([2.5], [1.0]))
    np.testing.assert_allclose(params.mu, [2.5], atol=1e-12)
    assert params.sigma[0, 0] == pytest.approx(0.0, abs=1e-12)
    assert params.sigma[0, 0] >= 0


def test_iid_limits_match_moments(rng):
    for _ in range(50):
        atoms = rng.integers(1, 7)
        dist = DiscreteDist(rng.uniform(-3, 3, atoms), rng.dirichlet(np.ones(atoms)))
        params = compute_limits(make_iid_kernel(dist))
        np.testing.assert_allclose(params.mu, dist.mean(), atol=1e-9)
        np.testing.assert_allclose(params.sigma, dist.covariance(), atol=1e-9)


def test_scale_equivariance(skewed):
    base = compute_limits(skewed)
    scaled = compute_limits(make_iid_kernel(skewed.dist.scaled(3)))
    np.testing.assert_allclose(scaled.mu, 3 * base.mu, atol=1e-9)
    np.testing.assert_allclose(scaled.sigma, 9 * base.sigma, atol=1e-9)


def test_two_dimensional_kernel():
    dist = DiscreteDist([[0, 0], [1, 0], [0, 1], [1, 1]], [0.1, 0.2, 0.3, 0.4])
    params = compute_limits(make_iid_kernel(dist))
    np.testing.assert_allclose(params.mu, dist.mean(), atol=1e-12)
    np.testing.assert_allclose(params.sigma, dist.covariance(), atol=1e-12)
    assert params.sigma[0, 1] == params.sigma[1, 0]

    differenced = compute_limits(make_iid_kernel(dist), deriv_mode=DerivMode.finite_difference)
    np.testing.assert_allclose(differenced.sigma, dist.covariance(), atol=1e-8)
    assert differenced.sigma[0, 1] == differenced.sigma[1, 0]


def test_finite_differences_on_closed_form():
    # g(x, z) = 1 - e^{ix} z
    kernel = make_iid_kernel([1.0], [1.0])
    partials = finite_diff_partials(kernel, [((0,), 0), ((0, 0), 0), ((0,), 1), ((), 1)])
    assert partials[((0,), 0)] == pytest.approx(-1j, abs=1e-9)
    assert partials[((0, 0), 0)] == pytest.approx(1.0, abs=1e-9)
    assert partials[((0,), 1)] == pytest.approx(-1j, abs=1e-9)
    assert partials[((), 1)] == pytest.approx(-1.0, abs=1e-12)


def test_finite_difference_path_matches_analytic(defant):
    analytic = defant.jet(0.0, 1.0)
    differenced = finite_difference_jet(defant)
    assert abs(differenced.dx[0] - analytic.dx[0]) < 1e-7
    assert abs(differenced.dxx[0, 0] - analytic.dxx[0, 0]) < 1e-7
    assert abs(differenced.dxz[0] - analytic.dxz[0]) < 1e-7

    params = compute_limits(defant, deriv_mode=DerivMode.finite_difference)
    assert abs(params.mu[0] - DEFANT_MU) < 1e-7
    assert abs(params.sigma[0, 0] - DEFANT_SIGMA2) < 1e-7


def test_stencil_must_fit():
    kernel = make_iid_kernel([0, 1], [0.5, 0.5], x_box=1e-3)
    with pytest.raises(StencilError):
        finite_diff_partials(kernel, [((0,), 0)])
    # an explicit small step fits
    partials = finite_diff_partials(kernel, [((0,), 0)], step=1e-4)
    assert partials[((0,), 0)] == pytest.approx(-0.5j, abs=1e-7)


def test_diagnostics_and_report(bernoulli_half):
    params = compute_limits(bernoulli_half)
    assert params.imag_residue < 1e-8
    assert params.psd_slack == pytest.approx(0.25)
    report = params.to_dict()
    assert set(report) == {"mu", "sigma", "imag_residue", "psd_slack"}
    assert report["mu"] == pytest.approx([0.5])
    assert report["sigma"][0] == pytest.approx([0.25])


@pytest.mark.parametrize("name", ["bernoulli_half", "defant"])
def test_report_matches_schema(name, request):
    report = compute_limits(request.getfixturevalue(name)).to_dict()
    jsonschema.validate(report, load_schema("limit_params"))
