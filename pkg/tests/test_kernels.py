import json

import attrs
import numpy as np
import pytest

from gfclt.enums import DerivMode
from gfclt.exceptions import KernelDomainError, KernelSpecError, SeriesOrderError
from gfclt.kernels import (
    DefantKernel,
    DiscreteDist,
    IidKernel,
    Kernel,
    SeriesKernel,
    build_kernel,
    kernel_self_check,
    make_defant_kernel,
    make_iid_kernel,
    make_series_kernel,
)


@attrs.define(frozen=True, eq=False, kw_only=True)
class PerturbedKernel(Kernel):
    """1 - z + 0.01 z^2, failing g(0, z) = 1 - z"""

    def evaluate(self, x, z):
        self.check_x(x)
        z = np.asarray(z, dtype=complex)
        value = 1.0 - z + 0.01 * z**2
        return value if value.ndim else complex(value)


def test_iid_kernel_values(bernoulli_half):
    assert bernoulli_half.evaluate(0.0, 0.5) == pytest.approx(0.5)
    assert bernoulli_half.evaluate(0.4, 1.0) == pytest.approx(1 - (1 + np.exp(0.4j)) / 2)


def test_point_mass_at_zero_is_one_minus_z():
    kernel = make_iid_kernel([0], [1.0])
    z = np.array([0.3, -0.7j, 1.5])
    np.testing.assert_allclose(kernel.evaluate(0.6, z), 1 - z)


def test_discrete_dist_moments():
    dist = DiscreteDist([[0, 0], [1, 0], [0, 2]], [0.5, 0.25, 0.25])
    assert dist.dim == 2
    np.testing.assert_allclose(dist.mean(), [0.25, 0.5])
    np.testing.assert_allclose(dist.covariance(), [[0.1875, -0.125], [-0.125, 0.75]])


@pytest.mark.parametrize(
    "support, probs",
    [([], []), ([0, 1], [0.5]), ([0, 1], [1.5, -0.5]), ([0, 1], [0.5, 0.6])],
)
def test_discrete_dist_validation(support, probs):
    with pytest.raises(KernelSpecError):
        DiscreteDist(support, probs)


def test_kernel_field_validation():
    with pytest.raises(ValueError):
        make_iid_kernel([0, 1], [0.5, 0.5], z_radius=1.0)
    with pytest.raises(KernelSpecError):
        make_defant_kernel(4)


def test_x_outside_box(bernoulli_half, defant):
    with pytest.raises(KernelDomainError):
        bernoulli_half.evaluate(1.5, 0.5)
    with pytest.raises(KernelDomainError):
        defant.evaluate(0.8, 0.5)
    with pytest.raises(ValueError):
        bernoulli_half.evaluate([0.1, 0.2], 0.5)


def test_defant_kernel_at_origin(defant):
    z = np.array([0.0, 0.5, -0.9, 0.3 + 0.8j, 1.2j])
    np.testing.assert_allclose(defant.evaluate(0.0, z), 1 - z, atol=1e-12)


def test_self_check_builtins(bernoulli_half, defant):
    report = kernel_self_check(bernoulli_half)
    assert report.passed
    assert report.max_deviation < 1e-12

    report = kernel_self_check(defant)
    assert report.passed
    assert report.max_deviation < 1e-10
    assert report.root_deviation < 1e-10
    assert report.slope_deviation < 1e-10


def test_self_check_reports_planted_defect():
    kernel = PerturbedKernel(name="perturbed", dim=1, z_radius=2.0, x_box=1.0, deriv_mode=DerivMode.finite_difference)
    report = kernel_self_check(kernel)
    assert not report.passed
    assert report.max_deviation == pytest.approx(0.01, rel=1e-9)
    assert report.root_deviation == pytest.approx(0.01, rel=1e-9)
    assert report.slope_deviation == pytest.approx(0.02, rel=1e-6)
    assert report.to_dict()["passed"] is False


def test_self_check_never_raises():
    kernel = PerturbedKernel(name="no-jet", dim=1, z_radius=2.0, x_box=1.0)
    report = kernel_self_check(kernel)
    assert not report.passed
    assert report.errors


def test_defant_truncation_stability(defant, rng):
    finer = make_defant_kernel(72)
    xs = rng.uniform(-0.5, 0.5, 16)
    zs = rng.uniform(0, 1.05, 16) * np.exp(2j * np.pi * rng.uniform(size=16))
    for x, z in zip(xs, zs):
        assert abs(defant.evaluate(x, z) - finer.evaluate(x, z)) < 1e-10


@pytest.mark.parametrize("name", ["defant", "skewed"])
def test_analytic_partials_match_differences(name, request, rng):
    kernel = request.getfixturevalue(name)
    h = 1e-5
    for _ in range(8):
        x = rng.uniform(-0.5, 0.5)
        z = rng.uniform(0, 1.0) * np.exp(2j * np.pi * rng.uniform())
        jet = kernel.jet(x, z)
        plus, minus = kernel.jet(x + h, z), kernel.jet(x - h, z)

        assert abs(jet.value - kernel.evaluate(x, z)) < 1e-12
        assert abs(jet.dz - (kernel.evaluate(x, z + h) - kernel.evaluate(x, z - h)) / (2 * h)) < 1e-7
        assert abs(jet.dx[0] - (plus.value - minus.value) / (2 * h)) < 1e-7
        assert abs(jet.dxx[0, 0] - (plus.dx[0] - minus.dx[0]) / (2 * h)) < 1e-7
        assert abs(jet.dxz[0] - (plus.dz - minus.dz) / (2 * h)) < 1e-7


def test_defant_series_order_limit(defant):
    assert defant.f_series(0.1, 63).trunc_order == 63
    with pytest.raises(SeriesOrderError):
        defant.f_series(0.1, 64)


def test_defant_pgf_gives_small_distributions(defant):
    pgf = defant.pgf_series()
    np.testing.assert_allclose(pgf.coeffs[:4, 3].real, [0, 5 / 6, 1 / 6, 0], atol=1e-13)
    np.testing.assert_allclose(pgf.coeffs[:, 20].real.sum(), 1.0, atol=1e-8)


def test_iid_series_is_geometric(skewed):
    phi = skewed.dist.characteristic([0.3])
    np.testing.assert_allclose(skewed.f_series(0.3, 6).coeffs, phi ** np.arange(7))
    assert skewed.closed_form_root(0.3) == pytest.approx(1 / phi)


def test_build_kernel_from_files(specs_dir):
    defant = build_kernel(specs_dir / "defant.json")
    assert isinstance(defant, DefantKernel) and defant.trunc == 64
    assert build_kernel(specs_dir / "defant.json", trunc=32).trunc == 32

    bernoulli = build_kernel(str(specs_dir / "bernoulli_half.json"))
    assert isinstance(bernoulli, IidKernel)
    np.testing.assert_allclose(bernoulli.dist.probs, [0.5, 0.5])


def test_build_kernel_inline_options():
    spec = {"type": "iid", "support": [-1, 1], "probs": [0.5, 0.5], "deriv_mode": "finite_difference", "x_box": 0.5}
    kernel = build_kernel(json.dumps(spec))
    assert kernel.deriv_mode is DerivMode.finite_difference
    assert kernel.x_box == 0.5


@pytest.mark.parametrize(
    "source",
    [
        '{"type": ',
        "[1, 2]",
        '{"type": "gaussian"}',
        '{"type": "iid", "support": [0, 1]}',
        '{"type": "iid", "support": [0, 1], "probs": [0.2, 0.2]}',
        '{"type": "series", "which": "h", "coeffs": [[0, 0, 1, 0]]}',
        '{"type": "series", "coeffs": [[0, 0]]}',
        "no/such/kernel.json",
    ],
)
def test_bad_kernel_specs(source):
    with pytest.raises(KernelSpecError):
        build_kernel(source)


def test_series_kernel_for_g_and_f(rng):
    # g(x, z) = 1 - e^{ix} z, given directly and as its reciprocal sum_n y^n z^n
    direct = make_series_kernel([[0, 0, 1, 0], [1, 1, -1, 0]])
    inverted = make_series_kernel([[n, n, 1, 0] for n in range(13)], which="f")
    assert isinstance(direct, SeriesKernel)

    for _ in range(4):
        x, z = rng.uniform(-0.5, 0.5), rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
        expected = 1 - np.exp(1j * x) * z
        assert direct.evaluate(x, z) == pytest.approx(expected, abs=1e-14)
        assert inverted.evaluate(x, z) == pytest.approx(expected, abs=1e-12)
        assert direct.jet(x, z).dx[0] == pytest.approx(-1j * np.exp(1j * x) * z, abs=1e-14)

    assert kernel_self_check(direct).passed
    np.testing.assert_allclose(inverted.f_series(0.2, 5).coeffs, np.exp(0.2j * np.arange(6)), atol=1e-12)
    with pytest.raises(SeriesOrderError):
        direct.f_series(0.2, 5)
