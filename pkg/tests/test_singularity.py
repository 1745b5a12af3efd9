import math

import jsonschema
import numpy as np
import pytest

from gfclt.analysis import (
    compute_limits,
    decay_rate_check,
    levy_check,
    log_b_taylor,
    phi_by_series,
    principal_part_phi,
    track_root,
)
from gfclt.exceptions import KernelDomainError
from gfclt.kernels import make_iid_kernel
from gfclt.utils.io import load_schema


@pytest.mark.parametrize("name", ["bernoulli_half", "defant"])
def test_root_at_origin(name, request):
    singularity = track_root(request.getfixturevalue(name), 0.0)
    assert abs(singularity.b - 1) < 1e-12
    assert abs(singularity.a - 1) < 1e-12
    assert singularity.residual < 1e-12


def test_iid_root_closed_form(bernoulli_half):
    singularity = track_root(bernoulli_half, 0.1)
    assert abs(singularity.b - 2 / (1 + np.exp(0.1j))) < 1e-12
    assert abs(singularity.a - 1) < 1e-12


def test_iid_roots_along_continuation(skewed):
    for x in np.linspace(-0.9, 0.9, 7):
        singularity = track_root(skewed, x)
        assert abs(singularity.b - skewed.closed_form_root(x)) < 1e-12


def test_defant_root_matches_limits(defant):
    params = compute_limits(defant)
    x = 0.1
    singularity = track_root(defant, x)
    assert singularity.residual < 1e-12
    quadratic = -1j * params.mu[0] * x + 0.5 * params.sigma[0, 0] * x**2
    assert abs(np.log(singularity.b) - quadratic) < 1e-3


def test_root_leaving_the_disc():
    kernel = make_iid_kernel([0, 1], [0.5, 0.5], z_radius=1.05)
    with pytest.raises(KernelDomainError):
        track_root(kernel, 1.0)


def test_principal_part_at_origin(defant):
    singularity = track_root(defant, 0.0)
    for n in (0, 1, 10, 100):
        assert principal_part_phi(singularity, n) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        principal_part_phi(singularity, -1)


def test_principal_part_is_exact_for_iid(skewed):
    x = 0.6
    singularity = track_root(skewed, x)
    phi = skewed.dist.characteristic([x])
    for n in (1, 5, 20):
        assert principal_part_phi(singularity, n) == pytest.approx(phi**n, abs=1e-12)


def test_principal_part_approximates_defant(defant):
    singularity = track_root(defant, 0.2)
    exact = phi_by_series(defant, 0.2, 30).values[30]
    assert abs(exact - principal_part_phi(singularity, 30)) < 1e-8


def test_taylor_order_iid(skewed, bernoulli_half):
    # third cumulant drives the remainder unless it vanishes
    report = log_b_taylor(skewed, compute_limits(skewed))
    assert report.passed
    assert report.order == pytest.approx(3.0, abs=0.2)

    report = log_b_taylor(bernoulli_half, compute_limits(bernoulli_half))
    assert report.order > 3.5


def test_taylor_order_defant(defant):
    report = log_b_taylor(defant, compute_limits(defant))
    assert report.passed
    assert report.order >= 1.8
    assert len(report.norms) == 7
    assert report.norms[0] == pytest.approx(0.4)


def test_taylor_at_origin(bernoulli_half):
    report = log_b_taylor(bernoulli_half, compute_limits(bernoulli_half), xs=[[0.0]])
    assert report.remainders[0] == pytest.approx(0.0, abs=1e-15)
    assert math.isinf(report.order)
    assert report.passed


def test_decay_iid_is_pure_pole(bernoulli_half):
    report = decay_rate_check(bernoulli_half, 0.3, 48)
    assert np.max(report.errors) < 1e-12
    assert report.passed
    assert report.slope == -math.inf


def test_decay_at_origin(defant):
    report = decay_rate_check(defant, 0.0, 48)
    assert np.max(report.errors) < 1e-12
    assert report.passed


def test_decay_defant(defant):
    report = decay_rate_check(defant, 0.2, 48)
    assert report.slope < 0
    assert report.r_fit > 1.02
    assert report.passed

    data = report.to_dict()
    assert {"x", "b", "a", "residual", "slope", "r_fit"} <= set(data)
    assert data["x"] == [0.2]
    jsonschema.validate(data, load_schema("singularity_report"))


def test_pure_pole_report_matches_schema(bernoulli_half):
    data = decay_rate_check(bernoulli_half, 0.3, 48).to_dict()
    jsonschema.validate(data, load_schema("singularity_report"))
    assert data["passed"]


@pytest.mark.parametrize("name", ["skewed", "defant"])
def test_levy_check_shrinks(name, request):
    kernel = request.getfixturevalue(name)
    report = levy_check(kernel, compute_limits(kernel), omega=[1.0], ns=(10, 100, 1000))
    assert report.shrinking
    assert report.deviations[-1] < 0.05
