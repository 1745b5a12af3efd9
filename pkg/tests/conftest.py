from pathlib import Path

import numpy as np
import pytest

from gfclt.kernels import make_defant_kernel, make_iid_kernel

SPECS_DIR = Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture(scope="session")
def defant():
    return make_defant_kernel(64)


@pytest.fixture(scope="session")
def bernoulli_half():
    return make_iid_kernel([0, 1], [0.5, 0.5], name="bernoulli(1/2)")


@pytest.fixture(scope="session")
def skewed():
    return make_iid_kernel([0, 1], [0.3, 0.7], name="bernoulli(0.7)")


@pytest.fixture
def rng():
    return np.random.default_rng(20201)


@pytest.fixture
def specs_dir():
    return SPECS_DIR
