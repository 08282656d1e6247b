import sys

import numpy as np
import pytest

from ptwell._backend import HAVE_NUMBA
from ptwell.kernels import get_kernels

BACKENDS = ["numpy"] + (["numba"] if HAVE_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def kern(request):
    return get_kernels(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def dense(diag):
    d = len(diag)
    m = np.diag(np.asarray(diag, dtype=complex))
    m -= np.eye(d, k=1) + np.eye(d, k=-1)
    return m


def pt_diag(N, xi):
    if N % 2 == 0:
        n = (N - 4) // 2
        return np.array([1j * xi] * (n + 1) + [0.0] + [-1j * xi] * (n + 1))
    n = (N - 3) // 2
    return np.array([1j * xi] * (n + 1) + [-1j * xi] * (n + 1))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
