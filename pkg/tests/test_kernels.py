"""The compiled and numpy backends must agree exactly."""
import numpy as np
import pytest

from hardylab import kernels
from hardylab.combinatorics import Scenario, coefficient_f, valid_pairs
from hardylab.inequality import grid_search
from hardylab.lhv import scan

BACKENDS = kernels.available_backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")


def test_fallback_always_available():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


@needs_both
@pytest.mark.parametrize("n", range(2, 8))
def test_scan_backends_agree(n):
    for a, b in valid_pairs(n):
        s = Scenario(n, a, b)
        for f in (coefficient_f(s).value, coefficient_f(s).value + 2, 1):
            assert scan(s, f, backend="cython") == scan(s, f, backend="python")
    bad = Scenario.unchecked(n, n, n)
    assert scan(bad, 1, backend="cython") == scan(bad, 1, backend="python")


@needs_both
@pytest.mark.parametrize("n", range(3, 11))
def test_grid_backends_agree(n):
    for a, b in valid_pairs(n):
        s = Scenario(n, a, b)
        assert grid_search(s, backend="cython") == grid_search(s, backend="python")


@pytest.mark.parametrize("workers", [1, 2, 5, 7])
def test_grid_partitioning_deterministic(workers):
    s = Scenario(3, 2, 2)
    assert grid_search(s, workers=workers) == grid_search(s, workers=1)


def test_grid_tie_break_lowest_index():
    # [3;2,2] has symmetric maxima; the first in row-major order must win.
    value, i, j = grid_search(Scenario(3, 2, 2))
    assert (i, j) == (0, 180)
    assert value == pytest.approx(2.0)


@pytest.mark.parametrize("name", BACKENDS)
def test_grid_kernel_values(name):
    impl = kernels.load_backend(name)
    size = 8
    table = np.cos(2 * np.pi * np.arange(size) / size)
    value, i, j = impl.grid_argmax(table, 1.0, 3.0, 3.0, 2, 2, 0, size)
    brute = max((1 + np.cos(t1) - 3 * (1 + np.cos(t1 + 2 * t2)) - 3 * (1 + np.cos(t1 + 2 * t2 + 2 * np.pi)), r, c)
                for r, t1 in enumerate(2 * np.pi * np.arange(size) / size)
                for c, t2 in enumerate(2 * np.pi * np.arange(size) / size))
    assert value == pytest.approx(brute[0], abs=1e-12)
