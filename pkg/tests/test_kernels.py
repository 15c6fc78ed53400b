"""Parity between the compiled kernels and the numpy fallback, plus a
brute-force oracle for the popcount kernel."""

import numpy as np
import pytest

from pg4q import _kernels_py, kernels
from pg4q.geometry import DIM, GeometryIndex, normalized_tuples
from pg4q.gf import GF


@pytest.fixture(scope="module")
def data(gf4):
    pts = normalized_tuples(gf4, DIM)
    return gf4, pts


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "numpy")


def test_incidence_parity(data):
    gf4, pts = data
    a = kernels.incidence_matrix(pts, pts, gf4.mul_table)
    b = _kernels_py.incidence_matrix(pts, pts, gf4.mul_table)
    assert np.array_equal(a, b)


def test_incidence_against_scalar_oracle(data):
    gf4, pts = data
    inc = kernels.incidence_matrix(pts, pts, gf4.mul_table)
    rng = np.random.default_rng(11)
    for j, i in rng.integers(0, len(pts), size=(200, 2)):
        dot = 0
        for k in range(DIM):
            dot ^= gf4.mul(int(pts[j, k]), int(pts[i, k]))
        assert inc[j, i] == (dot == 0)


def test_expand_span_parity(idx4):
    t = idx4.lines
    fast = kernels.expand_span(
        t.bases, t.reps, idx4.field.mul_table, idx4.field.degree, idx4.code_to_index
    )
    slow = _kernels_py.expand_span(
        t.bases, t.reps, idx4.field.mul_table, idx4.field.degree, idx4.code_to_index
    )
    assert np.array_equal(fast, slow)


def test_anchored_counts_parity_and_oracle(idx4):
    rng = np.random.default_rng(3)
    mask_bool = rng.random(idx4.n) < 0.3
    mask = idx4.pack_mask(mask_bool)
    anchors = idx4.lines.anchors
    fast = kernels.anchored_counts(anchors, idx4.solids_by_point, mask)
    slow = _kernels_py.anchored_counts(anchors, idx4.solids_by_point, mask)
    assert np.array_equal(fast, slow)
    # brute force on a sample: solids through both anchor points, in mask
    inc = idx4.incidence
    for i in rng.integers(0, len(anchors), size=50):
        p0, p1 = anchors[i]
        brute = int((inc[:, p0].astype(bool) & inc[:, p1].astype(bool) & mask_bool).sum())
        assert fast[i] == brute


def test_anchored_counts_worker_invariance(idx4):
    mask = idx4.pack_mask(np.ones(idx4.n, dtype=bool))
    one = kernels.anchored_counts(idx4.lines.anchors, idx4.solids_by_point, mask, workers=1)
    many = kernels.anchored_counts(idx4.lines.anchors, idx4.solids_by_point, mask, workers=4)
    assert np.array_equal(one, many)


def test_pure_python_env_var_forces_numpy():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from pg4q import kernels; print(kernels.BACKEND)"],
        env={"PG4Q_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True,
        text=True,
    )
    assert out.stdout.strip() == "numpy"
