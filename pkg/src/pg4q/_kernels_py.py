"""Pure numpy implementations of the hot enumeration kernels.

Used when the compiled extension is unavailable (or forced via
PG4Q_PURE_PYTHON=1). Semantics must match pg4q._fastkernels exactly;
tests/test_kernels.py asserts parity.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"

_CHUNK = 1 << 14


def incidence_matrix(duals: np.ndarray, points: np.ndarray, mul: np.ndarray) -> np.ndarray:
    """inc[j, i] = 1 iff sum_k duals[j,k]*points[i,k] == 0 in GF(q)."""
    n = duals.shape[0]
    m = points.shape[0]
    acc = np.zeros((n, m), dtype=np.uint8)
    for k in range(duals.shape[1]):
        acc ^= mul[duals[:, k][:, None], points[:, k][None, :]]
    return (acc == 0).astype(np.uint8)


def expand_span(
    bases: np.ndarray,
    reps: np.ndarray,
    mul: np.ndarray,
    degree: int,
    code_to_index: np.ndarray,
) -> np.ndarray:
    """Point indices of rep @ basis for every basis and projective rep.

    bases: (n, k, 5) RREF bases; reps: (m, k) leading-one coefficient
    vectors. RREF + leading-one reps make the products already normalized.
    """
    n, k, d = bases.shape
    m = reps.shape[0]
    out = np.empty((n, m), dtype=np.int32)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        chunk = bases[lo:hi]
        acc = np.zeros((hi - lo, m, d), dtype=np.uint8)
        for j in range(k):
            acc ^= mul[reps[:, j][None, :, None], chunk[:, j, :][:, None, :]]
        codes = np.zeros((hi - lo, m), dtype=np.int64)
        for c in range(d):
            codes |= acc[:, :, c].astype(np.int64) << (degree * c)
        out[lo:hi] = code_to_index[codes]
    return out


def anchored_counts(anchors: np.ndarray, rows: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Popcount of AND of the packed rows picked by each anchor tuple and mask.

    anchors: (n, k) row indices; rows: (N, W) packed uint8 bitsets;
    mask: (W,) packed uint8 bitset.
    """
    n, k = anchors.shape
    out = np.empty(n, dtype=np.int64)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        acc = rows[anchors[lo:hi, 0]] & mask
        for j in range(1, k):
            acc &= rows[anchors[lo:hi, j]]
        out[lo:hi] = np.bitwise_count(acc).sum(axis=1, dtype=np.int64)
    return out
