"""Kernel backend selection: compiled extension if available, numpy otherwise.

Set PG4Q_PURE_PYTHON=1 to force the numpy fallback (used by the parity
tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("PG4Q_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _fastkernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
incidence_matrix = _impl.incidence_matrix
expand_span = _impl.expand_span


def anchored_counts(anchors, rows, mask, workers: int = 1):
    """Chunked over a thread pool when workers > 1; the merge is by slice
    index, so results are identical for every worker count."""
    if workers <= 1 or len(anchors) < 4096:
        return _impl.anchored_counts(anchors, rows, mask)
    import numpy as np
    from concurrent.futures import ThreadPoolExecutor

    out = np.empty(len(anchors), dtype=np.int64)
    step = -(-len(anchors) // workers)
    spans = [(lo, min(lo + step, len(anchors))) for lo in range(0, len(anchors), step)]

    def run(span):
        lo, hi = span
        out[lo:hi] = _impl.anchored_counts(np.ascontiguousarray(anchors[lo:hi]), rows, mask)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(run, spans))
    return out
