"""Row reduction and nullspaces over GF(2^h).

Matrices are lists of rows; a row is a list of packed field elements.
Pivoting is deterministic (lowest row/column index first) so canonical
forms are reproducible.
"""

from __future__ import annotations

from .gf import GF


def rref(rows, field: GF):
    """Reduced row-echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        s = field.inv(m[r][c])
        m[r] = [field.mul(s, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x ^ field.mul(f, y) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r]], pivots


def rank(rows, field: GF) -> int:
    return len(rref(rows, field)[0])


def nullspace(rows, field: GF, ncols: int):
    """Canonical (RREF) basis of {v : M v = 0} for the row-space of M."""
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = red[r][fc]  # -x = x in characteristic 2
        basis.append(v)
    return rref(basis, field)[0]
