"""Points, lines, planes and solids of PG(4,q); enumeration and incidence.

The GeometryIndex enumerates all canonical points and hyperplanes once,
stores incidence as dense/packed bit tables, and lazily builds line and
plane tables (one RREF basis per subspace, generated directly by pivot
pattern so no deduplication is needed). Everything is immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import kernels, linalg
from .gf import GF, FieldError, from_hex, to_hex

DIM = 5  # ambient vector-space dimension for PG(4,q)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def normalize(coords, field: GF):
    """Scale so the first nonzero coordinate is 1."""
    for c in coords:
        if c:
            s = field.inv(c)
            return tuple(field.mul(s, x) for x in coords)
    raise ValueError("cannot normalize the zero vector")


def normalized_tuples(field: GF, length: int) -> np.ndarray:
    """All canonical projective representatives of given length, in
    lexicographic order of the coordinate tuples."""
    q = field.order
    grids = np.meshgrid(*([np.arange(q, dtype=np.uint8)] * length), indexing="ij")
    allt = np.stack(grids, axis=-1).reshape(-1, length)
    nz = allt != 0
    lead = np.argmax(nz, axis=1)
    keep = nz.any(axis=1) & (allt[np.arange(len(allt)), lead] == 1)
    out = np.ascontiguousarray(allt[keep])
    if q > 16:
        # canonical order is lex on hex strings; differs from numeric
        # order only once coordinates need two hex digits
        key = sorted(range(len(out)), key=lambda i: tuple(to_hex(int(v)) for v in out[i]))
        out = np.ascontiguousarray(out[key])
    return out


def coords_to_str(coords) -> str:
    return ":".join(to_hex(int(c)) for c in coords)


def str_to_coords(s: str, field: GF) -> tuple:
    parts = s.split(":")
    if len(parts) != DIM:
        raise FieldError(f"expected {DIM} coordinates, got {len(parts)}: {s!r}")
    return tuple(from_hex(p, field) for p in parts)


@dataclass(frozen=True)
class ProjectivePoint:
    """Canonical homogeneous coordinates (first nonzero entry is 1)."""

    coords: tuple

    @classmethod
    def make(cls, coords, field: GF) -> "ProjectivePoint":
        return cls(normalize(coords, field))

    def __str__(self) -> str:
        return coords_to_str(self.coords)


@dataclass(frozen=True)
class Hyperplane:
    """A solid of PG(4,q), as canonical dual coordinates."""

    dual: tuple

    @classmethod
    def make(cls, dual, field: GF) -> "Hyperplane":
        return cls(normalize(dual, field))

    def as_subspace(self, field: GF) -> "Subspace":
        return Subspace.from_rows(linalg.nullspace([list(self.dual)], field, DIM))

    def __str__(self) -> str:
        return coords_to_str(self.dual)


@dataclass(frozen=True)
class Subspace:
    """A subspace of PG(4,q) with a canonical reduced-echelon basis."""

    basis: tuple  # tuple of row tuples, RREF

    @classmethod
    def from_rows(cls, rows) -> "Subspace":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def contains_point(self, coords, field: GF) -> bool:
        rows = [list(r) for r in self.basis]
        return linalg.rank(rows + [list(coords)], field) == len(self.basis)

    def perp(self, field: GF):
        return linalg.nullspace([list(r) for r in self.basis], field, DIM)

    def point_indices(self, index: "GeometryIndex") -> list:
        reps = normalized_tuples(index.field, len(self.basis))
        out = []
        for rep in reps:
            v = [0] * DIM
            for c, row in zip(rep, self.basis):
                if c:
                    v = [a ^ index.field.mul(int(c), b) for a, b in zip(v, row)]
            out.append(index.point_index(tuple(v)))
        return sorted(out)


def span(points, field: GF) -> Subspace:
    if not points:
        raise ValueError("span of no points")
    rows, _ = linalg.rref([list(p) for p in points], field)
    return Subspace.from_rows(rows)


def _coerce_rows(obj, field: GF):
    if isinstance(obj, Hyperplane):
        return obj.as_subspace(field).basis
    return obj.basis


def meet(a, b, field: GF):
    """Intersection of two subspaces/hyperplanes; None when empty."""
    pa = linalg.nullspace([list(r) for r in _coerce_rows(a, field)], field, DIM)
    pb = linalg.nullspace([list(r) for r in _coerce_rows(b, field)], field, DIM)
    inter = linalg.nullspace(pa + pb, field, DIM)
    if not inter:
        return None
    return Subspace.from_rows(inter)


def _rref_bases(field: GF, k: int) -> np.ndarray:
    """All k-row RREF matrices of rank k with DIM columns, one per
    (k-1)-dimensional projective subspace; ordered by pivot pattern then
    free entries."""
    q = field.order
    blocks = []
    for pivots in itertools.combinations(range(DIM), k):
        free = []  # (row, col) positions of free entries, row-major
        for r, p in enumerate(pivots):
            for c in range(p + 1, DIM):
                if c not in pivots:
                    free.append((r, c))
        nfree = len(free)
        count = q**nfree
        block = np.zeros((count, k, DIM), dtype=np.uint8)
        for r, p in enumerate(pivots):
            block[:, r, p] = 1
        if nfree:
            grids = np.meshgrid(*([np.arange(q, dtype=np.uint8)] * nfree), indexing="ij")
            vals = np.stack(grids, axis=-1).reshape(-1, nfree)
            for t, (r, c) in enumerate(free):
                block[:, r, c] = vals[:, t]
        blocks.append(block)
    return np.ascontiguousarray(np.concatenate(blocks, axis=0))


class SubspaceTable:
    """All rank-k subspaces with their point indices and anchor points."""

    def __init__(self, index: "GeometryIndex", k: int):
        field = index.field
        self.k = k
        self.bases = _rref_bases(field, k)
        expected = gaussian_binomial(DIM, k, field.order)
        assert len(self.bases) == expected, (len(self.bases), expected)
        self.reps = normalized_tuples(field, k)
        self.point_ids = kernels.expand_span(
            self.bases, self.reps, field.mul_table, field.degree, index.code_to_index
        )
        # reps equal to unit vectors recover the basis rows themselves:
        # guaranteed independent points to anchor incidence queries on
        unit_cols = []
        for j in range(k):
            unit = np.zeros(k, dtype=np.uint8)
            unit[j] = 1
            (pos,) = np.nonzero((self.reps == unit).all(axis=1))
            unit_cols.append(int(pos[0]))
        self.anchors = np.ascontiguousarray(self.point_ids[:, unit_cols])
        self._index_of = None

    def __len__(self) -> int:
        return len(self.bases)

    def index_of(self, subspace: Subspace) -> int:
        if self._index_of is None:
            self._index_of = {b.tobytes(): i for i, b in enumerate(self.bases)}
        key = np.array(subspace.basis, dtype=np.uint8).tobytes()
        return self._index_of[key]


class GeometryIndex:
    """The enumeration backbone: every point, hyperplane and incidence bit
    of PG(4,q), plus lazy line/plane tables."""

    def __init__(self, field: GF, workers: int = 1):
        self.field = field
        self.q = field.order
        self.workers = workers
        self.points = normalized_tuples(field, DIM)
        self.n = len(self.points)
        assert self.n == (self.q**DIM - 1) // (self.q - 1)
        codes = np.zeros(len(self.points), dtype=np.int64)
        for c in range(DIM):
            codes |= self.points[:, c].astype(np.int64) << (field.degree * c)
        self.code_to_index = np.full(1 << (field.degree * DIM), -1, dtype=np.int32)
        self.code_to_index[codes] = np.arange(self.n, dtype=np.int32)
        # hyperplane j has dual coordinates points[j]
        self.incidence = kernels.incidence_matrix(self.points, self.points, field.mul_table)
        self._solids_by_point = None
        self._points_by_solid = None
        self._lines = None
        self._planes = None

    # --- basic lookups -------------------------------------------------
    def point(self, i: int) -> tuple:
        return tuple(int(c) for c in self.points[i])

    def point_index(self, coords) -> int:
        coords = normalize(coords, self.field)
        code = 0
        for c, v in enumerate(coords):
            code |= v << (self.field.degree * c)
        i = int(self.code_to_index[code])
        if i < 0:
            raise KeyError(coords)
        return i

    hyperplane_index = point_index

    def hyperplane(self, j: int) -> Hyperplane:
        return Hyperplane(self.point(j))

    # --- packed bitset layouts ----------------------------------------
    @property
    def solids_by_point(self) -> np.ndarray:
        """Row p: packed bitset over hyperplane indices containing point p."""
        if self._solids_by_point is None:
            self._solids_by_point = np.ascontiguousarray(np.packbits(self.incidence.T, axis=1))
        return self._solids_by_point

    @property
    def points_by_solid(self) -> np.ndarray:
        if self._points_by_solid is None:
            self._points_by_solid = np.ascontiguousarray(np.packbits(self.incidence, axis=1))
        return self._points_by_solid

    def pack_mask(self, flags: np.ndarray) -> np.ndarray:
        return np.ascontiguousarray(np.packbits(flags.astype(np.uint8)))

    # --- lazy subspace tables -----------------------------------------
    @property
    def lines(self) -> SubspaceTable:
        if self._lines is None:
            self._lines = SubspaceTable(self, 2)
        return self._lines

    @property
    def planes(self) -> SubspaceTable:
        if self._planes is None:
            self._planes = SubspaceTable(self, 3)
        return self._planes

    # --- queries -------------------------------------------------------
    def incident(self, coords, dual) -> bool:
        mul = self.field.mul
        return reduce(lambda a, kv: a ^ mul(kv[0], kv[1]), zip(coords, dual), 0) == 0

    def hyperplanes_through(self, subspace: Subspace) -> list:
        """Indices of all solids containing the subspace (dim <= 2)."""
        perp = subspace.perp(self.field)
        out = []
        for rep in normalized_tuples(self.field, len(perp)):
            v = [0] * DIM
            for c, row in zip(rep, perp):
                if c:
                    v = [a ^ self.field.mul(int(c), b) for a, b in zip(v, row)]
            out.append(self.hyperplane_index(tuple(v)))
        return sorted(out)

    def subspace_member_counts(self, table: SubspaceTable, flags: np.ndarray) -> np.ndarray:
        """For every subspace in the table, the number of flagged solids
        containing it."""
        return kernels.anchored_counts(
            table.anchors, self.solids_by_point, self.pack_mask(flags), workers=self.workers
        )

    def black_counts(self, table: SubspaceTable, point_flags: np.ndarray) -> np.ndarray:
        """For every subspace in the table, the number of flagged points on it."""
        flags_u8 = point_flags.astype(np.uint8)
        return flags_u8[table.point_ids].sum(axis=1, dtype=np.int64)
