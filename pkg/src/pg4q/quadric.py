"""Quadratic forms on 5 variables: the parabolic quadric Q(4,q), its
nucleus and hyperplane sections, plus the regular hyperoval generator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .geometry import DIM, GeometryIndex, Hyperplane, Subspace, span
from .gf import GF, from_hex, to_hex

# coefficient order: a_ij for 0 <= i <= j <= 4, (i, j) lexicographic
MONOMIALS = [(i, j) for i in range(DIM) for j in range(i, DIM)]


class SingularFormError(ValueError):
    pass


class SectionError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = sum a_ij x_i x_j with 15 packed GF(q) coefficients."""

    coeffs: tuple

    def evaluate(self, coords, field: GF) -> int:
        acc = 0
        for a, (i, j) in zip(self.coeffs, MONOMIALS):
            if a:
                acc ^= field.mul(a, field.mul(coords[i], coords[j]))
        return acc

    def evaluate_all(self, index: GeometryIndex) -> np.ndarray:
        """Value at every canonical point, vectorized via the mul table."""
        mul = index.field.mul_table
        pts = index.points
        acc = np.zeros(index.n, dtype=np.uint8)
        for a, (i, j) in zip(self.coeffs, MONOMIALS):
            if a:
                acc ^= mul[a, mul[pts[:, i], pts[:, j]]]
        return acc

    def zero_flags(self, index: GeometryIndex) -> np.ndarray:
        return self.evaluate_all(index) == 0

    def bilinear_matrix(self) -> list:
        """Polar form b(x,y) = f(x+y)+f(x)+f(y); in characteristic 2 the
        matrix is symmetric with zero diagonal."""
        b = [[0] * DIM for _ in range(DIM)]
        for a, (i, j) in zip(self.coeffs, MONOMIALS):
            if i != j:
                b[i][j] = a
                b[j][i] = a
        return b

    def nucleus(self, field: GF) -> tuple:
        """The unique radical point of the polar form (q even, parabolic)."""
        rad = linalg.nullspace(self.bilinear_matrix(), field, DIM)
        if len(rad) != 1:
            raise SingularFormError(f"radical has dimension {len(rad)}, expected 1")
        from .geometry import normalize

        nuc = normalize(rad[0], field)
        if self.evaluate(nuc, field) == 0:
            raise SingularFormError("form vanishes on its radical (singular quadric)")
        return nuc

    def __str__(self) -> str:
        return ":".join(to_hex(c) for c in self.coeffs)

    @classmethod
    def from_str(cls, s: str, field: GF) -> "QuadraticForm":
        parts = s.split(":")
        if len(parts) != len(MONOMIALS):
            raise ValueError(f"expected {len(MONOMIALS)} coefficients")
        return cls(tuple(from_hex(p, field) for p in parts))


def standard_parabolic(field: GF) -> QuadraticForm:
    """Q(x) = x0^2 + x1 x2 + x3 x4; nucleus (1,0,0,0,0)."""
    coeffs = [0] * len(MONOMIALS)
    coeffs[MONOMIALS.index((0, 0))] = 1
    coeffs[MONOMIALS.index((1, 2))] = 1
    coeffs[MONOMIALS.index((3, 4))] = 1
    return QuadraticForm(tuple(coeffs))


ELLIPTIC = "elliptic"
HYPERBOLIC = "hyperbolic"
CONE = "cone"
OTHER = "other"


def section_kind(count: int, q: int) -> str:
    if count == q * q + 1:
        return ELLIPTIC
    if count == (q + 1) ** 2:
        return HYPERBOLIC
    if count == q * q + q + 1:
        return CONE
    return OTHER


def section_type(form: QuadraticForm, solid: int | Hyperplane, index: GeometryIndex):
    """(kind, point count) of the solid's section of the quadric."""
    if isinstance(solid, Hyperplane):
        solid = index.hyperplane_index(solid.dual)
    count = int(index.incidence[solid] @ form.zero_flags(index).astype(np.int64))
    return section_kind(count, index.q), count


def section_counts(form: QuadraticForm, index: GeometryIndex) -> np.ndarray:
    """Section size of every solid at once."""
    flags = form.zero_flags(index).astype(np.uint8)
    return index.incidence.astype(np.int64) @ flags.astype(np.int64)


def solids_by_section(form: QuadraticForm, index: GeometryIndex) -> dict:
    """Partition all solids by section type; raises on any 'other'."""
    counts = section_counts(form, index)
    q = index.q
    out = {
        ELLIPTIC: np.nonzero(counts == q * q + 1)[0],
        HYPERBOLIC: np.nonzero(counts == (q + 1) ** 2)[0],
        CONE: np.nonzero(counts == q * q + q + 1)[0],
    }
    covered = sum(len(v) for v in out.values())
    if covered != index.n:
        bad = [
            (i, int(c))
            for i, c in enumerate(counts)
            if section_kind(int(c), q) == OTHER
        ]
        raise SectionError(f"{len(bad)} solids have unrecognized sections, e.g. {bad[:5]}")
    return out


@dataclass(frozen=True)
class Hyperoval:
    """q+2 points of a plane, no three collinear."""

    points: tuple  # coordinate tuples
    carrier: Subspace

    def point_indices(self, index: GeometryIndex) -> np.ndarray:
        return np.array(sorted(index.point_index(p) for p in self.points), dtype=np.int64)


def regular_hyperoval(field: GF) -> Hyperoval:
    """Conic {(1, t, t^2)} plus its two exterior canonical points, in the
    plane x3 = x4 = 0."""
    pts = [(1, t, field.mul(t, t), 0, 0) for t in field.elements()]
    pts.append((0, 1, 0, 0, 0))
    pts.append((0, 0, 1, 0, 0))
    carrier = span([(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0)], field)
    return Hyperoval(tuple(pts), carrier)


def no_three_collinear(point_ids, index: GeometryIndex) -> bool:
    """Exhaustive triple check via rank; intended for small point sets."""
    import itertools

    coords = [index.point(int(i)) for i in point_ids]
    for a, b, c in itertools.combinations(coords, 3):
        if linalg.rank([list(a), list(b), list(c)], index.field) <= 2:
            return False
    return True


def solids_disjoint_from(oval: Hyperoval, index: GeometryIndex) -> np.ndarray:
    """Indices of solids containing no point of the hyperoval."""
    ids = oval.point_indices(index)
    hits = index.incidence[:, ids].sum(axis=1)
    return np.nonzero(hits == 0)[0]
