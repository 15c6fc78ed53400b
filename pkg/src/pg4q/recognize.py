"""Reconstruction: recover the hyperoval or fit the quadric from a solid
set satisfying the point and plane conditions, and certify set equality."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import linalg
from .geometry import GeometryIndex, Subspace, coords_to_str
from .quadric import (
    MONOMIALS,
    Hyperoval,
    QuadraticForm,
    SingularFormError,
    no_three_collinear,
    section_counts,
)
from .spectrum import (
    RED,
    ColorMap,
    ConditionReport,
    SolidSet,
    check_conditions,
    color_points,
)


class RecognitionError(ValueError):
    pass


def line_type_profile(point_flags: np.ndarray, index: GeometryIndex) -> Counter:
    """Multiset of line-intersection sizes of a point set."""
    return Counter(index.black_counts(index.lines, point_flags).tolist())


def _monomial_rows(point_flags: np.ndarray, index: GeometryIndex) -> np.ndarray:
    pts = index.points[point_flags]
    mul = index.field.mul_table
    cols = [mul[pts[:, i], pts[:, j]] for i, j in MONOMIALS]
    return np.stack(cols, axis=1)


def fit_quadric(point_flags: np.ndarray, index: GeometryIndex) -> QuadraticForm | None:
    """Solve Q(P)=0 for all flagged P in the 15 coefficients; accept only a
    one-dimensional solution space whose zero set equals the input."""
    if not point_flags.any():
        return None
    rows = _monomial_rows(point_flags, index).tolist()
    basis = linalg.nullspace(rows, index.field, len(MONOMIALS))
    if len(basis) != 1:
        return None
    form = QuadraticForm(tuple(basis[0]))
    if not np.array_equal(form.zero_flags(index), point_flags):
        return None
    return form


def recover_hyperoval(colors: ColorMap, index: GeometryIndex) -> Hyperoval:
    """The red points, verified to be q+2 coplanar points with no 3 collinear."""
    q = index.q
    red_ids = colors.red_indices()
    if len(red_ids) != q + 2:
        raise RecognitionError(f"expected {q + 2} red points, found {len(red_ids)}")
    rows = [list(index.point(int(i))) for i in red_ids]
    rref_rows, _ = linalg.rref(rows, index.field)
    if len(rref_rows) != 3:
        raise RecognitionError(
            f"red points span projective dimension {len(rref_rows) - 1}, expected a plane"
        )
    if not no_three_collinear(red_ids, index):
        raise RecognitionError("three red points are collinear")
    carrier = Subspace.from_rows(rref_rows)
    return Hyperoval(tuple(index.point(int(i)) for i in red_ids), carrier)


@dataclass
class Verdict:
    case: str  # "A", "B" or "NA"
    report: ConditionReport
    theorem_applicable: bool
    hyperoval: Hyperoval | None = None
    form: QuadraticForm | None = None
    nucleus: tuple | None = None
    diagnostics: dict | None = None

    def to_json_dict(self) -> dict:
        out = {
            "case": self.case,
            "theorem_applicable": self.theorem_applicable,
            "hyperoval": None
            if self.hyperoval is None
            else [coords_to_str(p) for p in self.hyperoval.points],
            "form": None if self.form is None else str(self.form),
            "nucleus": None if self.nucleus is None else coords_to_str(self.nucleus),
            "diagnostics": self.diagnostics or {},
            "report": self.report.to_json_dict(),
        }
        return out


def classify(sset: SolidSet, index: GeometryIndex, witness_cap: int = 100) -> Verdict:
    """Run the full reconstruction of the two extremal cases.

    A verification failure after (I) and (II) hold would contradict the
    classification for q > 2, so it is reported as NotApplicable with
    diagnostics rather than raised.
    """
    q = index.q
    applicable = q > 2
    report = check_conditions(sset, index, witness_cap)
    if not report.hypotheses_hold:
        return Verdict("NA", report, applicable, diagnostics={"reason": "conditions (I)/(II) fail"})
    if report.e is None:
        return Verdict("NA", report, applicable, diagnostics={"reason": "size not divisible by q^2/2"})
    colors = color_points(sset, index, witness_cap)
    residue = report.e % q
    if residue == 0:
        try:
            oval = recover_hyperoval(colors, index)
        except RecognitionError as err:
            return Verdict("NA", report, applicable, diagnostics={"reason": str(err)})
        red_hits = index.incidence @ (colors.colors == RED).astype(np.int64)
        if not ((red_hits == 0) == sset.members).all():
            return Verdict(
                "NA",
                report,
                applicable,
                diagnostics={"reason": "members differ from the solids disjoint from the red hyperoval"},
            )
        return Verdict("A", report, applicable, hyperoval=oval)
    if residue == q - 1:
        form = fit_quadric(colors.black_flags(), index)
        if form is None:
            return Verdict(
                "NA", report, applicable, diagnostics={"reason": "black points do not fit a unique quadric"}
            )
        try:
            nucleus = form.nucleus(index.field)
        except SingularFormError as err:
            return Verdict("NA", report, applicable, diagnostics={"reason": str(err)})
        red_ids = colors.red_indices()
        if len(red_ids) != 1 or index.point_index(nucleus) != int(red_ids[0]):
            return Verdict(
                "NA",
                report,
                applicable,
                form=form,
                nucleus=nucleus,
                diagnostics={"reason": "nucleus is not the unique red point"},
            )
        elliptic = section_counts(form, index) == q * q + 1
        if not (elliptic == sset.members).all():
            return Verdict(
                "NA",
                report,
                applicable,
                form=form,
                nucleus=nucleus,
                diagnostics={"reason": "members differ from the elliptic-section solids of the fitted quadric"},
            )
        return Verdict("B", report, applicable, form=form, nucleus=nucleus)
    return Verdict(
        "NA",
        report,
        applicable,
        diagnostics={"reason": f"e = {report.e} is congruent to neither 0 nor -1 mod q"},
    )


def condition_iii(sset: SolidSet, index: GeometryIndex) -> bool:
    """True iff some line lies in exactly q(q+1)/2 member solids."""
    from .spectrum import line_counts

    q = index.q
    return bool((line_counts(sset, index) == q * (q + 1) // 2).any())
