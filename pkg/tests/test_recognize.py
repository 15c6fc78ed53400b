"""Reconstruction: quadric fitting, hyperoval recovery, classification."""

import numpy as np
import pytest

from pg4q.quadric import (
    ELLIPTIC,
    regular_hyperoval,
    section_counts,
    solids_by_section,
    solids_disjoint_from,
    standard_parabolic,
)
from pg4q.recognize import (
    RecognitionError,
    classify,
    condition_iii,
    fit_quadric,
    line_type_profile,
    recover_hyperoval,
)
from pg4q.spectrum import RED, SolidSet, color_points


@pytest.fixture(scope="module")
def elliptic4(idx4):
    f = standard_parabolic(idx4.field)
    return SolidSet.from_indices(solids_by_section(f, idx4)[ELLIPTIC], idx4.n)


@pytest.fixture(scope="module")
def hyperoval4(idx4):
    return SolidSet.from_indices(solids_disjoint_from(regular_hyperoval(idx4.field), idx4), idx4.n)


def test_line_type_profile_examples(idx4):
    f = standard_parabolic(idx4.field)
    prof = line_type_profile(f.zero_flags(idx4), idx4)
    assert set(prof) <= {0, 1, 2, 5}
    # a full solid meets every line in 1 or q+1 points
    solid_flags = idx4.incidence[0].astype(bool)
    prof_solid = line_type_profile(solid_flags, idx4)
    assert set(prof_solid) == {1, 5}
    # a single point
    single = np.zeros(idx4.n, dtype=bool)
    single[42] = True
    assert set(line_type_profile(single, idx4)) == {0, 1}


def test_fit_quadric_recovers_standard_form(idx4):
    f = standard_parabolic(idx4.field)
    flags = f.zero_flags(idx4)
    fitted = fit_quadric(flags, idx4)
    assert fitted is not None
    assert np.array_equal(fitted.zero_flags(idx4), flags)
    assert fitted.nucleus(idx4.field) == (1, 0, 0, 0, 0)


def test_fit_quadric_oracle_linear_system(idx4):
    # independent check: the fitted coefficients annihilate every input
    # point under schoolbook arithmetic
    from tests.test_quadric import slow_evaluate

    f = standard_parabolic(idx4.field)
    flags = f.zero_flags(idx4)
    fitted = fit_quadric(flags, idx4)
    for i in np.nonzero(flags)[0][:50]:
        assert slow_evaluate(fitted, idx4.point(int(i)), idx4.field) == 0


def test_fit_quadric_ambiguous_on_section(idx4):
    # the 17 points of one elliptic section impose < 14 independent
    # conditions in the ambient space: solution space too big
    f = standard_parabolic(idx4.field)
    parts = solids_by_section(f, idx4)
    s = int(parts[ELLIPTIC][0])
    flags = idx4.incidence[s].astype(bool) & f.zero_flags(idx4)
    assert flags.sum() == 17
    assert fit_quadric(flags, idx4) is None


def test_fit_quadric_random_points_rejected(idx4):
    rng = np.random.default_rng(20240903)  # documented seed
    flags = np.zeros(idx4.n, dtype=bool)
    flags[rng.choice(idx4.n, size=85, replace=False)] = True
    assert fit_quadric(flags, idx4) is None


def test_fit_quadric_empty(idx4):
    assert fit_quadric(np.zeros(idx4.n, dtype=bool), idx4) is None


def test_recover_hyperoval(idx4, hyperoval4):
    colors = color_points(hyperoval4, idx4)
    oval = recover_hyperoval(colors, idx4)
    gen = regular_hyperoval(idx4.field)
    assert sorted(oval.points) == sorted(gen.points)
    assert oval.carrier == gen.carrier


def test_recover_hyperoval_wrong_red_count(idx4, elliptic4):
    colors = color_points(elliptic4, idx4)
    with pytest.raises(RecognitionError, match="red points"):
        recover_hyperoval(colors, idx4)


def test_recover_hyperoval_collinear_reds(idx4, hyperoval4):
    colors = color_points(hyperoval4, idx4)
    doctored = colors.colors.copy()
    # recolor the 6 reds to the first 6 points of a line: 3 collinear
    doctored[doctored == RED] = 1
    line_pts = idx4.lines.point_ids[0][:5]
    extra = idx4.lines.point_ids[1][0]
    doctored[line_pts] = RED
    doctored[extra] = RED
    from pg4q.spectrum import ColorMap

    fake = ColorMap(doctored, 6, int((doctored == 1).sum()), int((doctored == 2).sum()))
    with pytest.raises(RecognitionError):
        recover_hyperoval(fake, idx4)


def test_classify_elliptic_q4(idx4, elliptic4):
    v = classify(elliptic4, idx4)
    assert v.case == "B"
    assert int(v.form.zero_flags(idx4).sum()) == 85
    assert v.nucleus == (1, 0, 0, 0, 0)
    assert v.theorem_applicable
    d = v.to_json_dict()
    assert d["case"] == "B" and d["nucleus"] == "1:0:0:0:0"


def test_classify_hyperoval_q4(idx4, hyperoval4):
    v = classify(hyperoval4, idx4)
    assert v.case == "A"
    gen = regular_hyperoval(idx4.field)
    assert sorted(v.hyperoval.points) == sorted(gen.points)


def test_classify_perturbed_elliptic_is_na(idx4, elliptic4):
    members = elliptic4.members.copy()
    inside = np.nonzero(members)[0][0]
    outside = np.nonzero(~members)[0][0]
    members[inside] = False
    members[outside] = True
    v = classify(SolidSet(members), idx4)
    assert v.case == "NA"
    assert not v.report.cond1 or not v.report.cond2
    assert len(v.report.violations) >= 1


def test_classify_round_trip_sections(idx4, elliptic4):
    # the fitted form's elliptic solids reproduce the input set exactly
    v = classify(elliptic4, idx4)
    counts = section_counts(v.form, idx4)
    assert np.array_equal(counts == 17, elliptic4.members)
    # and its cone solids are the solids through the nucleus
    ni = idx4.point_index(v.nucleus)
    assert np.array_equal(counts == 21, idx4.incidence[:, ni].astype(bool))


@pytest.mark.parametrize("q", [4, 8])
def test_classify_generated_families(q, idx4, idx8):
    index = idx4 if q == 4 else idx8
    f = standard_parabolic(index.field)
    ell = SolidSet.from_indices(solids_by_section(f, index)[ELLIPTIC], index.n)
    v = classify(ell, index)
    assert v.case == "B"
    assert np.array_equal(v.form.zero_flags(index), f.zero_flags(index))
    hyp = SolidSet.from_indices(
        solids_disjoint_from(regular_hyperoval(index.field), index), index.n
    )
    v2 = classify(hyp, index)
    assert v2.case == "A"
    assert sorted(v2.hyperoval.points) == sorted(regular_hyperoval(index.field).points)


def test_condition_iii(idx4, idx8, elliptic4, hyperoval4):
    assert condition_iii(elliptic4, idx4)
    assert not condition_iii(hyperoval4, idx4)
    f = standard_parabolic(idx8.field)
    ell8 = SolidSet.from_indices(solids_by_section(f, idx8)[ELLIPTIC], idx8.n)
    from pg4q.spectrum import line_counts

    assert (line_counts(ell8, idx8) == 36).any()
    assert condition_iii(ell8, idx8)


def test_classify_q2_flagged_not_applicable():
    from pg4q.geometry import GeometryIndex
    from pg4q.gf import GF

    index = GeometryIndex(GF.of_order(2))
    f = standard_parabolic(index.field)
    ell = SolidSet.from_indices(solids_by_section(f, index)[ELLIPTIC], index.n)
    v = classify(ell, index)
    # machinery runs, but the theorem makes no guarantee at q=2
    assert not v.theorem_applicable
    assert v.to_json_dict()["theorem_applicable"] is False
