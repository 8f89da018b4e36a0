import pytest

from npcverify.feighn_mess import (
    ball_fixed_points, build_power, classify_horizontal_links, fixed_census,
    flip_preserves_heights, height_function,
)


@pytest.mark.parametrize("n,expect_types", [(1, 2), (2, 3), (3, 4)])
def test_fixed_census_cell_level(n, expect_types):
    census = fixed_census(n)
    assert census.level == "cells"
    assert census.component_count == 2 ** n
    assert census.type_count == expect_types


def test_fixed_census_n1_components():
    census = fixed_census(1)
    sigs = sorted(c["signature"] for c in census.components)
    assert sigs == [("a",), ("p",)]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_fixed_census_signature_level(n):
    census = fixed_census(n)
    assert census.level == "signature"
    assert census.component_count == 2 ** n
    assert census.type_count == n + 1


def test_fixed_census_bounds():
    with pytest.raises(ValueError):
        fixed_census(0)
    with pytest.raises(ValueError):
        fixed_census(7)


def test_flip_squares_to_identity():
    from npcverify.cells import CellMap
    power, sig_n, _ = build_power(3)
    assert sig_n.then(sig_n).same_assignments(CellMap.identity(power))


def test_flip_preserves_heights():
    assert flip_preserves_heights(2)
    assert flip_preserves_heights(3)


def test_height_function_cocycle():
    power, _, g = build_power(2)
    hf = height_function(power, g)
    hf.validate(power, strict_spans=False)
    # the a x a square genuinely spans two slabs in this family
    spans = {hf.face_profile(power, fid)["span"] for fid in power.faces}
    assert 2 in spans


def test_top_cell_link_empty():
    records = classify_horizontal_links(2)
    top = [r for r in records if r["kinds"] == ("b", "b")]
    assert top and all(r["empty"] for r in top)
    assert all(r["oracle_agrees"] for r in top)


def test_vertex_link_simplex_on_two_points():
    records = classify_horizontal_links(2)
    vv = [r for r in records if r["kinds"] == ("0", "0")]
    assert vv
    for r in vv:
        assert not r["empty"]
        assert r["simplex_dim"] == 1
        assert r["oracle_agrees"]
        assert r["dimension_convention_gap"] == 1


def test_mixed_cell_single_point():
    records = classify_horizontal_links(2)
    mixed = [r for r in records if sorted(r["kinds"]) == ["0", "b"]]
    assert mixed
    for r in mixed:
        assert r["simplex_dim"] == 0
        assert r["oracle_agrees"]


def test_all_horizontal_cells_agree_n3():
    records = classify_horizontal_links(3)
    assert all(r["oracle_agrees"] for r in records)
    empties = [r for r in records if r["empty"]]
    assert all(r["zero_factors"] == 0 for r in empties)
    for r in records:
        if not r["empty"]:
            assert r["simplex_dim"] == r["zero_factors"] - 1


def test_ball_fixed_points_n1():
    rep = ball_fixed_points(1, 3)
    assert rep["fixed"] == 1
    assert rep["f_image"] == [0]


def test_ball_fixed_points_n2():
    rep = ball_fixed_points(2, 2)
    assert rep["fixed"] == 1
    assert rep["f_image"] == [0]


def test_ball_identity_negative_control():
    rep = ball_fixed_points(1, 2, use_identity=True)
    assert rep["fixed"] == rep["ball_vertices"]
    assert rep["fixed"] > 1
