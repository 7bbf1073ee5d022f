import json
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digitopo import (
    betti_mod2, euler_characteristic, is_contractible, is_isomorphic, is_n_manifold, is_n_sphere,
    merge_disk, minimal_sphere, reduce,
)
from digitopo.classify import DiskSpec, is_n_disk
from digitopo.generators import cycle, torus16
from digitopo.geometry import (
    Box, Cover, CoverError, DigitizeError, brick_tiling_patch, circle, compress_cover,
    cube_boundary_cover, digitize, frac, frac_text, grid_cover, is_lcl, is_lump, merge_cover,
    nerve, plane_patch, refined_sphere_cover, refinement_sequence, segmented_kind, sphere,
    torus, torus_cover_4x4,
)
from digitopo.geometry.cover import intersect

Q = Fraction


# -- exact boxes ---------------------------------------------------------

halves = st.integers(0, 8).map(lambda k: Q(k, 2))


@st.composite
def intervals(draw):
    a, b = sorted((draw(halves), draw(halves)))
    return a, b


def _points(box: Box, period):
    grid = [Q(k, 4) for k in range(0, 17)]
    out = set()
    for p in product(grid, repeat=box.ambient):
        if all(_inside(x, a, b, per) for x, (a, b), per in zip(p, box.intervals(), period)):
            out.add(tuple(x if per is None else x % per for x, per in zip(p, period)))
    return out


def _inside(x, a, b, per):
    if per is None:
        return a <= x <= b
    return any(a <= x + k * per <= b for k in (-2, -1, 0, 1, 2))


@given(st.lists(intervals(), min_size=2, max_size=2), st.lists(intervals(), min_size=2, max_size=2))
def test_box_intersection_matches_lattice_oracle(a, b):
    A, B = Box.make(a), Box.make(b)
    per = (None, None)
    pieces = A.intersect(B)
    got = set().union(*(_points(p, per) for p in pieces)) if pieces else set()
    assert got == _points(A, per) & _points(B, per)
    assert A.meets(B) == bool(pieces)


@given(intervals(), intervals())
def test_periodic_intersection_matches_lattice_oracle(a, b):
    per = (Q(3),)
    if a[1] - a[0] >= 3 or b[1] - b[0] >= 3:
        return
    A, B = Box.make([a], [3]), Box.make([b], [3])
    pieces = A.intersect(B)
    got = set().union(*(_points(p, per) for p in pieces)) if pieces else set()
    assert got == _points(A, per) & _points(B, per)


def test_box_examples():
    res = intersect([Box.make([(0, 1), (0, 1)])], [Box.make([(1, 2), (0, 1)])])
    assert res is not None and res[1] == 1
    assert intersect([Box.make([(0, 1)])], [Box.make([(2, 3)])]) is None
    res = intersect([Box.make([(0, 1), (0, 0)])], [Box.make([(1, 1), (0, 1)])])
    assert res[1] == 0


def test_exact_text():
    assert frac_text(frac("0.1")) == "0.1"
    assert frac_text(frac(0.25)) == "0.25"
    assert frac_text(Q(1, 3)) == "1/3"
    assert frac_text(Q(-3, 8)) == "-0.375"
    assert frac_text(Q(4)) == "4"
    with pytest.raises(ValueError):
        Box.make([(1, 0)])
    with pytest.raises(ValueError):
        Box.make([(0, 3)], [3])


# -- covers --------------------------------------------------------------


def test_cover_json_round_trip():
    c = refined_sphere_cover(2, 3)
    text = c.to_json(sort_keys=True)
    assert Cover.from_json(text) == c
    assert "\"1/3\"" in text
    with pytest.raises(CoverError):
        Cover.from_json("{bad")
    with pytest.raises(CoverError):
        Cover.from_dict({"dim": 1, "elements": [{"name": "a"}]})
    with pytest.raises(CoverError):
        Cover.build(1, [("a", [[(0, 1)]]), ("a", [[(1, 2)]])])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cube_covers(n):
    c = cube_boundary_cover(n)
    assert len(c) == 2 * n + 2
    assert is_lcl(c).is_yes
    assert is_isomorphic(nerve(c), minimal_sphere(n)).is_yes
    assert segmented_kind(c, c.names, n).kind == "sphere"


def test_lump_conditions():
    c = cube_boundary_cover(2)
    assert is_lump(c, ["F0-", "F1-"]).is_yes
    assert is_lump(c, ["F0-", "F1-", "F2-"]).is_yes
    c1 = cube_boundary_cover(1)
    assert is_lump(c1, ["F0-", "F1-", "F0+"]).is_no  # n + 2 elements
    full = Cover.build(2, [("a", [[(0, 2), (0, 1)]]), ("b", [[(1, 3), (0, 1)]])])
    assert is_lcl(full).is_no


def test_not_locally_centred():
    arcs = Cover.build(1, [("a", [[(0, 1)]]), ("b", [[(1, 2)]]), ("c", [[(2, 3)]])], periods=[3])
    v = is_lcl(arcs)
    assert v.is_no and v.certificate["reason"] == "not locally centred"


def test_unit_grid_fails_lump_condition():
    cells = Cover.build(2, [(f"c{i}{j}", [[(i, i + 1), (j, j + 1)]]) for i in range(2) for j in range(2)])
    v = is_lcl(cells)
    assert v.is_no


def test_brick_patch_2d():
    c = brick_tiling_patch(2, 4)
    assert is_lcl(c).is_yes
    g = nerve(c)
    inner = "b1_1"
    assert g.degree(inner) == 6
    assert is_isomorphic(g.induced(g.neighbors(inner)), cycle(6)).is_yes
    v = is_contractible(g)
    assert v.is_yes and v.witness.replay().n_vertices == 1
    assert not is_n_manifold(g, 2).is_yes


def test_brick_patch_3d_interior_rim_is_sphere():
    c = brick_tiling_patch(3, 3)
    assert is_lcl(c).is_yes
    g = nerve(c)
    assert is_n_sphere(g.induced(g.neighbors("b1_1_1")), 2).is_yes


def test_torus_cover():
    c = torus_cover_4x4()
    assert is_lcl(c).is_yes
    g = nerve(c)
    assert g == torus16().renamed(g.name)
    assert (g.n_vertices, g.n_edges) == (16, 48)
    small, log = compress_cover(c, 2)
    assert len(small) == 16 and log == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_refined_cover_compresses_to_minimal(n):
    c = refined_sphere_cover(n, 3)
    assert len(c) >= 12 and is_lcl(c).is_yes
    small, log = compress_cover(c, n)
    assert len(small) == 2 * n + 2
    assert all(step["lcl"] == "yes" for step in log)
    assert is_isomorphic(nerve(small), minimal_sphere(n)).is_yes


def test_merge_cover_commutes_with_nerve_merge():
    c = refined_sphere_cover(2, 3)
    g = nerve(c)
    star = ("F0-1",) + g.neighbors("F0-1")
    sub = star + tuple(x for x in g.neighbors("F0-0") if x not in star) + ("F0-0",)
    dv = is_n_disk(g.induced(sub), 2)
    if not dv.is_yes:
        pytest.skip("chosen subfamily is not a disk")
    out = merge_cover(c, sub, 2, new_name="M")
    spec = dv.witness
    expected = merge_disk(g, DiskSpec(g, spec.vertices, spec.boundary, spec.interior, 2), "M")
    assert nerve(out) == expected
    assert len(out) == len(c) - len(spec.interior) + 1
    with pytest.raises(CoverError):
        merge_cover(c, ["F0-0", "F1-0"], 2)


def test_closed_lcl_covers_have_enough_elements():
    for c, n in [(cube_boundary_cover(1), 1), (cube_boundary_cover(2), 2), (cube_boundary_cover(3), 3),
                 (refined_sphere_cover(2, 2), 2), (torus_cover_4x4(), 2)]:
        assert is_lcl(c, n).is_yes
        assert is_n_manifold(nerve(c), n).is_yes
        assert len(c) >= 2 * n + 2


@pytest.mark.parametrize("h", ["1/2", "1/4"])
def test_grid_cubes_meeting_a_box_have_contractible_nerve(h):
    c = grid_cover([(0, "1.3"), ("0.2", 1)], h)
    g = nerve(c)
    v = is_contractible(g)
    assert v.is_yes and v.witness.replay().n_vertices == 1


# -- digitization --------------------------------------------------------


def test_sphere_stabilises():
    rep = refinement_sequence(sphere(), "0.5", 3)
    assert [lv["h"] for lv in rep["levels"]] == ["0.5", "0.25", "0.125"]
    for lv in rep["levels"]:
        assert (lv["chi"], lv["betti"]) == (2, [1, 0, 1])
    assert rep["stable"] == {"chi": 2, "betti": [1, 0, 1]}


def test_circle_reduces_to_one_sphere():
    _, g = digitize(circle(), "0.25")
    red, _ = reduce(g)
    assert is_n_sphere(red, 1).is_yes


def test_plane_reduces_to_point():
    for h in ("0.5", "0.25"):
        _, g = digitize(plane_patch(), h)
        assert reduce(g)[0].n_vertices == 1


def test_torus_surface():
    rep = refinement_sequence(torus(), "0.25", 2)
    assert rep["stable"] == {"chi": 0, "betti": [1, 2, 1]}


def test_digitize_errors():
    with pytest.raises(DigitizeError):
        digitize(sphere(), 0)
    with pytest.raises(DigitizeError):
        digitize(sphere(), "0.001")
    with pytest.raises(DigitizeError):
        digitize(sphere(), "0.5", samples=1)
