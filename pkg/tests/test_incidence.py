from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointflats.constructions import grid, random_general_position, skew_lines
from pointflats.errors import AlphaOutOfRange, EmptyPointList, KOutOfRange
from pointflats.incidence import (
    count_independent_lists,
    count_spanned,
    integer_rank,
    is_alpha_degenerate,
    is_essentially_alpha_degenerate,
    is_gamma_saturated,
    max_subflat_coverage,
    project_configuration,
    rich_profile,
    spanned_flats,
    spanned_flats_incremental,
)
from pointflats.projective import Flat, MultiPointSet, PointSet, join_point, span_of_points

import oracles


def coords(cfg):
    return [p.coords for p in cfg.support]


def incidence_sets(inv):
    return {frozenset(idx) for _, idx in inv.items()}


def collinear3():
    return PointSet.from_affine([[0, 0], [1, 1], [2, 2]])


@pytest.mark.parametrize(
    "cfg,k",
    [
        (random_general_position(5, 3, 3), 2),
        (collinear3(), 1),
        (skew_lines(12), 2),
        (grid(3, 2), 1),
        (grid(2, 3), 2),
    ],
)
def test_spanned_flats_match_oracle(cfg, k):
    inv = spanned_flats(cfg, k)
    assert incidence_sets(inv) == oracles.spanned_sets(coords(cfg), k)
    assert all(f.dim == k for f in inv)


def test_frozen_counts():
    assert len(spanned_flats(random_general_position(5, 3, 3), 2)) == 10
    assert len(spanned_flats(collinear3(), 1)) == 1
    assert len(spanned_flats(skew_lines(12), 2)) == 12
    assert len(spanned_flats(grid(3, 2), 1)) == 20


def test_k_out_of_range():
    with pytest.raises(KOutOfRange):
        spanned_flats(grid(2, 2), 3)
    with pytest.raises(KOutOfRange):
        spanned_flats(grid(2, 2), -1)


def test_workers_do_not_change_inventory():
    cfg = grid(3, 3)
    a, b = spanned_flats(cfg, 2), spanned_flats(cfg, 2, workers=4)
    assert list(a.items()) == list(b.items())


def test_incremental_matches_enumeration():
    for cfg, k in [(grid(3, 2), 1), (skew_lines(8), 2), (grid(2, 3), 2)]:
        assert list(spanned_flats(cfg, k).items()) == list(spanned_flats_incremental(cfg, k).items())


def test_rich_profile_grid():
    prof = rich_profile(spanned_flats(grid(3, 2), 1), [3, 2, 3])
    assert prof.rows == ((2, 20), (3, 8))


def test_rich_profile_skew_lines():
    # every plane through one line picks up a point of the other
    prof = rich_profile(spanned_flats(skew_lines(12), 2), [7, 8])
    assert dict(prof.rows) == {7: 12, 8: 0}


def test_richness_counts_multiplicity():
    ps = collinear3()
    ms = MultiPointSet(2, ((ps.points[0], 4), (ps.points[1], 1), (ps.points[2], 1)))
    inv = spanned_flats(ms, 1)
    assert [inv.richness(f) for f in inv] == [6]


def test_integer_rank_matches_oracle():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(1, 2), F(0), F(1)]]
    assert integer_rank(rows) == oracles.rank(rows) == 2
    assert integer_rank([]) == 0


def test_max_subflat_coverage_grid_plane():
    g = grid(3, 2)
    plane = Flat.whole(2)
    f, c = max_subflat_coverage(plane, g.points)
    assert c == oracles.max_subflat(coords(g), 2) == 3
    assert f.dim == 1
    with pytest.raises(EmptyPointList):
        max_subflat_coverage(plane, [])


def test_max_subflat_coverage_weighted():
    ps = PointSet.from_affine([[0, 0], [1, 0], [0, 1], [1, 1]])
    f, c = max_subflat_coverage(Flat.whole(2), ps.points, [5, 1, 1, 1])
    assert c == oracles.max_subflat(coords(ps), 2, [5, 1, 1, 1]) == 6


def test_alpha_degeneracy_on_grid_plane():
    g = grid(3, 2)
    plane = Flat.whole(2)
    # best line holds 3 of 9
    assert is_alpha_degenerate(plane, g, F(1, 3))
    assert not is_alpha_degenerate(plane, g, F(1, 4))
    with pytest.raises(AlphaOutOfRange):
        is_alpha_degenerate(plane, g, 0)


def test_skew_lines_three_flat_gap():
    sk = skew_lines(12)
    whole = Flat.whole(3)
    # the best plane holds 7 of 12, but both lines together have dimension 2
    assert is_alpha_degenerate(whole, sk, F(3, 4))
    assert not is_essentially_alpha_degenerate(whole, sk, F(3, 4))


def test_line_is_degenerate_at_one_point_share():
    ps = collinear3()
    line = spanned_flats(ps, 1).entries
    (f,) = line
    assert is_alpha_degenerate(f, ps, F(1, 3))
    assert is_essentially_alpha_degenerate(f, ps, F(1, 3))


def test_count_spanned():
    pts = random_general_position(5, 3, 3).points
    assert count_spanned(pts, 2) == 10
    assert count_spanned(pts, -1) == 1


def test_gamma_saturated():
    g = grid(3, 2)
    # 20 lines among 9 points: 20 >= gamma * 81 iff gamma <= 20/81
    assert is_gamma_saturated(Flat.whole(2), g, F(20, 81))
    assert not is_gamma_saturated(Flat.whole(2), g, F(21, 81))


def brute_independent_lists(pts, kp, ws):
    expanded = [(i, p) for i, p in enumerate(pts) for _ in range(ws[i])]
    total = 0
    for seq in permutations(range(len(expanded)), kp + 1):
        if len({expanded[j][0] for j in seq}) < kp + 1:
            continue
        if oracles.rank([expanded[j][1].coords for j in seq]) == kp + 1:
            total += 1
    return total


@pytest.mark.parametrize(
    "pts,kp,ws,expected",
    [
        (random_general_position(3, 2, 1).points, 2, [1, 1, 1], 6),
        (collinear3().points, 2, [1, 1, 1], 0),
        (random_general_position(4, 3, 1).points, 3, [1, 1, 1, 1], 24),
        (collinear3().points, 1, [2, 1, 1], None),
    ],
)
def test_count_independent_lists(pts, kp, ws, expected):
    got = count_independent_lists(pts, kp, ws)
    assert got == brute_independent_lists(pts, kp, ws)
    if expected is not None:
        assert got == expected


def test_project_configuration_drops_center_points():
    g = grid(3, 2)
    center = span_of_points([g.points[0]])
    ms, dropped = project_configuration(center, g)
    assert dropped == 1
    assert ms.ambient_dim == 1
    assert ms.n == 8
    # one image point per spanned line through the center
    through = [s for s in oracles.spanned_sets(coords(g), 1) if 0 in s]
    assert len(ms.support) == len(through)
    assert sorted(ms.weights) == sorted(len(s) - 1 for s in through)


# seeded small configurations for property checks

def configs():
    return st.builds(
        lambda n, d, seed: random_general_position(n, d, seed, bound=3),
        st.integers(4, 7),
        st.integers(2, 3),
        st.integers(0, 10_000),
    )


@settings(max_examples=25, deadline=None)
@given(configs(), st.integers(1, 2))
def test_spanned_flats_property_vs_oracle(cfg, k):
    if k > cfg.ambient_dim:
        return
    assert incidence_sets(spanned_flats(cfg, k)) == oracles.spanned_sets(coords(cfg), k)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=3, max_size=9, unique=True),
       st.sampled_from([F(1, 2), F(3, 4)]))
def test_essential_implies_plain_degeneracy(pts, alpha):
    ps = PointSet.from_affine(pts)
    for f in spanned_flats(ps, 1).entries | spanned_flats(ps, 2).entries:
        if is_essentially_alpha_degenerate(f, ps, alpha):
            assert is_alpha_degenerate(f, ps, alpha)


def test_project_from_a_skew_line():
    sk = skew_lines(12)
    center = span_of_points(list(sk.points[:6]))
    ms, dropped = project_configuration(center, sk)
    assert dropped == 6 and ms.ambient_dim == 1
    # images agree exactly when the joins with the center agree
    planes = {join_point(center, p) for p in sk.points[6:]}
    assert len(ms.support) == len(planes) == 6
    assert ms.weights == (1,) * 6
