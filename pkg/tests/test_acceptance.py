"""Acceptance criteria, one test (or a few) per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the summary section lists
one PASS/FAIL line per criterion.
"""

import random
import time
from fractions import Fraction as F
from math import comb

import pytest

from pointflats.constructions import (
    flat_plus_line,
    flat_plus_line_parts,
    grid,
    k_line_flats,
    k_lines,
    planes_through_common_line,
    random_general_position,
    skew_lines,
)
from pointflats.essential import Cover, cover_max_points, essential_dimension
from pointflats.fileio import render_report
from pointflats.incidence import (
    incident_indices,
    spanned_flats,
    spanned_flats_incremental,
)
from pointflats.procedures import AllLinesOddK, partition_cover
from pointflats.projective import (
    MultiPointSet,
    PointSet,
    contains_flat,
    embed_affine,
    join_all,
)
from pointflats.verify import (
    rich_report,
    verify_beck_constructions,
    verify_degeneracy_implication,
    verify_dim_identities,
    verify_lemma8,
    verify_lemma8_sweep,
)

from test_procedures import all_covers, check_partition, flat_pool

pytestmark = pytest.mark.acceptance


def criterion(n):
    return pytest.mark.criterion(n)


class Timer:
    def __enter__(self):
        self.t = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.monotonic() - self.t


@criterion(1)
def test_c01_skew_lines_planes():
    with Timer() as t:
        for n in (4, 8, 12):
            inv = spanned_flats(skew_lines(n), 2)
            assert len(inv) == n
            assert max(inv.richness(f) for f in inv) == n // 2 + 1
    assert t.elapsed < 1


@criterion(2)
def test_c02_flat_plus_line():
    with Timer() as t:
        ps = flat_plus_line(12, 3, 4)
        gamma, ell = flat_plus_line_parts(3, 4)
        inv = spanned_flats(ps, 3)
        assert len(inv) <= 6 + comb(6, 2)
        assert all(contains_flat(f, gamma) or contains_flat(f, ell) for f in inv)
    assert t.elapsed < 10


@criterion(3)
@pytest.mark.parametrize("d", [3, 5])
def test_c03_odd_k_lines(d):
    ps = k_lines(12, 3, d)
    inv = spanned_flats(ps, 3)
    assert max(inv.richness(f) for f in inv) >= 8
    if d == 5:
        # with the lines in general position, any two of them span exactly 8
        half = join_all(k_line_flats(3, 5)[:2], 5)
        assert half.dim == 3 and len(incident_indices(half, ps.points)) == 8


def seeded_config(seed):
    """Small integer points, clustered enough to make rich and degenerate flats."""
    rng = random.Random(seed)
    d = rng.randint(2, 4)
    n = min(rng.randint(5, 12), 3**d)
    pts = set()
    while len(pts) < n:
        pts.add(embed_affine([rng.randint(0, 2) for _ in range(d)]))
    pts = sorted(pts)
    if seed % 3 == 0:
        mult = [1] * len(pts)
        while sum(mult) < 12 and rng.random() < 0.7:
            mult[rng.randrange(len(mult))] += 1
        return MultiPointSet(d, tuple(zip(pts, mult)))
    return PointSet(d, tuple(pts))


LEMMA8_CONFIGS = [seeded_config(s) for s in range(60)] + [
    grid(3, 2), grid(2, 3), skew_lines(12), k_lines(12, 2, 3), random_general_position(10, 3, 1),
]


@pytest.fixture(scope="module")
def lemma8_reports():
    out = []
    t0 = time.monotonic()
    for cfg in LEMMA8_CONFIGS:
        for k in (1, 2):
            if k <= cfg.ambient_dim:
                out.append(verify_lemma8_sweep(cfg, k, range(3, cfg.n + 1), [F(1, 2), F(3, 4)]))
    return out, time.monotonic() - t0


@criterion(4)
def test_c04_lemma8_count(lemma8_reports):
    reports, elapsed = lemma8_reports
    assert len(LEMMA8_CONFIGS) >= 50
    assert any(isinstance(c, MultiPointSet) for c in LEMMA8_CONFIGS)
    counts = [f for rep in reports for f in rep.failures if f["kind"] == "count"]
    assert counts == []
    assert sum(len(rep.witnesses["rows"]) for rep in reports) > 500
    assert elapsed < 120


@criterion(4)
def test_c04_single_case_agrees_with_sweep():
    cfg = skew_lines(12)
    sweep = verify_lemma8_sweep(cfg, 2, [7], [F(3, 4)])
    single = verify_lemma8(cfg, 2, 7, F(3, 4))
    assert single.witnesses["count"] == sweep.witnesses["rows"][0]["count"]


@criterion(5)
def test_c05_lemma8_inner_bound(lemma8_reports):
    reports, _ = lemma8_reports
    inner = [f for rep in reports for f in rep.failures if f["kind"] == "inner"]
    assert inner == []
    assert sum(rep.cases for rep in reports) > 1000


@criterion(6)
def test_c06_dimension_identities():
    with Timer() as t:
        rep = verify_dim_identities(seed=7, trials=1000, family_trials=200, d=4)
    assert rep.passed and rep.cases == 1200
    assert t.elapsed < 5


@criterion(7)
def test_c07_partition_exhaustive():
    with Timer() as t:
        odd = cases = 0
        for cover in all_covers(flat_pool()):
            for k in range(max(cover.total_dim, 1), 5):
                if any(f.dim == k for f in cover.flats):
                    continue
                res = check_partition(cover, k)
                odd += res is AllLinesOddK
                cases += 1
    assert cases > 1000 and odd > 0
    assert t.elapsed < 60


CONSTRUCTIONS = [
    ("grid-3-2", grid(3, 2)),
    ("grid-2-3", grid(2, 3)),
    ("skew-4", skew_lines(4)),
    ("skew-8", skew_lines(8)),
    ("skew-12", skew_lines(12)),
    ("flat-plus-line", flat_plus_line(12, 3, 4)),
    ("k-lines-3", k_lines(12, 3, 3)),
    ("k-lines-5", k_lines(12, 3, 5)),
    ("k-lines-2", k_lines(12, 2, 3)),
    ("planes-through-line", planes_through_common_line(12)[0]),
    ("general-position", random_general_position(10, 3, 1)),
]


@criterion(8)
@pytest.mark.parametrize("name,cfg", CONSTRUCTIONS, ids=[c[0] for c in CONSTRUCTIONS])
def test_c08_oracle_equivalence(name, cfg):
    for k in range(0, min(3, cfg.ambient_dim) + 1):
        a = spanned_flats(cfg, k)
        b = spanned_flats_incremental(cfg, k)
        assert list(a.items()) == list(b.items())


@criterion(9)
@pytest.mark.parametrize(
    "cfg,K",
    [
        (PointSet.from_affine([[i, 2 * i] for i in range(5)]), 1),
        (grid(3, 2), 2),
        (skew_lines(6), 2),
    ],
    ids=["collinear", "grid", "skew-3-3"],
)
def test_c09_essential_dimension(cfg, K):
    got, cover = essential_dimension(cfg)
    assert got == K and cover.total_dim == K
    assert all(cover.covers(p) for p in cfg.support)


@criterion(9)
def test_c09_cover_max_monotone():
    for seed in range(20):
        cfg = seeded_config(seed)
        vals = [cover_max_points(cfg, t) for t in range(cfg.ambient_dim + 2)]
        assert vals == sorted(vals)
        assert vals[-1] == cfg.n


@criterion(10)
def test_c10_degeneracy_implication():
    gaps = []
    for name, cfg in CONSTRUCTIONS:
        for k in range(1, min(3, cfg.ambient_dim) + 1):
            for alpha in (F(1, 2), F(3, 4)):
                rep = verify_degeneracy_implication(cfg, k, alpha, trials=2, seed=k)
                assert rep.passed, (name, k, rep.failures[:1])
                gaps += [(name, g["alpha"], g["flat"].dim) for g in rep.witnesses["gaps"]]
    assert ("skew-12", F(3, 4), 3) in gaps


@criterion(11)
@pytest.mark.parametrize("name,cfg", CONSTRUCTIONS, ids=[c[0] for c in CONSTRUCTIONS])
def test_c11_ordering_beyond_essential_dimension(name, cfg):
    K, _ = essential_dimension(cfg)
    f = {k: len(spanned_flats(cfg, k)) for k in range(cfg.ambient_dim + 1)}
    for k in range(max(K, 1), cfg.ambient_dim + 1):
        assert (f[k - 1] == f[k] == 0) or f[k - 1] > f[k], (k, f)


def all_suites(workers):
    return [
        verify_dim_identities(seed=3, trials=200, family_trials=50),
        verify_lemma8(grid(3, 2), 1, 3, F(1, 2), workers=workers),
        verify_lemma8_sweep(skew_lines(12), 2, range(3, 13), [F(1, 2), F(3, 4)], workers=workers),
        verify_degeneracy_implication(skew_lines(12), 3, F(3, 4), trials=3, seed=5),
        verify_beck_constructions(2),
        verify_beck_constructions(3),
        rich_report(grid(3, 3), 2, [3, 4, 9], [F(1, 2), F(3, 4)], workers=workers),
    ]


@criterion(12)
def test_c12_determinism():
    renders = []
    for workers in (1, 1, 4):
        suites = all_suites(workers)
        renders.append([render_report(s, "json") + render_report(s, "csv") for s in suites])
    assert renders[0] == renders[1] == renders[2]


@criterion(7)
def test_c07_beck_partition_branches():
    assert verify_beck_constructions(3).passed
    lines = k_line_flats(3, 5)
    assert partition_cover(Cover(tuple(lines)), 3) is AllLinesOddK
