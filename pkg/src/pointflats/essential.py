"""Essential dimension and coverage profiles via exact cover search.

An optimal cover can always use flats that are spans of the points they
cover, so candidate flats are the spanned flats of every dimension >= 1,
plus one fixed line through each point for covering a lone point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptyConfiguration
from .incidence import spanned_flats
from .projective import Flat, Point, contains, span_of_points


@dataclass(frozen=True)
class Cover:
    flats: tuple[Flat, ...]

    def __post_init__(self):
        object.__setattr__(self, "flats", tuple(self.flats))
        if any(f.dim < 1 for f in self.flats):
            raise ValueError("cover flats must have dimension >= 1")
        if len(set(self.flats)) != len(self.flats):
            raise ValueError("cover flats must be pairwise distinct")

    @property
    def total_dim(self) -> int:
        return sum(f.dim for f in self.flats)

    def covers(self, p: Point) -> bool:
        return any(contains(f, p) for f in self.flats)


@dataclass(frozen=True)
class GProfile:
    values: tuple[int, ...]


def fallback_line(p: Point) -> Flat:
    """The line through ``p`` and the first coordinate point different from it."""
    n = len(p.coords)
    for j in range(n):
        e = Point(tuple(int(i == j) for i in range(n)))
        if e != p:
            return span_of_points([p, e])
    raise ValueError("P^0 has no lines")


def candidate_flats(S, max_dim: int) -> list[Flat]:
    pts = S.support
    if not pts:
        return []
    top = min(max_dim, span_of_points(list(pts)).dim)
    found: set[Flat] = set()
    for j in range(1, top + 1):
        found.update(spanned_flats(S, j))
    if max_dim >= 1:
        found.update(fallback_line(p) for p in pts)
    return sorted(found, key=lambda f: (f.dim, f.basis))


def _masks(flats: Sequence[Flat], pts: Sequence[Point]) -> list[int]:
    out = []
    for f in flats:
        m = 0
        for i, p in enumerate(pts):
            if contains(f, p):
                m |= 1 << i
        out.append(m)
    return out


def _weight(mask: int, weights: Sequence[int]) -> int:
    total = 0
    i = 0
    while mask:
        if mask & 1:
            total += weights[i]
        mask >>= 1
        i += 1
    return total


def essential_dimension(S) -> tuple[int, Cover]:
    """Minimum total dimension of a cover of ``S`` by flats of dim >= 1.

    Iterative deepening on the budget; at each budget a depth-first search
    branches on the flats through the lowest-index uncovered point, best
    new-coverage-per-dimension first, and memoizes failed states.
    """
    pts = S.support
    if not pts:
        raise EmptyConfiguration("essential dimension of an empty set")
    whole = span_of_points(list(pts))
    if whole.dim <= 1:
        cover = Cover((whole if whole.dim == 1 else fallback_line(pts[0]),))
        return 1, cover
    # the span itself is a cover of total dimension upper
    upper = whole.dim
    cands = candidate_flats(S, upper - 1)
    masks = _masks(cands, pts)
    full = (1 << len(pts)) - 1
    failed: set[tuple[int, int]] = set()

    def search(uncovered: int, budget: int):
        if not uncovered:
            return []
        if (uncovered, budget) in failed:
            return None
        low = uncovered & -uncovered
        options = [
            i for i, m in enumerate(masks) if m & low and cands[i].dim <= budget
        ]
        options.sort(
            key=lambda i: (
                -Fraction(bin(masks[i] & uncovered).count("1"), cands[i].dim),
                cands[i].dim,
                cands[i].basis,
            )
        )
        for i in options:
            rest = search(uncovered & ~masks[i], budget - cands[i].dim)
            if rest is not None:
                return [cands[i]] + rest
        failed.add((uncovered, budget))
        return None

    for t in range(1, upper):
        found = search(full, t)
        if found is not None:
            cover = Cover(tuple(found))
            return cover.total_dim, cover
    return upper, Cover((whole,))


def cover_max_points(S, t: int, weights: Sequence[int] | None = None) -> int:
    """Largest weight of points of ``S`` covered with total dimension <= t.

    ``weights`` overrides the configuration's own multiplicities.
    """
    pts = S.support
    if weights is None:
        weights = S.weights
    if t <= 0 or not pts:
        return 0
    total = sum(weights)
    top = span_of_points(list(pts)).dim
    if t >= max(1, top):
        return total
    cands = candidate_flats(S, t)
    masks = _masks(cands, pts)
    # drop candidates dominated by a no-costlier flat covering a superset
    best_dim: dict[int, int] = {}
    for f, m in zip(cands, masks):
        if m not in best_dim or f.dim < best_dim[m]:
            best_dim[m] = f.dim
    items = sorted(best_dim.items(), key=lambda md: (-_weight(md[0], weights), md[1], md[0]))
    kept = [
        (m, dm)
        for m, dm in items
        if not any(
            (m2 | m) == m2 and m2 != m and d2 <= dm for m2, d2 in items
        )
    ]
    ratio = max(Fraction(_weight(m, weights), dm) for m, dm in kept)
    best = 0

    def dfs(start: int, covered: int, budget: int):
        nonlocal best
        w = _weight(covered, weights)
        if w > best:
            best = w
        if best == total or w + ratio * budget <= best:
            return
        for i in range(start, len(kept)):
            m, dm = kept[i]
            if dm <= budget and m & ~covered:
                dfs(i + 1, covered | m, budget - dm)
                if best == total:
                    return

    dfs(0, 0, t)
    return best


def g_profile(S, k: int) -> GProfile:
    """g_0 and g_i = cover_max_points(S, i) for 1 <= i <= k.

    g_0 is what one point covers: 1 for a set, the top multiplicity for a
    multiset.
    """
    if not S.support:
        return GProfile((0,) * (k + 1))
    vals = [max(S.weights)] + [cover_max_points(S, i) for i in range(1, k + 1)]
    return GProfile(tuple(vals[: k + 1]))


def beck_lower_profile(S, k: int) -> list[int]:
    """Running products prod_{i<=j} (n - g_i) for j = 0..k."""
    n = S.n
    out, acc = [], 1
    for g in g_profile(S, k).values:
        acc *= n - g
        out.append(acc)
    return out
