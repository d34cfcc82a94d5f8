"""Spanned-flat enumeration, richness profiles and degeneracy predicates.

A configuration is anything with ``ambient_dim``, ``support`` (distinct
points) and ``weights`` (multiplicities), i.e. a PointSet or MultiPointSet.
Spanning is decided on the support; richness counts multiplicity.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import AlphaOutOfRange, EmptyPointList, GammaOutOfRange, KOutOfRange
from .projective import (
    Flat,
    MultiPointSet,
    Point,
    PointSet,
    as_fraction,
    contains,
    join_point,
    project_from,
    span_of_points,
)


@dataclass(frozen=True)
class FlatInventory:
    """Spanned k-flats of a configuration, keyed by canonical flat."""

    k: int
    entries: dict[Flat, tuple[int, ...]]
    points: tuple[Point, ...]
    weights: tuple[int, ...]

    def richness(self, flat: Flat) -> int:
        return sum(self.weights[i] for i in self.entries[flat])

    def items(self):
        return self.entries.items()

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, flat):
        return flat in self.entries


@dataclass(frozen=True)
class RichProfile:
    k: int
    rows: tuple[tuple[int, int], ...]


def incident_indices(flat: Flat, points: Sequence[Point]) -> tuple[int, ...]:
    return tuple(i for i, p in enumerate(points) if contains(flat, p))


def _chunks(seq: list, parts: int) -> list[list]:
    size = -(-len(seq) // parts) if seq else 1
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def _spans_of(points, combos, k) -> set[Flat]:
    found = set()
    for c in combos:
        f = span_of_points([points[i] for i in c])
        if f.dim == k:
            found.add(f)
    return found


def spanned_flats(config, k: int, workers: int = 1) -> FlatInventory:
    """All k-flats spanned by ``config`` with complete incidence lists.

    Enumerates (k+1)-subsets of the support. With ``workers > 1`` the
    subsets are split into chunks handled by a thread pool; the merged
    inventory is sorted, so the result does not depend on ``workers``.
    """
    d = config.ambient_dim
    if not 0 <= k <= d:
        raise KOutOfRange(f"k={k} outside 0..{d}")
    pts = config.support
    combos = list(combinations(range(len(pts)), k + 1))
    if workers > 1 and len(combos) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = ex.map(lambda c: _spans_of(pts, c, k), _chunks(combos, workers))
            found = set().union(*parts)
    else:
        found = _spans_of(pts, combos, k)
    entries = {f: incident_indices(f, pts) for f in sorted(found)}
    return FlatInventory(k, entries, pts, tuple(config.weights))


def _int_rows(vectors: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for v in vectors:
        den = 1
        for x in v:
            den = den * x.denominator // _gcd(den, x.denominator)
        out.append([int(x * den) for x in v])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def integer_rank(vectors: Iterable[Sequence[Fraction]]) -> int:
    """Rank via division-free elimination on integer rows."""
    m = _int_rows(vectors)
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        top = m[rank]
        for i in range(rank + 1, len(m)):
            c = m[i][col]
            if c:
                row = [top[col] * a - c * b for a, b in zip(m[i], top)]
                g = 0
                for x in row:
                    g = _gcd(g, x)
                m[i] = [x // g for x in row] if g > 1 else row
        rank += 1
    return rank


def spanned_flats_incremental(config, k: int) -> FlatInventory:
    """Independent construction of :func:`spanned_flats` used as an oracle.

    Grows spanned j-flats into spanned (j+1)-flats by joining one point at
    a time; incidences are decided by integer rank rather than RREF
    residues.
    """
    d = config.ambient_dim
    if not 0 <= k <= d:
        raise KOutOfRange(f"k={k} outside 0..{d}")
    pts = config.support
    level = {span_of_points([p]) for p in pts}
    for _ in range(k):
        nxt = set()
        for f in level:
            base = integer_rank(f.basis)
            for p in pts:
                if integer_rank(f.basis + (p.coords,)) > base:
                    nxt.add(join_point(f, p))
        level = nxt
    entries = {}
    for f in sorted(level):
        r = integer_rank(f.basis)
        entries[f] = tuple(
            i for i, p in enumerate(pts) if integer_rank(f.basis + (p.coords,)) == r
        )
    return FlatInventory(k, entries, pts, tuple(config.weights))


def rich_profile(inv: FlatInventory, r_values: Iterable[int]) -> RichProfile:
    weights = sorted((inv.richness(f) for f in inv), reverse=True)
    rows = tuple((r, sum(1 for w in weights if w >= r)) for r in sorted(set(r_values)))
    return RichProfile(inv.k, rows)


def max_subflat_coverage(
    flat: Flat, points: Sequence[Point], weights: Sequence[int] | None = None
) -> tuple[Flat, int]:
    """Heaviest flat of dimension at most ``flat.dim - 1`` inside ``flat``.

    Only spans of subsets of ``points`` need to be tried: shrinking a
    subflat to the span of the points it covers keeps its coverage. Ties go
    to the lexicographically least canonical basis.
    """
    if not points:
        raise EmptyPointList("max_subflat_coverage needs at least one point")
    if weights is None:
        weights = [1] * len(points)
    k = flat.dim
    if k <= 0:
        return Flat.empty(flat.ambient_dim), 0
    seen: dict[Flat, int] = {}
    for size in range(1, min(k, len(points)) + 1):
        for c in combinations(range(len(points)), size):
            f = span_of_points([points[i] for i in c])
            if f.dim > k - 1 or f in seen:
                continue
            seen[f] = sum(w for p, w in zip(points, weights) if contains(f, p))
    best = max(seen.values())
    return min(f for f, c in seen.items() if c == best), best


def _incident(flat: Flat, config):
    idx = incident_indices(flat, config.support)
    pts = [config.support[i] for i in idx]
    ws = [config.weights[i] for i in idx]
    return pts, ws


def _alpha(alpha) -> Fraction:
    a = as_fraction(alpha)
    if a <= 0:
        raise AlphaOutOfRange(f"alpha={a} must be positive")
    return a


def is_alpha_degenerate(flat: Flat, config, alpha) -> bool:
    a = _alpha(alpha)
    pts, ws = _incident(flat, config)
    total = sum(ws)
    if total == 0:
        return True
    return max_subflat_coverage(flat, pts, ws)[1] <= a * total


def is_essentially_alpha_degenerate(flat: Flat, config, alpha) -> bool:
    from .essential import cover_max_points

    a = _alpha(alpha)
    pts, ws = _incident(flat, config)
    total = sum(ws)
    if total == 0:
        return True
    sub = PointSet(config.ambient_dim, tuple(pts))
    return cover_max_points(sub, flat.dim - 1, ws) <= a * total


def count_spanned(points: Sequence[Point], k: int) -> int:
    """Number of k-flats spanned by ``points``; the empty flat counts for k=-1."""
    if k < 0:
        return 1
    if len(points) < k + 1:
        return 0
    found = {
        f
        for c in combinations(points, k + 1)
        if (f := span_of_points(list(c))).dim == k
    }
    return len(found)


def is_gamma_saturated(flat: Flat, config, gamma) -> bool:
    g = as_fraction(gamma)
    if g <= 0:
        raise GammaOutOfRange(f"gamma={g} must be positive")
    pts, ws = _incident(flat, config)
    total = sum(ws)
    return count_spanned(pts, flat.dim - 1) >= g * total**flat.dim


def count_independent_lists(
    points: Sequence[Point], k_prime: int, weights: Sequence[int] | None = None
) -> int:
    """Ordered lists of k'+1 affinely independent points, with multiplicity.

    Every list of independent points uses distinct support points, so the
    count is (k'+1)! times the multiplicity product over independent
    (k'+1)-subsets.
    """
    if weights is None:
        weights = [1] * len(points)
    total = 0
    for c in combinations(range(len(points)), k_prime + 1):
        if span_of_points([points[i] for i in c]).dim == k_prime:
            total += prod(weights[i] for i in c)
    return total * factorial(k_prime + 1)


def project_configuration(center: Flat, config) -> tuple[MultiPointSet, int]:
    """Image multiset of ``config`` under projection from ``center``.

    Returns the image and the total multiplicity of the points dropped
    because they lie in ``center``. Image points appear in order of their
    first preimage.
    """
    mult: dict[Point, int] = {}
    dropped = 0
    for p, w in zip(config.support, config.weights):
        if contains(center, p):
            dropped += w
            continue
        q = project_from(center, p)
        mult[q] = mult.get(q, 0) + w
    target_dim = center.ambient_dim - center.dim - 1
    return MultiPointSet(target_dim, tuple(mult.items())), dropped
