"""Deterministic point configurations used as examples and extremal cases.

All coordinates are small integers so exact arithmetic stays cheap and the
output is easy to read.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from .errors import (
    DivisibilityError,
    OddN,
    ParameterConflict,
    RetryLimit,
    SizeOverflow,
)
from .projective import Flat, Point, PointSet, embed_affine, join_point, span_of_points

GRID_CAP = 4096


def grid(m: int, d: int) -> PointSet:
    if m < 1 or d < 2:
        raise ParameterConflict(f"grid needs m >= 1 and d >= 2, got m={m}, d={d}")
    if m**d > GRID_CAP:
        raise SizeOverflow(f"{m}^{d} points exceeds the cap of {GRID_CAP}")
    return PointSet(d, tuple(embed_affine(x) for x in product(range(m), repeat=d)))


def skew_lines(n: int) -> PointSet:
    """n/2 points on each of the lines {(t,0,0)} and {(0,s,1)} of R^3."""
    if n % 2:
        raise OddN(f"n={n} must be even")
    if n < 4:
        raise ParameterConflict(f"n={n} must be at least 4")
    h = n // 2
    a = [embed_affine((t, 0, 0)) for t in range(1, h + 1)]
    b = [embed_affine((0, s, 1)) for s in range(1, h + 1)]
    return PointSet(3, tuple(a + b))


def _moment(t: int, dim: int) -> tuple[int, ...]:
    return tuple(t**i for i in range(1, dim + 1))


def flat_plus_line(n: int, k: int, d: int) -> PointSet:
    """n/2 points spread over a (k-1)-flat plus n/2 on a disjoint line.

    The flat is {x_k = x_(k+1) = ... = 0}, filled along the moment curve so
    its points are in general position inside it; the line is
    {(0, ..., 0, s, 1, 0, ...)} with s in coordinate k. With k = 2 this is
    :func:`skew_lines`.
    """
    if n % 2:
        raise OddN(f"n={n} must be even")
    if not d >= k + 1 >= 2:
        raise ParameterConflict(f"need d >= k+1 >= 2, got k={k}, d={d}")
    h = n // 2
    if k == 1 and h > 1:
        raise ParameterConflict("a 0-flat holds a single point")
    flat_pts = [
        embed_affine(_moment(t, k - 1) + (0,) * (d - k + 1)) for t in range(1, h + 1)
    ]
    line_pts = []
    for s in range(1, h + 1):
        x = [0] * d
        x[k - 1] = s
        x[k] = 1
        line_pts.append(embed_affine(x))
    return PointSet(d, tuple(flat_pts + line_pts))


def flat_plus_line_parts(k: int, d: int) -> tuple[Flat, Flat]:
    """The (k-1)-flat and the line that :func:`flat_plus_line` fills."""
    e = [tuple(int(i == j) for i in range(d + 1)) for j in range(d + 1)]
    gamma = Flat.from_rows(e[:k], d)
    ell = span_of_points([Point(tuple(a + b for a, b in zip(e[0], e[k + 1]))), Point(e[k])])
    return gamma, ell


def k_line_flats(k: int, d: int) -> list[Flat]:
    """k pairwise skew secant lines of the moment curve in P^d."""
    if k < 1 or d < 2 or (k >= 2 and d < 3):
        raise ParameterConflict(f"{k} pairwise skew lines do not fit in P^{d}")
    lines = []
    for i in range(k):
        a = embed_affine(_moment(2 * i + 1, d))
        b = embed_affine(_moment(2 * i + 2, d))
        lines.append(span_of_points([a, b]))
    return lines


def k_lines(n: int, k: int, d: int) -> PointSet:
    """n/k points on each of k pairwise skew lines.

    Line i passes through the moment-curve points m(2i+1), m(2i+2); its
    points are the integer affine combinations (1-t)m(2i+1) + t m(2i+2),
    t = 0..n/k-1. For d >= 2k-1 the lines are in general position (any j of
    them span a (2j-1)-flat).
    """
    if k < 1 or n % k:
        raise DivisibilityError(f"k={k} does not divide n={n}")
    k_line_flats(k, d)
    per = n // k
    pts = []
    for i in range(k):
        a = _moment(2 * i + 1, d)
        b = _moment(2 * i + 2, d)
        for t in range(per):
            pts.append(embed_affine(tuple((1 - t) * x + t * y for x, y in zip(a, b))))
    return PointSet(d, tuple(pts))


@dataclass(frozen=True)
class PlanesFamily:
    """Planes of P^3 through a fixed line; ``plane(c)`` is one per rational c."""

    line: Flat

    def plane(self, c) -> Flat:
        return join_point(self.line, Point((0, 0, 1, c)))


def planes_through_common_line(n: int) -> tuple[PointSet, PlanesFamily]:
    if n < 2:
        raise ParameterConflict(f"n={n} must be at least 2")
    ps = PointSet(3, tuple(embed_affine((t, 0, 0)) for t in range(1, n + 1)))
    return ps, PlanesFamily(span_of_points(list(ps.points)))


def random_general_position(
    n: int, d: int, seed: int, bound: int = 50, max_tries: int = 10_000
) -> PointSet:
    """Seeded integer points of R^d with every (d+1)-subset spanning P^d.

    Candidates are drawn from [-bound, bound]^d and rejected while they fall
    into the span of some d already accepted points (or, while fewer than d
    points are accepted, into the span of all of them).
    """
    rng = random.Random(seed)
    pts: list[Point] = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > max_tries:
            raise RetryLimit(f"no general-position sample after {max_tries} draws")
        p = embed_affine(tuple(rng.randint(-bound, bound) for _ in range(d)))
        if p in pts:
            continue
        size = min(d, len(pts))
        if all(
            span_of_points(list(c) + [p]).dim == size
            for c in combinations(pts, size)
        ):
            pts.append(p)
    return PointSet(d, tuple(pts))


CONSTRUCTIONS = {
    "grid": grid,
    "skew_lines": skew_lines,
    "flat_plus_line": flat_plus_line,
    "k_lines": k_lines,
    "planes_through_common_line": lambda n: planes_through_common_line(n)[0],
    "random_general_position": random_general_position,
}
