"""Runnable versions of the constructive steps in the incidence proofs.

* :func:`partition_cover` splits a cover of total dimension <= k into two
  groups each spanning at most a (k-1)-flat.
* :func:`refine_witness` turns a low-dimensional heavy family inside a
  k-flat into rich, degenerate pieces.
* :func:`skew_line_witness` finds the two heavy skew lines inside a
  3-flat that is degenerate but not essentially degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import BudgetExceeded, PreconditionViolated
from .essential import Cover
from .incidence import (
    incident_indices,
    is_alpha_degenerate,
    is_essentially_alpha_degenerate,
    spanned_flats,
)
from .projective import (
    Flat,
    Point,
    PointSet,
    as_fraction,
    contains,
    contains_flat,
    join,
    join_all,
    join_point,
    meet,
    span_of_points,
)


class _Marker:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


AllLinesOddK = _Marker("AllLinesOddK")
NotFound = _Marker("NotFound")


@dataclass(frozen=True)
class PartitionResult:
    g1: Cover
    g2: Cover
    join1: Flat
    join2: Flat


def partition_cover(G: Cover, k: int):
    """Ascending-dimension prefix split of a cover.

    ``g1`` is the longest prefix (by ascending dimension, stable) whose join
    has dimension <= k-1, ``g2`` the rest. Returns :data:`AllLinesOddK` when
    ``g2`` still spans a k-flat, which can only happen for an all-lines
    cover with odd k. A cover made of one k-flat raises
    :class:`PreconditionViolated`.
    """
    if G.total_dim > k:
        raise BudgetExceeded(f"total dimension {G.total_dim} exceeds k={k}")
    if any(f.dim >= k for f in G.flats):
        # a lone k-flat has no split into two (k-1)-dimensional joins
        raise PreconditionViolated(f"cover is a single {k}-flat and cannot be partitioned")
    flats = sorted(G.flats, key=lambda f: f.dim)
    if not flats:
        return PartitionResult(G, G, Flat.empty(0), Flat.empty(0))
    d = flats[0].ambient_dim
    acc = Flat.empty(d)
    m1 = 0
    for f in flats:
        nxt = join(acc, f)
        if nxt.dim > k - 1:
            break
        acc = nxt
        m1 += 1
    g1, g2 = flats[:m1], flats[m1:]
    j2 = join_all(g2, d)
    if j2.dim <= k - 1:
        return PartitionResult(Cover(tuple(g1)), Cover(tuple(g2)), acc, j2)
    if not (all(f.dim == 1 for f in flats) and k % 2 == 1):
        raise AssertionError(
            f"second group spans dim {j2.dim} > k-1 for a cover that is not "
            f"all lines with odd k (k={k}, dims={[f.dim for f in flats]})"
        )
    return AllLinesOddK


def smallest_heavy_subflat(gamma: Flat, pts: Sequence[Point], ws: Sequence[int], alpha_p: Fraction) -> Flat:
    """Lowest-dimensional flat inside ``gamma`` holding at least
    ``alpha_p ** (dim gamma - t) * |P cap gamma|`` points, t its dimension.

    Tries t = 0, 1, ... over spans of incident points; ties go to the least
    canonical basis. ``gamma`` itself qualifies at the top dimension.
    """
    idx = incident_indices(gamma, pts)
    inc = [pts[i] for i in idx]
    inc_w = [ws[i] for i in idx]
    total = sum(inc_w)
    for t in range(0, gamma.dim):
        threshold = alpha_p ** (gamma.dim - t) * total
        good = []
        for c in combinations(range(len(inc)), t + 1):
            f = span_of_points([inc[i] for i in c])
            if f.dim != t:
                continue
            w = sum(x for p, x in zip(inc, inc_w) if contains(f, p))
            if w >= threshold:
                good.append(f)
        if good:
            return min(good)
    return gamma


@dataclass(frozen=True)
class RefinedWitness:
    flats: tuple[Flat, ...]
    covered: frozenset[int]
    lost_replacement: tuple[int, ...] = field(default=())
    lost_total: int = 0


@dataclass(frozen=True)
class Degenerate:
    """Refinement ended with a family spanning less than the whole flat."""

    flats: tuple[Flat, ...]
    covered: frozenset[int]
    lost_replacement: tuple[int, ...] = field(default=())
    lost_total: int = 0


def _covered(flats, pts) -> frozenset[int]:
    return frozenset(i for i, p in enumerate(pts) if any(contains(f, p) for f in flats))


def refine_witness(lam: Flat, config, g_prime: Sequence[Flat], alpha, alpha_p):
    k = lam.dim
    a = as_fraction(alpha)
    ap = as_fraction(alpha_p)
    if not (Fraction(k) + a) / (k + 1) < ap < 1:
        raise PreconditionViolated(f"need (k+alpha)/(k+1) < alpha' < 1, got alpha={a}, alpha'={ap}")
    if sum(g.dim for g in g_prime) >= k:
        raise PreconditionViolated("flats must have total dimension below k")
    for g in g_prime:
        if not contains_flat(lam, g):
            raise PreconditionViolated(f"{g!r} is not inside the k-flat")
    pts, ws = config.support, config.weights
    inside = incident_indices(lam, pts)
    n_lam = sum(ws[i] for i in inside)
    before = _covered(g_prime, pts)
    if not sum(ws[i] for i in before) > ap * n_lam:
        raise PreconditionViolated("flats do not cover more than alpha' of the points")

    replaced, lost = [], []
    for g in g_prime:
        if is_alpha_degenerate(g, config, ap):
            replaced.append(g)
            lost.append(0)
            continue
        sub = smallest_heavy_subflat(g, pts, ws, ap)
        replaced.append(sub)
        lost.append(sum(ws[i] for i in incident_indices(g, pts)) - sum(ws[i] for i in incident_indices(sub, pts)))

    floor = (1 - ap) * n_lam
    kept = tuple(f for f in replaced if sum(ws[i] for i in incident_indices(f, pts)) >= floor)
    covered = _covered(kept, pts)
    lost_total = sum(ws[i] for i in before) - sum(ws[i] for i in covered)
    span = join_all(kept, lam.ambient_dim)
    cls = RefinedWitness if span.dim == k else Degenerate
    return cls(kept, covered, tuple(lost), lost_total)


def _sqrt_rational(x: Fraction) -> Fraction | None:
    from math import isqrt

    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def are_skew(l1: Flat, l2: Flat) -> bool:
    return l1.dim == 1 and l2.dim == 1 and meet(l1, l2).dim == -1


def _skew_line_through(p: Point, other: Flat, lam: Flat) -> Flat | None:
    plane = join_point(other, p)
    for row in lam.basis:
        q = Point(row)
        if not contains(plane, q):
            return span_of_points([p, q])
    return None


def skew_line_witness(lam: Flat, config, alpha, r: int | None = None):
    """Two skew lines in a 3-flat carrying at least sqrt(alpha) of its points.

    ``alpha`` must be the square of a rational so every threshold stays
    exact. ``r`` defaults to the number of points on ``lam``. The best pair
    (most points covered, then least bases) is returned, or
    :data:`NotFound`.
    """
    a = as_fraction(alpha)
    beta = _sqrt_rational(a)
    if beta is None:
        raise PreconditionViolated(f"alpha={a} is not the square of a rational")
    if lam.dim != 3:
        raise PreconditionViolated("skew_line_witness works on 3-flats")
    pts, ws = config.support, config.weights
    idx = incident_indices(lam, pts)
    n_lam = sum(ws[i] for i in idx)
    if r is None:
        r = n_lam
    if n_lam < r:
        raise PreconditionViolated(f"flat holds {n_lam} < r={r} points")
    if not is_alpha_degenerate(lam, config, a):
        raise PreconditionViolated("flat is not alpha-degenerate")
    if is_essentially_alpha_degenerate(lam, config, beta):
        raise PreconditionViolated("flat is essentially sqrt(alpha)-degenerate")

    sub_pts = [pts[i] for i in idx]
    sub_ws = [ws[i] for i in idx]
    sub = PointSet(config.ambient_dim, tuple(sub_pts))
    line_min = (beta - a) * r

    def weight(f):
        return sum(w for p, w in zip(sub_pts, sub_ws) if contains(f, p))

    lines = sorted(spanned_flats(sub, 1)) if len(sub_pts) > 1 else []
    heavy = [(f, weight(f)) for f in lines]
    heavy = [(f, w) for f, w in heavy if w >= line_min]
    best = None
    for (l1, w1), (l2, w2) in combinations(heavy, 2):
        if not are_skew(l1, l2):
            continue
        cov = w1 + w2
        if cov >= beta * n_lam and (best is None or cov > best[0]):
            best = (cov, l1, l2)
    if best is None and 1 >= line_min:
        # a lone point can play one of the lines
        for l1, w1 in heavy:
            for p, w in zip(sub_pts, sub_ws):
                if contains(l1, p):
                    continue
                l2 = _skew_line_through(p, l1, lam)
                if l2 is None:
                    continue
                cov = w1 + weight(l2)
                if cov >= beta * n_lam and (best is None or cov > best[0]):
                    best = (cov, l1, l2)
    if best is None:
        return NotFound
    return best[1], best[2]
