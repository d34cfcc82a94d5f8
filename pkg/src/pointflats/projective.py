"""Exact projective geometry over the rationals.

Points are homogeneous coordinate vectors scaled so the first nonzero entry
is 1. Flats are stored as the reduced row echelon form of a basis of their
homogeneous lift, which makes equal flats compare (and hash) equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import MixedAmbient, PointInCenter, ZeroVector

Row = tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _int_row(v: Sequence) -> list[int]:
    den = 1
    for x in v:
        q = x.denominator
        if q != 1:
            den = den * q // gcd(den, q)
    if den == 1:
        return [int(x.numerator) for x in v]
    return [int(x.numerator * (den // x.denominator)) for x in v]


def _rref_int(m: list[list[int]], ncols: int) -> list[list[int]]:
    """Integer Gauss-Jordan: pivot columns are zero outside their row."""
    top = 0
    for col in range(ncols):
        if top == len(m):
            break
        piv = next((i for i in range(top, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        prow = m[top]
        pc = prow[col]
        for i in range(len(m)):
            c = m[i][col]
            if i != top and c:
                row = [pc * a - c * b for a, b in zip(m[i], prow)]
                g = 0
                for x in row:
                    if x:
                        g = gcd(g, x)
                m[i] = [x // g for x in row] if g > 1 else row
        top += 1
    return m[:top]


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[Row, ...]:
    """Reduced row echelon form with zero rows dropped."""
    m = []
    for r in rows:
        if len(r) != ncols:
            raise MixedAmbient(f"row of length {len(r)} in a {ncols}-column matrix")
        m.append(_int_row([as_fraction(x) if isinstance(x, (str, float)) else x for x in r]))
    out = []
    for row in _rref_int(m, ncols):
        pc = next(x for x in row if x)
        out.append(
            tuple(_ZERO if x == 0 else _ONE if x == pc else Fraction(x, pc) for x in row)
        )
    return tuple(out)


def _pivots(basis: Sequence[Row]) -> tuple[int, ...]:
    return tuple(next(j for j, x in enumerate(r) if x != 0) for r in basis)


def _nullspace(basis: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    # basis must already be in RREF
    piv = _pivots(basis)
    free = [j for j in range(ncols) if j not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(basis, piv):
            v[p] = -row[f]
        out.append(v)
    return out


@dataclass(frozen=True, order=True)
class Point:
    """A point of projective space in canonical homogeneous coordinates."""

    coords: Row

    def __post_init__(self):
        c = tuple(as_fraction(x) for x in self.coords)
        lead = next((x for x in c if x != 0), None)
        if lead is None:
            raise ZeroVector("all homogeneous coordinates are zero")
        if lead != 1:
            c = tuple(x / lead for x in c)
        object.__setattr__(self, "coords", c)

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    @cached_property
    def int_coords(self) -> list[int]:
        return _int_row(self.coords)

    def affine(self) -> Row | None:
        """Affine coordinates, or None for a point at infinity."""
        if self.coords[0] == 0:
            return None
        return self.coords[1:]

    def __repr__(self):
        return "Point(" + ", ".join(str(x) for x in self.coords) + ")"


def canonicalize_point(raw: Sequence) -> Point:
    return Point(tuple(raw))


def embed_affine(affine_coords: Sequence) -> Point:
    return Point((Fraction(1),) + tuple(as_fraction(x) for x in affine_coords))


@dataclass(frozen=True, order=True)
class Flat:
    """A projective flat given by its canonical (RREF) basis.

    Construct through :func:`span_of_points`, :meth:`from_rows`,
    :meth:`empty` or :meth:`whole`; the raw constructor trusts that
    ``basis`` is already reduced.
    """

    basis: tuple[Row, ...]
    ambient_dim: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ambient_dim: int) -> Flat:
        return cls(rref(rows, ambient_dim + 1), ambient_dim)

    @classmethod
    def empty(cls, ambient_dim: int) -> Flat:
        return cls((), ambient_dim)

    @classmethod
    def whole(cls, ambient_dim: int) -> Flat:
        n = ambient_dim + 1
        rows = tuple(
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
        )
        return cls(rows, ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return _pivots(self.basis)

    @cached_property
    def int_basis(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(_int_row(r)) for r in self.basis)

    def holds(self, v: Sequence[int]) -> bool:
        """Whether the integer vector ``v`` lies in the row space."""
        w = v
        for row, p in zip(self.int_basis, self.pivots):
            c = w[p]
            if c:
                pc = row[p]
                w = [pc * a - c * b for a, b in zip(w, row)]
        return not any(w)

    def reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        """Residue of ``v`` modulo this flat; zero on every pivot column."""
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c != 0:
                w = [a - c * b for a, b in zip(w, row)]
        return w

    def __contains__(self, p: Point) -> bool:
        return contains(self, p)

    def __repr__(self):
        rows = "; ".join(" ".join(str(x) for x in r) for r in self.basis)
        return f"Flat(dim={self.dim}, P^{self.ambient_dim}, [{rows}])"


def _flat_from_int(m: list[list[int]], d: int) -> Flat:
    out = []
    for row in _rref_int(m, d + 1):
        pc = next(x for x in row if x)
        out.append(
            tuple(_ZERO if x == 0 else _ONE if x == pc else Fraction(x, pc) for x in row)
        )
    return Flat(tuple(out), d)


def _check_same(d1: int, d2: int):
    if d1 != d2:
        raise MixedAmbient(f"ambient dimensions differ: {d1} vs {d2}")


def span_of_points(pts: Sequence[Point], ambient_dim: int | None = None) -> Flat:
    """Smallest flat containing every point of ``pts``.

    ``ambient_dim`` is only needed for an empty list.
    """
    if not pts:
        if ambient_dim is None:
            raise ValueError("ambient_dim is required to span an empty list")
        return Flat.empty(ambient_dim)
    d = pts[0].ambient_dim
    for p in pts:
        _check_same(d, p.ambient_dim)
    if ambient_dim is not None:
        _check_same(d, ambient_dim)
    return _flat_from_int([list(p.int_coords) for p in pts], d)


def join(a: Flat, b: Flat) -> Flat:
    _check_same(a.ambient_dim, b.ambient_dim)
    if not a.basis:
        return b
    if not b.basis:
        return a
    return _flat_from_int([list(r) for r in a.int_basis + b.int_basis], a.ambient_dim)


def join_all(flats: Iterable[Flat], ambient_dim: int) -> Flat:
    rows: list[list[int]] = []
    for f in flats:
        _check_same(ambient_dim, f.ambient_dim)
        rows.extend(list(r) for r in f.int_basis)
    return _flat_from_int(rows, ambient_dim)


def join_point(a: Flat, p: Point) -> Flat:
    _check_same(a.ambient_dim, p.ambient_dim)
    return _flat_from_int([list(r) for r in a.int_basis] + [list(p.int_coords)], a.ambient_dim)


def meet(a: Flat, b: Flat) -> Flat:
    # intersection = annihilator of (annihilator(a) + annihilator(b))
    _check_same(a.ambient_dim, b.ambient_dim)
    n = a.ambient_dim + 1
    if not a.basis or not b.basis:
        return Flat.empty(a.ambient_dim)
    ann = rref(_nullspace(a.basis, n) + _nullspace(b.basis, n), n)
    return Flat(rref(_nullspace(ann, n), n), a.ambient_dim)


def contains(f: Flat, p: Point) -> bool:
    _check_same(f.ambient_dim, p.ambient_dim)
    if not f.basis:
        return False
    return f.holds(p.int_coords)


def contains_flat(outer: Flat, inner: Flat) -> bool:
    _check_same(outer.ambient_dim, inner.ambient_dim)
    return all(outer.holds(r) for r in inner.int_basis)


def project_from(center: Flat, p: Point) -> Point:
    """Project ``p`` away from ``center``.

    The target is the coordinate flat on the non-pivot columns of
    ``center``'s canonical basis, so the image lives in P^(d - k - 1) and
    is the canonical residue of ``p`` modulo ``center``.
    """
    _check_same(center.ambient_dim, p.ambient_dim)
    residue = center.reduce(p.coords)
    if not any(residue):
        raise PointInCenter(f"{p!r} lies in the projection center")
    piv = set(center.pivots)
    return Point(tuple(x for j, x in enumerate(residue) if j not in piv))


def lift_from_projection(center: Flat, image: Point) -> Point:
    """A preimage of ``image`` under :func:`project_from` (zero on pivots)."""
    piv = set(center.pivots)
    it = iter(image.coords)
    n = center.ambient_dim + 1
    if len(image.coords) != n - len(piv):
        raise MixedAmbient("image does not live in the projection target")
    return Point(tuple(Fraction(0) if j in piv else next(it) for j in range(n)))


@dataclass(frozen=True)
class PointSet:
    """Finite configuration of distinct points in P^d."""

    ambient_dim: int
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        for p in pts:
            _check_same(self.ambient_dim, p.ambient_dim)
        if len(set(pts)) != len(pts):
            raise ValueError("PointSet points must be distinct")

    @classmethod
    def from_affine(cls, rows: Iterable[Sequence]) -> PointSet:
        pts = tuple(embed_affine(r) for r in rows)
        if not pts:
            raise ValueError("cannot infer ambient dimension of an empty list")
        return cls(pts[0].ambient_dim, pts)

    @property
    def support(self) -> tuple[Point, ...]:
        return self.points

    @property
    def weights(self) -> tuple[int, ...]:
        return (1,) * len(self.points)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class MultiPointSet:
    """Distinct points with positive integer multiplicities."""

    ambient_dim: int
    entries: tuple[tuple[Point, int], ...] = field(default=())

    def __post_init__(self):
        ent = tuple((p, int(m)) for p, m in self.entries)
        object.__setattr__(self, "entries", ent)
        for p, m in ent:
            _check_same(self.ambient_dim, p.ambient_dim)
            if m < 1:
                raise ValueError(f"multiplicity {m} of {p!r} is not positive")
        if len({p for p, _ in ent}) != len(ent):
            raise ValueError("MultiPointSet points must be distinct")

    @classmethod
    def from_pointset(cls, ps: PointSet) -> MultiPointSet:
        return cls(ps.ambient_dim, tuple((p, 1) for p in ps.points))

    @property
    def support(self) -> tuple[Point, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.entries)

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    def __len__(self):
        return len(self.entries)
