"""Exact geometric primitives: points, octants, dominance, layers.

All coordinates are exact integers or `fractions.Fraction`; no floating
point enters any predicate. Apex coordinates may additionally be the
``INF`` sentinel, which compares strictly greater than every number.
Dominance is taken closed (a point dominates itself), which makes every
predicate total on degenerate inputs as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

import numpy as np

from .errors import DegenerateInput

__all__ = [
    "INF",
    "Coord",
    "ExtCoord",
    "Point3",
    "Octant",
    "PointSet",
    "dominates",
    "octant_contains",
    "is_independent",
    "enforce_general_position",
    "compute_layers",
    "parse_coord",
    "format_coord",
    "parse_ext_coord",
    "format_ext_coord",
]


class _PlusInf:
    """Order sentinel strictly above every int/Fraction. Not a number."""

    __slots__ = ()

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is INF

    def __gt__(self, other):
        return other is not INF

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is INF

    def __hash__(self):
        return hash("octantcolor.INF")

    def __repr__(self):
        return "INF"


INF = _PlusInf()

Coord = Union[int, Fraction]
ExtCoord = Union[int, Fraction, _PlusInf]


def _as_coord(value) -> Coord:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"exact coordinate expected (int or Fraction), got {value!r}")
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def parse_coord(token: str) -> Coord:
    """Parse an exact number: integer digits or a 'p/q' rational."""
    token = token.strip()
    if "/" in token:
        return _as_coord(Fraction(token))
    return int(token)


def format_coord(value: Coord) -> str:
    value = _as_coord(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def parse_ext_coord(token: str) -> ExtCoord:
    if token.strip() == "inf":
        return INF
    return parse_coord(token)


def format_ext_coord(value: ExtCoord) -> str:
    if value is INF:
        return "inf"
    return format_coord(value)


class Point3(NamedTuple):
    x: Coord
    y: Coord
    z: Coord


def _as_point(p) -> Point3:
    if isinstance(p, Point3):
        return p
    x, y, z = p
    return Point3(_as_coord(x), _as_coord(y), _as_coord(z))


@dataclass(frozen=True)
class Octant:
    """Axis-aligned orthant identified by its apex.

    A negative octant is {q : q <= apex coordinate-wise}; a positive one is
    {q : q >= apex coordinate-wise}. Positive octants must have finite
    apices (an infinite lower bound would empty the region).
    """

    apex: tuple
    negative: bool = True

    def __post_init__(self):
        if len(self.apex) != 3:
            raise ValueError("octant apex needs exactly 3 coordinates")
        coords = tuple(c if c is INF else _as_coord(c) for c in self.apex)
        object.__setattr__(self, "apex", coords)
        if not self.negative and any(c is INF for c in coords):
            raise ValueError("positive octant apex coordinates must be finite")

    def __repr__(self):
        sign = "neg" if self.negative else "pos"
        return f"Octant({sign} {' '.join(format_ext_coord(c) for c in self.apex)})"


class PointSet:
    """Immutable ordered point container; the index is the point's identity."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable = ()):
        pts = tuple(_as_point(p) for p in points)
        seen = set()
        for i, p in enumerate(pts):
            if p in seen:
                raise ValueError(f"duplicate point at index {i}: {p}")
            seen.add(p)
        object.__setattr__(self, "points", pts)

    def __setattr__(self, name, value):
        raise AttributeError("PointSet is immutable")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point3]:
        return iter(self.points)

    def __getitem__(self, index: int) -> Point3:
        return self.points[index]

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"PointSet({len(self)} points)"

    def subset(self, indices: Sequence[int]) -> "PointSet":
        return PointSet(self.points[i] for i in indices)

    def axis_values(self, axis: int) -> tuple:
        return tuple(p[axis] for p in self.points)

    @classmethod
    def from_text(cls, text: str) -> "PointSet":
        pts = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if len(tokens) != 3:
                raise ValueError(f"line {lineno}: expected 3 coordinates, got {len(tokens)}")
            try:
                pts.append(tuple(parse_coord(t) for t in tokens))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        return cls(pts)

    def to_text(self) -> str:
        lines = [" ".join(format_coord(c) for c in p) for p in self.points]
        return "\n".join(lines) + ("\n" if lines else "")


def dominates(p, q) -> bool:
    """True iff the negative octant with apex p contains q (closed)."""
    p = _as_point(p)
    q = _as_point(q)
    return q.x <= p.x and q.y <= p.y and q.z <= p.z


def octant_contains(octant: Octant, point, interior: bool = False) -> bool:
    """Closed or strict-interior containment; INF bounds are never tight."""
    p = _as_point(point)
    for coord, bound in zip(p, octant.apex):
        if octant.negative:
            ok = coord < bound if interior else coord <= bound
        else:
            ok = coord > bound if interior else coord >= bound
        if not ok:
            return False
    return True


def axis_ranks(ps: PointSet) -> np.ndarray:
    """(n, 3) int array of per-axis ranks among sorted unique values.

    Rank comparison is equivalent to exact value comparison on each axis,
    for any mix of int and Fraction coordinates; ties share a rank.
    """
    n = len(ps)
    out = np.empty((n, 3), dtype=np.int64)
    for axis in range(3):
        values = ps.axis_values(axis)
        order = {v: r for r, v in enumerate(sorted(set(values)))}
        out[:, axis] = [order[v] for v in values]
    return out


def dominance_matrix(ps: PointSet) -> np.ndarray:
    """(n, n) boolean matrix; entry [i, j] is `dominates(ps[i], ps[j])`."""
    n = len(ps)
    if n == 0:
        return np.zeros((0, 0), dtype=bool)
    ranks = axis_ranks(ps)
    dom = np.ones((n, n), dtype=bool)
    for axis in range(3):
        col = ranks[:, axis]
        dom &= col[np.newaxis, :] <= col[:, np.newaxis]
    return dom


def is_independent(ps: PointSet) -> bool:
    """True iff no point dominates a distinct point of the set."""
    dom = dominance_matrix(ps)
    np.fill_diagonal(dom, False)
    return not dom.any()


def _degenerate_axes(ps: PointSet) -> list:
    bad = []
    for axis, name in enumerate("xyz"):
        values = ps.axis_values(axis)
        if len(set(values)) != len(values):
            bad.append(name)
    return bad


def enforce_general_position(ps: PointSet, policy: str = "reject") -> PointSet:
    """Ensure no two points share an x, y, or z coordinate.

    policy="reject" raises DegenerateInput on any repeated coordinate.
    policy="perturb" breaks ties deterministically, as if each coordinate
    were the pair (value, point index) under lexicographic order, and
    returns order-isomorphic exact coordinates: on each degenerate axis,
    point i's value v becomes v + i*step with step below 1/(n+1) of the
    smallest positive gap, so all strict orderings of the input survive.
    """
    if policy not in ("reject", "perturb"):
        raise ValueError(f"unknown policy {policy!r}")
    bad = _degenerate_axes(ps)
    if not bad:
        return ps
    if policy == "reject":
        raise DegenerateInput(f"repeated coordinate on axis {', '.join(bad)}")
    n = len(ps)
    columns = []
    for axis, name in enumerate("xyz"):
        values = ps.axis_values(axis)
        if name not in bad:
            columns.append(values)
            continue
        distinct = sorted(set(values))
        gaps = [b - a for a, b in zip(distinct, distinct[1:])]
        step = Fraction(min(gaps) if gaps else 1, n + 1)
        columns.append(tuple(v + i * step for i, v in enumerate(values)))
    return PointSet(zip(*columns))


def compute_layers(ps: PointSet) -> list:
    """Partition into staircase layers by repeated minima extraction.

    Layer 1 holds the points dominating no other point; layer i holds the
    minimal points of what remains. Returns a list of sorted index tuples.
    """
    n = len(ps)
    dom = dominance_matrix(ps)
    np.fill_diagonal(dom, False)
    alive = np.ones(n, dtype=bool)
    layers = []
    while alive.any():
        dominates_someone = (dom & alive[np.newaxis, :]).any(axis=1)
        minimal = alive & ~dominates_someone
        if not minimal.any():
            raise AssertionError("dominance must be acyclic on distinct points")
        layers.append(tuple(int(i) for i in np.flatnonzero(minimal)))
        alive &= ~minimal
    return layers
