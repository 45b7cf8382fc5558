"""Containment-preserving reductions onto the octant problem.

Three planar families embed exactly into negative-octant ranges:

* homothetic triangles T(a,b,c) = {(u,v) : u <= a, v <= b, u+v >= -c},
  via the plane x+y+z = 0 (lift (u,v) -> (u, v, -u-v));
* bottomless rectangles [l,r] x (-inf, top], via the plane x+y = 0
  (lift (u,v) -> (u, -u, v));
* intervals with insertion times, drawn as bottomless rectangles with the
  time axis pointing down.

Dualization swaps roles: a negative octant with apex a becomes the point
-a, and a query point q becomes the octant with apex -q, so coloring a
family of shapes reduces to coloring the dual point set. Every map here
is certified by an exact containment-equivalence property, which is the
full requirement; the particular planes are an implementation choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .coloring import BaseColorerConfig, Coloring, PipelineResult, color_point_set
from .errors import EmptyHomothet, InfiniteApex
from .geometry import INF, Octant, Point3, PointSet, octant_contains

__all__ = [
    "NormalizedTriangle",
    "BottomlessRect",
    "TimedInterval",
    "timed_interval_to_rect",
    "rect_to_octant",
    "rect_point_lift",
    "triangle_to_octant",
    "plane_point_lift",
    "triangle_from_vertices",
    "dualize_octants",
    "dual_query_lift",
    "color_dual_family",
    "FamilyColoringResult",
]


@dataclass(frozen=True)
class NormalizedTriangle:
    """Homothet {(u,v) : u <= a, v <= b, u+v >= -c}; nonempty iff a+b+c >= 0."""

    a: object
    b: object
    c: object

    @property
    def is_empty(self) -> bool:
        return self.a + self.b + self.c < 0

    def contains(self, u, v) -> bool:
        return u <= self.a and v <= self.b and u + v >= -self.c

    def vertices(self) -> tuple:
        return ((self.a, self.b), (self.a, -self.c - self.a), (-self.c - self.b, self.b))


@dataclass(frozen=True)
class BottomlessRect:
    """Axis-aligned rectangle [left, right] x (-inf, top]."""

    left: object
    right: object
    top: object

    def __post_init__(self):
        if not self.left < self.right:
            raise ValueError("rectangle needs left < right")

    def contains(self, u, v) -> bool:
        return self.left <= u <= self.right and v <= self.top


@dataclass(frozen=True)
class TimedInterval:
    left: object
    right: object
    insert_time: object

    def __post_init__(self):
        if not self.left < self.right:
            raise ValueError("interval needs left < right")


def timed_interval_to_rect(t: TimedInterval) -> BottomlessRect:
    """Time points downward: insertion at t becomes top edge -t."""
    return BottomlessRect(t.left, t.right, -t.insert_time)


def rect_to_octant(r: BottomlessRect) -> Octant:
    return Octant((r.right, -r.left, r.top))


def rect_point_lift(q) -> Point3:
    u, v = q
    return Point3(u, -u, v)


def triangle_to_octant(t: NormalizedTriangle) -> Octant:
    if t.is_empty:
        raise EmptyHomothet(f"a+b+c = {t.a + t.b + t.c} < 0")
    return Octant((t.a, t.b, t.c))


def plane_point_lift(q) -> Point3:
    u, v = q
    return Point3(u, v, -u - v)


def triangle_from_vertices(vertices: Sequence) -> NormalizedTriangle:
    """Affine normalization helper: recover T(a,b,c) from its three corners.

    Accepts the corner set {(a,b), (a,-c-a), (-c-b,b)} in any order and
    rejects vertex triples that are not such a homothet.
    """
    pts = [tuple(v) for v in vertices]
    if len(pts) != 3:
        raise ValueError("exactly three vertices required")
    a = max(u for u, _ in pts)
    b = max(v for _, v in pts)
    c = -min(u + v for u, v in pts)
    triangle = NormalizedTriangle(a, b, c)
    if set(pts) != set(triangle.vertices()):
        raise ValueError("vertices do not form a normalized homothet")
    return triangle


def dualize_octants(octants: Sequence[Octant]) -> PointSet:
    """Negative octant with apex a -> point -a; membership is preserved
    under `dual_query_lift` by inequality reversal."""
    points = []
    for octant in octants:
        if not octant.negative:
            raise ValueError("dualization is defined for negative octants")
        if any(c is INF for c in octant.apex):
            raise InfiniteApex(f"cannot dualize {octant}")
        x, y, z = octant.apex
        points.append((-x, -y, -z))
    return PointSet(points)


def dual_query_lift(q) -> Octant:
    p = Point3(*q)
    return Octant((-p.x, -p.y, -p.z))


@dataclass(frozen=True)
class FamilyColoringResult:
    coloring: Coloring
    guaranteed_threshold: int
    verified_threshold: Optional[int]
    dual_points: PointSet
    pipeline: PipelineResult


def family_to_octants(family: Sequence) -> list:
    """Map a homogeneous shape family to its negative octants."""
    octants = []
    for member in family:
        if isinstance(member, NormalizedTriangle):
            octants.append(triangle_to_octant(member))
        elif isinstance(member, BottomlessRect):
            octants.append(rect_to_octant(member))
        elif isinstance(member, TimedInterval):
            octants.append(rect_to_octant(timed_interval_to_rect(member)))
        elif isinstance(member, Octant):
            octants.append(member)
        else:
            raise TypeError(f"unsupported family member {member!r}")
    return octants


def family_depth(family: Sequence, query) -> int:
    """Number of family members containing the planar (or spatial) query."""
    count = 0
    for member in family:
        if isinstance(member, NormalizedTriangle):
            hit = member.contains(*query)
        elif isinstance(member, BottomlessRect):
            hit = member.contains(*query)
        elif isinstance(member, TimedInterval):
            hit = timed_interval_to_rect(member).contains(*query)
        elif isinstance(member, Octant):
            hit = octant_contains(member, query)
        else:
            raise TypeError(f"unsupported family member {member!r}")
        count += int(hit)
    return count


def color_dual_family(
    family: Sequence,
    k: int,
    cfg: Optional[BaseColorerConfig] = None,
    verify: bool = True,
) -> FamilyColoringResult:
    """Color shapes so that deeply covered planar points see every color.

    Composes the family's octant embedding with dualization and the point
    pipeline: a point covered by >= guaranteed_threshold members is covered
    by at least one member of each color. Duplicate members are rejected
    (they would collapse to one dual point and defeat index identity).
    """
    octants = family_to_octants(family)
    try:
        dual_points = dualize_octants(octants)
    except ValueError as exc:
        raise ValueError(f"family must not contain duplicates: {exc}") from None
    pipeline = color_point_set(dual_points, k, cfg, verify=verify)
    return FamilyColoringResult(
        coloring=pipeline.coloring,
        guaranteed_threshold=pipeline.guaranteed_threshold,
        verified_threshold=pipeline.verified_threshold,
        dual_points=dual_points,
        pipeline=pipeline,
    )
