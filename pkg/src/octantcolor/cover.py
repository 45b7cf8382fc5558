"""Self-covering octant families for independent point sets.

`build_octant_cover` produces, for an independent set P in general
position, a family of 2|P|+1 negative octants that avoid P's points in
their interiors yet cover every point of space that dominates nothing in
P. `validate_cover` certifies those three properties exactly: the
coverage check walks one representative per cell of the coordinate-induced
grid (a violation region, if any, is a union of such cells), backed by
optional random probing. `find_small_cover` is the brute-force oracle
showing the 2n+1 bound is tight on small witnesses.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import NotIndependent
from .geometry import (
    INF,
    Octant,
    Point3,
    PointSet,
    dominates,
    enforce_general_position,
    is_independent,
    octant_contains,
)

__all__ = [
    "OctantCover",
    "CoverReport",
    "build_octant_cover",
    "validate_cover",
    "find_small_cover",
]


@dataclass(frozen=True)
class OctantCover:
    source: PointSet
    octants: tuple

    def __len__(self) -> int:
        return len(self.octants)


@dataclass(frozen=True)
class CoverReport:
    n_points: int
    n_octants: int
    cardinality_ok: bool
    interior_ok: bool
    coverage_ok: bool
    cells_checked: int
    probes_checked: int
    interior_violation: Optional[tuple] = None
    coverage_violation: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        return self.cardinality_ok and self.interior_ok and self.coverage_ok


def build_octant_cover(ps: PointSet) -> OctantCover:
    """Inductive construction over the points in increasing z order.

    Base cases: the all-infinite apex for the empty set; the three
    one-finite-coordinate apices for a single point. Each further point p
    keeps the octants avoiding p, lowers the z apex coordinate to p_z on
    the octants containing p, and appends two octants: one at
    (p_x, min y over earlier points left of p, INF) and the symmetric one
    at (min x over earlier points below p, p_y, INF).
    """
    if not is_independent(ps):
        raise NotIndependent("octant cover requires an independent point set")
    enforce_general_position(ps, policy="reject")

    pts = sorted(ps, key=lambda p: p.z)
    apices = [(INF, INF, INF)]
    if pts:
        p = pts[0]
        apices = [(p.x, INF, INF), (INF, p.y, INF), (INF, INF, p.z)]
    for t in range(1, len(pts)):
        p = pts[t]
        earlier = pts[:t]
        nxt = []
        for apex in apices:
            if p.x <= apex[0] and p.y <= apex[1] and p.z <= apex[2]:
                nxt.append((apex[0], apex[1], p.z))
            else:
                nxt.append(apex)
        left_y = min((q.y for q in earlier if q.x < p.x), default=INF)
        below_x = min((q.x for q in earlier if q.y < p.y), default=INF)
        nxt.append((p.x, left_y, INF))
        nxt.append((below_x, p.y, INF))
        apices = nxt
    return OctantCover(ps, tuple(Octant(a) for a in apices))


def _axis_universe(ps: PointSet, octants: Sequence[Octant], axis: int):
    values = set(ps.axis_values(axis))
    for octant in octants:
        if octant.apex[axis] is not INF:
            values.add(octant.apex[axis])
    return sorted(values)


def _interior_violation(ps: PointSet, octants: Sequence[Octant]) -> Optional[tuple]:
    for oi, octant in enumerate(octants):
        for pi, p in enumerate(ps):
            if octant_contains(octant, p, interior=True):
                return (oi, pi)
    return None


def _coverage_gap(ps: PointSet, octants: Sequence[Octant]):
    """Exhaustive grid check of the coverage property.

    Works in rank space over the united source/apex coordinate universe:
    probe representatives sit just below each universe value plus one above
    everything, so every cell of the arrangement is visited. Returns
    (cells_checked, violating probe point or None).
    """
    universes = [_axis_universe(ps, octants, axis) for axis in range(3)]
    sizes = [len(u) for u in universes]
    rank = [{v: r for r, v in enumerate(u)} for u in universes]
    mx, my, mz = sizes
    cells = (mx + 1) * (my + 1) * (mz + 1)

    # Least z probe index dominating a source point, per (x, y) probe index.
    dom_min = np.full((mx + 1, my + 1), mz + 1, dtype=np.int64)
    for p in ps:
        a, b, c = (rank[axis][p[axis]] for axis in range(3))
        dom_min[a + 1, b + 1] = min(dom_min[a + 1, b + 1], c + 1)
    np.minimum.accumulate(dom_min, axis=0, out=dom_min)
    np.minimum.accumulate(dom_min, axis=1, out=dom_min)

    # Greatest z probe index covered by an octant, per (x, y) probe index.
    covered_max = np.full((mx + 1, my + 1), -1, dtype=np.int64)
    for octant in octants:
        a, b, c = (
            sizes[axis] if octant.apex[axis] is INF else rank[axis][octant.apex[axis]]
            for axis in range(3)
        )
        covered_max[a, b] = max(covered_max[a, b], c)
    covered_max = covered_max[::-1, ::-1]
    np.maximum.accumulate(covered_max, axis=0, out=covered_max)
    np.maximum.accumulate(covered_max, axis=1, out=covered_max)
    covered_max = covered_max[::-1, ::-1]

    required = np.minimum(dom_min - 1, mz)
    bad = required > covered_max
    if not bad.any():
        return cells, None

    i, j = (int(v) for v in divmod(int(bad.argmax()), my + 1))
    l = int(covered_max[i, j]) + 1
    probe = tuple(
        _probe_value(universes[axis], idx) for axis, idx in enumerate((i, j, l))
    )
    return cells, probe


def _probe_value(universe, idx):
    if not universe:
        return 0
    if idx >= len(universe):
        return universe[-1] + 1
    gaps = [b - a for a, b in zip(universe, universe[1:])]
    eps = Fraction(min(gaps), 2) if gaps else 1
    return universe[idx] - eps


def _random_probe_violation(ps: PointSet, octants, probes: int, seed: int):
    rng = random.Random(seed)
    if len(ps):
        lo = min(min(p) for p in ps) - 2
        hi = max(max(p) for p in ps) + 2
    else:
        lo, hi = -8, 8
    checked = 0
    for _ in range(probes):
        coords = []
        for _axis in range(3):
            v = rng.randint(int(lo), int(hi))
            if rng.random() < 0.5:
                v = v + Fraction(rng.randint(1, 7), 8)
            coords.append(v)
        probe = Point3(*coords)
        if any(dominates(probe, p) for p in ps):
            continue
        checked += 1
        if not any(octant_contains(o, probe) for o in octants):
            return checked, tuple(probe)
    return checked, None


def validate_cover(cover: OctantCover, probes: int = 256, seed: int = 0) -> CoverReport:
    """Exact pass/fail report for the three cover properties.

    The coverage property is checked exhaustively over one representative
    per grid cell, then on `probes` extra random points (rejected when they
    dominate a source point). Failures are report content, not errors.
    """
    ps = cover.source
    octants = cover.octants
    if any(not o.negative for o in octants):
        raise ValueError("cover validation expects negative octants")

    cardinality_ok = len(octants) == 2 * len(ps) + 1
    interior_violation = _interior_violation(ps, octants)
    cells, coverage_violation = _coverage_gap(ps, octants)

    probes_checked = 0
    if coverage_violation is None and probes > 0:
        probes_checked, random_violation = _random_probe_violation(ps, octants, probes, seed)
        if random_violation is not None:
            coverage_violation = random_violation

    return CoverReport(
        n_points=len(ps),
        n_octants=len(octants),
        cardinality_ok=cardinality_ok,
        interior_ok=interior_violation is None,
        coverage_ok=coverage_violation is None,
        cells_checked=cells,
        probes_checked=probes_checked,
        interior_violation=interior_violation,
        coverage_violation=coverage_violation,
    )


def find_small_cover(ps: PointSet, max_octants: int) -> Optional[tuple]:
    """Exhaustive search for a small valid cover; None if impossible.

    Any family satisfying the interior and coverage properties can be
    enlarged octant by octant, coordinate by coordinate, until each apex
    coordinate hits a source coordinate or INF, without breaking either
    property. The search over apex grids of that form is therefore
    conclusive. Intended for small witness sets only (grows as
    C((n+1)^3, size)).
    """
    grid = [
        list(_axis_universe(ps, (), axis)) + [INF] for axis in range(3)
    ]
    candidates = [
        Octant(apex)
        for apex in itertools.product(*grid)
        if _interior_violation(ps, (Octant(apex),)) is None
    ]
    for size in range(1, max_octants + 1):
        for family in itertools.combinations(candidates, size):
            _, gap = _coverage_gap(ps, family)
            if gap is None:
                return family
    return None
