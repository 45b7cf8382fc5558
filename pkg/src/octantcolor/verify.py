"""Exhaustive, exact verification oracles.

Everything in this module is ground truth for the rest of the package:
colorfulness thresholds are computed by scanning the canonical apex grid
(every octant can be shrunk until each bounding plane is supported by a
point, so apices built from point coordinates realize every containment
pattern), and interval properness is decided on the atomic cells of the
endpoint arrangement. Counting is vectorized over per-axis ranks, which
preserves exactness for arbitrary int/Fraction coordinates because only
the coordinate order enters the computation.
"""

from __future__ import annotations

import itertools
import os
from bisect import bisect_left, bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .geometry import PointSet

__all__ = [
    "ColorfulWitness",
    "ColorfulnessReport",
    "IntervalViolation",
    "canonical_apices",
    "octant_pattern",
    "octant_patterns",
    "realizable_subsets",
    "colorfulness_report",
    "interval_properness_violation",
]


def worker_count(limit: Optional[int] = None) -> int:
    """Verifier parallelism cap from the COLORER_THREADS env var (default 1)."""
    raw = os.environ.get("COLORER_THREADS", "1")
    try:
        threads = max(1, int(raw))
    except ValueError:
        threads = 1
    if limit is not None:
        threads = min(threads, max(1, limit))
    return threads


@dataclass(frozen=True)
class ColorfulWitness:
    apex: tuple
    contained: tuple
    missing_color: int

    @property
    def size(self) -> int:
        return len(self.contained)


@dataclass(frozen=True)
class ColorfulnessReport:
    k: int
    minimal_colorful_threshold: int
    witness: Optional[ColorfulWitness]
    octants_examined: int


@dataclass(frozen=True)
class IntervalViolation:
    point: object
    depth: int
    covering_ids: tuple
    colors_present: tuple


def _unpack_coloring(coloring, k: Optional[int]):
    if hasattr(coloring, "k") and hasattr(coloring, "colors"):
        return tuple(coloring.colors), int(coloring.k)
    colors = tuple(int(c) for c in coloring)
    if k is None:
        raise ValueError("k is required when passing a bare color sequence")
    return colors, int(k)


def _axis_uniques(ps: PointSet):
    """Sorted unique values and per-point ranks for each axis."""
    uniques = []
    ranks = np.empty((len(ps), 3), dtype=np.int64)
    for axis in range(3):
        values = ps.axis_values(axis)
        distinct = sorted(set(values))
        order = {v: r for r, v in enumerate(distinct)}
        uniques.append(distinct)
        ranks[:, axis] = [order[v] for v in values]
    return uniques, ranks


def canonical_apices(ps: PointSet) -> Iterator[tuple]:
    """All |P|^3 apices combining an x, a y, and a z point coordinate."""
    return itertools.product(
        ps.axis_values(0), ps.axis_values(1), ps.axis_values(2)
    )


def octant_pattern(ps: PointSet, apex: tuple) -> frozenset:
    """Indices of points inside the closed negative octant at `apex`."""
    ax, ay, az = apex
    return frozenset(
        i for i, p in enumerate(ps) if p.x <= ax and p.y <= ay and p.z <= az
    )


def octant_patterns(ps: PointSet) -> set:
    """Every realizable pattern octant-cap-P, as a set of frozensets.

    The empty pattern is always included: an octant far below the set
    realizes it even though no canonical apex does.
    """
    patterns = {frozenset()}
    uniques, _ = _axis_uniques(ps)
    for apex in itertools.product(*uniques):
        patterns.add(octant_pattern(ps, apex))
    return patterns


def realizable_subsets(ps: PointSet) -> set:
    """Independent 2^n oracle for the pattern family.

    A subset S is realizable as octant-cap-P exactly when no point outside
    S is dominated by the coordinate-wise maximum of S; the empty subset is
    realizable by an octant below everything.
    """
    n = len(ps)
    out = {frozenset()}
    for bits in range(1, 1 << n):
        members = [i for i in range(n) if bits >> i & 1]
        mx = tuple(max(ps[i][axis] for i in members) for axis in range(3))
        ok = True
        for j, q in enumerate(ps):
            if bits >> j & 1:
                continue
            if q.x <= mx[0] and q.y <= mx[1] and q.z <= mx[2]:
                ok = False
                break
        if ok:
            out.add(frozenset(members))
    return out


def _scan_slabs(kz_range, base_per_color, base_total, points_by_slab, k):
    """Scan z-slabs of the canonical grid; returns (best size, cell) or None.

    `base_*` hold the 2D dominance-count prefixes for all slabs before the
    chunk; cells are compared by size and ties resolved toward the
    lexicographically smallest (x, y, z) rank triple.
    """
    per_color = [g.copy() for g in base_per_color]
    total = base_total.copy()
    best = None
    for kz in kz_range:
        for rx, ry, color in points_by_slab.get(kz, ()):
            per_color[color - 1][rx:, ry:] += 1
            total[rx:, ry:] += 1
        missing = per_color[0] == 0
        for c in range(1, k):
            missing |= per_color[c] == 0
        candidate = np.where(missing, total, -1)
        flat = int(candidate.argmax())
        size = int(candidate.flat[flat])
        if size < 0:
            continue
        i, j = divmod(flat, candidate.shape[1])
        cell = (size, (i, j, kz))
        if best is None or cell[0] > best[0] or (cell[0] == best[0] and cell[1] < best[1]):
            best = cell
    return best


def colorfulness_report(ps: PointSet, coloring, k: Optional[int] = None) -> ColorfulnessReport:
    """Exact minimal threshold m: every octant with >= m points is colorful.

    Deterministic regardless of COLORER_THREADS; the witness is the largest
    octant missing a color (lexicographically smallest apex among ties), or
    absent when every nonempty octant already contains all k colors.
    """
    colors, k = _unpack_coloring(coloring, k)
    n = len(ps)
    if len(colors) != n:
        raise ValueError(f"coloring covers {len(colors)} points, set has {n}")
    if k < 1:
        raise ValueError("k must be positive")
    if any(c < 1 or c > k for c in colors):
        raise ValueError("colors must lie in 1..k")
    if n == 0:
        return ColorfulnessReport(k, 1, None, 0)

    uniques, ranks = _axis_uniques(ps)
    nx, ny, nz = (len(u) for u in uniques)
    points_by_slab = {}
    for idx in range(n):
        rx, ry, rz = (int(r) for r in ranks[idx])
        points_by_slab.setdefault(rz, []).append((rx, ry, colors[idx]))

    zero = np.zeros((nx, ny), dtype=np.int64)
    threads = worker_count(limit=nz)
    if threads == 1:
        best = _scan_slabs(range(nz), [zero] * k, zero, points_by_slab, k)
    else:
        bounds = np.linspace(0, nz, threads + 1, dtype=int)
        bases = [([zero.copy() for _ in range(k)], zero.copy())]
        for w in range(1, threads):
            per_color = [g.copy() for g in bases[-1][0]]
            total = bases[-1][1].copy()
            for kz in range(bounds[w - 1], bounds[w]):
                for rx, ry, color in points_by_slab.get(kz, ()):
                    per_color[color - 1][rx:, ry:] += 1
                    total[rx:, ry:] += 1
            bases.append((per_color, total))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(
                    _scan_slabs,
                    range(bounds[w], bounds[w + 1]),
                    bases[w][0],
                    bases[w][1],
                    points_by_slab,
                    k,
                )
                for w in range(threads)
            ]
            results = [f.result() for f in futures]
        best = None
        for cell in results:
            if cell is None:
                continue
            if best is None or cell[0] > best[0] or (cell[0] == best[0] and cell[1] < best[1]):
                best = cell

    examined = n ** 3
    if best is None or best[0] == 0:
        return ColorfulnessReport(k, 1, None, examined)

    size, (i, j, kz) = best
    apex = (uniques[0][i], uniques[1][j], uniques[2][kz])
    contained = tuple(
        idx
        for idx in range(n)
        if ranks[idx, 0] <= i and ranks[idx, 1] <= j and ranks[idx, 2] <= kz
    )
    present = {colors[idx] for idx in contained}
    missing = next(c for c in range(1, k + 1) if c not in present)
    witness = ColorfulWitness(apex, contained, missing)
    return ColorfulnessReport(k, size + 1, witness, examined)


def _interval_items(intervals):
    items = []
    for entry in intervals:
        (left, right), color = entry
        if left > right:
            raise ValueError(f"interval with left > right: {(left, right)}")
        items.append((left, right, color))
    return items


def interval_properness_violation(intervals, d: int) -> Optional[IntervalViolation]:
    """First point (in position order) covered by >= d intervals but by
    fewer than two distinct assigned colors, or None.

    Depth counts every interval present; the two-distinct-colors condition
    looks only at assigned colors. Candidates are the atomic cells of the
    endpoint arrangement: each endpoint value and each open gap between
    consecutive endpoints (gap witnesses are exact midpoints).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    items = _interval_items(intervals)
    if not items:
        return None
    coords = sorted({v for l, r, _ in items for v in (l, r)})
    used_colors = sorted({c for _, _, c in items if c is not None})

    if all(isinstance(v, int) for v in coords) and all(
        isinstance(v, int) for it in items for v in it[:2]
    ):
        hit = _violation_scan_int(items, coords, used_colors, d)
    else:
        hit = _violation_scan_exact(items, coords, used_colors, d)
    if hit is None:
        return None

    point = hit
    covering = tuple(i for i, (l, r, _) in enumerate(items) if l <= point <= r)
    present = tuple(sorted({items[i][2] for i in covering if items[i][2] is not None}))
    return IntervalViolation(point, len(covering), covering, present)


def _violation_scan_int(items, coords, used_colors, d):
    u = np.asarray(coords, dtype=np.int64)
    ls = np.sort(np.asarray([it[0] for it in items], dtype=np.int64))
    rs = np.sort(np.asarray([it[1] for it in items], dtype=np.int64))
    depth_at = np.searchsorted(ls, u, side="right") - np.searchsorted(rs, u, side="left")
    depth_gap = np.searchsorted(ls, u, side="right") - np.searchsorted(rs, u, side="right")

    distinct_at = np.zeros(len(u), dtype=np.int64)
    distinct_gap = np.zeros(len(u), dtype=np.int64)
    for color in used_colors:
        cls = np.sort(np.asarray([it[0] for it in items if it[2] == color], dtype=np.int64))
        crs = np.sort(np.asarray([it[1] for it in items if it[2] == color], dtype=np.int64))
        cov_at = np.searchsorted(cls, u, side="right") - np.searchsorted(crs, u, side="left")
        cov_gap = np.searchsorted(cls, u, side="right") - np.searchsorted(crs, u, side="right")
        distinct_at += cov_at > 0
        distinct_gap += cov_gap > 0

    bad_at = (depth_at >= d) & (distinct_at < 2)
    bad_gap = (depth_gap >= d) & (distinct_gap < 2)
    bad_gap[-1] = False
    # Interior witnesses are preferred; endpoint cells still get scanned so
    # violations living on a single boundary point are not missed.
    for i in range(len(u) - 1):
        if bad_gap[i]:
            return Fraction(coords[i] + coords[i + 1], 2)
    for i in range(len(u)):
        if bad_at[i]:
            return coords[i]
    return None


def _violation_scan_exact(items, coords, used_colors, d):
    ls = sorted(it[0] for it in items)
    rs = sorted(it[1] for it in items)
    by_color = {
        color: (
            sorted(it[0] for it in items if it[2] == color),
            sorted(it[1] for it in items if it[2] == color),
        )
        for color in used_colors
    }

    def stats(point, at_value):
        side = bisect_left if at_value else bisect_right
        depth = bisect_right(ls, point) - side(rs, point)
        distinct = 0
        for cls, crs in by_color.values():
            if bisect_right(cls, point) - side(crs, point) > 0:
                distinct += 1
        return depth, distinct

    for i, v in enumerate(coords[:-1]):
        depth, distinct = stats(v, False)
        if depth >= d and distinct < 2:
            return Fraction(v + coords[i + 1], 2)
    for v in coords:
        depth, distinct = stats(v, True)
        if depth >= d and distinct < 2:
            return v
    return None
