"""Shared test utilities: independent naive oracles and extra game foils.

The naive implementations here deliberately avoid the library's rank/grid
machinery so that fast paths are cross-checked against a second route.
"""

from fractions import Fraction

from octantcolor.geometry import INF, PointSet, dominates, octant_contains
from octantcolor.verify import canonical_apices, interval_properness_violation


def naive_colorfulness_threshold(ps: PointSet, colors, k: int) -> int:
    """O(n^4) literal scan of all canonical apices."""
    best = 0
    for apex in canonical_apices(ps):
        contained = [
            i
            for i, p in enumerate(ps)
            if p.x <= apex[0] and p.y <= apex[1] and p.z <= apex[2]
        ]
        present = {colors[i] for i in contained}
        if len(present) < k and len(contained) > best:
            best = len(contained)
    return best + 1


def naive_cover_coverage_violation(ps: PointSet, octants):
    """Literal epsilon-grid coverage check, one probe per arrangement cell."""
    axes = []
    for axis in range(3):
        values = {p[axis] for p in ps}
        for o in octants:
            if o.apex[axis] is not INF:
                values.add(o.apex[axis])
        values = sorted(values)
        gaps = [b - a for a, b in zip(values, values[1:])]
        eps = Fraction(min(gaps), 2) if gaps else Fraction(1)
        probes = [v - eps for v in values]
        probes.append((values[-1] if values else 0) + 1)
        axes.append(probes)
    for x in axes[0]:
        for y in axes[1]:
            for z in axes[2]:
                probe = (x, y, z)
                if any(dominates(probe, p) for p in ps):
                    continue
                if not any(octant_contains(o, probe) for o in octants):
                    return probe
    return None


def sample_pattern_family(ps: PointSet, samples: int, seed: int):
    """Random-octant pattern sampling (cross-check for canonical apices)."""
    import random

    rng = random.Random(seed)
    if len(ps) == 0:
        return {frozenset()}
    lo = min(min(p) for p in ps) - 2
    hi = max(max(p) for p in ps) + 2
    patterns = {frozenset()}
    for _ in range(samples):
        apex = tuple(lo + Fraction(rng.randint(0, 8 * (hi - lo)), 8) for _ in range(3))
        patterns.add(
            frozenset(
                i
                for i, p in enumerate(ps)
                if p.x <= apex[0] and p.y <= apex[1] and p.z <= apex[2]
            )
        )
    return patterns


class MaximallyLazy:
    """Colors only when a point has already reached depth d with fewer than
    two distinct colors; the latest-possible legal play, which drives the
    adversary recursion deepest."""

    def on_insert(self, view):
        pending = {}
        for _round in range(4 * len(view.intervals) + 4):
            payload = [
                ((l, r), pending.get(i, view.colors.get(i)))
                for i, l, r in view.intervals
            ]
            witness = interval_properness_violation(payload, view.d)
            if witness is None:
                break
            present = set(witness.colors_present)
            progressed = False
            for cid in witness.covering_ids:
                if len(present) >= 2:
                    break
                if cid in view.colors or cid in pending:
                    continue
                color = next((c for c in range(1, view.k + 1) if c not in present), 1)
                pending[cid] = color
                present.add(color)
                progressed = True
            if not progressed:
                break
        return list(pending.items())


def random_independent_set(n: int, seed: int) -> PointSet:
    """Mixes staircase antichains with first layers of random clouds."""
    import random

    from octantcolor.generators import generate_points
    from octantcolor.geometry import compute_layers

    rng = random.Random(seed)
    if rng.random() < 0.5 or n < 3:
        return generate_points("antichain", n, seed=seed)
    cloud = generate_points("random3d", max(4 * n, 8), seed=seed)
    layer = compute_layers(cloud)[0][: max(n, 1)]
    return cloud.subset(layer)
