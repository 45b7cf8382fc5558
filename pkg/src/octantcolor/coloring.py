"""The coloring engine.

Everything certified here is certified a posteriori: the base 2-colorer
is a search (exact or local) whose quality constant is whatever the
verifier measures, never a trusted constant. Splitting doubles the number
of colors round by round at a (2c-1) threshold cost per round, and the
layered pass extends colorings from independent sets to arbitrary sets at
a further (k-1) factor. All guarantees are parameterized by the largest
base constant actually achieved.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import DegenerateInput, InternalError, NotIndependent, TargetNotMet
from .geometry import PointSet, dominance_matrix, enforce_general_position, is_independent
from .verify import ColorfulnessReport, colorfulness_report

__all__ = [
    "Coloring",
    "BaseColorerConfig",
    "BaseColorResult",
    "SplitResult",
    "LayeredResult",
    "PipelineResult",
    "split_threshold_bound",
    "smooth_split_bound",
    "layered_threshold_bound",
    "base_two_color",
    "split_coloring",
    "layered_coloring",
    "color_point_set",
]


@dataclass(frozen=True)
class Coloring:
    """Total assignment of colors 1..k to point indices 0..n-1.

    `certified_threshold` is only ever set from a verifier report; a None
    means unverified.
    """

    k: int
    colors: tuple
    certified_threshold: Optional[int] = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if any(c < 1 or c > self.k for c in self.colors):
            raise ValueError("colors must lie in 1..k")

    def __len__(self) -> int:
        return len(self.colors)


@dataclass(frozen=True)
class BaseColorerConfig:
    strategy: str = "local"
    target_c: int = 12
    max_restarts: int = 40
    seed: int = 0

    def __post_init__(self):
        if self.strategy not in ("exact", "local"):
            raise ValueError("strategy must be 'exact' or 'local'")
        if self.target_c < 2:
            raise ValueError("target_c must be >= 2")
        if self.max_restarts < 1:
            raise ValueError("max_restarts must be >= 1")


@dataclass(frozen=True)
class BaseColorResult:
    coloring: Coloring
    achieved_c: int


@dataclass(frozen=True)
class RoundInfo:
    classes: tuple
    achieved: tuple


@dataclass(frozen=True)
class SplitResult:
    coloring: Coloring
    claimed_threshold: int
    base_c_max: int
    rounds: tuple = ()


@dataclass(frozen=True)
class LayeredResult:
    coloring: Coloring
    claimed_threshold: int
    base_c_max: int
    layers: tuple = ()
    precolors: tuple = ()
    uncolored: tuple = ()
    layer_claims: tuple = ()


@dataclass(frozen=True)
class PipelineResult:
    coloring: Coloring
    guaranteed_threshold: int
    verified_threshold: Optional[int]
    base_c_max: int
    smooth_bound: float
    perturbed: bool
    report: Optional[ColorfulnessReport] = None
    layered: Optional[LayeredResult] = field(default=None, repr=False)


def split_threshold_bound(k: int, c: int) -> int:
    """Colorfulness threshold c*(2c-1)^(ceil(log2 k) - 1) for independent sets."""
    if k < 1:
        raise ValueError("k must be positive")
    if c < 2:
        raise ValueError("c must be >= 2")
    if k == 1:
        return 1
    rounds = (k - 1).bit_length()
    return c * (2 * c - 1) ** (rounds - 1)


def smooth_split_bound(k: int, c: int) -> float:
    """Smooth form c*k^log2(2c-1); reported alongside the tight bound."""
    if k < 1 or c < 2:
        raise ValueError("need k >= 1 and c >= 2")
    return float(c) * float(k) ** math.log2(2 * c - 1)


def layered_threshold_bound(k: int, c: int) -> int:
    """Threshold (k-1) * split bound for arbitrary (layered) sets; 1 for k=1."""
    if k == 1:
        return 1
    return (k - 1) * split_threshold_bound(k, c)


def _prefix_bitmasks(ranks_column) -> list:
    """le[r] = bitmask of point indices whose rank on this axis is <= r."""
    size = int(ranks_column.max()) + 1 if len(ranks_column) else 0
    le = [0] * size
    for idx, r in enumerate(ranks_column):
        le[int(r)] |= 1 << idx
    for r in range(1, size):
        le[r] |= le[r - 1]
    return le


def _pattern_masks(ps: PointSet) -> list:
    """Distinct nonempty octant-cap-P patterns as index bitmasks."""
    from .geometry import axis_ranks

    if len(ps) == 0:
        return []
    ranks = axis_ranks(ps)
    le = [_prefix_bitmasks(ranks[:, axis]) for axis in range(3)]
    patterns = set()
    for mx in le[0]:
        for my in le[1]:
            mxy = mx & my
            if not mxy:
                continue
            for mz in le[2]:
                m = mxy & mz
                if m:
                    patterns.add(m)
    return sorted(patterns)


def _exact_two_color(n: int, patterns: list, target: int) -> Optional[list]:
    """Complete DFS over 2-colorings, pruning monochromatic big patterns.

    Tries the currently less-used color first, so a balanced (and usually
    valid) assignment is reached almost immediately on random inputs.
    """
    big = [m for m in patterns if bin(m).count("1") >= target]

    def rec(idx, c0, c1):
        for m in big:
            if m & ~c0 == 0 or m & ~c1 == 0:
                return None
        if idx == n:
            return (c0, c1)
        bit = 1 << idx
        first_zero = bin(c0).count("1") <= bin(c1).count("1")
        for pick_zero in (first_zero, not first_zero):
            res = rec(idx + 1, c0 | bit if pick_zero else c0, c1 if pick_zero else c1 | bit)
            if res is not None:
                return res
        return None

    hit = rec(0, 0, 0)
    if hit is None:
        return None
    c0, _ = hit
    return [1 if c0 >> i & 1 else 2 for i in range(n)]


def _balanced_random_colors(n: int, rng: random.Random) -> list:
    colors = [1] * (n // 2) + [2] * (n - n // 2)
    rng.shuffle(colors)
    return colors


def base_two_color(ps: PointSet, cfg: Optional[BaseColorerConfig] = None) -> BaseColorResult:
    """2-color P so octants holding >= achieved_c points see both colors.

    The returned achieved_c is the verifier's exact minimal threshold for
    the returned coloring, not the search target. Raises TargetNotMet (with
    the best coloring found in the payload) when the search cannot reach
    target_c.
    """
    cfg = cfg or BaseColorerConfig()
    n = len(ps)
    if n == 0:
        coloring = Coloring(2, ())
        return BaseColorResult(coloring, colorfulness_report(ps, coloring).minimal_colorful_threshold)

    if cfg.strategy == "exact":
        patterns = _pattern_masks(ps)
        colors = _exact_two_color(n, patterns, cfg.target_c)
        if colors is None:
            fallback = Coloring(2, [1 + i % 2 for i in range(n)])
            achieved = colorfulness_report(ps, fallback).minimal_colorful_threshold
            raise TargetNotMet(
                f"no 2-coloring reaches target_c={cfg.target_c} for n={n}",
                best_coloring=fallback,
                achieved_c=achieved,
            )
        coloring = Coloring(2, colors)
        report = colorfulness_report(ps, coloring)
        return BaseColorResult(coloring, report.minimal_colorful_threshold)

    rng = random.Random(cfg.seed)
    best_colors, best_achieved = None, None
    iters = 60 + 10 * n
    for _restart in range(cfg.max_restarts):
        colors = _balanced_random_colors(n, rng)
        for _step in range(iters):
            report = colorfulness_report(ps, colors, k=2)
            achieved = report.minimal_colorful_threshold
            if best_achieved is None or achieved < best_achieved:
                best_colors, best_achieved = list(colors), achieved
            if achieved <= cfg.target_c:
                return BaseColorResult(Coloring(2, colors), achieved)
            witness = report.witness
            flip = rng.choice(witness.contained)
            colors[flip] = witness.missing_color
    raise TargetNotMet(
        f"local search exhausted {cfg.max_restarts} restarts "
        f"(best achieved_c={best_achieved} > target_c={cfg.target_c})",
        best_coloring=Coloring(2, best_colors),
        achieved_c=best_achieved,
    )


def split_coloring(ps: PointSet, k: int, cfg: Optional[BaseColorerConfig] = None) -> SplitResult:
    """k-color an independent set by repeated 2-splitting of color classes.

    ceil(log2 k) rounds split every class in two; a surplus of fine colors
    is merged onto 1..k surjectively, which preserves colorfulness. The
    claimed threshold uses the largest base constant achieved anywhere.
    """
    cfg = cfg or BaseColorerConfig()
    if k < 1:
        raise ValueError("k must be positive")
    if not is_independent(ps):
        raise NotIndependent("split coloring requires an independent set")
    n = len(ps)
    if k == 1:
        return SplitResult(Coloring(1, (1,) * n), 1, 0)

    rounds = (k - 1).bit_length()
    classes = [tuple(range(n))]
    achieved_all = []
    rounds_info = []
    call_idx = 0
    for _round in range(rounds):
        nxt = []
        round_achieved = []
        for cls in classes:
            res = base_two_color(ps.subset(cls), replace(cfg, seed=cfg.seed + call_idx))
            call_idx += 1
            round_achieved.append(res.achieved_c)
            nxt.append(tuple(i for i, c in zip(cls, res.coloring.colors) if c == 1))
            nxt.append(tuple(i for i, c in zip(cls, res.coloring.colors) if c == 2))
        classes = nxt
        achieved_all.extend(round_achieved)
        rounds_info.append(RoundInfo(tuple(classes), tuple(round_achieved)))

    c_max = max([2] + achieved_all)
    colors = [0] * n
    for fine, cls in enumerate(classes):
        for i in cls:
            colors[i] = fine % k + 1
    return SplitResult(
        Coloring(k, colors), split_threshold_bound(k, c_max), c_max, tuple(rounds_info)
    )


def layered_coloring(ps: PointSet, k: int, cfg: Optional[BaseColorerConfig] = None) -> LayeredResult:
    """Extend split coloring to arbitrary sets layer by layer.

    Each staircase layer is precolored independently, then every point
    keeps its precolor unless that color already appears below it (among
    the points it dominates), in which case it takes the smallest unused
    color below; points seeing all k colors below are finalized to color 1,
    which is harmless because any octant containing such a point contains
    its whole dominated set.
    """
    cfg = cfg or BaseColorerConfig()
    if k < 1:
        raise ValueError("k must be positive")
    n = len(ps)
    if k == 1:
        return LayeredResult(Coloring(1, (1,) * n), 1, 0)

    dom = dominance_matrix(ps)
    np.fill_diagonal(dom, False)
    layers = compute_layers_cached(ps, dom)
    final = [None] * n
    precolors = [None] * n
    uncolored = []
    layer_claims = []
    c_max = 0
    for li, layer in enumerate(layers):
        res = split_coloring(ps.subset(layer), k, replace(cfg, seed=cfg.seed + 100003 * li))
        layer_claims.append(res.claimed_threshold)
        c_max = max(c_max, res.base_c_max)
        for pos, idx in enumerate(layer):
            pre = res.coloring.colors[pos]
            precolors[idx] = pre
            below = {final[q] for q in np.flatnonzero(dom[idx]) if final[q] is not None}
            if pre not in below:
                final[idx] = pre
            else:
                free = next((c for c in range(1, k + 1) if c not in below), None)
                if free is None:
                    uncolored.append(idx)
                else:
                    final[idx] = free
    for idx in uncolored:
        final[idx] = 1

    claimed = (k - 1) * max(layer_claims, default=1)
    return LayeredResult(
        Coloring(k, final),
        claimed,
        max(c_max, 2),
        tuple(layers),
        tuple(precolors),
        tuple(uncolored),
        tuple(layer_claims),
    )


def compute_layers_cached(ps: PointSet, dom: np.ndarray) -> list:
    """Layer peeling reusing an already-computed dominance matrix."""
    n = len(ps)
    alive = np.ones(n, dtype=bool)
    layers = []
    while alive.any():
        minimal = alive & ~(dom & alive[np.newaxis, :]).any(axis=1)
        if not minimal.any():
            raise InternalError("dominance must be acyclic on distinct points")
        layers.append(tuple(int(i) for i in np.flatnonzero(minimal)))
        alive &= ~minimal
    return layers


def color_point_set(
    ps: PointSet,
    k: int,
    cfg: Optional[BaseColorerConfig] = None,
    verify: bool = True,
    on_degenerate: str = "perturb",
) -> PipelineResult:
    """End-to-end pipeline: general position, layered coloring, certification.

    Degenerate inputs are deterministically perturbed first (coloring a
    perturbation is sound for the original set: every original octant
    pattern is still realizable after an order-preserving tie-break).
    Reports both the a-priori guarantee (k-1)*split bound at the achieved
    base constant and, when `verify` is set, the verifier's exact threshold.
    """
    cfg = cfg or BaseColorerConfig()
    if k < 1:
        raise ValueError("k must be positive")
    if on_degenerate not in ("perturb", "reject"):
        raise ValueError("on_degenerate must be 'perturb' or 'reject'")

    try:
        working = enforce_general_position(ps, policy="reject")
        perturbed = False
    except DegenerateInput:
        if on_degenerate == "reject":
            raise
        working = enforce_general_position(ps, policy="perturb")
        perturbed = True

    layered = layered_coloring(working, k, cfg)
    guaranteed = layered.claimed_threshold
    c_for_bound = max(layered.base_c_max, 2)
    coloring = layered.coloring
    report = None
    verified = None
    if verify:
        report = colorfulness_report(working, coloring)
        verified = report.minimal_colorful_threshold
        if verified > guaranteed:
            raise InternalError(
                f"verified threshold {verified} exceeds guarantee {guaranteed}"
            )
        coloring = replace(coloring, certified_threshold=verified)
    return PipelineResult(
        coloring=coloring,
        guaranteed_threshold=guaranteed,
        verified_threshold=verified,
        base_c_max=layered.base_c_max,
        smooth_bound=(k - 1) * smooth_split_bound(k, c_for_bound) if k > 1 else 1.0,
        perturbed=perturbed,
        report=report,
        layered=layered,
    )
