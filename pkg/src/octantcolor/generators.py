"""Seeded instance generators for benchmarks and tests.

Every kind is fully determined by (kind, n, seed); kinds without inherent
randomness ignore the seed. All outputs are in general position.
"""

from __future__ import annotations

import itertools
import math
import random

from .geometry import PointSet, enforce_general_position

__all__ = ["KINDS", "generate_points"]

KINDS = ("random3d", "antichain", "chain", "grid", "tight")

_ALIASES = {"Pn-tight": "tight", "pn-tight": "tight"}


def generate_points(kind: str, n: int, seed: int = 0) -> PointSet:
    """Build a named instance family.

    random3d: independent uniform draws of n distinct integers per axis.
    antichain: staircase antichain (x ascending, y descending) with a
        shuffled z column; independent for every z choice.
    chain: the diagonal (i, i, i), a single dominance chain.
    grid: the first n cells of the smallest cubic lattice, symbolically
        perturbed into general position (deterministic).
    tight: the diagonal staircase (i, -i, -i), i = 1..n, the witness family
        on which 2n+1 covering octants are necessary.
    """
    kind = _ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = random.Random(seed)

    if kind == "random3d":
        space = range(10 * max(n, 1))
        cols = [rng.sample(space, n) for _ in range(3)]
        return PointSet(zip(*cols)) if n else PointSet()
    if kind == "antichain":
        space = range(10 * max(n, 1))
        xs = sorted(rng.sample(space, n))
        ys = sorted(rng.sample(space, n), reverse=True)
        zs = rng.sample(space, n)
        return PointSet(zip(xs, ys, zs)) if n else PointSet()
    if kind == "chain":
        return PointSet((i, i, i) for i in range(n))
    if kind == "grid":
        side = max(1, math.ceil(n ** (1 / 3)))
        while side ** 3 < n:
            side += 1
        cells = itertools.islice(itertools.product(range(side), repeat=3), n)
        return enforce_general_position(PointSet(cells), policy="perturb")
    return PointSet((i, -i, -i) for i in range(1, n + 1))
