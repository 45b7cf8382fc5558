"""Input validation helpers for the estimator layer.

Array-like inputs from the wider ecosystem (lists, numpy arrays, dataframe
values) are converted to exact coordinates: integer dtypes become Python
ints and floats become the exact rational each float value denotes, so no
precision is invented or lost on the way in.
"""

from __future__ import annotations

import math
from fractions import Fraction
import numpy as np

from .geometry import PointSet
from .reductions import BottomlessRect, NormalizedTriangle, TimedInterval

__all__ = ["as_exact", "check_points", "check_family", "FAMILY_KINDS"]

FAMILY_KINDS = ("triangles", "rects", "intervals")


def as_exact(value):
    """Exact coordinate from a scalar; floats convert via their true value."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not math.isfinite(v):
            raise ValueError(f"non-finite coordinate {v!r}")
        frac = Fraction(v)
        return int(frac) if frac.denominator == 1 else frac
    raise TypeError(f"cannot convert {value!r} to an exact coordinate")


def _rows(X, width: int, what: str):
    if isinstance(X, np.ndarray):
        if X.ndim != 2 or X.shape[1] != width:
            raise ValueError(f"{what} expects shape (n, {width}), got {X.shape}")
        return [tuple(as_exact(v) for v in row) for row in X]
    rows = []
    for i, row in enumerate(X):
        row = tuple(row)
        if len(row) != width:
            raise ValueError(f"{what} row {i} has {len(row)} values, expected {width}")
        rows.append(tuple(as_exact(v) for v in row))
    return rows


def check_points(X) -> PointSet:
    """Coerce array-like (n, 3) input into an exact PointSet."""
    if isinstance(X, PointSet):
        return X
    return PointSet(_rows(X, 3, "point input"))


def check_family(X, family: str) -> list:
    """Coerce rows into shape objects for the named family.

    triangles: rows (a, b, c); rects: rows (left, right, top);
    intervals: rows (left, right, insert_time). Already-built shape
    objects pass through unchanged.
    """
    if family not in FAMILY_KINDS:
        raise ValueError(f"family must be one of {FAMILY_KINDS}, got {family!r}")
    ctor = {
        "triangles": NormalizedTriangle,
        "rects": BottomlessRect,
        "intervals": TimedInterval,
    }[family]
    if not isinstance(X, np.ndarray):
        X = list(X)
        if X and isinstance(X[0], (NormalizedTriangle, BottomlessRect, TimedInterval)):
            return X
    return [ctor(*row) for row in _rows(X, 3, f"{family} input")]
