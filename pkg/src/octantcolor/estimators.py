"""scikit-learn style front ends.

`OctantColorer` behaves like a clustering estimator: `fit(X)` on an
(n, 3) array-like stores `labels_` (colors 1..k) plus the certified
thresholds. `DualPointLift` is a stateless transformer mapping planar
shape families to their dual 3D point sets, so the two compose in a
Pipeline; `DualFamilyColorer` packages that composition.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .coloring import BaseColorerConfig, color_point_set
from .reductions import color_dual_family, dualize_octants, family_to_octants
from .validation import check_family, check_points

__all__ = ["OctantColorer", "DualPointLift", "DualFamilyColorer"]


class OctantColorer(BaseEstimator):
    """k-color 3D points so deep octants contain every color.

    Parameters mirror BaseColorerConfig; `verify` additionally runs the
    exact verifier and stores its threshold. Coordinates are handled
    exactly (ints stay ints, floats convert to their exact rational), so
    thresholds are certificates rather than estimates.

    Attributes after fit: `labels_` (colors 1..k), `coloring_`,
    `guaranteed_threshold_`, `verified_threshold_` (None when verify=False),
    `base_c_` (largest 2-coloring constant achieved by the base searches).
    """

    def __init__(
        self,
        k=2,
        target_c=12,
        strategy="local",
        max_restarts=40,
        seed=0,
        verify=True,
        on_degenerate="perturb",
    ):
        self.k = k
        self.target_c = target_c
        self.strategy = strategy
        self.max_restarts = max_restarts
        self.seed = seed
        self.verify = verify
        self.on_degenerate = on_degenerate

    def _config(self) -> BaseColorerConfig:
        return BaseColorerConfig(
            strategy=self.strategy,
            target_c=self.target_c,
            max_restarts=self.max_restarts,
            seed=self.seed,
        )

    def fit(self, X, y=None):
        ps = check_points(X)
        result = color_point_set(
            ps, self.k, self._config(), verify=self.verify, on_degenerate=self.on_degenerate
        )
        self.points_ = ps
        self.result_ = result
        self.coloring_ = result.coloring
        self.labels_ = np.asarray(result.coloring.colors, dtype=np.int64)
        self.guaranteed_threshold_ = result.guaranteed_threshold
        self.verified_threshold_ = result.verified_threshold
        self.base_c_ = result.base_c_max
        self.n_features_in_ = 3
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_


class DualPointLift(BaseEstimator, TransformerMixin):
    """Map a planar family (triangles, rects, or timed intervals) to the
    dual 3D point set whose octant depths equal planar coverage depths."""

    def __init__(self, family="triangles"):
        self.family = family

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        shapes = check_family(X, self.family)
        return [tuple(p) for p in dualize_octants(family_to_octants(shapes))]


class DualFamilyColorer(BaseEstimator):
    """Color a shape family so deeply covered planar points see all colors.

    fit(X) accepts rows of family parameters (see `check_family`) or
    ready-made shape objects; `labels_[i]` is the color of member i.
    """

    def __init__(
        self,
        family="triangles",
        k=2,
        target_c=12,
        strategy="local",
        max_restarts=40,
        seed=0,
        verify=True,
    ):
        self.family = family
        self.k = k
        self.target_c = target_c
        self.strategy = strategy
        self.max_restarts = max_restarts
        self.seed = seed
        self.verify = verify

    def fit(self, X, y=None):
        shapes = check_family(X, self.family)
        cfg = BaseColorerConfig(
            strategy=self.strategy,
            target_c=self.target_c,
            max_restarts=self.max_restarts,
            seed=self.seed,
        )
        result = color_dual_family(shapes, self.k, cfg, verify=self.verify)
        self.shapes_ = shapes
        self.result_ = result
        self.labels_ = np.asarray(result.coloring.colors, dtype=np.int64)
        self.guaranteed_threshold_ = result.guaranteed_threshold
        self.verified_threshold_ = result.verified_threshold
        self.dual_points_ = result.dual_points
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_
