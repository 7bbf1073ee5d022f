"""scikit-learn style wrappers over the recognisers and transforms.

Inputs are sequences of :class:`~digitopo.graph.Graph` (or of implicit
surfaces, for :class:`Digitizer`), not numeric arrays, so these estimators
fit into pipelines only where every step speaks graphs.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classify import is_n_sphere
from .dtransform import compress
from .geometry.digitize import SHAPES, ImplicitSurface, digitize
from .graph import Graph
from .homotopy import reduce
from .invariants import betti_mod2, euler_characteristic


def _graphs(X: Iterable[Graph]) -> list[Graph]:
    out = list(X)
    for g in out:
        if not isinstance(g, Graph):
            raise TypeError(f"expected Graph instances, got {type(g).__name__}")
    return out


class InvariantFeatures(TransformerMixin, BaseEstimator):
    """Map graphs to ``[chi, b_0, ..., b_max_dim, n_vertices]`` rows.

    Parameters
    ----------
    max_dim : int, default=2
        Highest Betti number reported.
    reduce_first : bool, default=False
        Reduce each graph homotopically before computing invariants.  The
        invariants do not change; only the cost does.
    """

    def __init__(self, max_dim: int = 2, reduce_first: bool = False):
        self.max_dim = max_dim
        self.reduce_first = reduce_first

    def fit(self, X, y=None):
        if self.max_dim < 0:
            raise ValueError("max_dim must be non-negative")
        _graphs(X)
        self.n_features_out_ = self.max_dim + 3
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_out_")
        rows = []
        for g in _graphs(X):
            h = reduce(g)[0] if self.reduce_first else g
            betti = betti_mod2(h, self.max_dim)
            rows.append([euler_characteristic(h), *betti, g.n_vertices])
        return np.asarray(rows, dtype=np.int64).reshape(len(rows), self.n_features_out_)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "n_features_out_")
        return np.asarray(["chi", *(f"b{k}" for k in range(self.max_dim + 1)), "n_vertices"], dtype=object)


class Compressor(TransformerMixin, BaseEstimator):
    """Compress digital n-manifolds by disk merges.

    Parameters
    ----------
    n : int
        Manifold dimension.
    budget : int or None
        Contractibility search budget.
    seed : int, default=0
        Seed for the randomized disk search.
    """

    def __init__(self, n: int = 2, budget: int | None = None, seed: int = 0):
        self.n = n
        self.budget = budget
        self.seed = seed

    def fit(self, X, y=None):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        _graphs(X)
        self.fitted_ = True
        return self

    def transform(self, X) -> list[Graph]:
        check_is_fitted(self, "fitted_")
        out = []
        self.traces_ = []
        for g in _graphs(X):
            small, trace = compress(g, self.n, self.budget, self.seed)
            out.append(small)
            self.traces_.append(trace)
        return out


class SphereRecognizer(BaseEstimator):
    """Predict ``"yes"``, ``"no"`` or ``"unknown"`` for digital n-sphere membership."""

    def __init__(self, n: int = 2, budget: int | None = None, algorithm: str = "both", seed: int = 0):
        self.n = n
        self.budget = budget
        self.algorithm = algorithm
        self.seed = seed

    def fit(self, X=None, y=None):
        if self.algorithm not in ("A", "B", "both"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        self.classes_ = np.asarray(["no", "unknown", "yes"], dtype=object)
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "classes_")
        out = [
            is_n_sphere(g, self.n, self.budget, self.algorithm, self.seed).outcome.value
            for g in _graphs(X)
        ]
        return np.asarray(out, dtype=object)


class Digitizer(TransformerMixin, BaseEstimator):
    """Turn implicit surfaces (or built-in shape names) into nerve graphs.

    Parameters
    ----------
    h : float or str, default="0.25"
        Grid step; strings are read exactly.
    samples : int, default=3
        Samples per cube axis for the sign test.
    reduce : bool, default=False
        Return the homotopically reduced nerve.
    """

    def __init__(self, h: float | str = "0.25", samples: int = 3, reduce: bool = False):
        self.h = h
        self.samples = samples
        self.reduce = reduce

    def fit(self, X=None, y=None):
        if self.samples < 2:
            raise ValueError("samples must be at least 2")
        self.fitted_ = True
        return self

    @staticmethod
    def _surface(s: ImplicitSurface | str) -> ImplicitSurface:
        if isinstance(s, ImplicitSurface):
            return s
        if isinstance(s, str) and s in SHAPES:
            return SHAPES[s]()
        raise TypeError(f"expected an ImplicitSurface or one of {sorted(SHAPES)}")

    def transform(self, X: Sequence[ImplicitSurface | str]) -> list[Graph]:
        check_is_fitted(self, "fitted_")
        out = []
        for s in X:
            _, g = digitize(self._surface(s), self.h, self.samples)
            out.append(reduce(g)[0] if self.reduce else g)
        return out
