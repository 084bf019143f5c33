"""Bagged ensemble of Gini trees with per-split feature subsampling."""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .base import ClassifierModel, Learner, TrainConfig, check_xy, encode_labels
from .tree import build_tree


def train_random_forest(X, y: Sequence[str], cfg: TrainConfig = TrainConfig(Learner.RANDOM_FOREST)) -> ClassifierModel:
    """Each tree sees a bootstrap sample and, at every split, a uniformly random
    subset of ``max_features`` among the columns that are non-constant in that node.
    """
    X = check_xy(X, y)
    classes, yi = encode_labels(y)
    n, d = X.shape
    m = cfg.max_features if cfg.max_features is not None else max(1, math.ceil(math.sqrt(d)))
    trees = []
    for child in np.random.SeedSequence(cfg.seed).spawn(cfg.n_trees):
        rng = np.random.default_rng(child)
        idx = rng.integers(0, n, size=n) if cfg.bootstrap else np.arange(n)

        def select(candidates, rng=rng):
            if len(candidates) <= m:
                return candidates
            return rng.choice(candidates, size=m, replace=False)

        trees.append(build_tree(X[idx], yi[idx], len(classes), select))
    return ClassifierModel(Learner.RANDOM_FOREST, classes, d, {"trees": trees},
                           {"max_features": m})
