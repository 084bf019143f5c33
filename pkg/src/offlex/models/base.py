"""Shared model types and the uniform predict contract."""
from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from ..vectorize import SparseVector, to_csr


class ModelError(ValueError):
    pass


class Learner(str, enum.Enum):
    LOGREG = "LOGREG"
    LINEAR_SVM = "LINEAR_SVM"
    NAIVE_BAYES = "NAIVE_BAYES"
    DECISION_TREE = "DECISION_TREE"
    RANDOM_FOREST = "RANDOM_FOREST"


LINEAR_KINDS = (Learner.LOGREG, Learner.LINEAR_SVM)


@dataclass(frozen=True)
class TrainConfig:
    learner: Learner = Learner.LOGREG
    regularization_c: float = 1.0
    smoothing_alpha: float = 1.0
    n_trees: int = 10
    seed: int = 42
    max_iterations: int = 1000
    tolerance: float = 1e-4
    # forest only; None means ceil(sqrt(n_features))
    max_features: Optional[int] = None
    bootstrap: bool = True

    def __post_init__(self):
        object.__setattr__(self, "learner", Learner(self.learner))
        for name in ("regularization_c", "smoothing_alpha", "tolerance"):
            if not getattr(self, name) > 0:
                raise ModelError(f"{name} must be positive")
        for name in ("n_trees", "max_iterations"):
            if getattr(self, name) < 1:
                raise ModelError(f"{name} must be >= 1")
        if self.max_features is not None and self.max_features < 1:
            raise ModelError("max_features must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ModelError("seed must fit in an unsigned 64-bit integer")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["learner"] = self.learner.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "TrainConfig":
        return cls(**d)


@dataclass
class ClassifierModel:
    """A trained model: ``params`` holds learner-specific numpy arrays."""

    kind: Learner
    classes: Tuple[str, ...]
    dimension: int
    params: Dict[str, Any]
    info: Dict[str, Any] = field(default_factory=dict)

    def predict(self, x: SparseVector) -> str:
        return predict(self, x)

    def predict_many(self, X) -> List[str]:
        return predict_many(self, X)

    def fingerprint(self) -> str:
        """Hash of every parameter; equal hashes mean bitwise-identical models."""
        from .artifact import params_to_json
        blob = json.dumps({"kind": self.kind.value, "classes": list(self.classes),
                           "dimension": self.dimension, "params": params_to_json(self.kind, self.params)},
                          sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()


def encode_labels(y: Sequence[str]) -> Tuple[Tuple[str, ...], np.ndarray]:
    """Lexicographic class order and per-instance class indices."""
    classes = tuple(sorted(set(y)))
    lookup = {c: i for i, c in enumerate(classes)}
    return classes, np.array([lookup[v] for v in y], dtype=np.int64)


def check_xy(X, y, min_rows: int = 1) -> sp.csr_matrix:
    X = to_csr(X)
    if X.shape[0] != len(y):
        raise ModelError(f"{X.shape[0]} feature rows but {len(y)} labels")
    if X.shape[0] < min_rows:
        raise ModelError(f"need at least {min_rows} training instances")
    if not np.all(np.isfinite(X.data)):
        raise ModelError("non-finite feature value")
    return X


def decision_values(model: ClassifierModel, X) -> np.ndarray:
    """Per-class scores, shape (n, n_classes). Trees and forests return vote counts."""
    X = to_csr(X)
    if X.shape[1] != model.dimension:
        raise ModelError(f"feature dimension {X.shape[1]} != model dimension {model.dimension}")
    if model.kind in LINEAR_KINDS:
        from .linear import linear_scores
        return linear_scores(model, X)
    if model.kind is Learner.NAIVE_BAYES:
        from .bayes import joint_log_likelihood
        return joint_log_likelihood(model, X)
    from .tree import tree_votes
    return tree_votes(model, X)


def predict_many(model: ClassifierModel, X) -> List[str]:
    scores = decision_values(model, X)
    # argmax returns the first maximum, i.e. the earliest class in declared order
    return [model.classes[i] for i in np.argmax(scores, axis=1)]


def predict(model: ClassifierModel, x: SparseVector) -> str:
    if x.dimension != model.dimension:
        raise ModelError(f"feature dimension {x.dimension} != model dimension {model.dimension}")
    return predict_many(model, [x])[0]


def train(X, y: Sequence[str], cfg: TrainConfig) -> ClassifierModel:
    """Dispatch to the learner selected by ``cfg.learner``."""
    from . import bayes, forest, linear, tree
    fn = {
        Learner.LOGREG: linear.train_logreg,
        Learner.LINEAR_SVM: linear.train_linear_svm,
        Learner.NAIVE_BAYES: bayes.train_naive_bayes,
        Learner.DECISION_TREE: tree.train_decision_tree,
        Learner.RANDOM_FOREST: forest.train_random_forest,
    }[cfg.learner]
    return fn(X, y, cfg)
