"""Top-weighted feature reports for linear models."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

import numpy as np

from .models import LINEAR_KINDS, ClassifierModel, ModelError, class_weight_vectors
from .vectorize import Vocabulary


@dataclass(frozen=True)
class FeatureReport:
    per_class: Dict[str, List[Tuple[str, float]]]

    def terms(self, label: str) -> List[str]:
        return [t for t, _ in self.per_class[label]]

    def to_dict(self) -> dict:
        return {lab: [{"term": t, "weight": w} for t, w in rows] for lab, rows in self.per_class.items()}


def top_weighted_features(model: ClassifierModel, vocab: Vocabulary, k: int = 30) -> FeatureReport:
    if model.kind not in LINEAR_KINDS:
        raise ModelError(f"feature weights are only defined for linear models, not {model.kind.value}")
    if k < 0:
        raise ValueError("k must be non-negative")
    if len(vocab) != model.dimension:
        raise ModelError(f"vocabulary size {len(vocab)} != model dimension {model.dimension}")
    W = class_weight_vectors(model)
    k = min(k, len(vocab))
    terms = np.asarray(vocab.terms, dtype=object)
    per_class = {}
    for i, label in enumerate(model.classes):
        w = W[i]
        # vocabulary is sorted, so a stable sort on -w breaks ties lexicographically
        order = np.argsort(-w, kind="stable")[:k]
        per_class[label] = [(str(terms[j]), float(w[j])) for j in order]
    return FeatureReport(per_class)


def shared_features(r1: FeatureReport, r2: FeatureReport, label: str) -> Set[str]:
    for r in (r1, r2):
        if label not in r.per_class:
            raise KeyError(f"class {label!r} missing from a feature report")
    return set(r1.terms(label)) & set(r2.terms(label))


def render_features(report: FeatureReport, upper: str = None) -> str:
    """Side-by-side columns, one per class; ``upper`` names the class printed in capitals."""
    labels = list(report.per_class)
    cols = []
    for lab in labels:
        terms = report.terms(lab)
        cols.append([t.upper() if lab == upper else t for t in terms])
    width = max([len(lab) for lab in labels] + [len(t) for c in cols for t in c] + [4]) + 2
    lines = ["".join(f"{lab:<{width}}" for lab in labels), "-" * (width * len(labels))]
    for i in range(max((len(c) for c in cols), default=0)):
        lines.append("".join(f"{(c[i] if i < len(c) else ''):<{width}}" for c in cols).rstrip())
    return "\n".join(lines)
