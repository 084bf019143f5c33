"""Confusion matrices, per-class precision/recall/F1, macro-F1 and baselines."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from .corpus import LabeledCorpus, ValidationError


class MetricsError(ValueError):
    pass


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are gold labels, columns are predictions."""

    labels: Tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        k = len(self.labels)
        if counts.shape != (k, k):
            raise MetricsError(f"matrix shape {counts.shape} does not match {k} labels")
        if (counts < 0).any():
            raise MetricsError("negative counts")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def support(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def predicted(self) -> np.ndarray:
        return self.counts.sum(axis=0)


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvalReport:
    matrix: ConfusionMatrix
    per_class: Dict[str, ClassScores]
    macro_f1: float
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    accuracy: float

    def to_dict(self) -> dict:
        return {
            "labels": list(self.matrix.labels),
            "confusion_matrix": self.matrix.counts.tolist(),
            "per_class": {k: vars(v) | {"support": int(v.support)} for k, v in self.per_class.items()},
            "macro_f1": self.macro_f1,
            "weighted_precision": self.weighted_precision,
            "weighted_recall": self.weighted_recall,
            "weighted_f1": self.weighted_f1,
            "accuracy": self.accuracy,
            "total": self.matrix.total,
        }

    def write_json(self, path: Union[str, Path], **extra) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict() | extra, fh, indent=2)

    def render(self, title: str = "") -> str:
        return render_report(self, title)


def confusion_matrix(gold: Sequence[str], pred: Sequence[str], labels: Sequence[str]) -> ConfusionMatrix:
    if len(gold) != len(pred):
        raise MetricsError(f"{len(gold)} gold labels but {len(pred)} predictions")
    if not gold:
        raise MetricsError("nothing to evaluate")
    lookup = {lab: i for i, lab in enumerate(labels)}
    unknown = sorted({v for v in list(gold) + list(pred) if v not in lookup})
    if unknown:
        raise MetricsError(f"labels outside the declared set: {', '.join(unknown)}")
    counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
    np.add.at(counts, ([lookup[g] for g in gold], [lookup[p] for p in pred]), 1)
    return ConfusionMatrix(tuple(labels), counts)


def _safe_div(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.zeros(len(num), dtype=np.float64)
    nz = den > 0
    out[nz] = num[nz] / den[nz]
    return out


def evaluate(matrix: ConfusionMatrix) -> EvalReport:
    total = matrix.total
    if total <= 0:
        raise MetricsError("empty confusion matrix")
    diag = np.diag(matrix.counts).astype(np.float64)
    support = matrix.support
    precision = _safe_div(diag, matrix.predicted.astype(np.float64))
    recall = _safe_div(diag, support.astype(np.float64))
    f1 = _safe_div(2 * precision * recall, precision + recall)
    w = support / total
    per_class = {lab: ClassScores(float(precision[i]), float(recall[i]), float(f1[i]), int(support[i]))
                 for i, lab in enumerate(matrix.labels)}
    return EvalReport(matrix, per_class, float(f1.mean()), float(w @ precision),
                      float(w @ recall), float(w @ f1), float(diag.sum() / total))


def evaluate_labels(gold: Sequence[str], pred: Sequence[str], labels: Sequence[str]) -> EvalReport:
    return evaluate(confusion_matrix(gold, pred, labels))


def majority_label(labels: Sequence[str], order: Sequence[str]) -> str:
    counts = Counter(labels)
    if not counts:
        raise ValidationError("majority of an empty label list")
    best = max(counts.values())
    return next(lab for lab in order if counts.get(lab, 0) == best)


def majority_baseline(train: LabeledCorpus, test: LabeledCorpus) -> List[str]:
    if train.task != test.task:
        raise ValidationError(f"train task {train.task} != test task {test.task}")
    if not len(train):
        raise ValidationError("empty training corpus")
    label = majority_label(train.labels, sorted(train.label_set))
    return [label] * len(test)


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return s[1:] if s.startswith("0") else s


def render_report(report: EvalReport, title: str = "") -> str:
    """Plain-text confusion matrix with P/R/F1 columns, with row and column totals."""
    m = report.matrix
    labels = m.labels
    width = max(5, max(len(lab) for lab in labels) + 1)
    head = " " * width + "".join(f"{lab:>{width}}" for lab in labels)
    head += f"{'':>{width}} |{'P':>5}{'R':>5}{'F1':>5}"
    lines = [head, "-" * len(head)]
    for i, lab in enumerate(labels):
        s = report.per_class[lab]
        row = f"{lab:<{width}}" + "".join(f"{c:>{width}d}" for c in m.counts[i])
        row += f"{int(m.support[i]):>{width}d} |{_fmt(s.precision):>5}{_fmt(s.recall):>5}{_fmt(s.f1):>5}"
        lines.append(row)
    row = " " * width + "".join(f"{int(c):>{width}d}" for c in m.predicted)
    row += f"{m.total:>{width}d} |{_fmt(report.weighted_precision):>5}"
    row += f"{_fmt(report.weighted_recall):>5}{_fmt(report.weighted_f1):>5}"
    lines.append(row)
    lines.append("")
    lines.append(f"macro-F1 {_fmt(report.macro_f1)}   accuracy {_fmt(report.accuracy)}")
    if title:
        lines.insert(0, title)
    return "\n".join(lines)
