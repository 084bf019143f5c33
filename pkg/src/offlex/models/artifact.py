"""Self-describing JSON model files.

A file bundles the format version, training config, tokenizer, vocabulary,
optional idf weights and learner parameters. Floats are written with
``repr`` precision, so a save/load cycle is lossless.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..vectorize import Featurizer, IdfWeights, Vocabulary
from .base import ClassifierModel, Learner, ModelError, TrainConfig

FORMAT_NAME = "offlex-model"
FORMAT_VERSION = 1

_LIST_KEYS = {
    Learner.LOGREG: {"weights": np.float64, "bias": np.float64},
    Learner.LINEAR_SVM: {"weights": np.float64, "bias": np.float64},
    Learner.NAIVE_BAYES: {"log_prior": np.float64, "log_prob": np.float64},
}
_TREE_KEYS = {"feature": np.int64, "threshold": np.float64, "left": np.int64,
              "right": np.int64, "value": np.int64, "counts": np.int64}


def _tree_to_json(t):
    return {k: np.asarray(t[k]).tolist() for k in _TREE_KEYS}


def _tree_from_json(t, k):
    out = {key: np.asarray(t[key], dtype=dt) for key, dt in _TREE_KEYS.items()}
    out["counts"] = out["counts"].reshape(-1, k)
    return out


def params_to_json(kind: Learner, params: Dict[str, Any]) -> Dict[str, Any]:
    if kind is Learner.DECISION_TREE:
        return _tree_to_json(params)
    if kind is Learner.RANDOM_FOREST:
        return {"trees": [_tree_to_json(t) for t in params["trees"]]}
    return {k: np.asarray(params[k]).tolist() for k in _LIST_KEYS[kind]}


def params_from_json(kind: Learner, d: Dict[str, Any], n_classes: int) -> Dict[str, Any]:
    if kind is Learner.DECISION_TREE:
        return _tree_from_json(d, n_classes)
    if kind is Learner.RANDOM_FOREST:
        return {"trees": [_tree_from_json(t, n_classes) for t in d["trees"]]}
    return {k: np.asarray(d[k], dtype=dt) for k, dt in _LIST_KEYS[kind].items()}


def model_to_dict(model: ClassifierModel) -> dict:
    return {"kind": model.kind.value, "classes": list(model.classes), "dimension": model.dimension,
            "params": params_to_json(model.kind, model.params), "info": model.info}


def model_from_dict(d: dict) -> ClassifierModel:
    kind = Learner(d["kind"])
    classes = tuple(d["classes"])
    return ClassifierModel(kind, classes, d["dimension"],
                           params_from_json(kind, d["params"], len(classes)), d.get("info", {}))


@dataclass
class ModelBundle:
    """Everything needed to predict from raw text.

    Exactly one of ``model`` (with ``featurizer``) or ``blacklist`` is set.
    """

    task: str
    preset: Optional[str] = None
    config: Optional[TrainConfig] = None
    featurizer: Optional[Featurizer] = None
    model: Optional[ClassifierModel] = None
    blacklist: Any = None
    meta: Dict[str, Any] = field(default_factory=dict)

    def predict(self, texts: List[str]) -> List[str]:
        if self.blacklist is not None:
            from ..blacklist import classify_many
            return classify_many(self.blacklist, texts)
        return self.model.predict_many(self.featurizer.transform(texts))

    def to_dict(self) -> dict:
        doc: Dict[str, Any] = {"format": FORMAT_NAME, "version": FORMAT_VERSION,
                               "task": self.task, "preset": self.preset, "meta": self.meta}
        if self.blacklist is not None:
            doc["blacklist"] = {"terms": sorted(self.blacklist.terms),
                                "provenance": {t: list(s) for t, s in sorted(self.blacklist.provenance.items())},
                                "min_lists": self.blacklist.min_lists}
            return doc
        doc["config"] = self.config.to_dict() if self.config else None
        doc["tokenizer"] = self.featurizer.vocab.tokenizer.to_dict()
        doc["vocabulary"] = self.featurizer.vocab.to_dict()
        doc["idf"] = self.featurizer.idf.to_dict() if self.featurizer.idf is not None else None
        doc["model"] = model_to_dict(self.model)
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "ModelBundle":
        if doc.get("format") != FORMAT_NAME:
            raise ModelError("not a model file")
        if doc.get("version") != FORMAT_VERSION:
            raise ModelError(f"unsupported model format version {doc.get('version')}")
        if "blacklist" in doc:
            from ..blacklist import BlackList
            b = doc["blacklist"]
            bl = BlackList(frozenset(b["terms"]), {t: tuple(s) for t, s in b["provenance"].items()},
                           b.get("min_lists", 1))
            return cls(doc["task"], doc.get("preset"), blacklist=bl, meta=doc.get("meta", {}))
        vocab = Vocabulary.from_dict(doc["vocabulary"])
        idf = IdfWeights.from_dict(doc["idf"]) if doc.get("idf") else None
        cfg = TrainConfig.from_dict(doc["config"]) if doc.get("config") else None
        return cls(doc["task"], doc.get("preset"), cfg, Featurizer(vocab, idf),
                   model_from_dict(doc["model"]), meta=doc.get("meta", {}))


def save_bundle(bundle: ModelBundle, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(bundle.to_dict(), fh)


def load_bundle(path: Union[str, Path]) -> ModelBundle:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelError(f"{path}: not valid JSON ({exc})") from exc
    return ModelBundle.from_dict(doc)
