import numpy as np
import pytest

from offlex.analyze import render_features, shared_features, top_weighted_features, FeatureReport
from offlex.models import ModelError, train_decision_tree, train_logreg
from offlex.models.base import ClassifierModel, Learner
from offlex.tokenizers import TokenizerSpec
from offlex.vectorize import Featurizer, Vocabulary

VOCAB = Vocabulary.from_terms(["aa", "bb", "cc", "dd", "ee"], TokenizerSpec.word_unigram())


def binary_model(w):
    return ClassifierModel(Learner.LOGREG, ("NOT", "OFF"), len(w),
                           {"weights": np.array([w], dtype=float), "bias": np.zeros(1)})


def test_binary_directions_and_ties():
    m = binary_model([0.5, -2.0, 0.5, 3.0, 0.0])
    r = top_weighted_features(m, VOCAB, 3)
    assert r.terms("OFF") == ["dd", "aa", "cc"]
    assert r.terms("NOT") == ["bb", "ee", "aa"]
    assert r.per_class["NOT"][0] == ("bb", 2.0)


def test_reverse_consistency():
    rng = np.random.default_rng(0)
    m = binary_model(rng.normal(size=5))
    r = top_weighted_features(m, VOCAB, 2)
    off_min = min(w for _, w in r.per_class["OFF"])
    not_max = max(-w for _, w in r.per_class["NOT"])
    assert off_min >= not_max


def test_k_truncated_and_zero():
    m = binary_model([1, 2, 3, 4, 5])
    assert len(top_weighted_features(m, VOCAB, 99).terms("OFF")) == 5
    assert top_weighted_features(m, VOCAB, 0).terms("OFF") == []


def test_errors():
    m = binary_model([1, 2, 3, 4, 5])
    tree = train_decision_tree(np.eye(2), ["A", "B"])
    with pytest.raises(ModelError):
        top_weighted_features(tree, VOCAB, 3)
    with pytest.raises(ModelError):
        top_weighted_features(binary_model([1, 2]), VOCAB, 3)
    with pytest.raises(ValueError):
        top_weighted_features(m, VOCAB, -1)
    with pytest.raises(KeyError):
        shared_features(top_weighted_features(m, VOCAB, 2), FeatureReport({"NOT": []}), "OFF")


def test_shared_features():
    a = FeatureReport({"OFF": [("x", 1.0), ("y", 0.5)]})
    b = FeatureReport({"OFF": [("z", 1.0), ("w", 0.5)]})
    assert shared_features(a, b, "OFF") == set()
    assert shared_features(a, a, "OFF") == {"x", "y"}


def test_report_does_not_mutate_model():
    texts = ["you idiot", "nice day", "stupid idiot", "lovely day"]
    feat = Featurizer.fit(texts, TokenizerSpec.word_unigram())
    m = train_logreg(feat.transform(texts), ["OFF", "NOT", "OFF", "NOT"])
    before = m.fingerprint()
    r = top_weighted_features(m, feat.vocab, 2)
    assert m.fingerprint() == before
    assert "idiot" in r.terms("OFF") and "day" in r.terms("NOT")
    text = render_features(r, upper="OFF")
    assert "IDIOT" in text and text.splitlines()[0].split() == ["NOT", "OFF"]
    assert r.to_dict()["OFF"][0]["term"] == r.terms("OFF")[0]
