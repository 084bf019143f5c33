from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from offlex.models import ModelError, TrainConfig, predict, train_naive_bayes
from offlex.models.base import Learner
from offlex.tokenizers import TokenizerSpec
from offlex.vectorize import Featurizer, SparseVector


def bayes_oracle(docs, labels, query, alpha=1):
    """Brute-force multinomial Bayes over token lists with exact fractions."""
    vocab = sorted({t for d in docs for t in d})
    classes = sorted(set(labels))
    best, best_score = None, None
    for c in classes:
        in_c = [d for d, lab in zip(docs, labels) if lab == c]
        counts = Counter(t for d in in_c for t in d)
        total = sum(counts.values())
        score = Fraction(len(in_c), len(docs))
        for tok in query:
            if tok in vocab:
                score *= Fraction(counts[tok] + alpha, total + alpha * len(vocab))
        if best_score is None or score > best_score:
            best, best_score = c, score
    return best


def test_two_doc_probabilities():
    X = [SparseVector(((0, 2.0),), 2), SparseVector(((1, 2.0),), 2)]
    m = train_naive_bayes(X, ["P", "Q"])
    probs = np.exp(m.params["log_prob"])
    assert probs[0] == pytest.approx([0.75, 0.25], abs=1e-15)
    assert predict(m, SparseVector(((0, 1.0),), 2)) == "P"
    assert predict(m, SparseVector(((1, 1.0),), 2)) == "Q"


def test_four_document_oracle():
    docs = ["aa aa bb cc", "aa dd", "bb bb cc ee", "cc ee ee"]
    labels = ["IND", "IND", "GRP", "GRP"]
    queries = ["aa", "bb", "cc", "ee", "aa bb", "cc cc aa", "dd ee", "zz", "aa ee ee", ""]
    feat = Featurizer.fit(docs, TokenizerSpec.word_unigram())
    m = train_naive_bayes(feat.transform(docs), labels)
    toks = [d.split() for d in docs]
    for q in queries:
        assert m.predict_many(feat.transform([q]))[0] == bayes_oracle(toks, labels, q.split())


def test_probabilities_normalized():
    rng = np.random.default_rng(4)
    X = rng.integers(0, 4, size=(25, 9)).astype(float)
    y = list(rng.choice(["GRP", "IND", "OTH"], size=25))
    m = train_naive_bayes(X, y, TrainConfig(Learner.NAIVE_BAYES, smoothing_alpha=0.5))
    sums = np.exp(m.params["log_prob"]).sum(axis=1)
    assert np.all(np.abs(sums - 1.0) <= 1e-9)
    assert np.exp(m.params["log_prior"]).sum() == pytest.approx(1.0, abs=1e-12)


def test_symmetric_classes_tie_to_first():
    X = np.array([[1.0, 1.0], [1.0, 1.0]])
    m = train_naive_bayes(X, ["Q", "P"])
    assert m.predict_many(np.array([[3.0, 0.0]])) == ["P"]


def test_empty_document_gets_prior_argmax():
    X = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 2.0]])
    m = train_naive_bayes(X, ["A", "B", "B"])
    assert predict(m, SparseVector((), 2)) == "B"


def test_negative_features_rejected():
    with pytest.raises(ModelError):
        train_naive_bayes(np.array([[-1.0, 0.0], [1.0, 0.0]]), ["A", "B"])
