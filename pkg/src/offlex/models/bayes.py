"""Multinomial naive Bayes with additive smoothing."""
from __future__ import annotations

from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .base import ClassifierModel, Learner, ModelError, TrainConfig, check_xy, encode_labels


def train_naive_bayes(X, y: Sequence[str], cfg: TrainConfig = TrainConfig(Learner.NAIVE_BAYES)) -> ClassifierModel:
    X = check_xy(X, y)
    if X.nnz and X.data.min() < 0:
        raise ModelError("naive Bayes needs non-negative feature values")
    classes, yi = encode_labels(y)
    k, v = len(classes), X.shape[1]
    onehot = sp.csr_matrix((np.ones(len(yi)), (yi, np.arange(len(yi)))), shape=(k, len(yi)))
    term_counts = np.asarray((onehot @ X).todense())
    alpha = cfg.smoothing_alpha
    smoothed = term_counts + alpha
    log_prob = np.log(smoothed) - np.log(smoothed.sum(axis=1, keepdims=True))
    class_counts = np.bincount(yi, minlength=k)
    log_prior = np.log(class_counts / class_counts.sum())
    return ClassifierModel(Learner.NAIVE_BAYES, classes, v,
                           {"log_prior": log_prior, "log_prob": log_prob})


def joint_log_likelihood(model: ClassifierModel, X: sp.csr_matrix) -> np.ndarray:
    return np.asarray(X @ model.params["log_prob"].T) + model.params["log_prior"]
