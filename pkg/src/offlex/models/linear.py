"""L2-regularized logistic regression and squared-hinge linear SVM.

Both minimize ``sum_i loss(t_i * (w.x_i + b)) + ||w||^2 / (2C)`` with the
bias left unpenalized, one-vs-rest over classes. A two-class problem fits a
single weight vector pointing at the second class.
"""
from __future__ import annotations

from typing import Callable, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.optimize import minimize
from scipy.special import expit

from .base import ClassifierModel, Learner, ModelError, TrainConfig, check_xy, encode_labels

Objective = Callable[[np.ndarray, sp.csr_matrix, np.ndarray, float], Tuple[float, np.ndarray]]


def _split(theta: np.ndarray) -> Tuple[np.ndarray, float]:
    return theta[:-1], theta[-1]


def logistic_objective(theta: np.ndarray, X: sp.csr_matrix, t: np.ndarray, c: float):
    """Regularized negative log-likelihood and its gradient; ``t`` in {-1, +1}."""
    w, b = _split(theta)
    margin = t * (X @ w + b)
    f = np.logaddexp(0.0, -margin).sum() + w @ w / (2.0 * c)
    gz = -t * expit(-margin)
    grad = np.empty_like(theta)
    grad[:-1] = X.T @ gz + w / c
    grad[-1] = gz.sum()
    return f, grad


def squared_hinge_objective(theta: np.ndarray, X: sp.csr_matrix, t: np.ndarray, c: float):
    w, b = _split(theta)
    slack = np.maximum(0.0, 1.0 - t * (X @ w + b))
    f = slack @ slack + w @ w / (2.0 * c)
    gz = -2.0 * t * slack
    grad = np.empty_like(theta)
    grad[:-1] = X.T @ gz + w / c
    grad[-1] = gz.sum()
    return f, grad


def _fit_binary(objective: Objective, X: sp.csr_matrix, t: np.ndarray, cfg: TrainConfig):
    theta0 = np.zeros(X.shape[1] + 1)
    res = minimize(objective, theta0, args=(X, t, cfg.regularization_c), jac=True,
                   method="L-BFGS-B",
                   options={"maxiter": cfg.max_iterations, "gtol": cfg.tolerance / np.sqrt(X.shape[1] + 1.0),
                            "ftol": 1e-15, "maxcor": 20})
    theta = res.x
    # L-BFGS-B tests the inf-norm; the contract is on the Euclidean norm
    gnorm = float(np.linalg.norm(objective(theta, X, t, cfg.regularization_c)[1]))
    return theta, gnorm, int(res.nit)


def _train_linear(kind: Learner, objective: Objective, X, y: Sequence[str], cfg: TrainConfig):
    X = check_xy(X, y, min_rows=2)
    classes, yi = encode_labels(y)
    if len(classes) < 2:
        raise ModelError("linear models need at least two distinct labels")
    targets = [1] if len(classes) == 2 else list(range(len(classes)))
    W = np.zeros((len(targets), X.shape[1]))
    b = np.zeros(len(targets))
    norms, iters = [], []
    for row, cls in enumerate(targets):
        t = np.where(yi == cls, 1.0, -1.0)
        theta, gnorm, nit = _fit_binary(objective, X, t, cfg)
        W[row], b[row] = _split(theta)
        norms.append(gnorm)
        iters.append(nit)
    info = {"gradient_norms": norms, "iterations": iters,
            "converged": all(g <= cfg.tolerance for g in norms)}
    return ClassifierModel(kind, classes, X.shape[1], {"weights": W, "bias": b}, info)


def train_logreg(X, y: Sequence[str], cfg: TrainConfig = TrainConfig()) -> ClassifierModel:
    return _train_linear(Learner.LOGREG, logistic_objective, X, y, cfg)


def train_linear_svm(X, y: Sequence[str], cfg: TrainConfig = TrainConfig(Learner.LINEAR_SVM)) -> ClassifierModel:
    return _train_linear(Learner.LINEAR_SVM, squared_hinge_objective, X, y, cfg)


def linear_scores(model: ClassifierModel, X: sp.csr_matrix) -> np.ndarray:
    W, b = model.params["weights"], model.params["bias"]
    s = np.asarray(X @ W.T) + b
    if len(model.classes) == 2 and W.shape[0] == 1:
        return np.hstack([-s, s])
    return s


def class_weight_vectors(model: ClassifierModel) -> np.ndarray:
    """Per-class directional weights, shape (n_classes, dimension)."""
    if model.kind not in (Learner.LOGREG, Learner.LINEAR_SVM):
        raise ModelError(f"{model.kind.value} has no linear weights")
    W = model.params["weights"]
    if len(model.classes) == 2 and W.shape[0] == 1:
        return np.vstack([-W[0], W[0]])
    return W
