from .base import (LINEAR_KINDS, ClassifierModel, Learner, ModelError, TrainConfig,
                   decision_values, predict, predict_many, train)
from .bayes import train_naive_bayes
from .forest import train_random_forest
from .linear import (class_weight_vectors, logistic_objective, squared_hinge_objective,
                     train_linear_svm, train_logreg)
from .tree import gini, train_decision_tree
from .artifact import ModelBundle, load_bundle, save_bundle

__all__ = [
    "LINEAR_KINDS", "ClassifierModel", "Learner", "ModelError", "TrainConfig",
    "decision_values", "predict", "predict_many", "train",
    "train_logreg", "train_linear_svm", "train_naive_bayes", "train_decision_tree",
    "train_random_forest", "logistic_objective", "squared_hinge_objective",
    "class_weight_vectors", "gini", "ModelBundle", "load_bundle", "save_bundle",
]
