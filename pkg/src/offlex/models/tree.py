"""CART decision tree with Gini impurity over sparse features.

Split search is vectorized per node: the node's non-zero entries plus one
implicit-zero entry per column are sorted by (column, value) and swept with
cumulative class counts. Equal-quality candidates resolve to the lowest
column and then the lowest threshold, compared exactly in integers.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .base import ClassifierModel, Learner, TrainConfig, check_xy, encode_labels

LEAF = -1

FeatureSelector = Callable[[np.ndarray], np.ndarray]


def gini(counts: np.ndarray) -> float:
    n = counts.sum()
    if n == 0:
        return 0.0
    p = counts / n
    return float(1.0 - p @ p)


def _best_split(Xs: sp.csr_matrix, ys: np.ndarray, k: int, counts: np.ndarray,
                select: Optional[FeatureSelector]):
    """Best (column, threshold, left-mask) for a node, or None if every column is constant."""
    m = Xs.shape[0]
    csc = sp.csc_matrix(Xs)
    csc.eliminate_zeros()
    nnz_all = np.diff(csc.indptr)
    cols = np.flatnonzero(nnz_all)
    if len(cols) == 0:
        return None
    nnz = nnz_all[cols]
    start = csc.indptr[cols]
    data, rows = csc.data, csc.indices
    vmin = np.minimum.reduceat(data, start)
    vmax = np.maximum.reduceat(data, start)
    zero_n = m - nnz
    nonconst = (zero_n > 0) | (vmax > vmin)
    if not nonconst.any():
        return None
    if select is not None:
        keep_col = np.isin(cols, select(cols[nonconst]))
    else:
        keep_col = nonconst
    local = np.flatnonzero(keep_col)
    keep_entry = np.repeat(keep_col, nnz)
    v = data[keep_entry]
    r = rows[keep_entry]
    lc = np.repeat(local, nnz[local])

    # order by value only inside columns holding more than one distinct non-zero
    needs = np.repeat((vmax > vmin)[local], nnz[local])
    if needs.any():
        sub = np.flatnonzero(needs)
        perm = np.lexsort((v[sub], lc[sub]))
        order = np.arange(len(v))
        order[sub] = sub[perm]
        v, r, lc = v[order], r[order], lc[order]

    cls_nnz = np.bincount(lc * k + ys[r], minlength=len(cols) * k).reshape(len(cols), k)[local]
    E = np.zeros((len(v), k), dtype=np.int64)
    E[np.arange(len(v)), ys[r]] = 1
    has_zero = zero_n[local] > 0
    if has_zero.any():
        col_start = np.r_[0, np.cumsum(nnz[local])[:-1]]
        neg = np.add.reduceat((data < 0).astype(np.int64), start)[local]
        ins = (col_start + neg)[has_zero]
        v = np.insert(v, ins, 0.0)
        lc = np.insert(lc, ins, local[has_zero])
        E = np.insert(E, ins, counts[None, :] - cls_nnz[has_zero], axis=0)

    cum = np.cumsum(E, axis=0)
    starts = np.flatnonzero(np.r_[True, lc[1:] != lc[:-1]])
    group = np.repeat(np.arange(len(starts)), np.diff(np.r_[starts, len(lc)]))
    base = np.vstack([np.zeros((1, k), dtype=np.int64), cum[starts[1:] - 1]])
    left = cum - base[group]
    valid = np.zeros(len(lc), dtype=bool)
    valid[:-1] = (lc[1:] == lc[:-1]) & (v[1:] > v[:-1])
    pos = np.flatnonzero(valid)
    if len(pos) == 0:
        return None
    L = left[pos]
    nL = L.sum(axis=1)
    nR = m - nL
    sqL = (L * L).sum(axis=1)
    R = counts[None, :] - L
    sqR = (R * R).sum(axis=1)
    score = sqL / nL + sqR / nR
    best = score.max()
    near = np.flatnonzero(score >= best - 1e-9 * max(1.0, abs(best)))
    # exact comparison over distinct (sqL, sqR, nL) keys; ``near`` is in (column, threshold) order
    keys, inverse = np.unique(np.stack([sqL[near], sqR[near], nL[near]], axis=1), axis=0,
                              return_inverse=True)
    exact = [Fraction(int(a) * (m - int(c)) + int(b) * int(c), int(c) * (m - int(c)))
             for a, b, c in keys]
    top = max(exact)
    winners = np.array([q == top for q in exact])
    p = pos[near[np.flatnonzero(winners[inverse.ravel()])[0]]]
    j = int(lc[p])
    col = int(cols[j])
    thr = float((v[p] + v[p + 1]) / 2.0)
    x = np.zeros(m)
    lo, hi = csc.indptr[col], csc.indptr[col + 1]
    x[rows[lo:hi]] = data[lo:hi]
    return col, thr, x <= thr


def build_tree(X: sp.csr_matrix, yi: np.ndarray, k: int,
               select: Optional[FeatureSelector] = None) -> Dict[str, np.ndarray]:
    """Grow a tree until every leaf is pure or has no non-constant feature.

    A split is taken whenever one exists, even at zero Gini gain; the
    zero-gain case is what lets XOR-like data be fit exactly.
    """
    X = sp.csr_matrix(X)
    feature, threshold, left, right, value, counts_out = [], [], [], [], [], []

    def new_node(counts):
        feature.append(LEAF)
        threshold.append(0.0)
        left.append(LEAF)
        right.append(LEAF)
        value.append(int(np.argmax(counts)))
        counts_out.append(counts)
        return len(feature) - 1

    root_counts = np.bincount(yi, minlength=k).astype(np.int64)
    stack = [(new_node(root_counts), np.arange(X.shape[0]))]
    while stack:
        node, idx = stack.pop()
        counts = counts_out[node]
        if np.count_nonzero(counts) <= 1:
            continue
        Xs = X[idx]
        split = _best_split(Xs, yi[idx], k, counts, select)
        if split is None:
            continue
        col, thr, go_left = split
        li, ri = idx[go_left], idx[~go_left]
        feature[node], threshold[node] = col, thr
        ln = new_node(np.bincount(yi[li], minlength=k).astype(np.int64))
        rn = new_node(np.bincount(yi[ri], minlength=k).astype(np.int64))
        left[node], right[node] = ln, rn
        stack.append((rn, ri))
        stack.append((ln, li))
    return {
        "feature": np.asarray(feature, dtype=np.int64),
        "threshold": np.asarray(threshold, dtype=np.float64),
        "left": np.asarray(left, dtype=np.int64),
        "right": np.asarray(right, dtype=np.int64),
        "value": np.asarray(value, dtype=np.int64),
        "counts": np.asarray(counts_out, dtype=np.int64).reshape(-1, k),
    }


def apply_tree(tree: Dict[str, np.ndarray], X: sp.csr_matrix) -> np.ndarray:
    """Leaf index reached by every row of ``X``."""
    X = sp.csr_matrix(X)
    X.sort_indices()
    node = np.zeros(X.shape[0], dtype=np.int64)
    feature, threshold = tree["feature"], tree["threshold"]
    left, right = tree["left"], tree["right"]
    active = np.flatnonzero(feature[node] != LEAF)
    while len(active):
        f = feature[node[active]]
        x = np.asarray(X[active, f]).ravel()
        go_left = x <= threshold[node[active]]
        node[active] = np.where(go_left, left[node[active]], right[node[active]])
        active = active[feature[node[active]] != LEAF]
    return node


def tree_votes(model: ClassifierModel, X: sp.csr_matrix) -> np.ndarray:
    trees = model.params["trees"] if model.kind is Learner.RANDOM_FOREST else [model.params]
    votes = np.zeros((X.shape[0], len(model.classes)))
    rows = np.arange(X.shape[0])
    for tree in trees:
        leaves = apply_tree(tree, X)
        np.add.at(votes, (rows, tree["value"][leaves]), 1.0)
    return votes


def depth(tree: Dict[str, np.ndarray]) -> int:
    best, stack = 0, [(0, 0)]
    while stack:
        node, d = stack.pop()
        best = max(best, d)
        if tree["feature"][node] != LEAF:
            stack.append((tree["left"][node], d + 1))
            stack.append((tree["right"][node], d + 1))
    return best


def train_decision_tree(X, y: Sequence[str], cfg: TrainConfig = TrainConfig(Learner.DECISION_TREE)) -> ClassifierModel:
    X = check_xy(X, y)
    classes, yi = encode_labels(y)
    tree = build_tree(X, yi, len(classes))
    return ClassifierModel(Learner.DECISION_TREE, classes, X.shape[1], tree)
