"""Vocabularies with document-frequency cutoffs, count vectors and tf-idf."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from .corpus import LabeledCorpus
from .tokenizers import TokenizerSpec


class VectorizeError(ValueError):
    pass


@dataclass(frozen=True)
class SparseVector:
    entries: Tuple[Tuple[int, float], ...]
    dimension: int

    def __post_init__(self):
        entries = tuple((int(i), float(v)) for i, v in self.entries)
        prev = -1
        for i, v in entries:
            if i <= prev or i >= self.dimension:
                raise VectorizeError(f"bad column id {i} (dimension {self.dimension})")
            if v == 0.0:
                raise VectorizeError("sparse entries must be non-zero")
            prev = i
        object.__setattr__(self, "entries", entries)

    @property
    def indices(self) -> np.ndarray:
        return np.array([i for i, _ in self.entries], dtype=np.int64)

    @property
    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.entries], dtype=np.float64)

    def norm(self) -> float:
        return math.sqrt(sum(v * v for _, v in self.entries))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dimension)
        for i, v in self.entries:
            out[i] = v
        return out

    @classmethod
    def from_row(cls, row) -> "SparseVector":
        row = sp.csr_matrix(row)
        row.sum_duplicates()
        row.eliminate_zeros()
        order = np.argsort(row.indices)
        return cls(tuple(zip(row.indices[order].tolist(), row.data[order].tolist())), row.shape[1])


@dataclass(frozen=True)
class Vocabulary:
    terms: Tuple[str, ...]
    index: Dict[str, int]
    min_df: int
    tokenizer: TokenizerSpec

    def __len__(self) -> int:
        return len(self.terms)

    @classmethod
    def from_terms(cls, terms: Iterable[str], tokenizer: TokenizerSpec, min_df: int = 0) -> "Vocabulary":
        terms = tuple(sorted(set(terms)))
        return cls(terms, {t: i for i, t in enumerate(terms)}, min_df, tokenizer)

    def to_dict(self) -> dict:
        return {"terms": list(self.terms), "min_df": self.min_df,
                "tokenizer": self.tokenizer.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "Vocabulary":
        return cls.from_terms(d["terms"], TokenizerSpec.from_dict(d["tokenizer"]), d["min_df"])


@dataclass(frozen=True)
class IdfWeights:
    idf: np.ndarray
    n_docs: int

    def to_dict(self) -> dict:
        return {"idf": self.idf.tolist(), "n_docs": self.n_docs}

    @classmethod
    def from_dict(cls, d: dict) -> "IdfWeights":
        return cls(np.asarray(d["idf"], dtype=np.float64), d["n_docs"])


def _texts(corpus: Union[LabeledCorpus, Sequence[str]]) -> List[str]:
    return corpus.texts if isinstance(corpus, LabeledCorpus) else list(corpus)


def fit_vocabulary(corpus: Union[LabeledCorpus, Sequence[str]], spec: TokenizerSpec,
                   min_df: int = 0) -> Vocabulary:
    """Keep every token appearing in strictly more than ``min_df`` documents."""
    texts = _texts(corpus)
    if not texts:
        raise VectorizeError("cannot fit a vocabulary on an empty corpus")
    if min_df < 0:
        raise VectorizeError("min_df must be non-negative")
    analyze = spec.analyzer()
    df: Counter = Counter()
    for text in texts:
        df.update(set(analyze(text)))
    kept = [t for t, n in df.items() if n > min_df]
    if not kept:
        raise VectorizeError(f"no token has document frequency > {min_df}")
    return Vocabulary.from_terms(kept, spec, min_df)


def count_vector(vocab: Vocabulary, text: str) -> SparseVector:
    counts = Counter(vocab.index[t] for t in vocab.tokenizer.tokenize(text) if t in vocab.index)
    return SparseVector(tuple(sorted(counts.items())), len(vocab))


def count_matrix(vocab: Vocabulary, texts: Sequence[str]) -> sp.csr_matrix:
    """Stack count vectors for many texts into a CSR matrix."""
    analyze = vocab.tokenizer.analyzer()
    index = vocab.index
    indptr = [0]
    indices: List[int] = []
    data: List[float] = []
    for text in texts:
        counts = Counter(index[t] for t in analyze(text) if t in index)
        for col in sorted(counts):
            indices.append(col)
            data.append(counts[col])
        indptr.append(len(indices))
    return sp.csr_matrix((np.asarray(data, dtype=np.float64), np.asarray(indices, dtype=np.int64),
                          np.asarray(indptr, dtype=np.int64)), shape=(len(texts), len(vocab)))


def to_csr(X: Union[sp.spmatrix, np.ndarray, Sequence[SparseVector]]) -> sp.csr_matrix:
    if sp.issparse(X):
        return sp.csr_matrix(X, dtype=np.float64)
    if isinstance(X, np.ndarray):
        return sp.csr_matrix(X.astype(np.float64))
    X = list(X)
    if not X:
        raise VectorizeError("empty feature list")
    dim = X[0].dimension
    indptr = [0]
    indices: List[int] = []
    data: List[float] = []
    for v in X:
        if v.dimension != dim:
            raise VectorizeError(f"dimension mismatch: {v.dimension} != {dim}")
        for i, val in v.entries:
            indices.append(i)
            data.append(val)
        indptr.append(len(indices))
    return sp.csr_matrix((np.asarray(data, dtype=np.float64), np.asarray(indices, dtype=np.int64),
                          np.asarray(indptr, dtype=np.int64)), shape=(len(X), dim))


def tfidf_fit(corpus_counts: Union[sp.spmatrix, Sequence[SparseVector]]) -> IdfWeights:
    """Smoothed idf: ln((1 + N) / (1 + df)) + 1."""
    X = to_csr(corpus_counts)
    n = X.shape[0]
    if n == 0:
        raise VectorizeError("tf-idf needs at least one document")
    df = np.bincount(X.indices[X.data != 0], minlength=X.shape[1])
    return IdfWeights(np.log((1.0 + n) / (1.0 + df)) + 1.0, n)


def tfidf_transform(counts: SparseVector, idf: IdfWeights) -> SparseVector:
    if counts.dimension != len(idf.idf):
        raise VectorizeError(f"dimension mismatch: {counts.dimension} != {len(idf.idf)}")
    weighted = [(i, v * idf.idf[i]) for i, v in counts.entries]
    norm = math.sqrt(sum(v * v for _, v in weighted))
    if norm == 0.0:
        return SparseVector((), counts.dimension)
    return SparseVector(tuple((i, v / norm) for i, v in weighted), counts.dimension)


def tfidf_matrix(counts: sp.spmatrix, idf: IdfWeights) -> sp.csr_matrix:
    X = to_csr(counts)
    if X.shape[1] != len(idf.idf):
        raise VectorizeError(f"dimension mismatch: {X.shape[1]} != {len(idf.idf)}")
    X = X @ sp.diags(idf.idf)
    X = sp.csr_matrix(X)
    norms = np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
    norms[norms == 0.0] = 1.0
    return sp.csr_matrix(sp.diags(1.0 / norms) @ X)


class Featurizer:
    """Vocabulary plus optional idf weights; turns raw texts into feature rows."""

    def __init__(self, vocab: Vocabulary, idf: Optional[IdfWeights] = None):
        self.vocab = vocab
        self.idf = idf

    @classmethod
    def fit(cls, texts: Sequence[str], spec: TokenizerSpec, min_df: int = 0,
            tfidf: bool = False) -> "Featurizer":
        vocab = fit_vocabulary(texts, spec, min_df)
        idf = tfidf_fit(count_matrix(vocab, texts)) if tfidf else None
        return cls(vocab, idf)

    @property
    def weighting(self) -> str:
        return "TFIDF" if self.idf is not None else "COUNT"

    def transform(self, texts: Sequence[str]) -> sp.csr_matrix:
        X = count_matrix(self.vocab, texts)
        return tfidf_matrix(X, self.idf) if self.idf is not None else X

    def vector(self, text: str) -> SparseVector:
        v = count_vector(self.vocab, text)
        return tfidf_transform(v, self.idf) if self.idf is not None else v
