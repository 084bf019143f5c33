"""Lowercasing and the four lexical feature schemes.

Word tokens follow the classic vectorizer default: maximal runs of two or
more word characters. Character n-grams are taken over the whole transformed
string, so they may span a single separating space.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Callable, List

_WORD_RE = re.compile(r"(?u)\b\w\w+\b")
_WS_RE = re.compile(r"\s+")


class Scheme(str, enum.Enum):
    WORD_UNIGRAM = "WORD_UNIGRAM"
    CHAR_ALNUM = "CHAR_ALNUM"
    CHAR_NONSPACE = "CHAR_NONSPACE"
    WORD_NGRAM = "WORD_NGRAM"


@dataclass(frozen=True)
class TokenizerSpec:
    scheme: Scheme
    n: int = 3
    n_min: int = 1
    n_max: int = 1

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if self.n < 1:
            raise ValueError(f"character n-gram size must be >= 1, got {self.n}")
        if self.n_min < 1 or self.n_min > self.n_max:
            raise ValueError(f"invalid word n-gram range ({self.n_min}, {self.n_max})")

    @classmethod
    def word_unigram(cls) -> "TokenizerSpec":
        return cls(Scheme.WORD_UNIGRAM)

    @classmethod
    def char_alnum(cls, n: int = 3) -> "TokenizerSpec":
        return cls(Scheme.CHAR_ALNUM, n=n)

    @classmethod
    def char_nonspace(cls, n: int = 3) -> "TokenizerSpec":
        return cls(Scheme.CHAR_NONSPACE, n=n)

    @classmethod
    def word_ngram(cls, n_min: int = 1, n_max: int = 3) -> "TokenizerSpec":
        return cls(Scheme.WORD_NGRAM, n_min=n_min, n_max=n_max)

    def to_dict(self) -> dict:
        return {"scheme": self.scheme.value, "n": self.n,
                "n_min": self.n_min, "n_max": self.n_max}

    @classmethod
    def from_dict(cls, d: dict) -> "TokenizerSpec":
        return cls(Scheme(d["scheme"]), n=d["n"], n_min=d["n_min"], n_max=d["n_max"])

    def analyzer(self) -> Callable[[str], List[str]]:
        """Return a function mapping raw text to its token list."""
        if self.scheme is Scheme.WORD_UNIGRAM:
            return lambda text: word_tokens(normalize(text))
        if self.scheme is Scheme.CHAR_ALNUM:
            return lambda text: char_ngrams_alnum(normalize(text), self.n)
        if self.scheme is Scheme.CHAR_NONSPACE:
            return lambda text: char_ngrams_nonspace(normalize(text), self.n)
        return lambda text: word_ngrams(normalize(text), self.n_min, self.n_max)

    def tokenize(self, text: str) -> List[str]:
        return self.analyzer()(text)


def normalize(text: str) -> str:
    return text.lower()


def word_tokens(text: str) -> List[str]:
    return _WORD_RE.findall(text)


def _ngrams(s: str, n: int) -> List[str]:
    return [s[i:i + n] for i in range(len(s) - n + 1)]


def alnum_string(text: str) -> str:
    """Replace every non-alphanumeric character with a space, collapse, trim."""
    chars = [c if c.isalnum() else " " for c in text]
    return _WS_RE.sub(" ", "".join(chars)).strip()


def nonspace_string(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


def char_ngrams_alnum(text: str, n: int) -> List[str]:
    return _ngrams(alnum_string(text), n)


def char_ngrams_nonspace(text: str, n: int) -> List[str]:
    return _ngrams(nonspace_string(text), n)


def word_ngrams(text: str, n_min: int, n_max: int) -> List[str]:
    words = word_tokens(text)
    out: List[str] = []
    for n in range(n_min, n_max + 1):
        out.extend(" ".join(words[i:i + n]) for i in range(len(words) - n + 1))
    return out
