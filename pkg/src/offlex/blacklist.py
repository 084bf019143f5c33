"""Black-list construction, the black-list rule classifier and term ratio tables."""
from __future__ import annotations

import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple, Union

from .corpus import CorpusError, LabeledCorpus
from .tokenizers import normalize, word_tokens

PathLike = Union[str, Path]

# matching keeps one-letter words so terms such as "son of a" can fire
_MATCH_TOKEN = re.compile(r"\w+")


class BlacklistError(ValueError):
    pass


def clean_term(term: str) -> str:
    return " ".join(normalize(term).split())


@dataclass(frozen=True)
class TermList:
    name: str
    terms: FrozenSet[str]

    def __post_init__(self):
        cleaned = frozenset(clean_term(t) for t in self.terms)
        cleaned -= {""}
        object.__setattr__(self, "terms", cleaned)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class BlackList:
    terms: FrozenSet[str]
    provenance: Mapping[str, Tuple[str, ...]]
    min_lists: int = 1

    def __post_init__(self):
        object.__setattr__(self, "terms", frozenset(self.terms))
        for t in self.terms:
            if len(self.provenance.get(t, ())) < self.min_lists:
                raise BlacklistError(f"term {t!r} has fewer than {self.min_lists} sources")

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.terms

    def with_terms(self, extra: Iterable[str], source: str = "added") -> "BlackList":
        prov = dict(self.provenance)
        extra = [clean_term(t) for t in extra]
        for t in extra:
            prov[t] = tuple(prov.get(t, ())) + (source,)
        return BlackList(self.terms | frozenset(extra), prov, 1)


@dataclass(frozen=True)
class RatioRow:
    term: str
    off_count: int
    not_count: int
    ratio: float


def read_term_file(path: PathLike, name: str = None) -> TermList:
    """One term per line; ``#`` comment lines and blank lines are skipped."""
    terms = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            terms.append(line)
    return TermList(name or Path(path).stem, frozenset(terms))


def read_term_dir(directory: PathLike) -> List[TermList]:
    files = sorted(p for p in Path(directory).iterdir() if p.is_file() and p.suffix in (".txt", ".lst", ""))
    if not files:
        raise BlacklistError(f"no term-list files in {directory}")
    return [read_term_file(p) for p in files]


def write_term_file(terms: Iterable[str], path: PathLike, header: str = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for t in sorted(terms):
            fh.write(t + "\n")


def write_blacklist(bl: BlackList, path: PathLike) -> Path:
    """Write the term file plus a ``.provenance.json`` sidecar; returns the sidecar path."""
    path = Path(path)
    write_term_file(bl.terms, path, header=f"{len(bl)} terms, min_lists={bl.min_lists}")
    sidecar = path.with_suffix(path.suffix + ".provenance.json")
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump({"min_lists": bl.min_lists,
                   "provenance": {t: list(bl.provenance[t]) for t in sorted(bl.terms)}},
                  fh, indent=1)
    return sidecar


def read_blacklist(path: PathLike) -> BlackList:
    path = Path(path)
    terms = read_term_file(path).terms
    sidecar = path.with_suffix(path.suffix + ".provenance.json")
    if sidecar.exists():
        with open(sidecar, encoding="utf-8") as fh:
            doc = json.load(fh)
        prov = {t: tuple(doc["provenance"].get(t, (path.stem,))) for t in terms}
        return BlackList(terms, prov, doc.get("min_lists", 1))
    return BlackList(terms, {t: (path.stem,) for t in terms}, 1)


def extract_frequent_terms(corpus: LabeledCorpus, positive_label: str, min_count: int = 5,
                           name: str = None) -> TermList:
    """Word tokens used at least ``min_count`` times in total across ``positive_label`` tweets."""
    if min_count < 1:
        raise BlacklistError("min_count must be positive")
    tweets = [t for t in corpus.tweets if t.label(corpus.task) == positive_label]
    if not tweets:
        raise CorpusError(f"label {positive_label!r} does not occur in the corpus")
    counts: Counter = Counter()
    for t in tweets:
        counts.update(word_tokens(normalize(t.text)))
    return TermList(name or f"frequent-{positive_label}", frozenset(w for w, n in counts.items() if n >= min_count))


def build_blacklist(lists: Sequence[TermList], min_lists: int = 2) -> BlackList:
    if min_lists < 1:
        raise BlacklistError("min_lists must be positive")
    if len(lists) < min_lists:
        raise BlacklistError(f"{len(lists)} lists supplied but min_lists={min_lists}")
    sources: Dict[str, List[str]] = defaultdict(list)
    for tl in lists:
        for term in tl.terms:
            sources[term].append(tl.name)
    chosen = {t for t, names in sources.items() if len(names) >= min_lists}
    return BlackList(frozenset(chosen), {t: tuple(sources[t]) for t in chosen}, min_lists)


class _Matcher:
    def __init__(self, terms: Iterable[str]):
        self.single = set()
        self.multi: Dict[str, List[Tuple[str, ...]]] = defaultdict(list)
        for term in terms:
            words = tuple(_MATCH_TOKEN.findall(term))
            if not words:
                continue
            if len(words) == 1:
                self.single.add(words[0])
            else:
                self.multi[words[0]].append(words)

    def matched(self, tokens: Sequence[str]) -> set:
        """Word tuple of every term that occurs in ``tokens``."""
        found = {(t,) for t in tokens if t in self.single}
        if self.multi:
            for i, tok in enumerate(tokens):
                for words in self.multi.get(tok, ()):
                    if tuple(tokens[i:i + len(words)]) == words:
                        found.add(words)
        return found

    def any(self, tokens: Sequence[str]) -> bool:
        if any(t in self.single for t in tokens):
            return True
        return bool(self.multi) and bool(self.matched(tokens))


def _tokens(text: str) -> List[str]:
    return _MATCH_TOKEN.findall(normalize(text))


def classify_blacklist(bl: Union[BlackList, Iterable[str]], text: str) -> str:
    terms = bl.terms if isinstance(bl, BlackList) else frozenset(clean_term(t) for t in bl)
    return "OFF" if _Matcher(terms).any(_tokens(text)) else "NOT"


def classify_many(bl: BlackList, texts: Sequence[str]) -> List[str]:
    m = _Matcher(bl.terms)
    return ["OFF" if m.any(_tokens(t)) else "NOT" for t in texts]


def ratio(off_count: int, not_count: int) -> float:
    return off_count / max(not_count, 1)


def sort_ratio_rows(rows: Iterable[RatioRow]) -> List[RatioRow]:
    return sorted(rows, key=lambda r: (-r.ratio, -r.off_count, r.term))


def ratio_rows_from_counts(counts: Mapping[str, Tuple[int, int]]) -> List[RatioRow]:
    """Ratio rows from precomputed ``term -> (off_count, not_count)``."""
    return sort_ratio_rows(RatioRow(t, off, no, ratio(off, no)) for t, (off, no) in counts.items())


def ratio_report(terms: Iterable[str], corpus: LabeledCorpus) -> List[RatioRow]:
    """Tweet-level OFF/NOT containment counts per term, most discriminating first."""
    terms = sorted({clean_term(t) for t in terms} - {""})
    m = _Matcher(terms)
    off: Counter = Counter()
    nots: Counter = Counter()
    for tw in corpus.tweets:
        label = tw.label_a
        if label is None:
            raise CorpusError(f"tweet {tw.id!r} lacks a task-A label")
        hits = m.matched(_tokens(tw.text))
        (off if label == "OFF" else nots).update(hits)
    keys = {t: tuple(_MATCH_TOKEN.findall(t)) for t in terms}
    return ratio_rows_from_counts({t: (off[k], nots[k]) for t, k in keys.items()})


def format_ratio_table(rows: Sequence[RatioRow], k: int = 30) -> str:
    lines = [f"{'Ratio':>7}  {'Feature':<16} {'OFF':>5} {'NOT':>5}"]
    for r in rows[:k]:
        lines.append(f"{r.ratio:7.1f}  {r.term.upper():<16} {r.off_count:5d} {r.not_count:5d}")
    return "\n".join(lines)
