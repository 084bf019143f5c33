"""Loading, validation and manipulation of the OLID and HatEval corpora."""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

TASK_LABELS: Dict[str, Tuple[str, ...]] = {
    "A": ("NOT", "OFF"),
    "B": ("TIN", "UNT"),
    "C": ("GRP", "IND", "OTH"),
}

NULL = "NULL"
OLID_HEADER = ("id", "tweet", "subtask_a", "subtask_b", "subtask_c")

PathLike = Union[str, Path]


class CorpusError(Exception):
    """Base class for data problems; the CLI maps these to exit code 2."""


class ParseError(CorpusError):
    def __init__(self, message: str, line: Optional[int] = None, path: Optional[PathLike] = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}" if where else message)


class ValidationError(CorpusError):
    pass


class JoinError(CorpusError):
    def __init__(self, missing_in_tweets: Sequence[str], missing_in_labels: Sequence[str]):
        self.missing_in_tweets = list(missing_in_tweets)
        self.missing_in_labels = list(missing_in_labels)
        parts = []
        if self.missing_in_tweets:
            parts.append("ids in labels but not tweets: " + ", ".join(self.missing_in_tweets))
        if self.missing_in_labels:
            parts.append("ids in tweets but not labels: " + ", ".join(self.missing_in_labels))
        super().__init__("; ".join(parts))


@dataclass(frozen=True)
class Tweet:
    id: str
    text: str
    label_a: Optional[str] = None
    label_b: Optional[str] = None
    label_c: Optional[str] = None

    def __post_init__(self):
        if not self.text.strip():
            raise ValidationError(f"tweet {self.id!r} has empty text")
        for value, task in ((self.label_a, "A"), (self.label_b, "B"), (self.label_c, "C")):
            if value is not None and value not in TASK_LABELS[task]:
                raise ValidationError(f"tweet {self.id!r}: unknown task-{task} label {value!r}")
        if self.label_b is not None and self.label_a != "OFF":
            raise ValidationError(f"tweet {self.id!r}: label_b={self.label_b} requires label_a=OFF")
        if self.label_c is not None and self.label_b != "TIN":
            raise ValidationError(f"tweet {self.id!r}: label_c={self.label_c} requires label_b=TIN")

    def label(self, task: str) -> Optional[str]:
        return {"A": self.label_a, "B": self.label_b, "C": self.label_c}[task]


@dataclass(frozen=True)
class LabeledCorpus:
    task: str
    tweets: Tuple[Tweet, ...]
    label_set: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.task not in TASK_LABELS:
            raise ValidationError(f"unknown task {self.task!r}")
        object.__setattr__(self, "tweets", tuple(self.tweets))
        if not self.label_set:
            object.__setattr__(self, "label_set", TASK_LABELS[self.task])
        seen = set()
        for t in self.tweets:
            if t.id in seen:
                raise ValidationError(f"duplicate tweet id {t.id!r}")
            seen.add(t.id)
            if t.label(self.task) is None:
                raise ValidationError(f"tweet {t.id!r} lacks a task-{self.task} label")

    def __len__(self) -> int:
        return len(self.tweets)

    def __iter__(self):
        return iter(self.tweets)

    @property
    def texts(self) -> List[str]:
        return [t.text for t in self.tweets]

    @property
    def labels(self) -> List[str]:
        return [t.label(self.task) for t in self.tweets]

    @property
    def ids(self) -> List[str]:
        return [t.id for t in self.tweets]


@dataclass(frozen=True)
class DistributionReport:
    counts: Dict[str, int]
    fractions: Dict[str, float]
    total: int


def _read_text(path: PathLike) -> str:
    # newline="" keeps CRLF visible to csv, which then strips it
    with open(path, encoding="utf-8", newline="") as fh:
        return fh.read()


def _opt(value: str) -> Optional[str]:
    value = value.strip()
    return None if value == NULL or value == "" else value


def _tsv_rows(path: PathLike):
    text = _read_text(path)
    reader = csv.reader(io.StringIO(text), delimiter="\t", quoting=csv.QUOTE_NONE)
    for row in reader:
        yield reader.line_num, row


def load_olid_train(path: PathLike) -> LabeledCorpus:
    """Read the OLID training TSV (header + id, tweet, subtask_a/b/c)."""
    tweets = []
    for lineno, row in _tsv_rows(path):
        if lineno == 1:
            continue
        if not row:
            continue
        if len(row) != 5:
            raise ParseError(f"expected 5 columns, found {len(row)}", lineno, path)
        tid, text, a, b, c = row
        tweets.append(Tweet(tid.strip(), text, _opt(a), _opt(b), _opt(c)))
    return LabeledCorpus("A", tweets)


def load_olid_tweets(path: PathLike) -> List[Tuple[str, str]]:
    """Read an unlabeled test TSV (header + id, tweet) as (id, text) pairs."""
    out = []
    for lineno, row in _tsv_rows(path):
        if lineno == 1 or not row:
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 columns, found {len(row)}", lineno, path)
        out.append((row[0].strip(), row[1]))
    return out


def load_id_labels(path: PathLike) -> Dict[str, str]:
    """Read an ``id,label`` CSV (gold labels or predictions); a header row is optional."""
    labels: Dict[str, str] = {}
    reader = csv.reader(io.StringIO(_read_text(path)))
    for row in reader:
        if not row:
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 columns, found {len(row)}", reader.line_num, path)
        tid, label = row[0].strip(), row[1].strip()
        if reader.line_num == 1 and (tid.lower(), label.lower()) == ("id", "label"):
            continue
        if tid in labels:
            raise ParseError(f"duplicate id {tid!r}", reader.line_num, path)
        labels[tid] = label
    return labels


def load_olid_test(tweets_path: PathLike, labels_path: PathLike, task: str = "A") -> LabeledCorpus:
    tweets = load_olid_tweets(tweets_path)
    gold = load_id_labels(labels_path)
    tweet_ids = [tid for tid, _ in tweets]
    id_set = set(tweet_ids)
    missing_in_tweets = sorted(set(gold) - id_set)
    missing_in_labels = [tid for tid in tweet_ids if tid not in gold]
    if missing_in_tweets or missing_in_labels:
        raise JoinError(missing_in_tweets, missing_in_labels)
    out = []
    for tid, text in tweets:
        label = gold[tid]
        # fill the hierarchy implied by the label so Tweet invariants hold
        if task == "A":
            out.append(Tweet(tid, text, label_a=label))
        elif task == "B":
            out.append(Tweet(tid, text, label_a="OFF", label_b=label))
        else:
            out.append(Tweet(tid, text, label_a="OFF", label_b="TIN", label_c=label))
    return LabeledCorpus(task, out)


def load_hateval(path: PathLike) -> LabeledCorpus:
    """Read the HatEval CSV; HS=1 maps to OFF and HS=0 to NOT."""
    reader = csv.DictReader(io.StringIO(_read_text(path)))
    missing = {"id", "text", "HS"} - set(reader.fieldnames or ())
    if missing:
        raise ParseError(f"missing columns: {', '.join(sorted(missing))}", 1, path)
    tweets = []
    for row in reader:
        hs = (row["HS"] or "").strip()
        if hs not in ("0", "1"):
            raise ParseError(f"HS must be 0 or 1, got {hs!r}", reader.line_num, path)
        tweets.append(Tweet(row["id"].strip(), row["text"], label_a="OFF" if hs == "1" else "NOT"))
    return LabeledCorpus("A", tweets)


def write_olid(corpus: LabeledCorpus, path: PathLike) -> None:
    """Write a corpus in the OLID training TSV layout."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\t".join(OLID_HEADER) + "\n")
        for t in corpus.tweets:
            if "\t" in t.text or "\n" in t.text or "\r" in t.text:
                raise ValidationError(f"tweet {t.id!r} text cannot be written as TSV")
            cols = [t.id, t.text] + [v if v is not None else NULL
                                     for v in (t.label_a, t.label_b, t.label_c)]
            fh.write("\t".join(cols) + "\n")


def derive_subtask(corpus: LabeledCorpus, target: str) -> LabeledCorpus:
    if target == "B":
        keep = [t for t in corpus.tweets if t.label_a == "OFF" and t.label_b is not None]
    elif target == "C":
        keep = [t for t in corpus.tweets if t.label_b == "TIN" and t.label_c is not None]
    else:
        raise ValueError(f"subtask target must be B or C, got {target!r}")
    return LabeledCorpus(target, keep)


def merge(a: LabeledCorpus, b: LabeledCorpus, prefix: str = "b:") -> LabeledCorpus:
    """Concatenate two corpora of the same task; colliding ids in ``b`` get ``prefix``."""
    if a.task != b.task:
        raise ValidationError(f"cannot merge task {a.task} with task {b.task}")
    used = set(a.ids)
    extra = []
    for t in b.tweets:
        tid = t.id
        while tid in used:
            tid = prefix + tid
        used.add(tid)
        extra.append(t if tid == t.id else Tweet(tid, t.text, t.label_a, t.label_b, t.label_c))
    return LabeledCorpus(a.task, a.tweets + tuple(extra), a.label_set)


def class_distribution(corpus: Union[LabeledCorpus, Iterable[str]]) -> DistributionReport:
    if isinstance(corpus, LabeledCorpus):
        labels = corpus.labels
        order: Sequence[str] = corpus.label_set
    else:
        labels = list(corpus)
        order = sorted(set(labels))
    if not labels:
        raise ValidationError("class distribution of an empty corpus")
    counter = Counter(labels)
    counts = {lab: counter.get(lab, 0) for lab in order}
    total = len(labels)
    return DistributionReport(counts, {k: v / total for k, v in counts.items()}, total)
