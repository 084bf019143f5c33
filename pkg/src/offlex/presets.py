"""The nine submission configurations and the end-to-end run that reproduces them."""
from __future__ import annotations

import csv
import hashlib
import json
import logging
import platform
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import __version__
from .blacklist import (BlackList, TermList, build_blacklist, extract_frequent_terms,
                        read_term_dir)
from .corpus import (CorpusError, LabeledCorpus, derive_subtask, load_hateval, load_olid_test,
                     load_olid_train, merge)
from .metrics import EvalReport, evaluate_labels, majority_baseline
from .models import Learner, ModelBundle, TrainConfig, train
from .tokenizers import TokenizerSpec
from .vectorize import Featurizer

log = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True)
class SubmissionPreset:
    id: str
    task: str
    description: str
    tokenizer: Optional[TokenizerSpec] = None
    vectorizer: str = "COUNT"
    learner: Optional[Learner] = None
    min_df: int = 0
    use_hateval: bool = False
    blacklist: bool = False
    blacklist_min_count: int = 5
    blacklist_min_lists: int = 2

    def train_config(self, seed: int) -> TrainConfig:
        return TrainConfig(self.learner, seed=seed)

    def to_dict(self) -> dict:
        return {"id": self.id, "task": self.task, "description": self.description,
                "tokenizer": self.tokenizer.to_dict() if self.tokenizer else None,
                "vectorizer": self.vectorizer, "learner": self.learner.value if self.learner else None,
                "min_df": self.min_df, "use_hateval": self.use_hateval, "blacklist": self.blacklist}


PRESETS: Dict[str, SubmissionPreset] = {p.id: p for p in (
    SubmissionPreset("A1", "A", "logistic regression, tf-idf word unigrams",
                     TokenizerSpec.word_unigram(), "TFIDF", Learner.LOGREG),
    SubmissionPreset("A2", "A", "logistic regression, tf-idf word unigrams, OLID + HatEval",
                     TokenizerSpec.word_unigram(), "TFIDF", Learner.LOGREG, use_hateval=True),
    SubmissionPreset("A3", "A", "black-list rule", blacklist=True),
    SubmissionPreset("B1", "B", "random forest, alphanumeric character 3-grams",
                     TokenizerSpec.char_alnum(3), "COUNT", Learner.RANDOM_FOREST),
    SubmissionPreset("B2", "B", "decision tree, alphanumeric character 3-grams",
                     TokenizerSpec.char_alnum(3), "COUNT", Learner.DECISION_TREE),
    SubmissionPreset("B3", "B", "linear SVM, non-space character 3-grams",
                     TokenizerSpec.char_nonspace(3), "COUNT", Learner.LINEAR_SVM),
    SubmissionPreset("C1", "C", "multinomial naive Bayes, word unigrams",
                     TokenizerSpec.word_unigram(), "COUNT", Learner.NAIVE_BAYES),
    SubmissionPreset("C2", "C", "decision tree, alphanumeric character 3-grams",
                     TokenizerSpec.char_alnum(3), "COUNT", Learner.DECISION_TREE),
    SubmissionPreset("C3", "C", "logistic regression, word 1-3-grams in more than 10 tweets",
                     TokenizerSpec.word_ngram(1, 3), "COUNT", Learner.LOGREG, min_df=10),
)}


def get_preset(preset_id: str) -> SubmissionPreset:
    try:
        return PRESETS[preset_id.upper()]
    except KeyError:
        raise KeyError(f"unknown preset {preset_id!r}; choose from {', '.join(PRESETS)}") from None


def sha256_file(path: PathLike) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _require(paths: Dict[str, Optional[PathLike]]) -> None:
    missing = [f"{name} ({p})" if p else name for name, p in paths.items()
               if p is None or not Path(p).is_file()]
    if missing:
        raise CorpusError("missing input: " + ", ".join(missing))


def task_training_corpus(olid: LabeledCorpus, task: str) -> LabeledCorpus:
    return olid if task == "A" else derive_subtask(olid, task)


def build_preset_blacklist(preset: SubmissionPreset, olid: LabeledCorpus,
                           hateval: Optional[LabeledCorpus], lists_dir: PathLike) -> BlackList:
    lists: List[TermList] = [extract_frequent_terms(olid, "OFF", preset.blacklist_min_count, "olid-frequent")]
    if hateval is not None:
        lists.append(extract_frequent_terms(hateval, "OFF", preset.blacklist_min_count, "hateval-frequent"))
    lists.extend(read_term_dir(lists_dir))
    return build_blacklist(lists, preset.blacklist_min_lists)


def fit_preset(preset: SubmissionPreset, olid_train: LabeledCorpus, seed: int = 42,
               hateval: Optional[LabeledCorpus] = None, lists_dir: Optional[PathLike] = None) -> ModelBundle:
    """Train (or, for the rule system, assemble) the preset on an OLID training corpus."""
    if preset.blacklist:
        if lists_dir is None:
            raise CorpusError(f"preset {preset.id} needs a term-list directory")
        bl = build_preset_blacklist(preset, olid_train, hateval, lists_dir)
        return ModelBundle(preset.task, preset.id, blacklist=bl, meta={"n_terms": len(bl)})
    corpus = task_training_corpus(olid_train, preset.task)
    if preset.use_hateval:
        if hateval is None:
            raise CorpusError(f"preset {preset.id} needs the HatEval training file")
        corpus = merge(corpus, hateval)
    if not len(corpus):
        raise CorpusError(f"no task-{preset.task} training tweets")
    cfg = preset.train_config(seed)
    log.info("fitting %s on %d tweets", preset.id, len(corpus))
    feat = Featurizer.fit(corpus.texts, preset.tokenizer, preset.min_df, preset.vectorizer == "TFIDF")
    model = train(feat.transform(corpus.texts), corpus.labels, cfg)
    return ModelBundle(preset.task, preset.id, cfg, feat, model,
                       meta={"n_train": len(corpus), "vocabulary_size": len(feat.vocab)})


def write_predictions(ids: Sequence[str], labels: Sequence[str], path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "label"])
        w.writerows(zip(ids, labels))


@dataclass
class RunResult:
    report: EvalReport
    predictions: List[str]
    ids: List[str]
    bundle: Optional[ModelBundle] = None
    files: Dict[str, str] = field(default_factory=dict)


def write_run(result: RunResult, out_dir: PathLike, title: str, manifest: dict,
              figures: bool = True) -> Dict[str, str]:
    """Predictions, text + JSON report, manifest and (optionally) a confusion heatmap."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {"predictions": out / "predictions.csv", "report_json": out / "report.json",
             "report_txt": out / "report.txt", "manifest": out / "manifest.json"}
    write_predictions(result.ids, result.predictions, files["predictions"])
    result.report.write_json(files["report_json"], title=title)
    files["report_txt"].write_text(result.report.render(title) + "\n", encoding="utf-8")
    if figures:
        from .plotting import plot_confusion
        files["confusion_png"] = plot_confusion(result.report, out / "confusion.png", title)
    manifest = dict(manifest, outputs={k: Path(v).name for k, v in files.items()})
    with open(files["manifest"], "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
    result.files = {k: str(v) for k, v in files.items()}
    return result.files


def run_manifest(kind: str, seed: Optional[int], inputs: Dict[str, Optional[PathLike]], **extra) -> dict:
    return {"run": kind, "seed": seed, "offlex_version": __version__,
            "python": platform.python_version(),
            "inputs": {k: {"path": str(p), "sha256": sha256_file(p)} for k, p in inputs.items() if p},
            **extra}


def run_submission(preset: Union[str, SubmissionPreset], train_path: PathLike, test_tweets: PathLike,
                   test_gold: PathLike, seed: int = 42, hateval_path: Optional[PathLike] = None,
                   lists_dir: Optional[PathLike] = None, out_dir: Optional[PathLike] = None,
                   figures: bool = True) -> RunResult:
    if isinstance(preset, str):
        preset = get_preset(preset)
    required = {"training file": train_path, "test tweets": test_tweets, "gold labels": test_gold}
    if preset.use_hateval:
        required["HatEval file"] = hateval_path
    _require(required)
    if preset.blacklist and (lists_dir is None or not Path(lists_dir).is_dir()):
        raise CorpusError(f"preset {preset.id} needs a term-list directory (--lists)")
    test = load_olid_test(test_tweets, test_gold, preset.task)
    if not len(test):
        raise CorpusError("test file contains no tweets")
    olid = load_olid_train(train_path)
    hateval = load_hateval(hateval_path) if hateval_path and (preset.use_hateval or preset.blacklist) else None
    bundle = fit_preset(preset, olid, seed, hateval, lists_dir)
    pred = bundle.predict(test.texts)
    report = evaluate_labels(test.labels, pred, test.label_set)
    result = RunResult(report, pred, test.ids, bundle)
    if out_dir is not None:
        inputs = dict(train=train_path, test_tweets=test_tweets, test_gold=test_gold, hateval=hateval_path)
        if preset.blacklist:
            for p in sorted(Path(lists_dir).iterdir()):
                if p.is_file():
                    inputs[f"list:{p.name}"] = p
        write_run(result, out_dir, f"{preset.id}: {preset.description}",
                  run_manifest("reproduce", seed, inputs, preset=preset.to_dict()), figures)
    return result


def baseline_from_corpora(train: LabeledCorpus, test: LabeledCorpus) -> Tuple[List[str], EvalReport]:
    pred = majority_baseline(train, test)
    return pred, evaluate_labels(test.labels, pred, test.label_set)


def run_baseline(task: str, train_path: PathLike, test_tweets: PathLike, test_gold: PathLike,
                 out_dir: Optional[PathLike] = None, figures: bool = True) -> RunResult:
    _require({"training file": train_path, "test tweets": test_tweets, "gold labels": test_gold})
    test = load_olid_test(test_tweets, test_gold, task)
    if not len(test):
        raise CorpusError("test file contains no tweets")
    train_corpus = task_training_corpus(load_olid_train(train_path), task)
    pred, report = baseline_from_corpora(train_corpus, test)
    result = RunResult(report, pred, test.ids)
    if out_dir is not None:
        write_run(result, out_dir, f"{task}-Baseline",
                  run_manifest("baseline", None, dict(train=train_path, test_tweets=test_tweets,
                                                   test_gold=test_gold), task=task), figures)
    return result
