"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .analyze import render_features, top_weighted_features
from .blacklist import (BlacklistError, build_blacklist, extract_frequent_terms, format_ratio_table,
                        ratio_report, read_blacklist, read_term_dir, write_blacklist)
from .corpus import (TASK_LABELS, CorpusError, load_hateval, load_id_labels,
                     load_olid_test, load_olid_train, load_olid_tweets)
from .metrics import MetricsError, evaluate_labels
from .models import Learner, ModelBundle, ModelError, TrainConfig, load_bundle, save_bundle, train
from .presets import (PRESETS, RunResult, run_manifest, fit_preset, get_preset, run_baseline,
                      run_submission, task_training_corpus, write_predictions, write_run)
from .tokenizers import TokenizerSpec
from .vectorize import Featurizer, VectorizeError

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3
DATA_ERRORS = (CorpusError, BlacklistError, VectorizeError, ModelError, MetricsError,
               FileNotFoundError, IsADirectoryError, UnicodeDecodeError)

log = logging.getLogger("offlex")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


FEATURES = {
    "word": lambda a: TokenizerSpec.word_unigram(),
    "char-alnum": lambda a: TokenizerSpec.char_alnum(a.n),
    "char-nonspace": lambda a: TokenizerSpec.char_nonspace(a.n),
    "word-ngram": lambda a: TokenizerSpec.word_ngram(a.ngram_min, a.ngram_max),
}


def _add_common(p, *names):
    if "task" in names:
        p.add_argument("--task", choices=sorted(TASK_LABELS), help="subtask A, B or C")
    if "train" in names:
        p.add_argument("--train", help="OLID training TSV")
    if "test" in names:
        p.add_argument("--test", help="test tweets TSV (id, tweet)")
    if "gold" in names:
        p.add_argument("--gold", help="gold labels CSV (id,label)")
    if "hateval" in names:
        p.add_argument("--hateval", help="HatEval training CSV")
    if "lists" in names:
        p.add_argument("--lists", help="directory of term-list files")
    if "seed" in names:
        p.add_argument("--seed", type=int, default=42, help="random seed (default 42)")
    if "out" in names:
        p.add_argument("--out", help="output directory")
    if "model" in names:
        p.add_argument("--model", help="model file")
    if "figures" in names:
        p.add_argument("--no-figures", dest="figures", action="store_false",
                       help="skip writing PNG figures")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="offlex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"offlex {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("train", help="train a model file from a preset or explicit settings")
    _add_common(p, "task", "train", "hateval", "lists", "seed", "out", "model")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--learner", choices=[l.value.lower() for l in Learner])
    p.add_argument("--features", choices=sorted(FEATURES), default="word")
    p.add_argument("--n", type=int, default=3, help="character n-gram size")
    p.add_argument("--ngram-min", type=int, default=1)
    p.add_argument("--ngram-max", type=int, default=3)
    p.add_argument("--min-df", type=int, default=0, help="keep terms in more than this many tweets")
    p.add_argument("--weighting", choices=["count", "tfidf"], default="count")
    p.add_argument("--c", type=float, default=1.0, help="inverse regularization strength")
    p.add_argument("--alpha", type=float, default=1.0, help="naive Bayes smoothing")
    p.add_argument("--trees", type=int, default=10)

    p = sub.add_parser("predict", help="label a test file with a model file")
    _add_common(p, "test", "gold", "out", "model", "figures")

    p = sub.add_parser("evaluate", help="score a predictions file against gold labels")
    _add_common(p, "task", "gold", "out", "figures")
    p.add_argument("--pred", required=True, help="predictions CSV (id,label)")

    p = sub.add_parser("blacklist", help="build black-lists and term ratio tables")
    bsub = p.add_subparsers(dest="blacklist_command", parser_class=_Parser)
    b = bsub.add_parser("build", help="merge frequent-term lists with external lists")
    _add_common(b, "train", "hateval", "lists", "out")
    b.add_argument("--min-count", type=int, default=5)
    b.add_argument("--min-lists", type=int, default=2)
    b = bsub.add_parser("ratios", help="OFF/NOT tweet ratios for black-list terms")
    _add_common(b, "train", "out", "figures")
    b.add_argument("--blacklist", required=True, help="black-list term file")
    b.add_argument("-k", type=int, default=30)

    p = sub.add_parser("analyze", help="model analysis reports")
    asub = p.add_subparsers(dest="analyze_command", parser_class=_Parser)
    a = asub.add_parser("features", help="top-weighted features of a linear model")
    _add_common(a, "model", "out", "figures")
    a.add_argument("-k", type=int, default=30)

    p = sub.add_parser("baseline", help="majority-class baseline")
    _add_common(p, "task", "train", "test", "gold", "out", "figures")

    p = sub.add_parser("reproduce", help="train, predict and evaluate one submission preset")
    p.add_argument("preset", choices=sorted(PRESETS) + sorted(k.lower() for k in PRESETS))
    _add_common(p, "train", "test", "gold", "hateval", "lists", "seed", "out", "figures")
    return parser


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) in (None, "")]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join(missing))


def _cmd_train(args) -> int:
    _need(args, "train", "model")
    olid = load_olid_train(args.train)
    hateval = load_hateval(args.hateval) if args.hateval else None
    if args.preset:
        preset = get_preset(args.preset)
        bundle = fit_preset(preset, olid, args.seed, hateval, args.lists)
    else:
        _need(args, "task", "learner")
        spec = FEATURES[args.features](args)
        corpus = task_training_corpus(olid, args.task)
        cfg = TrainConfig(Learner(args.learner.upper()), regularization_c=args.c,
                          smoothing_alpha=args.alpha, n_trees=args.trees, seed=args.seed)
        feat = Featurizer.fit(corpus.texts, spec, args.min_df, args.weighting == "tfidf")
        model = train(feat.transform(corpus.texts), corpus.labels, cfg)
        bundle = ModelBundle(args.task, None, cfg, feat, model, meta={"n_train": len(corpus)})
    Path(args.model).parent.mkdir(parents=True, exist_ok=True)
    save_bundle(bundle, args.model)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        manifest = run_manifest("train", args.seed, {"train": args.train, "hateval": args.hateval},
                             preset=args.preset, model=str(args.model))
        (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    print(f"wrote {args.model}")
    return EXIT_OK


def _cmd_predict(args) -> int:
    _need(args, "model", "test", "out")
    bundle = load_bundle(args.model)
    if args.gold:
        test = load_olid_test(args.test, args.gold, bundle.task)
        ids, texts = test.ids, test.texts
    else:
        pairs = load_olid_tweets(args.test)
        ids, texts = [i for i, _ in pairs], [t for _, t in pairs]
    if not ids:
        raise CorpusError("test file contains no tweets")
    pred = bundle.predict(texts)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    inputs = {"model": args.model, "test_tweets": args.test, "test_gold": args.gold}
    if args.gold:
        report = evaluate_labels(test.labels, pred, test.label_set)
        title = bundle.preset or (bundle.model.kind.value if bundle.model else "black-list")
        write_run(RunResult(report, pred, ids, bundle), out, title,
                  run_manifest("predict", None, inputs), args.figures)
        print(report.render(title))
    else:
        write_predictions(ids, pred, out / "predictions.csv")
        (out / "manifest.json").write_text(json.dumps(run_manifest("predict", None, inputs), indent=2))
        print(f"wrote {out / 'predictions.csv'}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    _need(args, "gold", "task")
    gold = load_id_labels(args.gold)
    pred = load_id_labels(args.pred)
    missing = sorted(set(gold) ^ set(pred))
    if missing:
        raise CorpusError("ids differ between gold and predictions: " + ", ".join(missing[:20]))
    ids = list(gold)
    report = evaluate_labels([gold[i] for i in ids], [pred[i] for i in ids], TASK_LABELS[args.task])
    title = f"task {args.task}: {Path(args.pred).name}"
    if args.out:
        write_run(RunResult(report, [pred[i] for i in ids], ids), args.out, title,
                  run_manifest("evaluate", None, {"pred": args.pred, "gold": args.gold}), args.figures)
    print(report.render(title))
    return EXIT_OK


def _cmd_blacklist(args) -> int:
    if args.blacklist_command == "build":
        _need(args, "train", "lists", "out")
        olid = load_olid_train(args.train)
        lists = [extract_frequent_terms(olid, "OFF", args.min_count, "olid-frequent")]
        if args.hateval:
            lists.append(extract_frequent_terms(load_hateval(args.hateval), "OFF", args.min_count,
                                                "hateval-frequent"))
        lists.extend(read_term_dir(args.lists))
        bl = build_blacklist(lists, args.min_lists)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_blacklist(bl, out / "blacklist.txt")
        inputs = {"train": args.train, "hateval": args.hateval}
        inputs.update({f"list:{p.name}": p for p in sorted(Path(args.lists).iterdir()) if p.is_file()})
        manifest = run_manifest("blacklist-build", None, inputs, min_count=args.min_count,
                             min_lists=args.min_lists, sources={t.name: len(t) for t in lists},
                             n_terms=len(bl))
        (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
        for tl in lists:
            print(f"{tl.name:<24} {len(tl):6d} terms")
        print(f"{'black-list':<24} {len(bl):6d} terms (in >= {args.min_lists} lists)")
        return EXIT_OK
    if args.blacklist_command == "ratios":
        _need(args, "train")
        bl = read_blacklist(args.blacklist)
        rows = ratio_report(bl.terms, load_olid_train(args.train))
        text = format_ratio_table(rows, args.k)
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / "ratios.txt").write_text(text + "\n", encoding="utf-8")
            with open(out / "ratios.json", "w", encoding="utf-8") as fh:
                json.dump([vars(r) for r in rows], fh, indent=1)
            if args.figures:
                from .plotting import plot_ratios
                plot_ratios(rows, out / "ratios.png", args.k)
            manifest = run_manifest("blacklist-ratios", None, {"train": args.train, "blacklist": args.blacklist})
            (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
        print(text)
        return EXIT_OK
    raise UsageError("blacklist needs a subcommand: build or ratios")


def _cmd_analyze(args) -> int:
    if args.analyze_command != "features":
        raise UsageError("analyze needs a subcommand: features")
    _need(args, "model")
    bundle = load_bundle(args.model)
    if bundle.model is None:
        raise ModelError("feature analysis needs a trained linear model, not a black-list")
    report = top_weighted_features(bundle.model, bundle.featurizer.vocab, args.k)
    upper = "OFF" if "OFF" in report.per_class else None
    text = render_features(report, upper)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "features.txt").write_text(text + "\n", encoding="utf-8")
        with open(out / "features.json", "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=1)
        if args.figures:
            from .plotting import plot_feature_weights
            plot_feature_weights(report, out / "features.png", min(args.k, 30))
        (out / "manifest.json").write_text(json.dumps(
            run_manifest("analyze-features", None, {"model": args.model}, k=args.k), indent=2, sort_keys=True))
    print(text)
    return EXIT_OK


def _cmd_baseline(args) -> int:
    _need(args, "task", "train", "test", "gold")
    result = run_baseline(args.task, args.train, args.test, args.gold, args.out, args.figures)
    print(result.report.render(f"{args.task}-Baseline"))
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    _need(args, "train", "test", "gold")
    preset = get_preset(args.preset)
    result = run_submission(preset, args.train, args.test, args.gold, args.seed,
                            args.hateval, args.lists, args.out, args.figures)
    print(result.report.render(f"{preset.id}: {preset.description}"))
    return EXIT_OK


COMMANDS = {"train": _cmd_train, "predict": _cmd_predict, "evaluate": _cmd_evaluate,
            "blacklist": _cmd_blacklist, "analyze": _cmd_analyze, "baseline": _cmd_baseline,
            "reproduce": _cmd_reproduce}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        if getattr(args, "seed", None) is not None and not 0 <= args.seed < 2 ** 64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"offlex: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"offlex: usage error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except DATA_ERRORS as exc:
        print(f"offlex: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"offlex: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
