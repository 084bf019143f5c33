import json

import pytest

from offlex.cli import main
from offlex.corpus import CorpusError
from offlex.presets import PRESETS, get_preset, run_baseline, run_submission

from conftest import write_test_set

TEST_B = [("b1", "@USER you idiot", "TIN"), ("b2", "fuck this", "UNT"), ("b3", "he is a liar", "TIN")]
TEST_C = [("c1", "@USER you idiot", "IND"), ("c2", "liberals are stupid", "GRP"), ("c3", "the media lies", "OTH")]


@pytest.fixture
def sets(tmp_path, toy_test_a):
    return {"A": toy_test_a, "B": write_test_set(tmp_path, TEST_B, "test-b"),
            "C": write_test_set(tmp_path, TEST_C, "test-c")}


def run(*argv):
    return main([str(a) for a in argv])


def test_presets_mirror_system_table():
    assert sorted(PRESETS) == ["A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3"]
    assert get_preset("b3").tokenizer.to_dict()["scheme"] == "CHAR_NONSPACE"
    assert get_preset("C3").min_df == 10 and get_preset("A2").use_hateval
    with pytest.raises(KeyError):
        get_preset("D1")


@pytest.mark.parametrize("preset", ["A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2"])
def test_reproduce_every_preset(tmp_path, toy_olid, toy_hateval, toy_lists, sets, preset, capsys):
    tweets, gold = sets[preset[0]]
    out = tmp_path / f"run-{preset}"
    code = run("reproduce", preset, "--train", toy_olid, "--test", tweets, "--gold", gold,
               "--hateval", toy_hateval, "--lists", toy_lists, "--out", out)
    assert code == 0
    for name in ("predictions.csv", "report.json", "report.txt", "manifest.json", "confusion.png"):
        assert (out / name).is_file(), name
    lines = (out / "predictions.csv").read_text().splitlines()
    assert lines[0] == "id,label" and len(lines) == 1 + len(open(gold).read().splitlines())
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seed"] == 42 and manifest["preset"]["id"] == preset
    assert len(manifest["inputs"]["train"]["sha256"]) == 64
    assert "macro-F1" in capsys.readouterr().out


def test_c3_on_toy_data_has_no_vocabulary(tmp_path, toy_olid, sets):
    # no toy word n-gram occurs in more than 10 tweets
    tweets, gold = sets["C"]
    assert run("reproduce", "C3", "--train", toy_olid, "--test", tweets, "--gold", gold) == 2


def test_b1_is_deterministic(tmp_path, toy_olid, sets):
    tweets, gold = sets["B"]
    a = run_submission("B1", toy_olid, tweets, gold, seed=7)
    b = run_submission("B1", toy_olid, tweets, gold, seed=7)
    assert a.report.to_dict() == b.report.to_dict() and a.predictions == b.predictions
    assert a.bundle.model.fingerprint() == b.bundle.model.fingerprint()


def test_a3_blacklist_predictions(toy_olid, toy_lists, toy_test_a):
    r = run_submission("A3", toy_olid, *toy_test_a, lists_dir=toy_lists)
    assert r.predictions == ["OFF", "NOT", "OFF", "NOT"]
    assert r.report.accuracy == 1.0


def test_missing_inputs_fail_before_training(tmp_path, toy_olid, toy_test_a):
    with pytest.raises(CorpusError, match="HatEval"):
        run_submission("A2", toy_olid, *toy_test_a)
    with pytest.raises(CorpusError, match="term-list"):
        run_submission("A3", toy_olid, *toy_test_a)
    empty_t, empty_g = write_test_set(tmp_path, [], "empty")
    with pytest.raises(CorpusError, match="no tweets"):
        run_submission("A1", toy_olid, empty_t, empty_g)
    assert run("reproduce", "A1", "--train", tmp_path / "nope.tsv", "--test", toy_test_a[0],
               "--gold", toy_test_a[1]) == 2


def test_baseline(tmp_path, toy_olid, sets, capsys):
    assert run("baseline", "--task", "B", "--train", toy_olid, "--test", sets["B"][0],
               "--gold", sets["B"][1], "--out", tmp_path / "bl", "--no-figures") == 0
    assert not (tmp_path / "bl" / "confusion.png").exists()
    assert (tmp_path / "bl" / "predictions.csv").read_text().splitlines()[1:] == ["b1,TIN", "b2,TIN", "b3,TIN"]
    r = run_baseline("A", toy_olid, *sets["A"])
    assert r.predictions == ["OFF"] * 4  # 9 OFF vs 7 NOT in the toy training set
    assert "B-Baseline" in capsys.readouterr().out


def test_train_predict_evaluate_analyze(tmp_path, toy_olid, sets, capsys):
    model = tmp_path / "m.json"
    assert run("train", "--task", "A", "--learner", "logreg", "--weighting", "tfidf",
               "--train", toy_olid, "--model", model, "--out", tmp_path / "tr") == 0
    assert (tmp_path / "tr" / "manifest.json").is_file()
    tweets, gold = sets["A"]
    assert run("predict", "--model", model, "--test", tweets, "--out", tmp_path / "p") == 0
    pred = tmp_path / "p" / "predictions.csv"
    assert run("evaluate", "--pred", pred, "--gold", gold, "--task", "A", "--out", tmp_path / "ev") == 0
    assert json.loads((tmp_path / "ev" / "report.json").read_text())["total"] == 4
    assert run("predict", "--model", model, "--test", tweets, "--gold", gold, "--out", tmp_path / "pg") == 0
    assert run("analyze", "features", "--model", model, "-k", "5", "--out", tmp_path / "an") == 0
    feats = json.loads((tmp_path / "an" / "features.json").read_text())
    assert set(feats) == {"NOT", "OFF"} and len(feats["OFF"]) == 5
    assert (tmp_path / "an" / "features.png").is_file()
    assert run("train", "--preset", "C1", "--train", toy_olid, "--model", tmp_path / "nb.json") == 0
    assert run("analyze", "features", "--model", tmp_path / "nb.json") == 2


def test_blacklist_commands(tmp_path, toy_olid, toy_hateval, toy_lists, capsys):
    out = tmp_path / "bl"
    assert run("blacklist", "build", "--train", toy_olid, "--hateval", toy_hateval, "--lists", toy_lists,
               "--min-count", "3", "--out", out) == 0
    terms = (out / "blacklist.txt").read_text().split("\n")
    assert "stupid" in terms and "idiot" in terms
    assert run("blacklist", "ratios", "--blacklist", out / "blacklist.txt", "--train", toy_olid,
               "-k", "3", "--out", tmp_path / "ratios") == 0
    rows = json.loads((tmp_path / "ratios" / "ratios.json").read_text())
    stupid = next(r for r in rows if r["term"] == "stupid")
    assert (stupid["off_count"], stupid["not_count"]) == (3, 0)
    assert (tmp_path / "ratios" / "ratios.png").is_file()


def test_evaluate_id_mismatch(tmp_path, sets):
    tweets, gold = sets["A"]
    pred = tmp_path / "pred.csv"
    pred.write_text("id,label\nt1,OFF\n")
    assert run("evaluate", "--pred", pred, "--gold", gold, "--task", "A") == 2


@pytest.mark.parametrize("argv", [[], ["train"], ["reproduce", "Z9"], ["baseline", "--task", "D"],
                                  ["reproduce", "A1", "--seed", "-1", "--train", "x", "--test", "y", "--gold", "z"],
                                  ["blacklist"], ["analyze"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_internal_error_code(monkeypatch, toy_olid, sets):
    import offlex.cli as cli

    def boom(args):
        raise RuntimeError("unexpected")
    monkeypatch.setitem(cli.COMMANDS, "baseline", boom)
    assert run("baseline", "--task", "A", "--train", toy_olid, "--test", sets["A"][0], "--gold", sets["A"][1]) == 3
