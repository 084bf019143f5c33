import os
from pathlib import Path

import pytest

DATA_DIR = os.environ.get("OFFLEX_DATA")


def write_olid(path, rows):
    lines = ["id\ttweet\tsubtask_a\tsubtask_b\tsubtask_c"]
    lines += ["\t".join(r) for r in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_test_set(dirpath, rows, name="test"):
    """rows: (id, text, label). Writes the tweets TSV and the id,label gold CSV."""
    tweets = Path(dirpath) / f"{name}.tsv"
    gold = Path(dirpath) / f"{name}-gold.csv"
    tweets.write_text("id\ttweet\n" + "".join(f"{i}\t{t}\n" for i, t, _ in rows), encoding="utf-8")
    gold.write_text("".join(f"{i},{lab}\n" for i, _, lab in rows), encoding="utf-8")
    return tweets, gold


TOY_TRAIN = [
    ("1", "@USER you are a stupid idiot", "OFF", "TIN", "IND"),
    ("2", "what a beautiful day, thank you", "NOT", "NULL", "NULL"),
    ("3", "this shit is so dumb #maga", "OFF", "UNT", "NULL"),
    ("4", "love this, best news ever URL", "NOT", "NULL", "NULL"),
    ("5", "liberals are idiots and liars", "OFF", "TIN", "GRP"),
    ("6", "@USER he is a fucking liar", "OFF", "TIN", "IND"),
    ("7", "thanks for the help @USER", "NOT", "NULL", "NULL"),
    ("8", "антифа стоп this is fine", "NOT", "NULL", "NULL"),
    ("9", "the media are stupid scum", "OFF", "TIN", "OTH"),
    ("10", "conservatives stand for justice", "NOT", "NULL", "NULL"),
    ("11", "fuck this crap honestly", "OFF", "UNT", "NULL"),
    ("12", "@USER youre an idiot and a loser", "OFF", "TIN", "IND"),
    ("13", "antifa thugs are stupid", "OFF", "TIN", "GRP"),
    ("14", "have a great weekend everyone", "NOT", "NULL", "NULL"),
    ("15", "the network is lying trash", "OFF", "TIN", "OTH"),
    ("16", "so happy for you, congrats", "NOT", "NULL", "NULL"),
]

TOY_TEST_A = [
    ("t1", "you stupid idiot", "OFF"),
    ("t2", "thank you, what a day", "NOT"),
    ("t3", "this is shit", "OFF"),
    ("t4", "best weekend ever", "NOT"),
]


@pytest.fixture
def toy_olid(tmp_path):
    return write_olid(tmp_path / "olid.tsv", TOY_TRAIN)


@pytest.fixture
def toy_test_a(tmp_path):
    return write_test_set(tmp_path, TOY_TEST_A, "test-a")


@pytest.fixture
def toy_hateval(tmp_path):
    p = tmp_path / "hateval.csv"
    p.write_text("id,text,HS,TR,AG\n"
                 "h1,women are stupid bitches,1,0,1\n"
                 "h2,build that wall now stupid,1,0,0\n"
                 "h3,welcome refugees,0,0,0\n"
                 "h4,\"immigrants, welcome here\",0,0,0\n"
                 "h5,stupid stupid stupid stupid stupid,1,0,1\n", encoding="utf-8")
    return p


@pytest.fixture
def toy_lists(tmp_path):
    d = tmp_path / "lists"
    d.mkdir()
    (d / "web1.txt").write_text("# a web list\nidiot\nstupid\nshit\n\nson of a\n", encoding="utf-8")
    (d / "web2.txt").write_text("IDIOT\nfuck\nshit\nscum\n", encoding="utf-8")
    return d
