import csv
import hashlib
import json

import pytest

from styloprint import __version__
from styloprint.cli import main
from styloprint.corpus import Document, write_corpus
from styloprint.synthetic import synthetic_corpus

FAST = ["--population", "16", "--generations", "10"]


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    write_corpus(root, synthetic_corpus(authors_per_genre=2, docs_per_author=3, seed=1))
    return root


@pytest.fixture(scope="module")
def features(corpus, tmp_path_factory):
    out = tmp_path_factory.mktemp("extract")
    assert main(["extract", "--corpus", str(corpus), "--out", str(out)]) == 0
    return out / "features.csv"


def tree_digest(root):
    return {p.relative_to(root).as_posix(): hashlib.sha256(p.read_bytes()).hexdigest()
            for p in sorted(root.rglob("*")) if p.is_file()}


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 1
    assert "usage" in capsys.readouterr().err


def test_unknown_flag(capsys, corpus):
    assert main(["ingest", "--corpus", str(corpus), "--bogus"]) == 1
    assert "usage" in capsys.readouterr().err


def test_ingest(capsys, corpus):
    assert main(["ingest", "--corpus", str(corpus)]) == 0
    assert "18 documents, 6 authors, 3 genres" in capsys.readouterr().out


def test_ingest_missing_file(tmp_path, capsys):
    (tmp_path / "manifest.csv").write_text("id,author,genre,title,path\nd1,a,g,t,gone.txt\n", encoding="utf-8")
    assert main(["ingest", "--corpus", str(tmp_path)]) == 2
    assert "gone.txt" in capsys.readouterr().err


def test_extract_three_docs(tmp_path):
    docs = [Document(f"d{i}", "a", "g", "t", f"Das ist Text Nummer {i}. Er ist kurz.") for i in range(3)]
    write_corpus(tmp_path / "c", docs)
    out = tmp_path / "out"
    assert main(["extract", "--corpus", str(tmp_path / "c"), "--out", str(out)]) == 0
    with open(out / "features.csv", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 4
    cfg = json.loads((out / "run_config.json").read_text())
    assert cfg["entropy_window"] == 1000 and cfg["version"] == __version__


def test_filter_and_stats(features, tmp_path):
    out = tmp_path / "f"
    assert main(["filter", "--features", str(features), "--out", str(out), "--priority", "chi2"]) == 0
    assert (out / "catalog.csv").read_text().startswith("attribute,kept,reason,dependent_with\n")
    assert (out / "scatter.svg").read_text().startswith("<svg")
    out2 = tmp_path / "s"
    assert main(["stats", "--features", str(features), "--out", str(out2), "--svg", "--bins", "4"]) == 0
    rep = json.loads((out2 / "genre_report.json").read_text())
    assert sorted(rep["genres"]) == ["common_speech", "fairy_tale", "technical_language"]
    assert rep["genre_shares"]["fairy_tale"] == pytest.approx(1 / 3)
    assert len(list((out2 / "rings" / "fairy_tale").glob("*.svg"))) == 22


def test_cluster(features, tmp_path):
    out = tmp_path / "c"
    assert main(["cluster", "--features", str(features), "--out", str(out), "--alpha", "0.8"]) == 0
    rep = json.loads((out / "clusters.json").read_text())
    assert rep["alpha"] == 0.8
    assert sum(c["size"] for c in rep["clusters"]) == 18
    assert json.loads((out / "run_config.json").read_text())["seed"] == 42


def test_train_classify_evaluate(features, corpus, tmp_path, capsys):
    out = tmp_path / "m"
    assert main(["train", "--features", str(features), "--out", str(out), *FAST]) == 0
    model = out / "model.json"
    assert json.loads(model.read_text())["format_version"] == 1
    capsys.readouterr()
    doc = sorted(corpus.glob("*.txt"))[0]
    assert main(["classify", "--model", str(model), str(doc)]) == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith(str(doc) + "\t")
    ev = tmp_path / "e"
    assert main(["evaluate", "--features", str(features), "--model", str(model), "--out", str(ev)]) == 0
    rates = json.loads((ev / "rates.json").read_text())
    assert rates["protocol"] == "holdout" and 0 <= rates["overall_accuracy"] <= 1
    ev2 = tmp_path / "e2"
    assert main(["evaluate", "--features", str(features), "--out", str(ev2), *FAST]) == 0
    assert json.loads((ev2 / "rates.json").read_text())["protocol"] == "leave-one-out"


def test_train_single_document_author(features, tmp_path, capsys):
    rows = features.read_text(encoding="utf-8").splitlines()
    header, body = rows[0], rows[1:]
    first_author = body[0].split(",")[1]
    keep = [r for r in body if r.split(",")[1] != first_author] + [body[0]]
    short = tmp_path / "short.csv"
    short.write_text("\n".join([header, *keep]) + "\n", encoding="utf-8")
    assert main(["train", "--features", str(short), "--out", str(tmp_path / "o"), *FAST]) == 2
    assert first_author in capsys.readouterr().err


def test_config_file_and_flag_precedence(features, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# test\nalpha = 0.3\npasses=4\nseed=9\n", encoding="utf-8")
    out = tmp_path / "c"
    assert main(["cluster", "--config", str(cfg), "--features", str(features), "--out", str(out), "--seed", "5"]) == 0
    resolved = json.loads((out / "run_config.json").read_text())
    assert (float(resolved["alpha"]), int(resolved["passes"]), resolved["seed"]) == (0.3, 4, 5)


def test_config_unknown_key(features, tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("nonsense=1\n", encoding="utf-8")
    assert main(["cluster", "--config", str(cfg), "--features", str(features), "--out", str(tmp_path)]) == 1
    assert "nonsense" in capsys.readouterr().err


def test_config_supplies_required(features, tmp_path):
    out = tmp_path / "o"
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"features={features}\nout={out}\n", encoding="utf-8")
    assert main(["stats", "--config", str(cfg)]) == 0
    assert (out / "genre_report.json").exists()


def test_bad_threshold_is_data_error(features, tmp_path):
    assert main(["filter", "--features", str(features), "--out", str(tmp_path), "--threshold", "1.5"]) == 2


def test_report_is_deterministic_and_leaves_inputs_alone(corpus, tmp_path):
    before = tree_digest(corpus)
    args = ["report", "--corpus", str(corpus), "--svg", *FAST]
    assert main([*args, "--out", str(tmp_path / "r1")]) == 0
    assert main([*args, "--out", str(tmp_path / "r2")]) == 0
    d1, d2 = tree_digest(tmp_path / "r1"), tree_digest(tmp_path / "r2")
    d1.pop("run_config.json"), d2.pop("run_config.json")
    assert d1 == d2
    for name in ("features.csv", "catalog.csv", "scatter.svg", "genre_report.json",
                 "clusters.json", "model.json", "rates.json"):
        assert name in d1
    assert tree_digest(corpus) == before
