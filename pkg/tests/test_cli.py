import json
from pathlib import Path

import pytest

from toltree.cli import main

DATA = Path(__file__).resolve().parent.parent / "src" / "toltree" / "data"


def test_train_and_predict(tmp_path, capsys):
    tree_path = tmp_path / "tree.json"
    assert main(["train", str(DATA / "english-past.tsv"), "--out", str(tree_path)]) == 0
    assert json.loads(tree_path.read_text())["training_size"] == 108

    assert main(["predict", str(tree_path), "glɪk", "--features", "past"]) == 0
    out = capsys.readouterr().out
    assert "glɪkt\trule" in out


def test_predict_grammar_only_flag(tmp_path, capsys):
    tree_path = tmp_path / "tree.json"
    main(["train", str(DATA / "english-past.tsv"), "--out", str(tree_path)])
    capsys.readouterr()
    # pick an irregular from the fixture: first ablaut lemma ends in ŋ
    from toltree.fixtures import english_past_fixture
    from toltree.core import derive_change

    irregular = next(
        i for i in english_past_fixture().instances
        if derive_change(i.lemma, i.inflection).delete_count > 0
    )
    main(["predict", str(tree_path), irregular.lemma, "--features", "past"])
    assert irregular.inflection in capsys.readouterr().out
    main(["predict", str(tree_path), irregular.lemma, "--features", "past",
          "--no-exceptions"])
    assert irregular.lemma + "d" in capsys.readouterr().out


def test_train_with_sample_flag(tmp_path):
    tree_path = tmp_path / "tree.json"
    main(["train", str(DATA / "german.tsv"), "--sample", "400",
          "--seed", "3", "--out", str(tree_path)])
    doc = json.loads(tree_path.read_text())
    assert doc["training_size"] == 400


def test_export_tree(tmp_path, capsys):
    tree_path = tmp_path / "tree.json"
    main(["train", str(DATA / "english-past.tsv"), "--out", str(tree_path)])
    capsys.readouterr()
    assert main(["export-tree", str(tree_path)]) == 0
    out = capsys.readouterr().out
    assert "¬" in out and "[" in out


def test_acquisition_command(tmp_path):
    out = tmp_path / "acq.csv"
    main(["acquisition", str(DATA / "german.tsv"), "--children", "2",
          "--bins", "2", "--per-bin", "221", "--out", str(out)])
    lines = out.read_text().splitlines()
    assert lines[0] == "child,stage,vocab,change,acquired"
    assert len(lines) == 1 + 2 * 2 * 6


def test_growth_command(tmp_path):
    out = tmp_path / "growth.csv"
    main(["growth", str(DATA / "english.tsv"), "--test-set",
          str(DATA / "english-test.tsv"), "--children", "1",
          "--bins", "4", "--per-bin", "275", "--out", str(out)])
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 4


def test_wug_command_with_human_table(tmp_path):
    table = tmp_path / "wug.csv"
    corr = tmp_path / "corr.csv"
    human = tmp_path / "human.csv"
    main(["wug", str(DATA / "german.tsv"), "--stimuli",
          str(DATA / "german-wug-stimuli.tsv"), "--children", "4",
          "--out", str(table)])
    # use the model's own output as the human table
    rows = table.read_text().splitlines()[1:]
    with human.open("w") as fh:
        fh.write("stimulus,suffix,probability\n")
        for row in rows:
            stim, gender, cond, suffix, p = row.split(",")
            if gender == "?":
                fh.write(f"{stim},{suffix},{p}\n")
    main(["wug", str(DATA / "german.tsv"), "--stimuli",
          str(DATA / "german-wug-stimuli.tsv"), "--children", "4",
          "--human-table", str(human), "--out", str(table),
          "--correlations-out", str(corr)])
    corr_lines = corr.read_text().splitlines()
    assert corr_lines[0] == "suffix,n,rho,significant"
    for line in corr_lines[1:]:
        assert line.split(",")[2] == "1.000000"


def test_missing_subcommand_errors():
    with pytest.raises(SystemExit):
        main([])
