import pytest

from toltree.core import Instance
from toltree.corpus import (
    Dataset,
    ParseError,
    jitter_frequencies,
    load_dataset,
    sample_frequency_weighted,
    sample_log_binned,
    sample_top_n,
    save_dataset,
)


def make_ds(rows):
    tags = frozenset(t for _, feats, _, _ in rows for t in feats)
    return Dataset(
        tuple(Instance(l, frozenset(f), i, q) for l, f, i, q in rows), tags
    )


@pytest.fixture
def small(tmp_path):
    p = tmp_path / "small.tsv"
    p.write_text(
        "#features: past,plural\n"
        "# a comment line\n"
        "walk\tpast\twalked\t311\n"
        "dog\tplural\tdogs\t250\n"
        "sing\tpast\tsang\t100\n",
        encoding="utf-8",
    )
    return p


def test_load_parses_rows_in_order(small):
    ds = load_dataset(small)
    assert [i.lemma for i in ds.instances] == ["walk", "dog", "sing"]
    assert ds.instances[0] == Instance("walk", frozenset({"past"}), "walked", 311)
    assert ds.declared_feature_tags == {"past", "plural"}


def test_load_rejects_malformed_row(tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("#features: past\nwalk\tpast\twalked\n", encoding="utf-8")
    with pytest.raises(ParseError, match="bad.tsv:2"):
        load_dataset(p)


def test_load_rejects_empty_inflection(tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("#features: past\nwalk\tpast\t\t3\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_dataset(p)


def test_load_rejects_undeclared_feature(tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("#features: past\nwalk\tfuture\twalked\t3\n", encoding="utf-8")
    with pytest.raises(ParseError, match="undeclared"):
        load_dataset(p)


def test_save_load_round_trip(small, tmp_path):
    ds = load_dataset(small)
    out = tmp_path / "copy.tsv"
    save_dataset(ds, out)
    again = load_dataset(out)
    assert again.instances == ds.instances


def test_dataset_validates_tags():
    with pytest.raises(ValueError):
        Dataset((Instance("a", frozenset({"x"}), "ab", 1),), frozenset())


def test_weighted_sample_full_draw_is_everything():
    ds = make_ds([(f"w{i}", [], f"w{i}s", i + 1) for i in range(10)])
    s = sample_frequency_weighted(ds, 10, seed=0)
    assert sorted(i.lemma for i in s.instances) == sorted(i.lemma for i in ds.instances)


def test_weighted_sample_deterministic():
    ds = make_ds([(f"w{i}", [], f"w{i}s", i + 1) for i in range(30)])
    a = sample_frequency_weighted(ds, 10, seed=42)
    b = sample_frequency_weighted(ds, 10, seed=42)
    assert a.instances == b.instances
    c = sample_frequency_weighted(ds, 10, seed=43)
    assert a.instances != c.instances


def test_weighted_sample_prefers_high_frequency():
    ds = make_ds([("big", [], "bigs", 1_000_000), ("a", [], "as", 1), ("b", [], "bs", 1)])
    hits = sum(
        sample_frequency_weighted(ds, 1, seed=s).instances[0].lemma == "big"
        for s in range(2000)
    )
    assert hits > 1990


def test_weighted_sample_rejects_oversize():
    ds = make_ds([("a", [], "as", 1)])
    with pytest.raises(ValueError):
        sample_frequency_weighted(ds, 2, seed=0)


def test_log_binned_stages_are_nested_and_sized():
    rows = [(f"w{i:03d}", [], f"w{i:03d}s", float(10 ** (i / 25))) for i in range(100)]
    ds = make_ds(rows)
    stages = sample_log_binned(ds, bins=5, per_bin=10, seed=1)
    assert len(stages) == 5
    sizes = [len(s) for s in stages]
    assert sizes == sorted(sizes)
    for a, b in zip(stages, stages[1:]):
        assert set(i.lemma for i in a.instances) <= set(i.lemma for i in b.instances)


def test_log_binned_early_stages_are_high_frequency():
    rows = [(f"w{i:03d}", [], f"w{i:03d}s", float(10 ** (i / 25))) for i in range(100)]
    ds = make_ds(rows)
    stages = sample_log_binned(ds, bins=5, per_bin=10, seed=1)
    first = {i.lemma for i in stages[0].instances}
    median = sorted(i.frequency for i in ds.instances)[50]
    assert all(i.frequency >= median for i in ds.instances if i.lemma in first)


def test_log_binned_equal_frequencies_fall_back_to_rank_bins():
    ds = make_ds([(f"w{i}", [], f"w{i}s", 5.0) for i in range(20)])
    stages = sample_log_binned(ds, bins=4, per_bin=5, seed=0)
    assert [len(s) for s in stages] == [5, 10, 15, 20]


def test_jitter_bounds_and_determinism():
    ds = make_ds([(f"w{i}", [], f"w{i}s", float(i)) for i in range(50)])
    j1 = jitter_frequencies(ds, 0.0, 5.0, seed=9)
    j2 = jitter_frequencies(ds, 0.0, 5.0, seed=9)
    assert [i.frequency for i in j1.instances] == [i.frequency for i in j2.instances]
    for before, after in zip(ds.instances, j1.instances):
        assert 0.0 <= after.frequency - before.frequency <= 5.0


def test_jitter_identity_at_zero():
    ds = make_ds([("a", [], "as", 3.0)])
    assert jitter_frequencies(ds, 0.0, 0.0, seed=0).instances == ds.instances


def test_top_n():
    ds = make_ds([("lo", [], "los", 1), ("hi", [], "his", 100), ("mid", [], "mids", 10)])
    top = sample_top_n(ds, 2)
    assert [i.lemma for i in top.instances] == ["hi", "mid"]
