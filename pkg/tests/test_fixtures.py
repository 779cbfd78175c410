from collections import Counter
from pathlib import Path

from toltree.core import derive_change
from toltree.corpus import load_dataset
from toltree.fixtures import (
    BIN_SIZE,
    N_BINS,
    english_fixture,
    english_past_fixture,
    english_test_fixture,
    german_fixture,
    german_wug_stimuli,
)

DATA = Path(__file__).resolve().parent.parent / "src" / "toltree" / "data"


def test_english_past_composition():
    ds = english_past_fixture()
    changes = Counter(derive_change(i.lemma, i.inflection) for i in ds.instances)
    suffixal = {c for c in changes if c.delete_count == 0}
    assert {c.suffix for c in suffixal} == {"t", "d", "ɪd"}
    irregular = sum(v for c, v in changes.items() if c.delete_count > 0)
    assert irregular == 8
    assert sum(v for c, v in changes.items() if c.delete_count == 0) >= 100


def test_english_past_lemmas_unique():
    ds = english_past_fixture()
    lemmas = [i.lemma for i in ds.instances]
    assert len(lemmas) == len(set(lemmas))


def test_english_developmental_grid():
    ds = english_fixture()
    assert len(ds) == N_BINS * BIN_SIZE
    freqs = sorted(i.frequency for i in ds.instances)
    assert freqs[0] == 1.0
    assert freqs[-1] == 10.0 ** (0.3 * N_BINS)
    tags = Counter(next(iter(i.features)) for i in ds.instances)
    assert set(tags) == {"past", "plural", "progressive"}


def test_english_test_items_disjoint_from_training():
    train_lemmas = {i.lemma for i in english_fixture().instances}
    test = english_test_fixture()
    assert len(test) == 60
    assert not train_lemmas & {i.lemma for i in test.instances}
    # all held-out items are regular
    for i in test.instances:
        assert derive_change(i.lemma, i.inflection).delete_count == 0


def test_german_class_counts():
    ds = german_fixture()
    assert len(ds) == 442
    suffixes = Counter(
        i.inflection[len(i.lemma):] for i in ds.instances
    )
    assert suffixes["s"] == 8
    assert suffixes["er"] == 15
    assert suffixes["n"] + suffixes["en"] > suffixes["e"] > suffixes[""]
    genders = {next(iter(i.features)) for i in ds.instances}
    assert genders == {"feminine", "masculine", "neuter"}


def test_german_s_words_are_only_ou_finals():
    ds = german_fixture()
    for i in ds.instances:
        takes_s = i.inflection == i.lemma + "s"
        assert takes_s == (i.lemma[-1] in "oua")


def test_wug_stimuli_shape():
    stimuli = german_wug_stimuli()
    assert len(stimuli) == 24
    conditions = Counter(c for _, _, c in stimuli)
    assert conditions == {"R": 12, "NR": 12}
    lemmas = [l for l, _, _ in stimuli]
    assert len(lemmas) == len(set(lemmas))
    train_lemmas = {i.lemma for i in german_fixture().instances}
    assert not train_lemmas & set(lemmas)


def test_generated_files_match_generators():
    for name, fixture in [
        ("english-past", english_past_fixture),
        ("english", english_fixture),
        ("english-test", english_test_fixture),
        ("german", german_fixture),
    ]:
        on_disk = load_dataset(DATA / f"{name}.tsv")
        assert on_disk.instances == fixture().instances, name
