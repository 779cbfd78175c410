import csv
import io
from collections import Counter

import pytest

from toltree.core import Instance
from toltree.corpus import Dataset
from toltree.fixtures import english_fixture, german_fixture, german_wug_stimuli
from toltree.harness import (
    GrowthSpec,
    WugStimulus,
    change_universe,
    derive_child_seeds,
    full_data_irregulars,
    run_accuracy_growth,
    run_acquisition,
    run_wug,
    wug_suffix_label,
)


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def tiny_regular_ds():
    instances = [
        Instance(f"walk{i:02d}", frozenset({"past"}), f"walk{i:02d}ed", float(i + 1))
        for i in range(12)
    ]
    return Dataset(tuple(instances), frozenset({"past"}), name="tiny")


def test_child_seeds_stable_under_extension():
    first = derive_child_seeds(7, 3)
    more = derive_child_seeds(7, 10)
    assert more[:3] == first


def test_full_data_irregulars_on_english():
    ds = english_fixture()
    irregulars = full_data_irregulars(ds)
    assert len(irregulars) == 48  # 8 classes x 6 members
    for lemma, features in irregulars:
        assert features == frozenset({"past"})


def test_change_universe_most_frequent_first():
    ds = german_fixture()
    universe = change_universe(ds)
    assert universe[0].label() == "-n"
    assert len(universe) == 6


def test_acquisition_trivial_corpus():
    ds = tiny_regular_ds()
    spec = GrowthSpec(children=1, bins=1, per_bin=12, master_seed=0)
    table = rows_of(run_acquisition(ds, spec))
    assert len(table) == 1
    assert table[0]["change"] == "-ed"
    assert table[0]["acquired"] == "1"


def test_acquisition_rows_cover_all_stages_and_changes():
    ds = german_fixture()
    spec = GrowthSpec(children=2, bins=4, per_bin=100, master_seed=1)
    table = rows_of(run_acquisition(ds, spec))
    assert len(table) == 2 * 4 * 6
    stages = {(r["child"], r["stage"]) for r in table}
    assert len(stages) == 8


def test_growth_exceptionless_fixture_perfect():
    ds = tiny_regular_ds()
    test_ds = Dataset(
        (Instance("jump", frozenset({"past"}), "jumped", 1.0),),
        frozenset({"past"}),
    )
    spec = GrowthSpec(children=2, bins=2, per_bin=6, master_seed=0)
    table = rows_of(run_accuracy_growth(ds, test_ds, spec))
    assert all(r["test_accuracy"] == "1.000000" for r in table)
    assert all(r["train_irregular_accuracy"] == "1.000000" for r in table)


def test_growth_table_consistent_with_acquisition():
    ds = english_fixture()
    from toltree.fixtures import english_test_fixture

    spec = GrowthSpec(children=1, bins=20, per_bin=50, master_seed=3)
    growth = rows_of(run_accuracy_growth(ds, english_test_fixture(), spec))
    acq = rows_of(run_acquisition(ds, spec))
    assert len(growth) == 20
    # Any stage reporting an over-regularization error has some acquired rule.
    acquired_by_stage = {
        r["stage"]: True
        for r in acq
        if r["acquired"] == "1"
    }
    for r in growth:
        if int(r["over_regularization"]) > 0:
            assert acquired_by_stage.get(r["stage"])


def test_workers_do_not_change_output():
    ds = german_fixture()
    spec = GrowthSpec(children=4, bins=2, per_bin=200, master_seed=5)
    assert run_acquisition(ds, spec, workers=1) == run_acquisition(ds, spec, workers=3)


def test_wug_probabilities_sum_to_one():
    ds = german_fixture()
    stimuli = [WugStimulus(l, g, c) for l, g, c in german_wug_stimuli()[:6]]
    table, _ = run_wug(ds, stimuli, models=5, sample_n=400, master_seed=0)
    sums = Counter()
    for r in rows_of(table):
        sums[(r["stimulus"], r["gender"])] += float(r["probability"])
    assert sums
    for total in sums.values():
        assert total == pytest.approx(1.0, abs=1e-9)


def test_wug_single_model_probabilities_are_binary():
    ds = german_fixture()
    stimuli = [WugStimulus(l, g, c) for l, g, c in german_wug_stimuli()[:4]]
    table, _ = run_wug(ds, stimuli, models=1, sample_n=442, master_seed=0)
    for r in rows_of(table):
        assert r["probability"] in ("0.000000", "1.000000")


def test_wug_self_correlation_is_one():
    ds = german_fixture()
    stimuli = [WugStimulus(l, g, c) for l, g, c in german_wug_stimuli()]
    table, _ = run_wug(ds, stimuli, models=8, sample_n=400, master_seed=2)
    human = {
        (r["stimulus"], r["suffix"]): float(r["probability"])
        for r in rows_of(table)
        if r["gender"] == "?"
    }
    _, corr = run_wug(
        ds, stimuli, models=8, sample_n=400, master_seed=2, human_table=human
    )
    corr_rows = rows_of(corr)
    assert corr_rows  # at least one suffix has rank variance
    for r in corr_rows:
        assert float(r["rho"]) == pytest.approx(1.0)


def test_wug_probes_declared_gender_too():
    ds = german_fixture()
    stimuli = [WugStimulus("knime", "feminine", "R")]
    table, _ = run_wug(ds, stimuli, models=2, sample_n=442, master_seed=0)
    genders = {r["gender"] for r in rows_of(table)}
    assert genders == {"?", "feminine"}


def test_wug_suffix_label_folding():
    assert wug_suffix_label("hund", "hunde") == "-e"
    assert wug_suffix_label("hund", "hunden") == "-(e)n"
    assert wug_suffix_label("oma", "oman") == "-(e)n"
    assert wug_suffix_label("auto", "autos") == "-s"
    assert wug_suffix_label("wagen", "wagen") == "-∅"
    assert wug_suffix_label("kind", "kinder") == "-er"
    assert wug_suffix_label("mann", "männer") == "other"
    assert wug_suffix_label("haus", "hausest") == "other"
