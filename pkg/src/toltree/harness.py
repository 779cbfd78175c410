"""Experiment orchestration: acquisition curves, developmental accuracy,
and nonce-word (wug) production tables.

Every run is a pure function of (datasets, master seed): per-child seeds are
spawned from the master seed by index, so adding children never changes
earlier children, and rows are sorted before emission, so the worker count
cannot affect the output bytes.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .core import Categorical, Change, Instance, derive_change
from .corpus import Dataset, jitter_frequencies, sample_frequency_weighted, sample_log_binned
from .production import Query, inflect
from .stats import UndefinedCorrelation, spearman
from .tree import LearnedTree, TrainConfig, train

IRREGULAR_SHARE = 0.05  # a change this rare within its feature group is irregular

WUG_SUFFIX_ROWS = ("-(e)n", "-e", "-∅", "-er", "-s", "other")


def derive_child_seeds(master_seed: int, children: int) -> list[list[int]]:
    """Two integer seeds per child (jitter, sampling), spawned by child index
    so child i's seeds never depend on how many children follow."""
    spawned = np.random.SeedSequence(master_seed).spawn(children)
    return [[int(s) for s in ss.generate_state(2)] for ss in spawned]


def declared_features(ds: Dataset) -> list[Categorical]:
    return [Categorical(t) for t in sorted(ds.declared_feature_tags)]


def full_data_irregulars(ds: Dataset) -> frozenset[tuple[str, frozenset[str]]]:
    """Instances whose change covers less than IRREGULAR_SHARE of the
    instances sharing their categorical feature set, judged on the full
    dataset so the notion is stable across vocabulary stages."""
    group_counts: Counter = Counter()
    change_counts: Counter = Counter()
    changes = {}
    for inst in ds.instances:
        c = derive_change(inst.lemma, inst.inflection)
        changes[(inst.lemma, inst.features)] = c
        group_counts[inst.features] += 1
        change_counts[(inst.features, c)] += 1
    out = set()
    for (lemma, features), c in changes.items():
        share = change_counts[(features, c)] / group_counts[features]
        if share < IRREGULAR_SHARE:
            out.add((lemma, features))
    return frozenset(out)


def change_universe(ds: Dataset) -> list[Change]:
    """Distinct changes in the dataset, canonical report order: most frequent
    first, then the canonical change order."""
    from .core import change_sort_key

    counts = Counter(derive_change(i.lemma, i.inflection) for i in ds.instances)
    return sorted(counts, key=lambda c: (-counts[c],) + change_sort_key(c))


@dataclass(frozen=True)
class GrowthSpec:
    """Shared knobs for the developmental runs."""

    children: int = 100
    bins: int = 20
    per_bin: int = 50
    jitter: tuple[float, float] = (0.0, 0.0)
    master_seed: int = 0
    config: TrainConfig = field(default_factory=TrainConfig)


def _stage_trees(ds: Dataset, spec: GrowthSpec, seeds: list[int]) -> list[tuple[Dataset, LearnedTree]]:
    jitter_seed, sample_seed = seeds
    working = ds
    if spec.jitter != (0.0, 0.0):
        working = jitter_frequencies(ds, spec.jitter[0], spec.jitter[1], jitter_seed)
    feats = declared_features(ds)
    stages = sample_log_binned(working, spec.bins, spec.per_bin, sample_seed)
    return [(stage, train(list(stage.instances), feats, spec.config)) for stage in stages]


# --- acquisition ---------------------------------------------------------


def _acquisition_child(args) -> list[tuple]:
    ds, spec, child, seeds, universe = args
    rows = []
    for stage_no, (stage, tree) in enumerate(_stage_trees(ds, spec, seeds), start=1):
        acquired = tree.rule_changes()
        for change in universe:
            rows.append(
                (child, stage_no, len(stage), change.label(), int(change in acquired))
            )
    return rows


def run_acquisition(
    ds: Dataset,
    spec: GrowthSpec,
    out: Union[str, Path, None] = None,
    workers: int = 1,
) -> str:
    """Tidy acquisition table: child, stage, vocab, change, acquired."""
    universe = change_universe(ds)
    seeds = derive_child_seeds(spec.master_seed, spec.children)
    tasks = [(ds, spec, child, seeds[child], universe) for child in range(spec.children)]
    results = _map_tasks(_acquisition_child, tasks, workers)
    rows = sorted(row for chunk in results for row in chunk)
    return _emit(
        ["child", "stage", "vocab", "change", "acquired"], rows, out
    )


# --- accuracy growth -----------------------------------------------------


def classify_error(result) -> str:
    """Taxonomy of a wrong production: a rule leaf fired on an item whose
    correct form is an exception (over-regularization), an irregular form
    surfaced although a rule could have applied (irregularization), or
    analogy answered because no rule was compatible."""
    if result.kind == "rule":
        return "over-regularization"
    if result.rule_was_compatible:
        return "irregularization"
    return "analogy-no-rule"


def _growth_child(args) -> list[tuple]:
    ds, test_ds, spec, child, seeds, irregulars = args
    rows = []
    for stage_no, (stage, tree) in enumerate(_stage_trees(ds, spec, seeds), start=1):
        taxonomy = Counter()
        correct = 0
        for inst in test_ds.instances:
            res = inflect(tree, Query(inst.lemma, inst.features))
            if res.inflection == inst.inflection:
                correct += 1
            else:
                taxonomy[classify_error(res)] += 1
        test_acc = correct / len(test_ds) if len(test_ds) else 1.0

        # U-shape trace: what the grammar alone says about the training
        # irregulars present at this stage.  With the exception lookup on,
        # training accuracy is 1.0 by construction and no dip can show.
        present = [
            inst for inst in stage.instances
            if (inst.lemma, inst.features) in irregulars
        ]
        if present:
            ok = sum(
                1
                for inst in present
                if inflect(tree, Query(inst.lemma, inst.features),
                           use_exceptions=False).inflection == inst.inflection
            )
            irr_acc = ok / len(present)
        else:
            irr_acc = 1.0  # vacuously: nothing to over-regularize yet
        rows.append(
            (
                child,
                stage_no,
                len(stage),
                f"{test_acc:.6f}",
                f"{irr_acc:.6f}",
                len(present),
                taxonomy["over-regularization"],
                taxonomy["irregularization"],
                taxonomy["analogy-no-rule"],
            )
        )
    return rows


def run_accuracy_growth(
    ds: Dataset,
    test_ds: Dataset,
    spec: GrowthSpec,
    out: Union[str, Path, None] = None,
    workers: int = 1,
) -> str:
    """Per child and stage: held-out accuracy, grammar-only accuracy on the
    training irregulars present, and the held-out error taxonomy."""
    irregulars = full_data_irregulars(ds)
    seeds = derive_child_seeds(spec.master_seed, spec.children)
    tasks = [
        (ds, test_ds, spec, child, seeds[child], irregulars)
        for child in range(spec.children)
    ]
    results = _map_tasks(_growth_child, tasks, workers)
    rows = sorted(row for chunk in results for row in chunk)
    return _emit(
        [
            "child", "stage", "vocab", "test_accuracy",
            "train_irregular_accuracy", "n_train_irregulars",
            "over_regularization", "irregularization", "analogy_no_rule",
        ],
        rows,
        out,
    )


# --- wug -----------------------------------------------------------------


@dataclass(frozen=True)
class WugStimulus:
    lemma: str
    gender: str  # declared gender tag or "?" for unknown
    condition: str  # "R" (rhyme) or "NR" (non-rhyme)


def load_stimuli(path: Union[str, Path]) -> list[WugStimulus]:
    """Tab-separated stimuli: lemma, gender-or-"?", class (R|NR)."""
    out = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 3 fields, got {len(parts)}")
        out.append(WugStimulus(*parts))
    return out


def wug_suffix_label(lemma: str, form: str) -> str:
    """Fold a produced form into the reporting rows; any change that is not
    pure suffixation by one of the tracked plural endings counts as other."""
    if not form.startswith(lemma):
        return "other"
    suffix = form[len(lemma):]
    if suffix in ("n", "en"):
        return "-(e)n"
    if suffix == "":
        return "-∅"
    if suffix in ("e", "er", "s"):
        return f"-{suffix}"
    return "other"


def _wug_model(args) -> list[tuple]:
    ds, stimuli, sample_n, seeds, config, gender_tags = args
    sample = sample_frequency_weighted(ds, sample_n, seeds[1])
    tree = train(list(sample.instances), declared_features(ds), config)
    rows = []
    for stim in stimuli:
        # Always probe gender-unknown; additionally probe the declared gender
        # as known when the stimulus provides one.
        conditions = [("?", Query(stim.lemma, frozenset(), gender_tags))]
        if stim.gender != "?":
            conditions.append((stim.gender, Query(stim.lemma, frozenset({stim.gender}))))
        for gender, query in conditions:
            res = inflect(tree, query)
            rows.append((stim.lemma, gender, stim.condition,
                         wug_suffix_label(stim.lemma, res.inflection)))
    return rows


def run_wug(
    ds: Dataset,
    stimuli: Sequence[WugStimulus],
    models: int = 500,
    sample_n: int = 400,
    master_seed: int = 0,
    config: TrainConfig = TrainConfig(),
    human_table: Optional[dict[tuple[str, str], float]] = None,
    out: Union[str, Path, None] = None,
    correlations_out: Union[str, Path, None] = None,
    workers: int = 1,
) -> tuple[str, str]:
    """Production-probability table over independently trained models.

    The probability of (stimulus, gender condition, suffix) is the fraction
    of models producing that suffix.  When a human table {(stimulus, suffix):
    probability} is supplied, a per-suffix rank correlation against the
    gender-unknown condition is emitted; suffixes without rank variance in
    either vector are skipped.
    """
    gender_tags = frozenset(ds.declared_feature_tags)
    seeds = derive_child_seeds(master_seed, models)
    tasks = [(ds, list(stimuli), sample_n, seeds[m], config, gender_tags)
             for m in range(models)]
    results = _map_tasks(_wug_model, tasks, workers)

    counts: Counter = Counter()
    for chunk in results:
        for lemma, gender, condition, suffix in chunk:
            counts[(lemma, gender, condition, suffix)] += 1

    keys = sorted({(lemma, gender, condition) for lemma, gender, condition, _ in counts})
    rows = []
    for lemma, gender, condition in keys:
        for suffix in WUG_SUFFIX_ROWS:
            p = counts[(lemma, gender, condition, suffix)] / models
            rows.append((lemma, gender, condition, suffix, f"{p:.6f}"))
    table = _emit(["stimulus", "gender", "condition", "suffix", "probability"], rows, out)

    corr_rows = []
    if human_table is not None:
        by_suffix: dict[str, list[tuple[str, float]]] = {s: [] for s in WUG_SUFFIX_ROWS}
        for lemma, gender, condition, suffix, p in rows:
            if gender == "?":
                by_suffix[suffix].append((lemma, float(p)))
        for suffix in WUG_SUFFIX_ROWS:
            pairs = [
                (p, human_table.get((lemma, suffix)))
                for lemma, p in by_suffix[suffix]
                if (lemma, suffix) in human_table
            ]
            if len(pairs) < 2:
                continue
            try:
                r = spearman([a for a, _ in pairs], [b for _, b in pairs])
            except UndefinedCorrelation:
                continue  # constant column; rank correlation undefined
            corr_rows.append((suffix, len(pairs), f"{r.rho:.6f}", int(r.significant)))
    correlations = _emit(["suffix", "n", "rho", "significant"], corr_rows, correlations_out)
    return table, correlations


def load_human_table(path: Union[str, Path]) -> dict[tuple[str, str], float]:
    """Comma-separated stimulus,suffix,probability rows."""
    out = {}
    with Path(path).open(encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#") or row[0] == "stimulus":
                continue
            stimulus, suffix, prob = row
            out[(stimulus, suffix)] = float(prob)
    return out


# --- shared plumbing -----------------------------------------------------


def _map_tasks(fn, tasks: list, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (workers * 4))))


def _emit(header: list[str], rows: Iterable[tuple], out: Union[str, Path, None]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    text = buf.getvalue()
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return text
