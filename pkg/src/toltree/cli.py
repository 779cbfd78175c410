"""Command-line entry point.

Subcommands: train, predict, acquisition, growth, wug, export-tree.
All randomness flows from --seed; results are identical for any --workers.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .corpus import load_dataset, sample_frequency_weighted, sample_top_n
from .harness import (
    GrowthSpec,
    load_human_table,
    load_stimuli,
    run_accuracy_growth,
    run_acquisition,
    run_wug,
)
from .production import ANALOGY_APPLY_CHANGE, ANALOGY_VERBATIM, Query, inflect
from .serialize import load_tree, save_graph, save_tree, tree_to_graph
from .tree import TrainConfig, train


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--max-ending-len", type=int, default=3,
                   help="longest lemma ending considered during induction")


def _add_growth(p: argparse.ArgumentParser) -> None:
    _add_common(p)
    p.add_argument("--children", type=int, default=100,
                   help="number of simulated learners")
    p.add_argument("--bins", type=int, default=20, help="frequency bins")
    p.add_argument("--per-bin", type=int, default=50, help="words added per stage")
    p.add_argument("--jitter", type=float, nargs=2, default=(0.0, 0.0),
                   metavar=("LO", "HI"), help="uniform frequency jitter range")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, help="output CSV path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toltree",
        description="Tolerance-gated rule-tree learning for inflection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train on a dataset and save the tree")
    _add_common(p)
    p.add_argument("dataset")
    p.add_argument("--sample", type=int, default=None,
                   help="train on a frequency-weighted sample of this size")
    p.add_argument("--vocab-size", type=int, default=None,
                   help="train on the top-n items by frequency")
    p.add_argument("--out", required=True, help="tree JSON output path")

    p = sub.add_parser("predict", help="inflect a lemma with a saved tree")
    p.add_argument("tree")
    p.add_argument("lemma")
    p.add_argument("--features", default="",
                   help="comma-separated known feature tags")
    p.add_argument("--unknown", default="",
                   help="comma-separated tags declared unknown")
    p.add_argument("--analogy-mode", default=ANALOGY_APPLY_CHANGE,
                   choices=[ANALOGY_APPLY_CHANGE, ANALOGY_VERBATIM])
    p.add_argument("--no-exceptions", action="store_true",
                   help="probe the grammar without the exception lookup")

    p = sub.add_parser("acquisition", help="rule-acquisition curves")
    _add_growth(p)
    p.add_argument("dataset")

    p = sub.add_parser("growth", help="developmental accuracy curves")
    _add_growth(p)
    p.add_argument("dataset")
    p.add_argument("--test-set", required=True, help="held-out dataset path")

    p = sub.add_parser("wug", help="nonce-word production table")
    _add_common(p)
    p.add_argument("dataset")
    p.add_argument("--stimuli", required=True, help="tab-separated stimuli file")
    p.add_argument("--children", type=int, default=500,
                   help="number of independently trained models")
    p.add_argument("--sample", type=int, default=400,
                   help="frequency-weighted sample size per model")
    p.add_argument("--human-table", default=None,
                   help="CSV of stimulus,suffix,probability for correlation")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, help="production table CSV path")
    p.add_argument("--correlations-out", default=None)

    p = sub.add_parser("export-tree", help="render a saved tree as a graph")
    p.add_argument("tree")
    p.add_argument("--out", default=None, help="write here instead of stdout")

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)

    if args.command == "train":
        ds = load_dataset(args.dataset)
        if args.sample is not None:
            ds = sample_frequency_weighted(ds, args.sample, args.seed)
        if args.vocab_size is not None:
            ds = sample_top_n(ds, args.vocab_size)
        tree = train(list(ds.instances),
                     config=TrainConfig(max_ending_len=args.max_ending_len))
        save_tree(tree, args.out)
        print(f"trained on {len(ds)} instances -> {args.out}")
        return 0

    if args.command == "predict":
        tree = load_tree(args.tree)
        known = frozenset(t for t in args.features.split(",") if t)
        unknown = frozenset(t for t in args.unknown.split(",") if t)
        res = inflect(
            tree,
            Query(args.lemma, known, unknown),
            use_exceptions=not args.no_exceptions,
            analogy_mode=args.analogy_mode,
        )
        provenance = res.kind
        if res.neighbor:
            provenance += f" (neighbor {res.neighbor})"
        print(f"{res.inflection}\t{provenance}")
        return 0

    if args.command == "acquisition":
        ds = load_dataset(args.dataset)
        spec = GrowthSpec(
            children=args.children, bins=args.bins, per_bin=args.per_bin,
            jitter=tuple(args.jitter), master_seed=args.seed,
            config=TrainConfig(max_ending_len=args.max_ending_len),
        )
        run_acquisition(ds, spec, out=args.out, workers=args.workers)
        print(f"acquisition table -> {args.out}")
        return 0

    if args.command == "growth":
        ds = load_dataset(args.dataset)
        test_ds = load_dataset(args.test_set)
        spec = GrowthSpec(
            children=args.children, bins=args.bins, per_bin=args.per_bin,
            jitter=tuple(args.jitter), master_seed=args.seed,
            config=TrainConfig(max_ending_len=args.max_ending_len),
        )
        run_accuracy_growth(ds, test_ds, spec, out=args.out, workers=args.workers)
        print(f"accuracy table -> {args.out}")
        return 0

    if args.command == "wug":
        ds = load_dataset(args.dataset)
        stimuli = load_stimuli(args.stimuli)
        human = load_human_table(args.human_table) if args.human_table else None
        run_wug(
            ds, stimuli,
            models=args.children, sample_n=args.sample, master_seed=args.seed,
            config=TrainConfig(max_ending_len=args.max_ending_len),
            human_table=human, out=args.out,
            correlations_out=args.correlations_out, workers=args.workers,
        )
        print(f"wug table -> {args.out}")
        return 0

    if args.command == "export-tree":
        tree = load_tree(args.tree)
        text = tree_to_graph(tree)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            print(f"graph -> {args.out}")
        else:
            sys.stdout.write(text)
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    raise SystemExit(main())
