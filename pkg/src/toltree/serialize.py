"""Tree export and reloading.

Two formats: a JSON document that round-trips every split, rule, memorized
exception, and per-node productivity verdict; and a plain-text graph
description for rendering, where ending sets appear bracketed and
"|"-separated and the absent branch of a split is prefixed with "¬".
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .core import Categorical, Change, EndingSet, Feature
from .tolerance import TpVerdict
from .tree import Internal, Leaf, LearnedTree, MemEntry, TrainConfig

FORMAT_VERSION = 1


def _feature_to_json(feature: Feature) -> dict:
    if isinstance(feature, Categorical):
        return {"kind": "categorical", "tag": feature.tag}
    return {"kind": "endings", "endings": sorted(feature.endings)}


def _feature_from_json(obj: dict) -> Feature:
    if obj["kind"] == "categorical":
        return Categorical(obj["tag"])
    if obj["kind"] == "endings":
        return EndingSet(frozenset(obj["endings"]))
    raise ValueError(f"unknown feature kind {obj['kind']!r}")


def _change_to_json(change: Change) -> list:
    return [change.delete_count, change.suffix]


def _verdict_to_json(v: TpVerdict) -> dict:
    return {"n": v.n, "e": v.e, "threshold": v.threshold, "productive": v.productive}


def _verdict_from_json(obj: dict) -> TpVerdict:
    return TpVerdict(obj["n"], obj["e"], obj["threshold"], obj["productive"])


def _node_to_json(node) -> dict:
    if isinstance(node, Leaf):
        return {
            "kind": "leaf",
            "rule": _change_to_json(node.rule) if node.rule is not None else None,
            "n": node.n,
            "rule_support": node.rule_support,
            "verdict": _verdict_to_json(node.verdict),
            "memorized": [
                {
                    "lemma": lemma,
                    "features": sorted(features),
                    "inflection": entry.inflection,
                    "change": _change_to_json(entry.change),
                    "frequency": entry.frequency,
                }
                for (lemma, features), entry in sorted(node.memorized.items())
            ],
        }
    return {
        "kind": "split",
        "feature": _feature_to_json(node.split),
        "n": node.n,
        "verdict": _verdict_to_json(node.verdict),
        "present": _node_to_json(node.present),
        "absent": _node_to_json(node.absent),
    }


def _node_from_json(obj: dict):
    if obj["kind"] == "leaf":
        memorized = {
            (m["lemma"], frozenset(m["features"])): MemEntry(
                m["inflection"], Change(*m["change"]), m["frequency"]
            )
            for m in obj["memorized"]
        }
        rule = Change(*obj["rule"]) if obj["rule"] is not None else None
        return Leaf(
            rule=rule,
            memorized=memorized,
            n=obj["n"],
            rule_support=obj["rule_support"],
            verdict=_verdict_from_json(obj["verdict"]),
        )
    return Internal(
        split=_feature_from_json(obj["feature"]),
        present=_node_from_json(obj["present"]),
        absent=_node_from_json(obj["absent"]),
        n=obj["n"],
        verdict=_verdict_from_json(obj["verdict"]),
    )


def tree_to_json(tree: LearnedTree) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "training_size": tree.training_size,
        "declared_tags": sorted(tree.declared_tags),
        "config": {"max_ending_len": tree.config.max_ending_len},
        "feature_space": [_feature_to_json(f) for f in tree.feature_space],
        "root": _node_to_json(tree.root),
    }


def tree_from_json(obj: dict) -> LearnedTree:
    version = obj.get("format_version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported tree format version {version!r}")
    return LearnedTree(
        root=_node_from_json(obj["root"]),
        feature_space=[_feature_from_json(f) for f in obj["feature_space"]],
        training_size=obj["training_size"],
        declared_tags=frozenset(obj["declared_tags"]),
        config=TrainConfig(max_ending_len=obj["config"]["max_ending_len"]),
    )


def save_tree(tree: LearnedTree, path: Union[str, Path]) -> None:
    Path(path).write_text(
        json.dumps(tree_to_json(tree), ensure_ascii=False, indent=2, sort_keys=True)
        + "\n",
        encoding="utf-8",
    )


def load_tree(path: Union[str, Path]) -> LearnedTree:
    return tree_from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def _leaf_label(leaf: Leaf) -> str:
    head = leaf.rule.label() if leaf.rule is not None else "memorized"
    stats = f"n={leaf.n} e={leaf.n - leaf.rule_support}"
    if leaf.memorized:
        return f"{head} ({stats}, {len(leaf.memorized)} exceptions)"
    return f"{head} ({stats})"


def tree_to_graph(tree: LearnedTree) -> str:
    """Indented edge list: each split line shows the feature condition, the
    present branch below it, and the absent branch prefixed with "¬"."""
    lines: list[str] = []

    def walk(node, condition: str, indent: int) -> None:
        pad = "  " * indent
        if isinstance(node, Leaf):
            lines.append(f"{pad}{condition} → {_leaf_label(node)}")
            return
        desc = node.split.describe()
        lines.append(f"{pad}{condition} → split {desc} (n={node.n})")
        walk(node.present, desc, indent + 1)
        walk(node.absent, f"¬{desc}", indent + 1)

    walk(tree.root, "start", 0)
    return "\n".join(lines) + "\n"


def save_graph(tree: LearnedTree, path: Union[str, Path]) -> None:
    Path(path).write_text(tree_to_graph(tree), encoding="utf-8")
