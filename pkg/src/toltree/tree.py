"""Recursive, tolerance-gated growth of a morphological rule tree.

Each node checks whether its most frequent change is productive over the
instances that reach it.  If so, the node becomes a rule leaf and the
nonconforming instances are memorized there.  Otherwise new ending-set
features are induced, uninformative features are discarded, and the node
splits on the feature whose bearers most consistently share a change.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import (
    Categorical,
    Change,
    Feature,
    Instance,
    change_sort_key,
    derive_change,
    feature_sort_key,
)
from .endings import (
    DEFAULT_MAX_ENDING_LEN,
    ending_index,
    endings_of,
    induce_ending_features,
)
from .tolerance import TpVerdict, is_productive


@dataclass(frozen=True)
class TrainConfig:
    max_ending_len: int = DEFAULT_MAX_ENDING_LEN


@dataclass(frozen=True)
class SplitScore:
    feature: Feature
    subset_size: int
    top_change_freq: int
    consistency: float


@dataclass(frozen=True)
class MemEntry:
    """A memorized (lemma, features) -> inflection mapping with the metadata
    analogy needs: the derived change and the training frequency."""

    inflection: str
    change: Change
    frequency: float


@dataclass
class Leaf:
    rule: Optional[Change]
    memorized: dict[tuple[str, frozenset[str]], MemEntry]
    n: int
    rule_support: int
    verdict: TpVerdict

    @property
    def consistency(self) -> float:
        return self.rule_support / self.n if self.n else 0.0


@dataclass
class Internal:
    split: Feature
    present: "Node"
    absent: "Node"
    n: int
    verdict: TpVerdict


Node = Union[Leaf, Internal]


@dataclass
class LearnedTree:
    root: Node
    feature_space: list[Feature]
    training_size: int
    declared_tags: frozenset[str]
    config: TrainConfig = field(default_factory=TrainConfig)

    def iter_nodes(self):
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            yield node, depth
            if isinstance(node, Internal):
                stack.append((node.absent, depth + 1))
                stack.append((node.present, depth + 1))

    def rule_changes(self) -> set[Change]:
        """Changes that appear as the productive rule of some leaf."""
        return {
            node.rule
            for node, _ in self.iter_nodes()
            if isinstance(node, Leaf) and node.rule is not None
        }

    def rule_leaves(self) -> list[Leaf]:
        return [
            node
            for node, _ in self.iter_nodes()
            if isinstance(node, Leaf) and node.rule is not None
        ]


def node_verdict(
    instances: list[Instance], changes: Optional[list[Change]] = None
) -> tuple[Change, TpVerdict]:
    """Most frequent change at a node and its productivity verdict."""
    if not instances:
        raise ValueError("node_verdict needs a nonempty instance set")
    if changes is None:
        changes = [derive_change(i.lemma, i.inflection) for i in instances]
    counts = Counter(changes)
    top = min(counts, key=lambda c: (-counts[c],) + change_sort_key(c))
    n = len(instances)
    return top, is_productive(n, n - counts[top])


def best_split(
    instances: list[Instance],
    usable_features: list[Feature],
    changes: Optional[list[Change]] = None,
) -> Optional[SplitScore]:
    """Pick the feature whose bearers most consistently share one change.

    Ties go to the larger subset, then to the canonical feature order.
    Features uniform over the instances must have been filtered out already;
    they are skipped defensively here.
    """
    if changes is None:
        changes = [derive_change(i.lemma, i.inflection) for i in instances]
    best: Optional[SplitScore] = None
    for f in sorted(usable_features, key=feature_sort_key):
        member_changes = [
            c for inst, c in zip(instances, changes) if f.matches(inst.lemma, inst.features)
        ]
        size = len(member_changes)
        if size == 0 or size == len(instances):
            continue
        top_freq = max(Counter(member_changes).values())
        consistency = top_freq / size
        if best is None or (consistency, size) > (best.consistency, best.subset_size):
            best = SplitScore(f, size, top_freq, consistency)
    return best


def train(
    instances: list[Instance],
    declared_features: Optional[list[Feature]] = None,
    config: TrainConfig = TrainConfig(),
) -> LearnedTree:
    """Grow a rule tree over the training instances."""
    instances = list(instances)
    if not instances:
        raise ValueError("cannot train on an empty instance set")

    declared_tags = frozenset().union(*(i.features for i in instances)) if instances else frozenset()
    if declared_features is None:
        declared_features = [Categorical(t) for t in sorted(declared_tags)]
    declared_tag_set = frozenset(
        f.tag for f in declared_features if isinstance(f, Categorical)
    )
    undeclared = declared_tags - declared_tag_set
    if undeclared:
        raise ValueError(f"instances carry undeclared features: {sorted(undeclared)}")

    changes = [derive_change(i.lemma, i.inflection) for i in instances]
    inst_endings = [endings_of(i.lemma, config.max_ending_len) for i in instances]
    feature_space: list[Feature] = []
    seen_features: set[Feature] = set()

    def remember(feats: list[Feature]) -> None:
        for f in feats:
            if f not in seen_features:
                seen_features.add(f)
                feature_space.append(f)

    remember(sorted(declared_features, key=feature_sort_key))

    def make_leaf(idx: list[int], rule: Optional[Change], verdict: TpVerdict) -> Leaf:
        memorized = {}
        support = 0
        for i in idx:
            if rule is not None and changes[i] == rule:
                support += 1
                continue
            inst = instances[i]
            memorized[(inst.lemma, inst.features)] = MemEntry(
                inst.inflection, changes[i], inst.frequency
            )
        return Leaf(rule=rule, memorized=memorized, n=len(idx), rule_support=support, verdict=verdict)

    def grow(idx: list[int], inherited: list[Feature]) -> Node:
        local = [instances[i] for i in idx]
        local_changes = [changes[i] for i in idx]
        top, verdict = node_verdict(local, local_changes)
        if verdict.productive:
            return make_leaf(idx, top, verdict)

        # One ending index per node, shared between feature induction and
        # the membership scans of the split search below.
        local_endings = [inst_endings[i] for i in idx]
        ending_members = ending_index(local_endings)

        def members_of(feature: Feature) -> list[int]:
            if isinstance(feature, Categorical):
                tag = feature.tag
                return [i for i in idx if tag in instances[i].features]
            pos: set[int] = set()
            for e in feature.endings:
                lst = ending_members.get(e)
                if lst:
                    pos.update(lst)
            return [idx[p] for p in sorted(pos)]

        induced = induce_ending_features(
            local, local_changes, config.max_ending_len,
            inst_endings=local_endings, members=ending_members,
        )
        omega = list(inherited)
        known = set(inherited)
        for f in induced:
            if f not in known:
                known.add(f)
                omega.append(f)
        remember(induced)

        # Features uniform over this node carry no information here; dropping
        # them also guarantees no feature is tested twice on a path.  The
        # selection below mirrors best_split: highest consistency, then the
        # larger subset, then canonical feature order.
        best: Optional[tuple[float, int, Feature, list[int]]] = None
        for f in sorted(omega, key=feature_sort_key):
            members = members_of(f)
            size = len(members)
            if size == 0 or size == len(idx):
                continue
            top_freq = max(Counter(map(changes.__getitem__, members)).values())
            consistency = top_freq / size
            if best is None or (consistency, size) > (best[0], best[1]):
                best = (consistency, size, f, members)
        if best is None:
            return make_leaf(idx, None, verdict)

        f, present_idx = best[2], best[3]
        present_set = set(present_idx)
        absent_idx = [i for i in idx if i not in present_set]
        return Internal(
            split=f,
            present=grow(present_idx, omega),
            absent=grow(absent_idx, omega),
            n=len(idx),
            verdict=verdict,
        )

    root = grow(list(range(len(instances))), list(feature_space))
    return LearnedTree(
        root=root,
        feature_space=feature_space,
        training_size=len(instances),
        declared_tags=declared_tag_set,
        config=config,
    )
