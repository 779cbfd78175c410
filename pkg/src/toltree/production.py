"""Producing inflections from a learned tree.

Lookup order: memorized exceptions first, then the deepest compatible rule,
then an analogical guess from the nearest memorized lemma.  Queries may
declare features as unknown (e.g. the gender of a nonce word), in which case
traversal follows both branches of any split on such a feature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import Categorical, Change, EndingSet, InapplicableChange, apply_change
from .tree import Internal, Leaf, LearnedTree, MemEntry

PAD = "\x00"  # reserved pad segment, distinct from every real segment

ANALOGY_APPLY_CHANGE = "apply-change"
ANALOGY_VERBATIM = "verbatim"


@dataclass(frozen=True)
class Query:
    lemma: str
    known_features: frozenset[str] = frozenset()
    unknown_declared: frozenset[str] = frozenset()

    def __post_init__(self):
        if not self.lemma:
            raise ValueError("query lemma must be nonempty")
        if not isinstance(self.known_features, frozenset):
            object.__setattr__(self, "known_features", frozenset(self.known_features))
        if not isinstance(self.unknown_declared, frozenset):
            object.__setattr__(self, "unknown_declared", frozenset(self.unknown_declared))
        if self.known_features & self.unknown_declared:
            raise ValueError("a feature cannot be both known and unknown")


@dataclass(frozen=True)
class ProductionResult:
    inflection: str
    kind: str  # "rule" | "memorized" | "analogy"
    depth: int = 0
    path: str = ""
    neighbor: Optional[str] = None
    rule_was_compatible: bool = False

    def __post_init__(self):
        if not self.inflection:
            raise ValueError("produced inflection must be nonempty")


def hamming_padded(a: str, b: str) -> int:
    """Character-level Hamming distance after right-padding the shorter
    string with a reserved pad segment."""
    if len(a) < len(b):
        a = a + PAD * (len(b) - len(a))
    elif len(b) < len(a):
        b = b + PAD * (len(a) - len(b))
    return sum(1 for x, y in zip(a, b) if x != y)


def rank_neighbors(
    entries: Iterable[tuple[str, MemEntry]], target: str
) -> list[tuple[str, MemEntry]]:
    """Memorized entries ordered by analogy preference: smallest padded
    Hamming distance, then higher training frequency, then lemma order."""
    return sorted(
        entries,
        key=lambda item: (hamming_padded(item[0], target), -item[1].frequency, item[0]),
    )


def nearest_memorized(
    entries: Iterable[tuple[str, MemEntry]], target: str
) -> tuple[str, Change]:
    ranked = rank_neighbors(entries, target)
    if not ranked:
        raise ValueError("nearest_memorized needs a nonempty memorized set")
    lemma, entry = ranked[0]
    return lemma, entry.change


def _compatible_leaves(tree: LearnedTree, query: Query) -> list[tuple[Leaf, int, str]]:
    """All leaves reachable without contradicting a known feature, with
    depth and a path string (p=present branch, a=absent branch)."""
    out: list[tuple[Leaf, int, str]] = []

    def walk(node, depth: int, path: str) -> None:
        if isinstance(node, Leaf):
            out.append((node, depth, path))
            return
        split = node.split
        if isinstance(split, EndingSet):
            # Ending membership is computed from the lemma, never unknown.
            branch = node.present if split.matches(query.lemma, frozenset()) else node.absent
            walk(branch, depth + 1, path + ("p" if branch is node.present else "a"))
            return
        assert isinstance(split, Categorical)
        if split.tag in query.known_features:
            walk(node.present, depth + 1, path + "p")
        elif split.tag in query.unknown_declared:
            walk(node.present, depth + 1, path + "p")
            walk(node.absent, depth + 1, path + "a")
        else:
            walk(node.absent, depth + 1, path + "a")

    walk(tree.root, 0, "")
    return out


def _exception_matches(query: Query, lemma: str, stored: frozenset[str]) -> bool:
    if lemma != query.lemma:
        return False
    if not query.known_features <= stored:
        return False
    return (stored - query.known_features) <= query.unknown_declared


def inflect(
    tree: LearnedTree,
    query: Query,
    *,
    use_exceptions: bool = True,
    analogy_mode: str = ANALOGY_APPLY_CHANGE,
) -> ProductionResult:
    """Produce an inflection for the query.

    ``use_exceptions=False`` skips the memorized-exception lookup and probes
    the grammar alone (rules plus analogy); memorized forms still feed the
    analogical search.
    """
    if analogy_mode not in (ANALOGY_APPLY_CHANGE, ANALOGY_VERBATIM):
        raise ValueError(f"unknown analogy mode {analogy_mode!r}")
    leaves = _compatible_leaves(tree, query)

    if use_exceptions:
        if not query.unknown_declared:
            # Fully specified query: only the exact key can match.
            exact = (query.lemma, query.known_features)
            matches = [
                (leaf, depth, path, exact)
                for leaf, depth, path in leaves
                if exact in leaf.memorized
            ]
        else:
            matches = [
                (leaf, depth, path, key)
                for leaf, depth, path in leaves
                for key in leaf.memorized
                if _exception_matches(query, key[0], key[1])
            ]
        if matches:
            matches.sort(key=lambda m: (-m[1], m[2]))
            leaf, depth, path, key = matches[0]
            return ProductionResult(
                leaf.memorized[key].inflection, kind="memorized", depth=depth, path=path
            )

    rule_leaves = [
        (leaf, depth, path) for leaf, depth, path in leaves if leaf.rule is not None
    ]
    rule_leaves.sort(key=lambda m: (-m[1], -m[0].consistency, -m[0].n, m[2]))
    for leaf, depth, path in rule_leaves:
        if leaf.rule.delete_count <= len(query.lemma):
            form = apply_change(query.lemma, leaf.rule)
            if not form:  # change erased the whole lemma; treat as inapplicable
                continue
            return ProductionResult(
                form,
                kind="rule",
                depth=depth,
                path=path,
                rule_was_compatible=True,
            )

    entries = [item for leaf, _, _ in leaves for item in leaf.memorized.items()]
    if not entries:  # no memory on compatible paths; widen to the whole tree
        entries = [
            item
            for node, _ in tree.iter_nodes()
            if isinstance(node, Leaf)
            for item in node.memorized.items()
        ]
    if not entries:
        # Trained trees always hold either a rule or memory; this is a
        # last-ditch forced answer for pathological inputs.
        return ProductionResult(query.lemma, kind="analogy")

    ranked = rank_neighbors([(key[0], entry) for key, entry in entries], query.lemma)
    if analogy_mode == ANALOGY_APPLY_CHANGE:
        for lemma, entry in ranked:
            try:
                form = apply_change(query.lemma, entry.change)
            except InapplicableChange:
                continue
            if form:
                return ProductionResult(form, kind="analogy", neighbor=lemma)
    lemma, entry = ranked[0]
    return ProductionResult(entry.inflection, kind="analogy", neighbor=lemma)
