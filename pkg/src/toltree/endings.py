"""Induction of ending-set features.

For each change present at a recursion level, collect the shortest lemma
endings that predict the change tolerably well, then keep the resulting set
of endings only if endings and change pick each other out productively in
both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import Change, EndingSet, Instance, change_sort_key
from .tolerance import tolerates

DEFAULT_MAX_ENDING_LEN = 3


@dataclass(frozen=True)
class EndingCandidate:
    """Bookkeeping for one ending tested against one target change."""

    ending: str
    target_change: Change
    scope_count: int
    violations: int


def ending_of(lemma: str, k: int) -> str:
    """Final ``k`` segments of the lemma, clamped to its length."""
    if k < 1:
        raise ValueError(f"ending length must be >= 1, got {k}")
    return lemma[-k:]


@lru_cache(maxsize=1 << 16)
def endings_of(lemma: str, max_len: int = DEFAULT_MAX_ENDING_LEN) -> tuple[str, ...]:
    """All endings of the lemma up to ``max_len`` segments, shortest first.
    A lemma shorter than ``max_len`` contributes nothing past itself."""
    seen = []
    prev = None
    for k in range(1, max_len + 1):
        e = lemma[-k:]
        if e == prev:
            break
        prev = e
        seen.append(e)
    return tuple(seen)


def ending_index(inst_endings: list[tuple[str, ...]]) -> dict[str, list[int]]:
    """Map each ending to the (ascending) positions of the lemmas bearing it.
    One dict access per (instance, ending) pair: this is the training hot
    spot, so callers that need the index twice should build it once."""
    members: dict[str, list[int]] = {}
    for pos, ends in enumerate(inst_endings):
        for e in ends:
            lst = members.get(e)
            if lst is None:
                members[e] = [pos]
            else:
                lst.append(pos)
    return members


def induce_ending_features(
    instances: list[Instance],
    changes: list[Change] | None = None,
    max_len: int = DEFAULT_MAX_ENDING_LEN,
    inst_endings: list[tuple[str, ...]] | None = None,
    members: dict[str, list[int]] | None = None,
) -> list[EndingSet]:
    """Discover ending-set features over the instances at one level.

    ``changes`` must align with ``instances`` (the precomputed change of each
    one); it is derived if omitted.  ``inst_endings`` may supply precomputed
    ``endings_of`` tuples for each instance, and ``members`` a matching
    :func:`ending_index`.  Returns accepted features, deduplicated, in a
    deterministic order.
    """
    if not instances:
        raise ValueError("cannot induce features from an empty instance set")
    if changes is None:
        from .core import derive_change

        changes = [derive_change(i.lemma, i.inflection) for i in instances]
    if inst_endings is None:
        inst_endings = [endings_of(i.lemma, max_len) for i in instances]
    if members is None:
        members = ending_index(inst_endings)

    takers_by_change: dict[Change, list[int]] = {}
    for i, c in enumerate(changes):
        takers_by_change.setdefault(c, []).append(i)
    # Frequent changes first; ties broken by the canonical change order.
    ordered = sorted(
        takers_by_change,
        key=lambda c: (-len(takers_by_change[c]),) + change_sort_key(c),
    )

    accepted: list[EndingSet] = []
    seen_features: set[frozenset[str]] = set()
    for target in ordered:
        takers = takers_by_change[target]
        taker_set = set(takers)
        cached: list[str] = []
        covered: set[int] = set()
        for k in range(1, max_len + 1):
            # Shortest-first: endings of length k from still-uncovered takers.
            candidates = sorted(
                {
                    inst_endings[i][k - 1]
                    for i in takers
                    if i not in covered and len(inst_endings[i]) >= k
                }
            )
            for e in candidates:
                mem = members[e]
                inter = taker_set.intersection(mem)
                if tolerates(len(mem), len(mem) - len(inter)):
                    cached.append(e)
                    covered.update(inter)
        if not cached:
            continue
        e_set: set[int] = set()
        for e in cached:
            e_set.update(members[e])
        s_set = taker_set
        n1, e1 = len(e_set), len(e_set - s_set)
        n2, e2 = len(s_set), len(s_set - e_set)
        if tolerates(n1, e1) and tolerates(n2, e2):
            key = frozenset(cached)
            if key not in seen_features:
                seen_features.add(key)
                accepted.append(EndingSet(key))
    return accepted
