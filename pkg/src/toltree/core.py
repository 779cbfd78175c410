"""Domain types shared across the package.

Words are sequences of segments; one Unicode code point is one segment, so
plain ``str`` works for both orthography and one-symbol-per-phone IPA.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Union

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Instance:
    """One training observation: a lemma, its grammatical features, the
    inflected form, and a corpus token frequency.

    ``features`` holds declared categorical tags only; ending-based features
    are never stored on instances because they are computable from the lemma.
    """

    lemma: str
    features: frozenset[str]
    inflection: str
    frequency: float = 0.0

    def __post_init__(self):
        if not self.lemma or not self.inflection:
            raise ValueError("lemma and inflection must be nonempty")
        if self.frequency < 0:
            raise ValueError(f"negative frequency for {self.lemma!r}")
        if not isinstance(self.features, frozenset):
            object.__setattr__(self, "features", frozenset(self.features))


class Change(NamedTuple):
    """A morphological transformation: delete the final ``delete_count``
    segments of the lemma, then append ``suffix``.

    Pure suffixation is ``delete_count == 0``; the null change
    ``Change(0, "")`` covers identity inflections such as the German
    zero plural.  A NamedTuple rather than a dataclass: changes are hashed
    in tight counting loops during training.
    """

    delete_count: int
    suffix: str

    def label(self) -> str:
        """Human-readable label, e.g. ``-ed``, ``-∅``, ``-3+ang``."""
        if self.delete_count == 0:
            return f"-{self.suffix}" if self.suffix else "-∅"
        return f"-{self.delete_count}+{self.suffix}"


# Canonical ordering used everywhere two equally frequent changes compete:
# shorter suffix first, then lexicographic suffix, then fewer deletions.
def change_sort_key(change: Change) -> tuple:
    return (len(change.suffix), change.suffix, change.delete_count)


@lru_cache(maxsize=1 << 16)
def derive_change(lemma: str, inflection: str) -> Change:
    """Label the transformation from lemma to inflection.

    The label deletes everything after the longest common prefix and appends
    the remainder of the inflection.  Suffixal pairs get ``k == 0``;
    irregular pairs get well-defined labels that rarely aggregate into
    productive classes.
    """
    if not lemma or not inflection:
        raise ValueError("lemma and inflection must be nonempty")
    p = 0
    limit = min(len(lemma), len(inflection))
    while p < limit and lemma[p] == inflection[p]:
        p += 1
    return Change(delete_count=len(lemma) - p, suffix=inflection[p:])


class InapplicableChange(ValueError):
    """Raised when a change would delete more segments than the lemma has."""


def apply_change(lemma: str, change: Change) -> str:
    """Apply ``change`` to ``lemma``; inverse of :func:`derive_change`."""
    if change.delete_count < 0:
        raise ValueError("delete_count must be nonnegative")
    if change.delete_count > len(lemma):
        raise InapplicableChange(
            f"cannot delete {change.delete_count} segments from {lemma!r}"
        )
    kept = lemma[: len(lemma) - change.delete_count] if change.delete_count else lemma
    return kept + change.suffix


@dataclass(frozen=True)
class Categorical:
    """A declared grammatical tag, e.g. ``past`` or ``feminine``."""

    tag: str

    def matches(self, lemma: str, features: frozenset[str]) -> bool:
        return self.tag in features

    def describe(self) -> str:
        return self.tag


@dataclass(frozen=True)
class EndingSet:
    """An induced feature: true of lemmas ending in any of a set of endings."""

    endings: frozenset[str]

    def __post_init__(self):
        if not self.endings:
            raise ValueError("EndingSet must be nonempty")
        if not isinstance(self.endings, frozenset):
            object.__setattr__(self, "endings", frozenset(self.endings))
        object.__setattr__(self, "_suffixes", tuple(sorted(self.endings)))
        object.__setattr__(self, "_sort_key", (1, self._suffixes))

    def matches(self, lemma: str, features: frozenset[str]) -> bool:
        return lemma.endswith(self._suffixes)

    def describe(self) -> str:
        return "[" + "|".join(sorted(self.endings)) + "]"


Feature = Union[Categorical, EndingSet]


# Canonical total order on features, used for deterministic tie-breaking:
# categorical tags sort before ending sets; tags lexicographically, ending
# sets by their sorted ending list.
def feature_sort_key(feature: Feature) -> tuple:
    if isinstance(feature, Categorical):
        return (0, feature.tag)
    return feature._sort_key


def feature_matches(feature: Feature, lemma: str, features: frozenset[str]) -> bool:
    """Single shared membership predicate for training and production."""
    return feature.matches(lemma, features)


def dedupe_instances(instances: Iterable[Instance]) -> list[Instance]:
    """Resolve doublets: identical (lemma, features) with different
    inflections keep only the higher-frequency form."""
    chosen: dict[tuple[str, frozenset[str]], Instance] = {}
    for inst in instances:
        key = (inst.lemma, inst.features)
        prev = chosen.get(key)
        if prev is None:
            chosen[key] = inst
        elif prev.inflection != inst.inflection:
            keep, drop = (prev, inst) if prev.frequency >= inst.frequency else (inst, prev)
            logger.warning(
                "doublet for %r %s: keeping %r (freq %s), dropping %r (freq %s)",
                inst.lemma, sorted(inst.features),
                keep.inflection, keep.frequency, drop.inflection, drop.frequency,
            )
            chosen[key] = keep
        elif inst.frequency > prev.frequency:
            chosen[key] = inst
    return list(chosen.values())
