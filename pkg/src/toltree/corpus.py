"""Dataset loading and the vocabulary-sampling regimes used to simulate
learners.

All sampling is driven by numpy's PCG64 generator, seeded explicitly, so a
published seed reproduces the same sample on any platform.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .core import Instance, dedupe_instances

logger = logging.getLogger(__name__)


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Dataset:
    instances: tuple[Instance, ...]
    declared_feature_tags: frozenset[str]
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.instances, tuple):
            object.__setattr__(self, "instances", tuple(self.instances))
        for inst in self.instances:
            extra = inst.features - self.declared_feature_tags
            if extra:
                raise ValueError(
                    f"instance {inst.lemma!r} carries undeclared features {sorted(extra)}"
                )

    def __len__(self) -> int:
        return len(self.instances)

    def replace_instances(self, instances: Sequence[Instance], name: Optional[str] = None) -> "Dataset":
        return Dataset(tuple(instances), self.declared_feature_tags,
                       self.name if name is None else name)


@dataclass(frozen=True)
class FrequencyWeighted:
    n: int
    seed: int = 0


@dataclass(frozen=True)
class LogBinned:
    bins: int
    per_bin: int
    seed: int = 0


@dataclass(frozen=True)
class TopN:
    n: int
    jitter: tuple[float, float] = (0.0, 0.0)
    seed: int = 0


SamplePlan = Union[FrequencyWeighted, LogBinned, TopN]


def load_dataset(path: Union[str, Path], name: Optional[str] = None) -> Dataset:
    """Parse the tab-separated dataset format.

    One instance per row: ``lemma<TAB>feature1,feature2<TAB>inflection<TAB>frequency``.
    A ``#features: tag1,tag2`` header declares the categorical feature
    universe; other ``#`` lines are comments.
    """
    path = Path(path)
    declared: frozenset[str] = frozenset()
    instances: list[Instance] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                if line.startswith("#features:"):
                    tags = line[len("#features:"):].strip()
                    declared = frozenset(t.strip() for t in tags.split(",") if t.strip())
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ParseError(f"{path}:{lineno}: expected 4 tab-separated fields, got {len(parts)}")
            lemma, feats_field, inflection, freq_field = parts
            if not lemma or not inflection:
                raise ParseError(f"{path}:{lineno}: empty lemma or inflection")
            feats = frozenset(t.strip() for t in feats_field.split(",") if t.strip())
            undeclared = feats - declared
            if undeclared:
                raise ParseError(f"{path}:{lineno}: undeclared features {sorted(undeclared)}")
            try:
                frequency = float(freq_field)
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: bad frequency {freq_field!r}") from exc
            if frequency < 0:
                raise ParseError(f"{path}:{lineno}: negative frequency")
            instances.append(Instance(lemma, feats, inflection, frequency))
    deduped = dedupe_instances(instances)
    if len(deduped) < len(instances):
        logger.warning("%s: dropped %d doublet rows", path, len(instances) - len(deduped))
    return Dataset(tuple(deduped), declared, name or path.stem)


def save_dataset(ds: Dataset, path: Union[str, Path]) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        fh.write("#features: " + ",".join(sorted(ds.declared_feature_tags)) + "\n")
        for inst in ds.instances:
            freq = inst.frequency
            freq_s = str(int(freq)) if float(freq).is_integer() else repr(freq)
            fh.write(f"{inst.lemma}\t{','.join(sorted(inst.features))}\t{inst.inflection}\t{freq_s}\n")


def sample_frequency_weighted(ds: Dataset, n: int, seed: int) -> Dataset:
    """Draw ``n`` distinct instances without replacement, each draw
    proportional to token frequency.

    Implemented as an exponential race: item i gets key Exp(1)/w_i and the
    n smallest keys win, which is equivalent to sequential
    probability-proportional-to-frequency draws without replacement.
    Zero-frequency items are only drawn once every positive-frequency item
    has been.
    """
    if n > len(ds):
        raise ValueError(f"cannot sample {n} from dataset of size {len(ds)}")
    rng = np.random.Generator(np.random.PCG64(seed))
    weights = np.array([inst.frequency for inst in ds.instances], dtype=float)
    draws = rng.exponential(1.0, size=len(weights))
    with np.errstate(divide="ignore"):
        keys = np.where(weights > 0, draws / np.where(weights > 0, weights, 1.0), np.inf)
    # Stable ordering: key, then original index for the zero-weight tail.
    order = np.lexsort((np.arange(len(keys)), keys))
    chosen = order[:n]
    return ds.replace_instances([ds.instances[i] for i in chosen])


def _log_bin_assignment(frequencies: Sequence[float], bins: int) -> list[list[int]]:
    """Partition indices into ``bins`` groups, highest-frequency group first."""
    freqs = np.asarray(frequencies, dtype=float)
    positive = freqs[freqs > 0]
    if len(positive) == 0 or positive.min() == freqs.max():
        # Degenerate spread: equal-size bins by frequency rank.
        order = sorted(range(len(freqs)), key=lambda i: (-freqs[i], i))
        return [list(chunk) for chunk in np.array_split(np.array(order), bins)]
    lo, hi = positive.min(), freqs.max()
    edges = np.logspace(math.log10(lo), math.log10(hi), bins + 1)
    groups: list[list[int]] = [[] for _ in range(bins)]
    for i, f in enumerate(freqs):
        if f <= 0:
            b = 0
        else:
            b = int(np.searchsorted(edges, f, side="right")) - 1
            b = min(max(b, 0), bins - 1)
        groups[b].append(i)
    groups.reverse()  # highest-frequency bin first
    return groups


def sample_log_binned(ds: Dataset, bins: int, per_bin: int, seed: int) -> list[Dataset]:
    """Simulate vocabulary growth: log-bin by frequency, then emit cumulative
    datasets adding a uniform sample of ``per_bin`` items per bin, most
    frequent bin first.  Bins short of ``per_bin`` contribute everything."""
    if bins < 1 or per_bin < 1:
        raise ValueError("bins and per_bin must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    groups = _log_bin_assignment([i.frequency for i in ds.instances], bins)
    stages: list[Dataset] = []
    cumulative: list[Instance] = []
    for stage, group in enumerate(groups, start=1):
        if len(group) <= per_bin:
            picked = list(group)
            if len(group) < per_bin:
                logger.info("bin %d has %d < %d members; taking all", stage, len(group), per_bin)
        else:
            idx = rng.permutation(len(group))[:per_bin]
            picked = [group[i] for i in sorted(idx)]
        cumulative.extend(ds.instances[i] for i in picked)
        stages.append(ds.replace_instances(list(cumulative), name=f"{ds.name}@{len(cumulative)}"))
    return stages


def jitter_frequencies(ds: Dataset, lo: float, hi: float, seed: int) -> Dataset:
    """Add an independent uniform real draw in [lo, hi] to every frequency."""
    if lo > hi:
        raise ValueError("jitter lower bound exceeds upper bound")
    rng = np.random.Generator(np.random.PCG64(seed))
    offsets = rng.uniform(lo, hi, size=len(ds))
    jittered = [
        Instance(i.lemma, i.features, i.inflection, i.frequency + off)
        for i, off in zip(ds.instances, offsets)
    ]
    return ds.replace_instances(jittered)


def sample_top_n(ds: Dataset, n: int) -> Dataset:
    """The ``n`` highest-frequency instances (ties by input order)."""
    if n > len(ds):
        raise ValueError(f"cannot take top {n} from dataset of size {len(ds)}")
    order = sorted(range(len(ds)), key=lambda i: (-ds.instances[i].frequency, i))
    return ds.replace_instances([ds.instances[i] for i in order[:n]])
