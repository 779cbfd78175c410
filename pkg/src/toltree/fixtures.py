"""Deterministic synthetic corpora bundled with the package.

Three corpora are generated (not hand-typed) so their construction is
auditable and reproducible:

* an English-like past-tense corpus with voicing-conditioned allomorphs
  [-t]/[-d]/[-ɪd] and ablaut irregulars, used for tree-structure checks;
* a larger English-like developmental corpus (progressive, plural, past)
  whose token frequencies are laid out on a 20-bin log grid so log-binned
  sampling simulates vocabulary growth from 50 to 1000 words;
* a German-like plural corpus (442 pairs, five suffix classes, gender tags)
  mirroring the suffix-class proportions of child-directed German.

``scripts/generate_fixtures.py`` writes these to the package data directory.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Instance
from .corpus import Dataset

# Segment inventory (one code point per segment).
VOICELESS = "ptkfsʃʧ"
VOICED_CONS = "bdgvzʒʤmnŋlr"
VOWELS = "aeiouɪæʌɛɔə"
SIBILANTS = "szʃʒʧʤ"


def _onsets() -> list[str]:
    singles = list("bdfghklmnprstvwzj")
    doubles = [a + b for a in "sbfgkpdt" for b in "lrwn"]
    return singles + doubles


def past_regular_change_suffix(final: str) -> str:
    """The regular past allomorph conditioned on the lemma's final segment."""
    if final in "td":
        return "ɪd"
    if final in VOICELESS:
        return "t"
    return "d"


def plural_regular_change_suffix(final: str) -> str:
    if final in SIBILANTS:
        return "ɪz"
    if final in VOICELESS:
        return "s"
    return "z"


class _LemmaFactory:
    """Deterministic unique lemma builder: cycles through onsets in front of
    a requested body."""

    def __init__(self):
        self.onsets = _onsets()
        self.used: set[str] = set()
        self.counter = 0

    def make(self, body: str, min_len: int = 4) -> str:
        for _ in range(len(self.onsets) * 4):
            onset = self.onsets[self.counter % len(self.onsets)]
            self.counter += 1
            lemma = onset + body
            while len(lemma) < min_len:
                lemma = self.onsets[self.counter % len(self.onsets)][:1] + lemma
                self.counter += 1
            if lemma not in self.used:
                self.used.add(lemma)
                return lemma
        raise RuntimeError(f"lemma pool exhausted for body {body!r}")


# ---------------------------------------------------------------------------
# English past-tense corpus (tree-structure fixture)
# ---------------------------------------------------------------------------

# Ablaut irregulars: lemma onset + mid + v1 + final, past onset + mid + v2 +
# final, i.e. change (2, v2 + final).  Every irregular shares its final
# trigram with several regular verbs so no ending singles it out.
_PAST_IRREGULARS = [
    # (mid, v1, final, v2, partner_suffix_class)
    ("t", "æ", "ŋ", "ʌ", "d"),
    ("l", "ɪ", "m", "æ", "d"),
    ("r", "e", "b", "o", "d"),
    ("n", "i", "g", "ʌ", "d"),
    ("m", "o", "v", "e", "d"),
    ("l", "u", "z", "ɔ", "d"),
    ("r", "æ", "l", "u", "d"),
    ("n", "ɪ", "k", "ə", "t"),
]


def english_past_fixture() -> Dataset:
    """~108 past-tense pairs: 100 regulars split across the three voicing
    classes plus 8 trigram-camouflaged ablaut irregulars."""
    factory = _LemmaFactory()
    rows: list[tuple[str, str]] = []  # (lemma, inflection)

    for mid, v1, final, v2, _cls in _PAST_IRREGULARS:
        body = mid + v1 + final
        lemma = factory.make(body)
        past = lemma[:-2] + v2 + final
        rows.append((lemma, past))
        # Four regular partners sharing the final trigram.
        for _ in range(4):
            partner = factory.make(body)
            rows.append((partner, partner + past_regular_change_suffix(final)))

    def add_regulars(finals: str, count: int) -> None:
        i = 0
        while i < count:
            final = finals[i % len(finals)]
            vowel = VOWELS[i % len(VOWELS)]
            lemma = factory.make(vowel + final, min_len=3)
            rows.append((lemma, lemma + past_regular_change_suffix(final)))
            i += 1

    add_regulars("td", 20)           # -ɪd class
    add_regulars("pkfsʃʧ", 31)       # -t class (plus 4 trigram partners)
    add_regulars("naeiou", 17)       # -d class (plus 28 trigram partners)

    freq = {lemma: max(1, round(20000 / (rank + 1) ** 1.05))
            for rank, (lemma, _) in enumerate(rows)}
    instances = [
        Instance(lemma, frozenset({"past"}), past, freq[lemma])
        for lemma, past in rows
    ]
    return Dataset(tuple(instances), frozenset({"past"}), name="english-past")


# ---------------------------------------------------------------------------
# English developmental corpus
# ---------------------------------------------------------------------------

N_BINS = 20
BIN_SIZE = 55
_LOG_STEP = 0.3  # log10 width of each frequency bin


@dataclass
class _Item:
    lemma: str
    features: frozenset[str]
    inflection: str
    bin: int  # 1 = most frequent


# Developmental schedule for the ablaut classes: six members and two regular
# trigram partners each, with the bins (stages) at which they enter the
# vocabulary.  No past-tense item appears before stage 3, so the first two
# stages have no irregulars to mis-produce; at stage 3 the first regular
# allomorph rule becomes productive and the still-fragmentary classes are
# absorbed by it (the over-regularization dip).  A class escapes the rule
# once three or more members are present, so with six members scheduled by
# mid-corpus every class has recovered at the final stage even when log-bin
# sampling drops a couple of them.
_DEV_CLASSES = [
    ("t", "æ", "ŋ", "ʌ", [3, 3, 8, 13, 15, 16], [3, 3]),
    ("l", "ɪ", "m", "æ", [3, 4, 9, 12, 14, 16], [3, 4]),
    ("r", "e", "b", "o", [4, 5, 9, 13, 15, 17], [4, 5]),
    ("n", "i", "g", "ʌ", [3, 4, 10, 12, 16, 17], [5, 6]),
    ("m", "o", "v", "e", [4, 5, 8, 11, 14, 15], [6, 7]),
    ("l", "u", "z", "ɔ", [3, 4, 5, 10, 13, 14], [5, 8]),
    ("r", "æ", "l", "u", [4, 5, 6, 11, 15, 16], [7, 9]),
    ("n", "ɪ", "r", "ə", [4, 6, 7, 12, 16, 17], [8, 10]),
]

# Finals reserved for the ablaut classes; generic -d regulars avoid them so
# each class's ending neighborhood contains exactly its trigram partners.
_CLASS_FINALS = {c[2] for c in _DEV_CLASSES}


def english_fixture() -> Dataset:
    """1100 instances (progressive, plural, past) on a 20x55 frequency grid."""
    factory = _LemmaFactory()
    items: list[_Item] = []

    past = frozenset({"past"})
    plural = frozenset({"plural"})
    progressive = frozenset({"progressive"})

    # Ablaut classes and their partners at scheduled bins.
    for mid, v1, final, v2, member_bins, partner_bins in _DEV_CLASSES:
        body = mid + v1 + final
        for b in member_bins:
            lemma = factory.make(body)
            items.append(_Item(lemma, past, lemma[:-2] + v2 + final, b))
        for b in partner_bins:
            lemma = factory.make(body)
            items.append(_Item(lemma, past, lemma + past_regular_change_suffix(final), b))

    # Generic queues, pulled to fill every bin to BIN_SIZE.
    def build_queue(kind: str, count: int) -> list[_Item]:
        out = []
        for i in range(count):
            # Non-past items avoid the finals reserved for the ablaut
            # classes, so an irregular's ending neighborhood stays within
            # the past tense.
            if kind == "progressive":
                final = ("ptkfsʃʧnd" + VOWELS)[i % 20]
                vowel = VOWELS[(i // 3) % len(VOWELS)]
                lemma = factory.make(vowel + final, min_len=3)
                out.append(_Item(lemma, progressive, lemma + "ɪŋ", 0))
            elif kind == "plural":
                finals = "sʃʧ" "ptkf" + "n" + "aeiou"
                final = finals[i % len(finals)]
                vowel = VOWELS[(i // 2) % len(VOWELS)]
                lemma = factory.make(vowel + final, min_len=3)
                out.append(_Item(lemma, plural, lemma + plural_regular_change_suffix(final), 0))
            else:  # regular past
                finals = "td" + "pkfsʃʧ" * 2 + "naeiou" * 3
                final = finals[i % len(finals)]
                vowel = VOWELS[(i // 2) % len(VOWELS)]
                if final in _CLASS_FINALS:
                    final = "n"
                lemma = factory.make(vowel + final, min_len=3)
                out.append(_Item(lemma, past, lemma + past_regular_change_suffix(final), 0))
        return out

    prog_q = build_queue("progressive", 320)
    plural_q = build_queue("plural", 480)
    past_q = build_queue("past", 440)

    bin_counts = [0] * (N_BINS + 1)
    for item in items:
        bin_counts[item.bin] += 1

    for b in range(1, N_BINS + 1):
        deficit = BIN_SIZE - bin_counts[b]
        # Early vocabulary is noun/progressive heavy; regular past verbs only
        # start arriving at stage 3.
        if b <= 2:
            share = [("progressive", 0.42), ("plural", 0.58), ("past", 0.0)]
        else:
            share = [("progressive", 0.25), ("plural", 0.38), ("past", 0.37)]
        queues = {"progressive": prog_q, "plural": plural_q, "past": past_q}
        planned = {k: round(deficit * s) for k, s in share}
        while sum(planned.values()) < deficit:
            planned["plural"] += 1
        while sum(planned.values()) > deficit:
            planned["plural"] -= 1
        for kind, want in planned.items():
            q = queues[kind]
            take = min(want, len(q))
            for item in q[:take]:
                item.bin = b
                items.append(item)
            del q[:take]
        bin_counts[b] = BIN_SIZE

    # Frequencies sit strictly inside their bin's log-spaced band, with the
    # global min and max pinned to exact band edges so the sampler's
    # boundaries reproduce the intended bins.
    per_bin: dict[int, list[_Item]] = {}
    for item in items:
        per_bin.setdefault(item.bin, []).append(item)
    instances = []
    for b in range(1, N_BINS + 1):
        group = per_bin[b]
        for j, item in enumerate(group):
            frac = 0.2 + 0.6 * j / max(1, len(group) - 1)
            log10f = _LOG_STEP * (N_BINS - b) + _LOG_STEP * frac
            freq = round(10.0 ** log10f, 4)
            if b == 1 and j == len(group) - 1:
                freq = round(10.0 ** (_LOG_STEP * N_BINS), 4)  # pin max
            if b == N_BINS and j == 0:
                freq = 1.0  # pin min
            instances.append(Instance(item.lemma, item.features, item.inflection, freq))
    tags = frozenset({"past", "plural", "progressive"})
    return Dataset(tuple(instances), tags, name="english")


def english_test_fixture() -> Dataset:
    """Held-out regular items disjoint from the developmental corpus."""
    factory = _LemmaFactory()
    train = english_fixture()
    for inst in train.instances:
        factory.used.add(inst.lemma)

    instances = []

    def add(kind: str, finals: str, count: int) -> None:
        for i in range(count):
            final = finals[i % len(finals)]
            body = "ɔ" + final  # vowel absent from generic bodies above
            lemma = factory.make(body)
            if kind == "past":
                instances.append(Instance(lemma, frozenset({"past"}),
                                          lemma + past_regular_change_suffix(final), 1))
            elif kind == "plural":
                instances.append(Instance(lemma, frozenset({"plural"}),
                                          lemma + plural_regular_change_suffix(final), 1))
            else:
                instances.append(Instance(lemma, frozenset({"progressive"}),
                                          lemma + "ɪŋ", 1))

    add("past", "td" + "pkfsʃʧ" + "naeiou", 25)
    add("plural", "szʃʧptkfnaeiou", 20)
    add("progressive", "ptknlr", 15)
    tags = frozenset({"past", "plural", "progressive"})
    return Dataset(tuple(instances), tags, name="english-test")


# ---------------------------------------------------------------------------
# German-like plural corpus
# ---------------------------------------------------------------------------


def german_fixture() -> Dataset:
    """442 singular/plural pairs across five suffix classes with gender tags.

    Class proportions follow child-directed German: -(e)n dominant (schwa
    finals take -n, feminine consonant finals -en), -e and -\u2205 mid-sized,
    -er small (15 types, all neuter, d-final), -s marginal (8 vowel-final
    loans).  Frequencies put a wide tail of common-class nouns at the bottom
    so a 400-word frequency-weighted sample always retains the big classes
    but keeps -er/-s membership variable across samples.
    """
    factory = _LemmaFactory()
    rows: list[tuple[str, str, str]] = []  # (lemma, gender, plural)

    def add(count: int, gender: str, bodies: list[str], suffix: str) -> None:
        for i in range(count):
            lemma = factory.make(bodies[i % len(bodies)])
            rows.append((lemma, gender, lemma + suffix))

    # Schwa-final nouns take -n regardless of gender.
    add(130, "feminine", ["me", "se", "le", "re", "ne", "be", "de", "ge"], "n")
    add(30, "masculine", ["me", "se", "le", "ne"], "n")
    # Feminine consonant-final nouns take -en (t-final, "-ung/-heit"-like).
    add(50, "feminine", ["ut", "at", "ot", "ift", "aft"], "en")
    # Non-feminine nouns in -el/-er/-en take the zero plural.
    add(50, "masculine", ["sel", "gel", "ser", "ter", "fen", "ken"], "")
    add(24, "neuter", ["tel", "del", "der", "pen"], "")
    # Broad -e class over several consonant-final neighborhoods, including a
    # handful in -nd so that bare d-finality does not single out the -er
    # class during induction.
    add(92, "masculine", ["kal", "tal", "rol", "bul", "mil", "nal"], "e")
    add(38, "neuter", ["um", "im", "af", "of", "ux"], "e")
    add(5, "masculine", ["und", "and"], "e")
    # -er class: neuter nouns ending in d.
    add(15, "neuter", ["ild", "eld", "old"], "er")
    # -s class: vowel-final loans, the only o/u-final nouns in the corpus.
    add(4, "masculine", ["oto", "ino", "uku", "alu"], "s")
    add(4, "neuter", ["emo", "iro", "ezu", "ibu"], "s")

    # Zipf-like ladder per class so every class spans the frequency range and
    # the bottom of the corpus is a broad band of big-class nouns; -er and -s
    # words sit just above that band, so each is *usually* inside a 400-word
    # frequency-weighted sample.
    freq: dict[str, float] = {}
    by_class: dict[str, list[str]] = {}
    for lemma, gender, plural in rows:
        suffix = plural[len(lemma):]
        by_class.setdefault(suffix, []).append(lemma)
    for suffix, lemmas in by_class.items():
        if suffix == "er":
            for lemma in lemmas:
                freq[lemma] = 5
        elif suffix == "s":
            for lemma in lemmas:
                freq[lemma] = 3
        else:
            for pos, lemma in enumerate(lemmas):
                freq[lemma] = max(1, round(3000 / (pos + 2) ** 1.6))

    tags = frozenset({"feminine", "masculine", "neuter"})
    instances = [
        Instance(lemma, frozenset({gender}), plural, freq[lemma])
        for lemma, gender, plural in rows
    ]
    return Dataset(tuple(instances), tags, name="german")


def german_wug_stimuli() -> list[tuple[str, str, str]]:
    """24 nonce nouns: 12 rhyming with corpus neighborhoods, 12 not.
    Rows are (lemma, gender-or-?, R|NR)."""
    rhyme_bodies = ["me", "le", "ot", "kal", "tal", "ild", "sel", "um",
                    "rol", "ut", "eld", "ne"]
    non_rhyme_bodies = ["yp", "øk", "aʊʃ", "œft", "yft", "ypʃ", "øps",
                        "aik", "œlk", "ynt", "øft", "ylp"]
    out = []
    used = {inst.lemma for inst in german_fixture().instances}
    onsets = ["ʃp", "kn", "pf", "tr", "ʃl", "gr", "ʃv", "kl", "ʃn", "ʃm", "pl", "ʃt"]
    for tag, bodies, shift in (("R", rhyme_bodies, 0), ("NR", non_rhyme_bodies, 5)):
        for i, body in enumerate(bodies):
            for j in range(len(onsets)):
                lemma = onsets[(i + shift + j) % len(onsets)] + body
                if lemma not in used:
                    break
            assert lemma not in used, f"no free onset for body {body!r}"
            used.add(lemma)
            out.append((lemma, "?", tag))
    return out
