#!/usr/bin/env python3
"""Regenerate the bundled corpus files from their deterministic generators.

The TSV files under src/toltree/data are build artifacts of this script;
edit toltree/fixtures.py, not the files.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from toltree.corpus import save_dataset  # noqa: E402
from toltree.fixtures import (  # noqa: E402
    english_fixture,
    english_past_fixture,
    english_test_fixture,
    german_fixture,
    german_wug_stimuli,
)


def main() -> None:
    out_dir = ROOT / "src" / "toltree" / "data"
    out_dir.mkdir(parents=True, exist_ok=True)

    for ds in (english_past_fixture(), english_fixture(), english_test_fixture(),
               german_fixture()):
        path = out_dir / f"{ds.name}.tsv"
        save_dataset(ds, path)
        print(f"{path}  ({len(ds)} instances)")

    stim_path = out_dir / "german-wug-stimuli.tsv"
    with stim_path.open("w", encoding="utf-8") as fh:
        fh.write("# lemma\tgender-or-?\tclass(R|NR)\n")
        for lemma, gender, condition in german_wug_stimuli():
            fh.write(f"{lemma}\t{gender}\t{condition}\n")
    print(stim_path)


if __name__ == "__main__":
    main()
