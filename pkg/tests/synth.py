"""Deterministic synthetic bitext material for pipeline and acceptance tests.

The generated population deliberately spans the selector decision space:
identities, unrelated pairs (both easy and hard wording), light rewrites,
truncations, punctuation-only sides, and exact duplicates.
"""

from __future__ import annotations

import random

ONE_SYLLABLE = "go run sit see the cat dog sun day way big red old new top".split()
TWO_SYLLABLE = "hello window little paper table better walking sunny garden river".split()
MANY_SYLLABLE = (
    "complicated investigation extraordinary university necessary "
    "impossibility characteristic responsibility international documentation"
).split()
ALL_WORDS = ONE_SYLLABLE + TWO_SYLLABLE + MANY_SYLLABLE


def make_aligned_streams(n: int, seed: int = 7) -> tuple[list[str], list[str]]:
    """n line-aligned (target, translation) sentences covering all drop reasons."""
    rng = random.Random(seed)
    targets: list[str] = []
    translations: list[str] = []
    for i in range(n):
        base = [rng.choice(ALL_WORDS) for _ in range(rng.randint(4, 18))]
        source = " ".join(base) + "."
        kind = rng.random()
        if kind < 0.06:
            translation = source
        elif kind < 0.16:
            translation = " ".join(rng.choice(ONE_SYLLABLE) for _ in range(rng.randint(3, 9))) + "."
        elif kind < 0.24:
            translation = " ".join(rng.choice(MANY_SYLLABLE) for _ in range(rng.randint(4, 12))) + "."
        elif kind < 0.27:
            translation = rng.choice(["?!?", "... !!!", "12 345."])
        else:
            edited = [
                token if rng.random() > 0.3 else rng.choice(ONE_SYLLABLE + TWO_SYLLABLE)
                for token in base
            ]
            if rng.random() < 0.3:
                edited = edited[: max(2, len(edited) - rng.randint(1, 3))]
            translation = " ".join(edited) + "."
        targets.append(source)
        translations.append(translation)
    # exact duplicates of an earlier pair, for --dedup coverage
    if n >= 20:
        for slot in (n // 2, n - 1):
            targets[slot] = targets[3]
            translations[slot] = translations[3]
    return targets, translations


def write_aligned_files(directory, n: int, seed: int = 7):
    """Write target/translation files for CLI-level tests; returns the two paths."""
    targets, translations = make_aligned_streams(n, seed)
    target_path = directory / "targets.txt"
    translation_path = directory / "translations.txt"
    target_path.write_text("\n".join(targets) + "\n", encoding="utf-8")
    translation_path.write_text("\n".join(translations) + "\n", encoding="utf-8")
    return target_path, translation_path
