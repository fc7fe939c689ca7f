"""Tokenization, word/sentence/syllable counting.

Two tokenization schemes coexist and must not be mixed: a metric-grade
scheme equivalent to the mteval-v13a conventions used by standard BLEU
tooling, and a readability-grade scheme that keeps only word-like tokens
for Flesch-style counting. All functions here are pure and safe to call
from any number of workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple


class TokenizedText(NamedTuple):
    tokens: tuple[str, ...]
    scheme: str


class TextStats(NamedTuple):
    n_words: int
    n_sentences: int
    n_syllables: int


@dataclass(frozen=True)
class LanguageProfile:
    """Reading-ease coefficients plus the vowel rules used to count syllables.

    The score for a text is ``k1 - k2 * (words/sentences) - k3 * (syllables/words)``.
    Profiles are immutable; use :func:`get_profile` to obtain the shipped ones.
    """

    lang_code: str
    k1: float
    k2: float
    k3: float
    vowels: frozenset[str]
    # Drop a word-final single 'e' after a consonant (English-style).
    silent_final_e: bool = False
    # Split adjacent strong vowels inside a cluster (Spanish-style hiatus);
    # accented i/u count as strong because the accent breaks the diphthong.
    strong_vowels: frozenset[str] = frozenset()


_EN_VOWELS = frozenset("aeiouy")
_FR_VOWELS = frozenset("aeiouyàâéèêëîïôùûü")
_ES_VOWELS = frozenset("aeiouáéíóúü")
_ES_STRONG = frozenset("aeoáéóíú")

#: Shipped profiles. Two Spanish coefficient sets exist in circulation:
#: "es-paper" keeps a widely reprinted set whose k2/k3 magnitudes look
#: swapped relative to the usual formula roles; "es-fh" uses the
#: Fernández-Huerta coefficients. Callers must choose one explicitly.
PROFILES: dict[str, LanguageProfile] = {
    "en": LanguageProfile("en", 206.835, 1.015, 84.6, _EN_VOWELS, silent_final_e=True),
    "fr": LanguageProfile("fr", 207.0, 1.015, 73.6, _FR_VOWELS),
    "es-paper": LanguageProfile("es-paper", 180.0, 58.5, 1.0, _ES_VOWELS, strong_vowels=_ES_STRONG),
    "es-fh": LanguageProfile("es-fh", 206.84, 1.02, 60.0, _ES_VOWELS, strong_vowels=_ES_STRONG),
}


def get_profile(lang_code: str) -> LanguageProfile:
    try:
        return PROFILES[lang_code]
    except KeyError:
        known = ", ".join(sorted(PROFILES))
        raise ValueError(f"unknown language profile {lang_code!r} (known: {known})") from None


# --- metric-grade tokenization (mteval-v13a compatible) ---

# Punctuation split rules; ',' '.' and digits are excluded from the class and
# handled by the digit-aware rules below.
_13A_PUNCT = re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])")
_13A_PERIOD_AFTER = re.compile(r"([^0-9])([\.,])")
_13A_PERIOD_BEFORE = re.compile(r"([\.,])([^0-9])")
_13A_DIGIT_DASH = re.compile(r"([0-9])(-)")


def metric_tokens(text: str) -> list[str]:
    """13a-style tokens of ``text``; the raw-list twin of :func:`tokenize_metric`."""
    if not text:
        return []
    norm = (
        text.replace("<skipped>", "")
        .replace("-\n", "")
        .replace("\n", " ")
        .replace("&quot;", '"')
        .replace("&amp;", "&")
        .replace("&lt;", "<")
        .replace("&gt;", ">")
    )
    norm = f" {norm} "
    norm = _13A_PUNCT.sub(r" \1 ", norm)
    norm = _13A_PERIOD_AFTER.sub(r"\1 \2 ", norm)
    norm = _13A_PERIOD_BEFORE.sub(r" \1 \2", norm)
    norm = _13A_DIGIT_DASH.sub(r"\1 \2 ", norm)
    return norm.split()


def tokenize_metric(text: str) -> TokenizedText:
    """Tokenize for n-gram metrics: punctuation split per the 13a rules, case preserved."""
    return TokenizedText(tuple(metric_tokens(text)), "metric-13a")


# --- readability-grade counting ---

# Words are maximal alphanumeric runs; internal hyphens/apostrophes join,
# so hyphenated compounds count as one word.
_WORD_RE = re.compile(r"[^\W_]+(?:['’\-][^\W_]+)*", re.UNICODE)

# Terminal punctuation ends a sentence; a period between two digits is a
# decimal point, not a boundary.
_DECIMAL_DOT = re.compile(r"(?<=[0-9])\.(?=[0-9])")
_SENT_BOUNDARY = re.compile(r"[.!?…]+")

_WORD_PART_SPLIT = re.compile(r"['’\-]")


def tokenize_words(text: str, profile: LanguageProfile) -> TokenizedText:
    """Word tokens only (punctuation dropped), for readability counting."""
    del profile  # counting rules are language-independent at the word level
    return TokenizedText(tuple(_WORD_RE.findall(text)), "readability")


def split_sentences(text: str) -> int:
    """Number of sentences under terminal-punctuation splitting.

    Trailing text without terminal punctuation counts as one sentence;
    blank input counts zero.
    """
    if not text or not text.strip():
        return 0
    masked = _DECIMAL_DOT.sub("\x00", text)
    return sum(1 for seg in _SENT_BOUNDARY.split(masked) if seg.strip())


@lru_cache(maxsize=None)
def _vowel_re(vowels: frozenset[str]) -> re.Pattern[str]:
    return re.compile("[{}]+".format("".join(sorted(vowels))))


# lru_cache here is load-bearing for throughput: corpus text repeats words heavily.
@lru_cache(maxsize=2**17)
def _word_syllables(word: str, profile: LanguageProfile) -> int:
    total = 0
    vowel_re = _vowel_re(profile.vowels)
    for part in _WORD_PART_SPLIT.split(word):
        clusters = vowel_re.findall(part)
        if not clusters:
            continue
        count = len(clusters)
        if profile.strong_vowels:
            strong = profile.strong_vowels
            for cluster in clusters:
                count += sum(
                    1 for a, b in zip(cluster, cluster[1:]) if a in strong and b in strong
                )
        if (
            profile.silent_final_e
            and count > 1
            and part.endswith("e")
            and (len(part) < 2 or part[-2] not in profile.vowels)
        ):
            count -= 1
        total += count
    return total


def count_syllables(word: str, profile: LanguageProfile) -> int:
    """Syllables in a single word token, by maximal vowel-letter clusters.

    Hyphen/apostrophe parts are counted separately so compounds add up;
    words without vowel letters (digits, initialisms) count as one syllable.
    """
    return max(_word_syllables(word.lower(), profile), 1)


def text_stats(text: str, profile: LanguageProfile) -> TextStats:
    """Pooled word/sentence/syllable counts for one text segment."""
    words = _WORD_RE.findall(text)
    if not words:
        return TextStats(0, split_sentences(text), 0)
    n_sentences = max(split_sentences(text), 1)
    n_syllables = sum(count_syllables(w, profile) for w in words)
    return TextStats(len(words), n_sentences, n_syllables)
