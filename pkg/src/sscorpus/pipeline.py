"""Corpus construction: pseudo-pair generation, selectors, and labeling.

A pseudo pair joins a trusted sentence with the machine translation of its
bridge-language counterpart. The BLEU selector drops misaligned pairs (and
exact copies); the reading-ease selector keeps pairs whose ease gap clears
a threshold and labels the easier side as the simple one. Both selectors
are independent per-pair predicates, so filtering is order-stable,
idempotent, and safe to fan out across workers.
"""

from __future__ import annotations

import random
import unicodedata
from dataclasses import dataclass, replace
from multiprocessing import Pool
from typing import Iterable, Iterator, Optional

from .metrics import fres, sentence_bleu
from .textprep import LanguageProfile, get_profile, metric_tokens, tokenize_words

_SENTINEL = object()


@dataclass
class SentencePair:
    """One candidate pair before labeling; scores are filled by the selectors."""

    source_sentence: str
    translated_sentence: str
    index: int
    bleu: Optional[float] = None
    fres_source: Optional[float] = None
    fres_translated: Optional[float] = None


@dataclass(frozen=True)
class SelectorConfig:
    h_bleu: float = 15.0
    h_fres: float = 10.0
    enable_bleu: bool = True
    enable_fres: bool = True
    drop_identity: bool = True
    dedup: bool = False

    def __post_init__(self):
        if not 0.0 <= self.h_bleu <= 100.0:
            raise ValueError(f"h_bleu must be in [0, 100], got {self.h_bleu}")
        if self.h_fres < 0.0:
            raise ValueError(f"h_fres must be >= 0, got {self.h_fres}")

    def to_dict(self) -> dict:
        return {
            "h_bleu": self.h_bleu,
            "h_fres": self.h_fres,
            "enable_bleu": self.enable_bleu,
            "enable_fres": self.enable_fres,
            "drop_identity": self.drop_identity,
            "dedup": self.dedup,
        }


@dataclass
class LabeledPair:
    """A kept pair with the easier side labeled simple.

    ``provenance`` records which input side became the simple sentence
    ("source", "translated", or "unlabeled" when no selector assigned
    sides). Sides can only coincide for unlabeled passthrough pairs.
    """

    complex: str
    simple: str
    fres_gap: float
    provenance: str
    index: int
    bleu: Optional[float] = None
    fres_complex: Optional[float] = None
    fres_simple: Optional[float] = None


@dataclass
class DropTally:
    """Per-reason drop accounting for one pipeline run."""

    n_input: int = 0
    dropped_identity: int = 0
    dropped_bleu: int = 0
    dropped_fres: int = 0
    dropped_no_words: int = 0
    dropped_duplicate: int = 0
    n_kept: int = 0

    def to_dict(self) -> dict:
        return {
            "n_input": self.n_input,
            "dropped_identity": self.dropped_identity,
            "dropped_bleu": self.dropped_bleu,
            "dropped_fres": self.dropped_fres,
            "dropped_no_words": self.dropped_no_words,
            "dropped_duplicate": self.dropped_duplicate,
            "n_kept": self.n_kept,
        }


@dataclass
class CorpusStats:
    vocab_complex: int
    vocab_simple: int
    avg_len_complex: float
    avg_len_simple: float
    total_pairs: int

    def to_dict(self) -> dict:
        return {
            "vocab_complex": self.vocab_complex,
            "vocab_simple": self.vocab_simple,
            "avg_len_complex": self.avg_len_complex,
            "avg_len_simple": self.avg_len_simple,
            "total_pairs": self.total_pairs,
        }


@dataclass
class SimplificationCorpus:
    pairs: list[LabeledPair]
    lang: str
    config_snapshot: SelectorConfig
    stats: CorpusStats
    drop_tally: Optional[DropTally] = None


def generate_pseudo_pairs(
    bitext_targets: Iterable[str], translations: Iterable[str]
) -> Iterator[SentencePair]:
    """Pair the two line-aligned streams, one SentencePair per line, unfiltered."""
    target_iter = iter(bitext_targets)
    translation_iter = iter(translations)
    index = 0
    while True:
        target = next(target_iter, _SENTINEL)
        translation = next(translation_iter, _SENTINEL)
        if target is _SENTINEL and translation is _SENTINEL:
            return
        if target is _SENTINEL or translation is _SENTINEL:
            n_targets = index + sum(1 for _ in target_iter) + (target is not _SENTINEL)
            n_translations = (
                index + sum(1 for _ in translation_iter) + (translation is not _SENTINEL)
            )
            raise ValueError(
                "aligned streams differ in length: "
                f"{n_targets} target lines vs {n_translations} translation lines"
            )
        yield SentencePair(target, translation, index)
        index += 1


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _is_identity(pair: SentencePair) -> bool:
    return _nfc(pair.source_sentence) == _nfc(pair.translated_sentence)


def _safe_fres(text: str, profile: LanguageProfile) -> Optional[float]:
    try:
        return fres(text, profile)
    except ValueError:
        return None


def score_pair(pair: SentencePair, config: SelectorConfig, profile: LanguageProfile) -> SentencePair:
    """Fill in the metric fields a configuration needs; pure and order-free."""
    bleu = pair.bleu
    if config.enable_bleu and bleu is None:
        bleu = sentence_bleu(pair.translated_sentence, [pair.source_sentence])
    fres_source = pair.fres_source
    fres_translated = pair.fres_translated
    if config.enable_fres:
        if fres_source is None:
            fres_source = _safe_fres(pair.source_sentence, profile)
        if fres_translated is None:
            fres_translated = _safe_fres(pair.translated_sentence, profile)
    return replace(
        pair, bleu=bleu, fres_source=fres_source, fres_translated=fres_translated
    )


def bleu_selector(
    pairs: Iterable[SentencePair],
    config: SelectorConfig,
    tally: Optional[DropTally] = None,
) -> Iterator[SentencePair]:
    """Keep pairs whose translation scores >= h_bleu against the source.

    Exact copies (equal after NFC normalization) are dropped first when
    ``drop_identity`` is set. Survivors carry their BLEU score; input order
    is preserved.
    """
    if not config.enable_bleu:
        raise ValueError("bleu_selector called with enable_bleu=False")
    for pair in pairs:
        if config.drop_identity and _is_identity(pair):
            if tally:
                tally.dropped_identity += 1
            continue
        bleu = pair.bleu
        if bleu is None:
            bleu = sentence_bleu(pair.translated_sentence, [pair.source_sentence])
        if bleu < config.h_bleu:
            if tally:
                tally.dropped_bleu += 1
            continue
        pair.bleu = bleu
        yield pair


def _label(pair: SentencePair, fres_source: float, fres_translated: float) -> LabeledPair:
    # The side with the higher reading-ease score is the simple one.
    if fres_translated >= fres_source:
        return LabeledPair(
            complex=pair.source_sentence,
            simple=pair.translated_sentence,
            fres_gap=fres_translated - fres_source,
            provenance="translated",
            index=pair.index,
            bleu=pair.bleu,
            fres_complex=fres_source,
            fres_simple=fres_translated,
        )
    return LabeledPair(
        complex=pair.translated_sentence,
        simple=pair.source_sentence,
        fres_gap=fres_source - fres_translated,
        provenance="source",
        index=pair.index,
        bleu=pair.bleu,
        fres_complex=fres_translated,
        fres_simple=fres_source,
    )


def fres_selector(
    pairs: Iterable[SentencePair],
    config: SelectorConfig,
    profile: LanguageProfile,
    tally: Optional[DropTally] = None,
) -> Iterator[LabeledPair]:
    """Keep pairs with a reading-ease gap >= h_fres (inclusive) and label them.

    Pairs with a side that has no countable words are dropped and tallied,
    not raised. Pairs with identical sides are never labeled (relevant only
    at h_fres = 0, where the zero gap would otherwise pass).
    """
    if not config.enable_fres:
        raise ValueError("fres_selector called with enable_fres=False")
    for pair in pairs:
        fres_source = pair.fres_source
        if fres_source is None:
            fres_source = _safe_fres(pair.source_sentence, profile)
        fres_translated = pair.fres_translated
        if fres_translated is None:
            fres_translated = _safe_fres(pair.translated_sentence, profile)
        if fres_source is None or fres_translated is None:
            if tally:
                tally.dropped_no_words += 1
            continue
        if abs(fres_source - fres_translated) < config.h_fres:
            if tally:
                tally.dropped_fres += 1
            continue
        if _is_identity(pair):
            if tally:
                tally.dropped_identity += 1
            continue
        pair.fres_source = fres_source
        pair.fres_translated = fres_translated
        yield _label(pair, fres_source, fres_translated)


def _decide(
    scored_pairs: Iterable[SentencePair],
    config: SelectorConfig,
    tally: DropTally,
) -> Iterator[LabeledPair]:
    """Apply the configured selectors to pre-scored pairs, in order."""
    seen: set[tuple[str, str]] = set()
    for pair in scored_pairs:
        tally.n_input += 1
        if config.enable_bleu:
            if config.drop_identity and _is_identity(pair):
                tally.dropped_identity += 1
                continue
            if pair.bleu is None or pair.bleu < config.h_bleu:
                tally.dropped_bleu += 1
                continue
        if config.enable_fres:
            if pair.fres_source is None or pair.fres_translated is None:
                tally.dropped_no_words += 1
                continue
            if abs(pair.fres_source - pair.fres_translated) < config.h_fres:
                tally.dropped_fres += 1
                continue
            if _is_identity(pair):
                tally.dropped_identity += 1
                continue
            labeled = _label(pair, pair.fres_source, pair.fres_translated)
        else:
            labeled = LabeledPair(
                complex=pair.source_sentence,
                simple=pair.translated_sentence,
                fres_gap=0.0,
                provenance="unlabeled",
                index=pair.index,
                bleu=pair.bleu,
                fres_complex=pair.fres_source,
                fres_simple=pair.fres_translated,
            )
        if config.dedup:
            key = (labeled.complex, labeled.simple)
            if key in seen:
                tally.dropped_duplicate += 1
                continue
            seen.add(key)
        tally.n_kept += 1
        yield labeled


# Worker-side state for multiprocessing; set once per worker by _init_worker.
_WORKER_CONFIG: Optional[SelectorConfig] = None
_WORKER_PROFILE: Optional[LanguageProfile] = None


def _init_worker(config: SelectorConfig, profile: LanguageProfile) -> None:
    global _WORKER_CONFIG, _WORKER_PROFILE
    _WORKER_CONFIG = config
    _WORKER_PROFILE = profile


def _score_in_worker(pair: SentencePair) -> SentencePair:
    return score_pair(pair, _WORKER_CONFIG, _WORKER_PROFILE)


def _scored_stream(
    pairs: Iterable[SentencePair],
    config: SelectorConfig,
    profile: LanguageProfile,
    workers: int,
) -> Iterator[SentencePair]:
    if workers <= 1:
        for pair in pairs:
            yield score_pair(pair, config, profile)
        return
    # imap preserves input order, so the merged stream is bit-identical to
    # the single-worker run regardless of scheduling.
    with Pool(workers, initializer=_init_worker, initargs=(config, profile)) as pool:
        yield from pool.imap(_score_in_worker, pairs, chunksize=256)


def build_corpus(
    bitext_targets: Iterable[str],
    translations: Iterable[str],
    config: SelectorConfig,
    profile: LanguageProfile,
    workers: int = 1,
) -> SimplificationCorpus:
    """Generate, score, filter, and label; returns the corpus plus drop tallies."""
    pairs = generate_pseudo_pairs(bitext_targets, translations)
    tally = DropTally()
    scored = _scored_stream(pairs, config, profile, workers)
    kept = list(_decide(scored, config, tally))
    return SimplificationCorpus(
        pairs=kept,
        lang=profile.lang_code,
        config_snapshot=config,
        stats=compute_corpus_stats(kept, profile),
        drop_tally=tally,
    )


def compute_corpus_stats(pairs: list[LabeledPair], profile: LanguageProfile) -> CorpusStats:
    """Distinct-token vocabulary and mean word length per side."""
    vocab_complex: set[str] = set()
    vocab_simple: set[str] = set()
    words_complex = 0
    words_simple = 0
    for pair in pairs:
        vocab_complex.update(metric_tokens(pair.complex))
        vocab_simple.update(metric_tokens(pair.simple))
        words_complex += len(tokenize_words(pair.complex, profile).tokens)
        words_simple += len(tokenize_words(pair.simple, profile).tokens)
    total = len(pairs)
    return CorpusStats(
        vocab_complex=len(vocab_complex),
        vocab_simple=len(vocab_simple),
        avg_len_complex=words_complex / total if total else 0.0,
        avg_len_simple=words_simple / total if total else 0.0,
        total_pairs=total,
    )


def corpus_stats(corpus: SimplificationCorpus) -> CorpusStats:
    return compute_corpus_stats(corpus.pairs, get_profile(corpus.lang))


ABLATION_VARIANTS = ("pseudo", "no_bleu", "no_fres", "full")


def ablate(
    bitext_targets: Iterable[str],
    translations: Iterable[str],
    profile: LanguageProfile,
    config: Optional[SelectorConfig] = None,
    workers: int = 1,
) -> dict[str, SimplificationCorpus]:
    """Build the four selector variants from one shared scoring pass.

    Returns corpora keyed "pseudo" (no selectors), "no_bleu" (ease selector
    only), "no_fres" (BLEU selector only), and "full".
    """
    base = config or SelectorConfig()
    # Score once with everything enabled; each variant then filters the
    # cached scores. Holds all pairs in memory, sized for ablation studies.
    score_config = replace(base, enable_bleu=True, enable_fres=True)
    pairs = generate_pseudo_pairs(bitext_targets, translations)
    scored = list(_scored_stream(pairs, score_config, profile, workers))

    variant_configs = {
        "pseudo": replace(base, enable_bleu=False, enable_fres=False),
        "no_bleu": replace(base, enable_bleu=False, enable_fres=True),
        "no_fres": replace(base, enable_bleu=True, enable_fres=False),
        "full": replace(base, enable_bleu=True, enable_fres=True),
    }
    variants = {}
    for name, variant_config in variant_configs.items():
        tally = DropTally()
        kept = list(_decide(scored, variant_config, tally))
        variants[name] = SimplificationCorpus(
            pairs=kept,
            lang=profile.lang_code,
            config_snapshot=variant_config,
            stats=compute_corpus_stats(kept, profile),
            drop_tally=tally,
        )
    return variants


def subset(corpus: SimplificationCorpus, n: int, seed: int) -> SimplificationCorpus:
    """Deterministic random sample of n pairs, preserving relative order."""
    total = len(corpus.pairs)
    if n > total:
        raise ValueError(f"cannot sample {n} pairs from a corpus of {total}")
    indices = sorted(random.Random(seed).sample(range(total), n))
    pairs = [corpus.pairs[i] for i in indices]
    return SimplificationCorpus(
        pairs=pairs,
        lang=corpus.lang,
        config_snapshot=corpus.config_snapshot,
        stats=compute_corpus_stats(pairs, get_profile(corpus.lang)),
        drop_tally=None,
    )
