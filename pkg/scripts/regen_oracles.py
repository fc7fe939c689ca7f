#!/usr/bin/env python3
"""Recompute the frozen oracle values in tests/fixtures/metric_eval_100.expected.json.

The expected file pins outputs of two trusted reference implementations so
the test suite stays self-contained:

  * a reference BLEU scorer of the mteval-13a lineage (sacrebleu's single-file
    distribution, e.g. sacrebleu.py from its 1.x series), and
  * the reference SARI scorer (the original SARI.py as published by its
    authors, exposing ``SARIsent``).

Neither tool is vendored here; pass paths to local copies. Old sacrebleu
single-file copies import ``portalocker`` and ``MeCab`` at module scope, so
lightweight stubs are installed before loading.

Usage:
  python3 scripts/regen_oracles.py --bleu-ref path/to/sacrebleu.py --sari-ref path/to/SARI.py
"""

import argparse
import importlib.util
import json
import sys
import types
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

TOKENIZER_CASES = [
    "Hello, world!",
    "It costs $1,234.56 (about 3.5% more) -- right?",
    'He said: "don\'t go"… but they went; 100-200 people followed.',
    "quotes &quot;escaped&amp; entities&lt;tag&gt;",
    "ends with digit-dash 7- and dash-digit -7",
    "word",
    "¿Qué pasa? ¡Nada! Voilà—c'est ça.",
    "A sentence. Another one? Yes! Done…",
    "state-of-the-art non-trivial co-operation",
    "tabs\tand\nnewlines stay out",
]

BOUNDARY_DROPPED = (
    "the old man walked slowly across the narrow bridge at dawn .",
    "the young woman walked quickly across a wide bridge at night .",
)
BOUNDARY_KEPT = (
    "the old man walked slowly across the narrow bridge at dawn .",
    "the old man walked slowly across the long bridge at dusk .",
)


def _install_stubs() -> None:
    portalocker = types.ModuleType("portalocker")

    class _Lock:
        def __init__(self, *args, **kwargs):
            pass

        def __enter__(self):
            return self

        def __exit__(self, *args):
            return False

    portalocker.Lock = _Lock
    sys.modules.setdefault("portalocker", portalocker)

    mecab = types.ModuleType("MeCab")

    class _DictInfo:
        filename = "stub/ipadic/sys.dic"
        size = 392126
        next = None

    class _Tagger:
        def __init__(self, *args, **kwargs):
            pass

        def parse(self, text):
            return text

        def dictionary_info(self):
            return _DictInfo()

    mecab.Tagger = _Tagger
    sys.modules.setdefault("MeCab", mecab)


def _load(name: str, path: str):
    spec = importlib.util.spec_from_file_location(name, path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bleu-ref", required=True, help="path to the reference BLEU scorer module")
    parser.add_argument("--sari-ref", required=True, help="path to the reference SARI scorer module")
    args = parser.parse_args()

    _install_stubs()
    refbleu = _load("refbleu", args.bleu_ref)
    refsari = _load("refsari", args.sari_ref)

    items = json.loads((FIXTURES / "metric_eval_100.json").read_text(encoding="utf-8"))["items"]
    sources = [it["source"] for it in items]
    hypotheses = [it["hypothesis"] for it in items]
    refsets = [it["references"] for it in items]
    n_refs = len(refsets[0])

    ref_streams = [[rs[i] for rs in refsets] for i in range(n_refs)]
    corpus_bleu = refbleu.corpus_bleu(hypotheses, ref_streams, smooth_method="exp").score

    def oracle_tokens(text: str) -> str:
        return refbleu.tokenize_13a(text.lower())

    sari_scores = [
        refsari.SARIsent(oracle_tokens(s), oracle_tokens(h), [oracle_tokens(r) for r in rs])
        for s, h, rs in zip(sources, hypotheses, refsets)
    ]
    corpus_sari = 100.0 * sum(sari_scores) / len(sari_scores)

    sentence_bleu = [
        refbleu.corpus_bleu(h, [[r] for r in rs], smooth_method="exp", use_effective_order=True).score
        for h, rs in list(zip(hypotheses, refsets))[:10]
    ]

    def pair_bleu(hyp: str, ref: str) -> float:
        return refbleu.corpus_bleu(hyp, [[ref]], smooth_method="exp", use_effective_order=True).score

    expected = {
        "corpus_bleu": corpus_bleu,
        "corpus_sari": corpus_sari,
        "sentence_bleu_first10": sentence_bleu,
        "tokenizer": [
            {"text": c, "tokens": refbleu.tokenize_13a(c).split()} for c in TOKENIZER_CASES
        ],
        "bleu_boundary_pair": {
            "hypothesis": BOUNDARY_DROPPED[0],
            "reference": BOUNDARY_DROPPED[1],
            "bleu": pair_bleu(*BOUNDARY_DROPPED),
        },
        "bleu_boundary_pair_kept": {
            "hypothesis": BOUNDARY_KEPT[0],
            "reference": BOUNDARY_KEPT[1],
            "bleu": pair_bleu(*BOUNDARY_KEPT),
        },
    }
    out_path = FIXTURES / "metric_eval_100.expected.json"
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(expected, fh, indent=1, ensure_ascii=False)
        fh.write("\n")
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
