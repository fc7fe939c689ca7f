"""Command-line interface: build, eval, stats, ablate, subset.

Exit codes: 0 success, 1 runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterable, Optional

from . import ingest, metrics, pipeline
from .textprep import PROFILES, get_profile


def _add_selector_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lang", default="en", choices=sorted(PROFILES), help="language profile")
    parser.add_argument("--h-bleu", type=float, default=15.0, help="BLEU selector threshold")
    parser.add_argument("--h-fres", type=float, default=10.0, help="reading-ease gap threshold")
    parser.add_argument("--no-bleu-selector", action="store_true", help="disable the BLEU selector")
    parser.add_argument(
        "--no-fres-selector", action="store_true", help="disable the reading-ease selector"
    )
    parser.add_argument(
        "--keep-identity", action="store_true", help="keep pairs whose sides are identical"
    )
    parser.add_argument(
        "--dedup", action="store_true", help="drop exact duplicate (complex, simple) pairs"
    )


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--target", required=True, help="corpus-language sentences, one per line")
    parser.add_argument("--bridge", help="bridge-language sentences (for --translator-cmd)")
    parser.add_argument("--translations", help="precomputed translations, aligned to --target")
    parser.add_argument("--translator-cmd", help="line-protocol translator command")
    parser.add_argument("--batch-size", type=int, default=64, help="translator batch size")
    parser.add_argument(
        "--translator-timeout", type=float, default=300.0, help="per-batch timeout, seconds"
    )
    parser.add_argument("--workers", type=int, default=1, help="scoring worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sscorpus",
        description="Build and evaluate sentence-simplification corpora from bitexts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build a labeled corpus from a bitext")
    _add_selector_args(p_build)
    _add_input_args(p_build)
    p_build.add_argument("--out", required=True, help="output path prefix")
    p_build.add_argument("--format", default="plain", choices=("plain", "tsv"))

    p_eval = sub.add_parser("eval", help="score hypotheses against an evaluation dataset")
    p_eval.add_argument("--dataset", required=True, help="directory with <name>.src and <name>.ref.<i>")
    p_eval.add_argument("--hypotheses", help="hypothesis file, one sentence per line")
    p_eval.add_argument(
        "--row", choices=("source",), help="shortcut: score the dataset sources as hypotheses"
    )
    p_eval.add_argument("--lang", default="en", choices=sorted(PROFILES))

    p_stats = sub.add_parser("stats", help="report statistics of a written corpus")
    p_stats.add_argument("--corpus", required=True, help="corpus path prefix")
    p_stats.add_argument("--format", default="plain", choices=("plain", "tsv"))

    p_ablate = sub.add_parser("ablate", help="build the four selector variants")
    _add_selector_args(p_ablate)
    _add_input_args(p_ablate)
    p_ablate.add_argument("--out", required=True, help="output path prefix (variant suffix added)")
    p_ablate.add_argument("--format", default="plain", choices=("plain", "tsv"))

    p_subset = sub.add_parser("subset", help="sample a smaller corpus, order-preserving")
    p_subset.add_argument("--corpus", required=True, help="input corpus path prefix")
    p_subset.add_argument("-n", type=int, required=True, help="number of pairs to keep")
    p_subset.add_argument("--seed", type=int, default=0)
    p_subset.add_argument("--out", required=True, help="output path prefix")
    p_subset.add_argument("--format", default="plain", choices=("plain", "tsv"))

    return parser


def _selector_config(args: argparse.Namespace) -> pipeline.SelectorConfig:
    return pipeline.SelectorConfig(
        h_bleu=args.h_bleu,
        h_fres=args.h_fres,
        enable_bleu=not args.no_bleu_selector,
        enable_fres=not args.no_fres_selector,
        drop_identity=not args.keep_identity,
        dedup=args.dedup,
    )


def _input_streams(args: argparse.Namespace) -> tuple[Iterable[str], Iterable[str]]:
    target_path = Path(args.target)
    if bool(args.translations) == bool(args.translator_cmd):
        raise ValueError("exactly one of --translations or --translator-cmd is required")
    if args.translations:
        source = ingest.TranslationSource("precomputed", args.translations)
        n_target = ingest.count_lines(target_path)
        n_translations = ingest.count_lines(Path(args.translations))
        if n_target != n_translations:
            raise ValueError(
                f"line count mismatch: {n_target} lines in {target_path} "
                f"vs {n_translations} lines in {args.translations}"
            )
        return ingest.iter_lines(target_path), ingest.translate(iter(()), source)
    if not args.bridge:
        raise ValueError("--translator-cmd requires --bridge")
    bridge_path = Path(args.bridge)
    n_target = ingest.count_lines(target_path)
    n_bridge = ingest.count_lines(bridge_path)
    if n_target != n_bridge:
        raise ValueError(
            f"line count mismatch: {n_target} lines in {target_path} "
            f"vs {n_bridge} lines in {bridge_path}"
        )
    source = ingest.TranslationSource(
        "external", args.translator_cmd, args.batch_size, args.translator_timeout
    )
    # The two sides are separate files, so each can be streamed on its own;
    # the translator is free to read bridge lines a batch ahead.
    return ingest.iter_lines(target_path), ingest.translate(
        ingest.iter_lines(bridge_path), source
    )


def _run_info(args: argparse.Namespace, extra: Optional[dict] = None) -> dict:
    skip = {"command", "func"}
    info = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}
    if extra:
        info.update(extra)
    return info


def _print_summary(tally: pipeline.DropTally) -> None:
    rows = [
        ("input pairs", tally.n_input),
        ("dropped (identity)", tally.dropped_identity),
        ("dropped (BLEU)", tally.dropped_bleu),
        ("dropped (FRES)", tally.dropped_fres),
        ("dropped (no words)", tally.dropped_no_words),
        ("dropped (duplicate)", tally.dropped_duplicate),
        ("kept", tally.n_kept),
    ]
    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        print(f"{label:<{width}}  {value}")


def cmd_build(args: argparse.Namespace) -> int:
    config = _selector_config(args)
    profile = get_profile(args.lang)
    targets, translations = _input_streams(args)
    corpus = pipeline.build_corpus(targets, translations, config, profile, workers=args.workers)
    written = ingest.write_corpus(corpus, args.out, format=args.format, run_info=_run_info(args))
    _print_summary(corpus.drop_tally)
    print("wrote: " + " ".join(str(p) for p in written))
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    if bool(args.hypotheses) == bool(args.row):
        raise ValueError("exactly one of --hypotheses or --row is required")
    sources, references = ingest.read_eval_dataset(args.dataset)
    if args.row == "source":
        hypotheses = list(sources)
    else:
        hypotheses = list(ingest.iter_lines(Path(args.hypotheses)))
        if len(hypotheses) != len(sources):
            raise ValueError(
                f"{args.hypotheses}: {len(hypotheses)} hypotheses for {len(sources)} sources"
            )
    report = metrics.evaluate(sources, hypotheses, references, get_profile(args.lang))
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    corpus = ingest.read_corpus(args.corpus, format=args.format)
    print(json.dumps(corpus.stats.to_dict(), indent=2))
    return 0


def cmd_ablate(args: argparse.Namespace) -> int:
    config = _selector_config(args)
    profile = get_profile(args.lang)
    targets, translations = _input_streams(args)
    variants = pipeline.ablate(targets, translations, profile, config, workers=args.workers)
    kept = {}
    for name, corpus in variants.items():
        prefix = f"{args.out}.{name}"
        ingest.write_corpus(corpus, prefix, format=args.format, run_info=_run_info(args, {"variant": name}))
        kept[name] = corpus.stats.total_pairs
    print(json.dumps({"kept": kept}, indent=2))
    return 0


def cmd_subset(args: argparse.Namespace) -> int:
    corpus = ingest.read_corpus(args.corpus, format=args.format)
    sampled = pipeline.subset(corpus, args.n, args.seed)
    ingest.write_corpus(sampled, args.out, format=args.format, run_info=_run_info(args))
    print(f"kept {sampled.stats.total_pairs} of {corpus.stats.total_pairs} pairs")
    return 0


_COMMANDS = {
    "build": cmd_build,
    "eval": cmd_eval,
    "stats": cmd_stats,
    "ablate": cmd_ablate,
    "subset": cmd_subset,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
