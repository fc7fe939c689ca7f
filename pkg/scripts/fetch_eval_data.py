#!/usr/bin/env python3
"""Download the public simplification evaluation sets into data/eval/.

Produces the layout the `sscorpus eval` command and the acceptance suite
expect (one .src file plus contiguous .ref.<i> files, 359 lines each):

  data/eval/turkcorpus/turk.src, turk.ref.0 .. turk.ref.7
  data/eval/asset/asset.src,     asset.ref.0 .. asset.ref.9

Needs direct network access. Upstream paths occasionally move; if a
download fails, fetch the eight-reference and ten-reference test sets by
hand and arrange them in the layout above (sources in the .src file, the
i-th reference of every sentence in .ref.<i>).
"""

import argparse
import sys
import urllib.error
import urllib.request
from pathlib import Path

EXPECTED_LINES = 359

ASSET_BASE = "https://raw.githubusercontent.com/facebookresearch/asset/main/dataset"
ASSET_FILES = [("asset.test.orig", "asset.src")] + [
    (f"asset.test.simp.{i}", f"asset.ref.{i}") for i in range(10)
]

# Detokenized truecase variant, the form the standard evaluation tooling
# scores. Candidate locations are tried in order.
TURK_BASES = [
    "https://raw.githubusercontent.com/feralvam/easse/master/easse/resources/data/test_sets/turkcorpus",
    "https://raw.githubusercontent.com/feralvam/easse/master/easse/resources/data/test_sets/turk",
]
TURK_FILES = [("test.truecase.detok.orig", "turk.src")] + [
    (f"test.truecase.detok.simp.{i}", f"turk.ref.{i}") for i in range(8)
]


def fetch(url: str, dest: Path) -> bool:
    try:
        with urllib.request.urlopen(url, timeout=60) as response:
            data = response.read()
    except (urllib.error.URLError, OSError) as exc:
        print(f"  failed: {url} ({exc})", file=sys.stderr)
        return False
    lines = data.decode("utf-8").splitlines()
    if len(lines) != EXPECTED_LINES:
        print(f"  unexpected line count {len(lines)} from {url}", file=sys.stderr)
        return False
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_bytes(data if data.endswith(b"\n") else data + b"\n")
    print(f"  wrote {dest}")
    return True


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/eval", help="output directory root")
    parser.add_argument("--asset-base", default=ASSET_BASE)
    parser.add_argument("--turk-base", action="append", default=None,
                        help="candidate base URL for the eight-reference set (repeatable)")
    args = parser.parse_args()
    out_root = Path(args.out)
    ok = True

    print("fetching ten-reference test set ...")
    for remote, local in ASSET_FILES:
        if not fetch(f"{args.asset_base}/{remote}", out_root / "asset" / local):
            ok = False

    print("fetching eight-reference test set ...")
    turk_bases = args.turk_base or TURK_BASES
    for remote, local in TURK_FILES:
        if not any(fetch(f"{base}/{remote}", out_root / "turkcorpus" / local) for base in turk_bases):
            ok = False

    if not ok:
        print("\nsome files could not be fetched; see the layout note in --help", file=sys.stderr)
        return 1
    print("done")
    return 0


if __name__ == "__main__":
    sys.exit(main())
