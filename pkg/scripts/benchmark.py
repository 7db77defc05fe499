#!/usr/bin/env python3
"""Measure checking throughput and correction-probe economics on the seed
lexicon.

Usage: python scripts/benchmark.py [--tokens N] [--seed N]
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from glspell import greek
from glspell.correct import CLASS_DELETION, Checker, ProbeStats
from glspell.dictstore import build
from glspell.gwdformat import deserialize, serialize
from glspell.gwdl import parse_path, resolve
from glspell.mkdict import read_frequency_list
from glspell.morphgen import expand_all

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--tokens", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=4)
    args = parser.parse_args()

    t0 = time.perf_counter()
    ruleset = resolve(parse_path(ROOT / "lexicon" / "seed.gwdl"))
    main_dict = build(
        ruleset.entries,
        read_frequency_list(ROOT / "lexicon" / "frequencies.tsv"),
    )
    forms = list(expand_all(ruleset.entries))
    print(f"build: {len(ruleset.entries)} entries, {len(forms)} forms, "
          f"{time.perf_counter() - t0:.2f} s")

    raw = serialize(main_dict)
    print(f"serialized size: {len(raw)} bytes")
    checker = Checker(deserialize(raw))

    rng = random.Random(args.seed)
    displays = [sf.display for sf in forms]
    doc = [rng.choice(displays) for _ in range(args.tokens)]
    greek._normalize_cached.cache_clear()
    t0 = time.perf_counter()
    flagged = sum(1 for token in doc if not checker.check(token).accepted)
    elapsed = time.perf_counter() - t0
    print(f"check: {args.tokens} tokens in {elapsed:.2f} s "
          f"= {args.tokens / elapsed:,.0f} words/sec ({flagged} flagged)")

    # probe economics of the insertion-reversal generator
    word = greek.normalize("πρόγαμμα").letters
    for prune in (False, True):
        stats = ProbeStats()
        checker.reversal_candidates(word, prune=prune, stats=stats)
        mode = "pruned" if prune else "unpruned"
        print(f"reversal {mode}: {stats.by_class.get(CLASS_DELETION, 0)} "
              f"insertion probes, {stats.probes} total")

    t0 = time.perf_counter()
    n = 200
    for sf in rng.sample(forms, n):
        checker.suggest(greek.apply_stress(sf.unstressed[:-1] or "α", None))
    print(f"suggest: {n / (time.perf_counter() - t0):,.0f} corrections/sec")
    return 0


if __name__ == "__main__":
    sys.exit(main())
