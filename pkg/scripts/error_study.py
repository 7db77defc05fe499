#!/usr/bin/env python3
"""Corrupt seed-lexicon forms with synthetic errors and report how often
the intended word is recovered at each suggestion rank.

Usage: python scripts/error_study.py [--trials N] [--seed N]
"""

import argparse
import random
import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from glspell import greek
from glspell.correct import Checker
from glspell.dictstore import build
from glspell.gwdl import parse_path, resolve
from glspell.mkdict import read_frequency_list
from glspell.morphgen import expand_all

ROOT = Path(__file__).resolve().parent.parent


def corrupt(letters: str, kind: str, rng: random.Random) -> str | None:
    n = len(letters)
    if kind == "deletion" and n > 1:
        i = rng.randrange(n)
        return letters[:i] + letters[i + 1 :]
    if kind == "insertion":
        i = rng.randrange(n + 1)
        return letters[:i] + rng.choice(greek.ALPHABET) + letters[i:]
    if kind == "substitution":
        i = rng.randrange(n)
        other = [c for c in greek.ALPHABET if c != letters[i]]
        return letters[:i] + rng.choice(other) + letters[i + 1 :]
    if kind == "transposition":
        pairs = [i for i in range(n - 1) if letters[i] != letters[i + 1]]
        if pairs:
            i = rng.choice(pairs)
            return letters[:i] + letters[i + 1] + letters[i] + letters[i + 2 :]
    return None


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=17)
    args = parser.parse_args()

    ruleset = resolve(parse_path(ROOT / "lexicon" / "seed.gwdl"))
    checker = Checker(
        build(ruleset.entries,
              read_frequency_list(ROOT / "lexicon" / "frequencies.tsv"))
    )
    forms = list(expand_all(ruleset.entries))
    accepted = {sf.unstressed for sf in forms}
    rng = random.Random(args.seed)
    kinds = ["deletion", "insertion", "substitution", "transposition"]

    ranks: dict[str, Counter] = {k: Counter() for k in kinds + ["stress"]}
    trials: Counter = Counter()
    done = 0
    while done < args.trials:
        sf = rng.choice(forms)
        kind = rng.choice(kinds + ["stress"])
        if kind == "stress":
            count = greek.syllable_count(sf.unstressed, sf.breaks)
            if count < 2:
                continue
            pos = rng.choice([p for p in range(1, count + 1) if p != sf.stress])
            corrupted = greek.apply_stress(sf.unstressed, pos, sf.breaks)
        else:
            letters = corrupt(sf.unstressed, kind, rng)
            if letters is None or letters in accepted:
                continue
            try:
                corrupted = greek.apply_stress(letters, None)
            except greek.NoVowel:
                continue
        if checker.check(corrupted).accepted:
            continue
        trials[kind] += 1
        done += 1
        for s in checker.suggest(corrupted, limit=None):
            if s.display == sf.display:
                ranks[kind][min(s.rank, 6)] += 1
                break
        else:
            ranks[kind]["miss"] += 1

    print(f"{'error type':<15} {'n':>5} {'rank1':>7} {'top3':>7} {'found':>7}")
    for kind in kinds + ["stress"]:
        n = trials[kind]
        if not n:
            continue
        rank1 = ranks[kind][1] / n
        top3 = sum(ranks[kind][r] for r in (1, 2, 3)) / n
        found = 1 - ranks[kind]["miss"] / n
        print(f"{kind:<15} {n:>5} {rank1:>7.1%} {top3:>7.1%} {found:>7.1%}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
