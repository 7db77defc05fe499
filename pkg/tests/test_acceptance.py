"""Acceptance suite: one test per shipping criterion, each printing a
PASS/FAIL line.  Run with  pytest tests/test_acceptance.py -v -s

Every tolerance is pinned here; nothing is deferred to calibration.
"""

import itertools
import random
import sys
import time
import unicodedata

import pytest

from glspell import greek
from glspell.correct import CLASS_DELETION, Checker, ProbeStats
from glspell.dictstore import build
from glspell.gwdformat import deserialize, serialize
from glspell.gwdl import ResolvedEntry, ResolvedForm, parse, parse_path, resolve
from glspell.mkdict import read_frequency_list
from glspell.morphgen import expand_all, expand_form
from tests.paths import FREQ_TSV, SEED_GWDL

NOUN_RULES = """
!a14=(3,2,3,3,2).
#OUSOSb=ος|ου|ο|οι|ων|ους.
$OUSOS7=#OUSOSb !a14.
προ-ο-δ[$OUSOS7].
"""

VERB_PAST_RULES = """
!b1=(2,2,2,2,3).
#PAE=α|ες|ε|αν|αμε|ατε|ανε.
$PAEF1=ουσ #PAE !b1.
α-γα-π[$PAEF1].
"""


def _report(name: str, detail: str = "") -> None:
    line = f"ACCEPTANCE PASS  {name}"
    if detail:
        line += f"  ({detail})"
    print(line, file=sys.stderr)


@pytest.fixture(scope="module")
def seed():
    ruleset = resolve(parse_path(SEED_GWDL))
    main = build(ruleset.entries, read_frequency_list(FREQ_TSV))
    forms = list(expand_all(ruleset.entries))
    return ruleset, main, forms


@pytest.fixture(scope="module")
def checker(seed):
    _, main, _ = seed
    return Checker(main)


def test_criterion_noun_paradigm_golden():
    """Compiling the progress-noun entry yields exactly its six forms."""
    start = time.perf_counter()
    ruleset = resolve(parse(NOUN_RULES))
    forms = {sf.display for sf in expand_all(ruleset.entries)}
    expected = {
        unicodedata.normalize("NFC", w)
        for w in ("πρόοδος", "προόδου", "πρόοδο", "πρόοδοι", "προόδων", "προόδους")
    }
    elapsed = time.perf_counter() - start
    assert forms == expected
    assert elapsed < 1.0
    _report("noun paradigm golden", f"{elapsed * 1000:.0f} ms")


def test_criterion_verb_past_paradigm_golden():
    """The past-tense form rule of the love-verb yields its seven forms."""
    start = time.perf_counter()
    ruleset = resolve(parse(VERB_PAST_RULES))
    (entry,) = ruleset.entries
    forms = {sf.display for sf in expand_form(entry.stem, entry.forms[0])}
    expected = {
        unicodedata.normalize("NFC", w)
        for w in (
            "αγαπούσα", "αγαπούσες", "αγαπούσε", "αγαπούσαν",
            "αγαπούσαμε", "αγαπούσατε", "αγαπούσανε",
        )
    }
    elapsed = time.perf_counter() - start
    assert forms == expected
    assert elapsed < 1.0
    _report("verb past paradigm golden", f"{elapsed * 1000:.0f} ms")


def test_criterion_round_trip_acceptance(seed, checker):
    """100% of generated forms are accepted by check()."""
    ruleset, _, forms = seed
    assert len(ruleset.entries) >= 200
    start = time.perf_counter()
    failures = [
        sf.display for sf in forms if not checker.check(sf.display).accepted
    ]
    elapsed = time.perf_counter() - start
    assert failures == []
    assert elapsed < 10.0
    _report(
        "round-trip acceptance",
        f"{len(forms)} forms over {len(ruleset.entries)} entries, {elapsed:.2f} s",
    )


def test_criterion_stress_error_repair(seed, checker):
    """Every wrong-stress variant of every polysyllabic form is flagged
    and its suggestions include the original form."""
    _, _, forms = seed
    start = time.perf_counter()
    checked = 0
    for sf in forms:
        n = greek.syllable_count(sf.unstressed, sf.breaks)
        if n < 2:
            continue
        for pos in [*range(1, n + 1), None]:  # relocated or dropped tonos
            if pos == sf.stress:
                continue
            variant = greek.apply_stress(sf.unstressed, pos, sf.breaks)
            result = checker.check(variant)
            assert not result.accepted, (sf.display, variant)
            suggestions = checker.suggest(variant, limit=None)
            assert sf.display in [s.display for s in suggestions], (
                sf.display, variant,
            )
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _report("stress-error repair", f"{checked} variants, {elapsed:.1f} s")


def test_criterion_single_error_reversal(seed, checker):
    """1,000 random single-error corruptions: the original is always among
    the suggestions when the corrupted string is not itself a word."""
    _, _, forms = seed
    accepted_letters = {sf.unstressed for sf in forms}
    rng = random.Random(20260810)
    start = time.perf_counter()
    tried = 0
    while tried < 1000:
        sf = rng.choice(forms)
        letters = sf.unstressed
        kind = rng.choice(
            ["deletion", "insertion", "substitution", "transposition"]
        )
        n = len(letters)
        if kind == "deletion":
            if n < 2:
                continue
            i = rng.randrange(n)
            corrupted = letters[:i] + letters[i + 1 :]
        elif kind == "insertion":
            i = rng.randrange(n + 1)
            corrupted = letters[:i] + rng.choice(greek.ALPHABET) + letters[i:]
        elif kind == "substitution":
            i = rng.randrange(n)
            corrupted = (
                letters[:i]
                + rng.choice([c for c in greek.ALPHABET if c != letters[i]])
                + letters[i + 1 :]
            )
        else:
            pairs = [i for i in range(n - 1) if letters[i] != letters[i + 1]]
            if not pairs:
                continue
            i = rng.choice(pairs)
            corrupted = (
                letters[:i] + letters[i + 1] + letters[i] + letters[i + 2 :]
            )
        if corrupted in accepted_letters:
            continue
        try:
            display = greek.apply_stress(corrupted, None)
        except greek.NoVowel:
            display = corrupted
        suggestions = checker.suggest(display, limit=None)
        assert sf.display in [s.display for s in suggestions], (
            sf.display, corrupted, kind,
        )
        tried += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _report("single-error reversal", f"{tried} pairs, {elapsed:.1f} s")


def test_criterion_trigram_pruning(seed, checker):
    """Letter-insertion reversal on the program-word deletion typo: 216
    probes unpruned, strictly fewer pruned, identical suggestion sets."""
    _, _, _ = seed
    letters = greek.normalize("πρόγαμμα").letters
    unpruned_stats, pruned_stats = ProbeStats(), ProbeStats()
    unpruned = checker.reversal_candidates(letters, prune=False,
                                           stats=unpruned_stats)
    pruned = checker.reversal_candidates(letters, prune=True,
                                         stats=pruned_stats)
    assert unpruned_stats.by_class[CLASS_DELETION] == 216
    assert pruned_stats.by_class.get(CLASS_DELETION, 0) < 216
    assert set(unpruned) == set(pruned)
    assert ("πρόγραμμα", CLASS_DELETION) in set(pruned)
    _report(
        "trigram pruning",
        f"216 -> {pruned_stats.by_class.get(CLASS_DELETION, 0)} probes",
    )


def test_criterion_orthographic_oracle_equivalence(seed, checker):
    """Guided homophone search equals enumerate-and-filter on every seed
    word with at most six substitutable sites."""
    from glspell.correct import CONFUSION_GROUPS

    _, _, forms = seed
    graphemes = {}
    for group in CONFUSION_GROUPS:
        for g in group:
            graphemes[g] = group

    def oracle(letters):
        sites = []
        i = 0
        while i < len(letters):
            for w in (2, 1):
                seg = letters[i : i + w]
                if seg in graphemes:
                    sites.append(tuple(graphemes[seg]))
                    i += w
                    break
            else:
                sites.append((letters[i],))
                i += 1
        found = []
        for combo in itertools.product(*sites):
            for display in checker._letters_accepted("".join(combo)):
                if display not in found:
                    found.append(display)
        return sorted(found)

    from glspell.correct import substitutable_site_count

    start = time.perf_counter()
    covered = 0
    for sf in forms:
        if substitutable_site_count(sf.unstressed) > 6:
            continue
        guided = sorted(checker.orthographic_candidates(sf.unstressed))
        assert guided == oracle(sf.unstressed), sf.unstressed
        covered += 1
    elapsed = time.perf_counter() - start
    _report(
        "orthographic oracle equivalence",
        f"{covered} words, {elapsed:.1f} s",
    )


def test_criterion_trie_scaling():
    """Instrumented node visits per lookup stay within len+1 on synthetic
    dictionaries of 1,000 and 10,000 entries."""
    rng = random.Random(99)

    def synthetic(n):
        entries = []
        stems = set()
        while len(stems) < n:
            stem = "".join(
                rng.choice(greek.ALPHABET) for _ in range(rng.randint(3, 10))
            )
            if "α" not in stem:
                stem += "α"
            if stem in stems:
                continue
            stems.add(stem)
            entries.append(
                ResolvedEntry(
                    stem=stem,
                    forms=(ResolvedForm(None, ("",), (1,)),),
                    non_inflected=True,
                    entry_id=len(entries),
                )
            )
        return build(entries)

    small, large = synthetic(1_000), synthetic(10_000)
    probes = []
    for _ in range(2_000):
        probes.append(
            "".join(rng.choice(greek.ALPHABET) for _ in range(rng.randint(1, 14)))
        )
    for dictionary, size in ((small, 1_000), (large, 10_000)):
        for probe in probes:
            _, visits = dictionary.trie.prefix_records_instrumented(probe)
            assert visits <= len(probe) + 1, (probe, size)
    _report("trie scaling", "visits <= len+1 on 1k and 10k dictionaries")


def test_criterion_serialization(seed):
    """Round-tripped bytes give identical accepts() verdicts on every
    generated form; rebuilds are byte-identical."""
    ruleset, main, forms = seed
    raw = serialize(main)
    again = serialize(
        build(ruleset.entries, read_frequency_list(FREQ_TSV))
    )
    assert raw == again
    loaded = deserialize(raw)
    for sf in forms:
        word = greek.normalize(sf.display)
        assert loaded.accepts(word) == main.accepts(word), sf.display
        n = greek.syllable_count(sf.unstressed, sf.breaks)
        if n > 1:
            wrong = greek.NormalizedWord(
                letters=sf.unstressed,
                stress=1 if sf.stress != 1 else 2,
                breaks=sf.breaks,
            )
            assert loaded.accepts(wrong) == main.accepts(wrong)
    _report("serialization", f"{len(raw)} bytes, byte-identical rebuild")


def test_criterion_throughput(seed):
    """A 100k-token document checks at >= 10,000 words/sec against the
    eagerly loaded dictionary."""
    ruleset, main, forms = seed
    loaded = deserialize(serialize(main))  # fresh in-memory instance
    checker = Checker(loaded)
    greek._normalize_cached.cache_clear()
    rng = random.Random(4)
    displays = [sf.display for sf in forms]
    doc_words = [rng.choice(displays) for _ in range(100_000)]
    start = time.perf_counter()
    flagged = 0
    for token in doc_words:
        if not checker.check(token).accepted:
            flagged += 1
    elapsed = time.perf_counter() - start
    rate = len(doc_words) / elapsed
    assert flagged == 0
    assert rate >= 10_000, f"{rate:.0f} words/sec"
    _report("throughput", f"{rate:,.0f} words/sec")
