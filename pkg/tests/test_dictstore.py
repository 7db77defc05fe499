"""Dictionary store: symbol table, lookups, trigrams, user dictionary."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glspell import greek
from glspell.dictstore import (
    MatchOutcome,
    SymbolTable,
    TrigramTable,
    UserDictionary,
    build,
    word_trigrams,
)
from glspell.greek import NonGreekToken, NormalizedWord, normalize
from glspell.gwdl import parse, resolve
from glspell.morphgen import expand_all
from tests.test_gwdl import NOUN_SOURCE, VERB_SOURCE


@pytest.fixture(scope="module")
def seed():
    ruleset = resolve([parse(NOUN_SOURCE), parse(VERB_SOURCE)])
    return ruleset, build(ruleset.entries)


def test_build_two_paper_entries(seed):
    ruleset, d = seed
    stats = d.stats()
    assert stats["records"] == 2
    assert stats["inflections"] <= 3
    assert d.trie.check_compressed()


def test_build_empty_lexicon():
    d = build([])
    assert d.stats()["records"] == 0
    assert len(d.trigrams) == 0
    assert d.accepts(normalize("προ")).kind == MatchOutcome.NONE


def test_symbol_table_dedup():
    table = SymbolTable()
    a = table.intern_form("ουσ", ("α", "εσ"), (2, 2))
    b = table.intern_form("ουσ", ("α", "εσ"), (2, 2))
    assert a == b
    assert len(table.infixes) == 1
    assert len(table.inflections) == 1


def test_stem_candidates(seed):
    _, d = seed
    hits = d.stem_candidates("προοδουσ")
    assert [(r.stem, c) for r, c in hits] == [("προοδ", 5)]
    assert d.stem_candidates("ααα") == []


def test_accepts_exact(seed):
    _, d = seed
    assert d.accepts(normalize("προόδου")).kind == MatchOutcome.EXACT
    assert d.accepts(normalize("πρόοδος")).kind == MatchOutcome.EXACT


def test_accepts_stress_only(seed):
    _, d = seed
    out = d.accepts(normalize("πρόοδου"))
    assert out.kind == MatchOutcome.STRESS_ONLY
    assert out.expected == ("προόδου",)


def test_accepts_none(seed):
    _, d = seed
    assert d.accepts(normalize("προόδι")).kind == MatchOutcome.NONE


def test_accepts_every_generated_form(seed):
    ruleset, d = seed
    for sf in expand_all(ruleset.entries):
        assert d.accepts(normalize(sf.display)).kind == MatchOutcome.EXACT


def test_wrong_stress_flagged_with_expected_display(seed):
    ruleset, d = seed
    for sf in expand_all(ruleset.entries):
        n = greek.syllable_count(sf.unstressed, sf.breaks)
        if n < 2:
            continue
        for pos in range(1, n + 1):
            if pos == sf.stress:
                continue
            variant = NormalizedWord(
                letters=sf.unstressed, stress=pos, breaks=sf.breaks
            )
            out = d.accepts(variant)
            assert out.kind == MatchOutcome.STRESS_ONLY
            assert sf.display in out.expected


def test_trigram_examples(seed):
    _, d = seed
    assert d.trigram_contains("^πρ")
    assert not d.trigram_contains("ψψψ")


def test_trigram_completeness(seed):
    ruleset, d = seed
    for sf in expand_all(ruleset.entries):
        for gram in word_trigrams(sf.unstressed):
            assert d.trigram_contains(gram)


def test_trigram_contains_exactly_generated(seed):
    ruleset, d = seed
    expected = set()
    for sf in expand_all(ruleset.entries):
        expected.update(word_trigrams(sf.unstressed))
    assert d.trigrams.grams == frozenset(expected)


def test_word_trigrams_single_letter():
    assert word_trigrams("ο") == ["^ο$"]


def test_memory_dictionary_selection(seed):
    ruleset, _ = seed
    freq = [(100, "πρόοδος"), (50, "αγαπώ"), (10, "ανύπαρκτο"), (50, "αγαπάς")]
    d = build(ruleset.entries, frequency_list=freq, memory_size=2)
    assert d.memory_forms == ("πρόοδος", "αγαπάς")
    assert d.memory_contains("πρόοδος")
    assert not d.memory_contains("αγαπώ")


def test_one_fetch_per_accepted_word(seed):
    ruleset, _ = seed
    d = build(ruleset.entries)
    forms = list(expand_all(ruleset.entries))
    d.record_fetches = 0
    for sf in forms:
        assert d.accepts(normalize(sf.display)).kind == MatchOutcome.EXACT
    assert d.record_fetches / len(forms) <= 1.1


def test_user_dictionary_membership(tmp_path):
    ud = UserDictionary()
    assert not ud.contains(normalize("Ξενοκράτης"))
    ud.add("Ξενοκράτης")
    assert ud.contains(normalize("Ξενοκράτης"))
    ud.add("Ξενοκράτης")  # idempotent
    assert len(ud) == 1


def test_user_dictionary_rejects_non_greek():
    with pytest.raises(NonGreekToken):
        UserDictionary().add("latin")


def test_user_dictionary_save_format(tmp_path):
    ud = UserDictionary(["ωμέγα", "άλφα"])
    path = tmp_path / "user.txt"
    ud.save(path)
    text = path.read_text(encoding="utf-8")
    assert text == "άλφα\nωμέγα\n"  # sorted, trailing newline


@settings(max_examples=25)
@given(
    st.lists(
        st.text(alphabet=greek.ALPHABET, min_size=2, max_size=8).filter(
            lambda s: any(c in greek.VOWELS for c in s)
        ),
        min_size=1,
        max_size=100,
    )
)
def test_user_dictionary_round_trip(tmp_path_factory, letter_words):
    import glspell.greek as g

    ud = UserDictionary()
    words = []
    for letters in letter_words:
        n = g.syllable_count(letters)
        display = g.apply_stress(letters, None if n == 1 else 1 + len(letters) % n)
        ud.add(display)
        words.append(display)
    path = tmp_path_factory.mktemp("ud") / "user.txt"
    ud.save(path)
    loaded = UserDictionary.load(path)
    for display in words:
        assert loaded.contains(normalize(display))
    assert len(loaded) == len(ud)
