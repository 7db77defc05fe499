"""Tests for the Greek alphabet / normalization / stress substrate."""

import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from glspell.greek import (
    ALPHABET,
    VOWELS,
    NonGreekToken,
    NoVowel,
    NormalizedWord,
    PositionOutOfRange,
    apply_stress,
    normalize,
    render,
    strip_stress,
    syllabify,
    syllable_count,
)


def test_alphabet_has_24_letters():
    assert len(ALPHABET) == 24
    assert len(set(ALPHABET)) == 24
    assert "ς" not in ALPHABET


def test_normalize_final_stress():
    w = normalize("εδώ")
    assert w.letters == "εδω"
    assert w.stress == 1


def test_normalize_unstressed():
    w = normalize("προ")
    assert w.letters == "προ"
    assert w.stress is None


def test_normalize_keeps_case_mask():
    w = normalize("Τώρα")
    assert w.letters == "τωρα"
    assert w.stress == 2
    assert w.case_mask == frozenset({0})


def test_normalize_folds_final_sigma():
    assert normalize("πρόοδος").letters == "προοδοσ"


def test_normalize_strips_apostrophe():
    assert normalize("παίζ'").letters == "παιζ"


def test_normalize_monosyllable_drops_stress():
    assert normalize("πού").stress is None
    assert normalize("πού").letters == "που"


def test_normalize_rejects_non_greek():
    for bad in ["test", "προx", "λέξη2", ""]:
        with pytest.raises(NonGreekToken):
            normalize(bad)


def test_normalize_accepts_decomposed_input():
    composed = "εδώ"
    decomposed = unicodedata.normalize("NFD", composed)
    assert normalize(composed) == normalize(decomposed)


def test_normalize_accepts_legacy_oxia():
    # U+1F79 omicron with oxia vs U+03CC omicron with tonos
    assert normalize("πρόοδος") == normalize("πρόοδος")


def test_syllabify_simple():
    assert len(syllabify("καποτε")) == 3


def test_syllabify_hiatus():
    assert len(syllabify("προοδος")) == 3


def test_syllabify_digraphs():
    assert len(syllabify("παιζουμε")) == 3


def test_syllabify_no_vowel():
    with pytest.raises(NoVowel):
        syllabify("πρστ")


def test_diaeresis_splits_digraph():
    w = normalize("προϊόν")
    assert w.letters == "προιον"
    assert syllable_count(w.letters, w.breaks) == 3
    assert syllable_count(w.letters) == 2  # without the break οι binds


def test_apply_stress_examples():
    assert apply_stress("καποτε", 3) == "κάποτε"
    assert apply_stress("εδω", 1) == "εδώ"
    assert apply_stress("προοδους", 2) == "προόδους"


def test_apply_stress_digraph_takes_second_vowel():
    assert apply_stress("παιζουμε", 3) == "παίζουμε"
    assert apply_stress("παιζουμε", 2) == "παιζούμε"


def test_apply_stress_out_of_range():
    with pytest.raises(PositionOutOfRange):
        apply_stress("προ", 2)


def test_strip_stress():
    assert strip_stress(normalize("κεφάλι")) == "κεφαλι"
    assert strip_stress(normalize("προ")) == "προ"
    assert strip_stress(normalize("αγαπούσαμε")) == "αγαπουσαμε"


# Hand list for the display round-trip oracle: render(normalize(x)) == NFC(x).
ROUND_TRIP_WORDS = [
    "εδώ",
    "τώρα",
    "κάποτε",
    "πρόοδος",
    "προόδου",
    "προόδους",
    "αγαπώ",
    "αγαπούσαμε",
    "αγαπούν",
    "παίζουμε",
    "παίζομε",
    "κεφάλι",
    "πρόγραμμα",
    "Τώρα",
    "Ελλάδα",
    "ΤΩΡΑ",
    "προϊόν",
    "προϋπόθεση",
    "γάιδαρος",
    "κορόιδο",
    "ρολόι",
    "παιδί",
    "ψυχή",
    "αύριο",
    "ευρώ",
    "υιοθεσία",
    "ναι",
    "μυαλό",
    "ωκεανός",
]


@pytest.mark.parametrize("word", ROUND_TRIP_WORDS)
def test_display_round_trip(word):
    assert render(normalize(word)) == unicodedata.normalize("NFC", word)


@pytest.mark.parametrize("word", ROUND_TRIP_WORDS)
def test_normalize_idempotent(word):
    w = normalize(word)
    assert normalize(render(w)) == w


def test_final_sigma_render():
    assert render(normalize("πρόοδος")).endswith("ς")
    assert "ς" not in render(normalize("σοφία"))[:-1]


letters_st = st.text(alphabet=ALPHABET, min_size=1, max_size=12).filter(
    lambda s: any(c in VOWELS for c in s)
)


@given(letters_st, st.integers(min_value=1, max_value=4))
def test_stress_round_trip_property(letters, k):
    n = syllable_count(letters)
    pos = min(k, n)
    display = apply_stress(letters, pos)
    w = normalize(display)
    assert w.letters == letters.replace("ς", "σ")
    if n == 1:
        # marked stress does not survive normalization on monosyllables
        assert w.stress is None
        assert render(w) == apply_stress(letters, None)
    else:
        assert w.stress == pos
        assert render(w) == display


@given(letters_st)
def test_syllabify_covers_every_vowel_once(letters):
    syl = syllabify(letters)
    seen = set()
    for start, end in syl.nuclei:
        for i in range(start, end):
            assert i not in seen
            seen.add(i)
            assert letters[i] in VOWELS
    for i, ch in enumerate(letters):
        if ch in VOWELS:
            assert i in seen


def test_stress_invariant_on_construction():
    with pytest.raises(PositionOutOfRange):
        NormalizedWord(letters="προ", stress=2)
