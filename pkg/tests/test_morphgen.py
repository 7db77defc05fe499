"""Paradigm expansion tests, pinned to the printed noun/verb paradigms."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from glspell import morphgen
from glspell.greek import syllable_count
from glspell.gwdl import ResolvedForm, parse, resolve
from glspell.morphgen import (
    EmptyWord,
    expand_all,
    expand_entry,
    expand_form,
    stress_for,
)
from tests.test_gwdl import NOUN_SOURCE, VERB_SOURCE

NOUN_PARADIGM = {"πρόοδος", "προόδου", "πρόοδο", "πρόοδοι", "προόδων", "προόδους"}
PAST_PARADIGM = {
    "αγαπούσα", "αγαπούσες", "αγαπούσε", "αγαπούσαν",
    "αγαπούσαμε", "αγαπούσατε", "αγαπούσανε",
}
PRESENT_PARADIGM = {
    "αγαπώ", "αγαπάς", "αγαπά", "αγαπούν", "αγαπάν",
    "αγαπάμε", "αγαπούμε", "αγαπάτε", "αγαπάνε", "αγαπούνε",
}


def test_stress_for_indexes_tuple():
    assert stress_for((3, 2, 3, 3, 2), 2) == 2


def test_stress_for_repeats_last():
    assert stress_for((1,), 5) == 1
    # the 6th suffix ους of the noun paradigm is penultimate-stressed
    assert stress_for((3, 2, 3, 3, 2), 6) == 2


def test_expand_form_past_tense():
    form = ResolvedForm(
        infix="ουσ",
        suffixes=("α", "εσ", "ε", "αν", "αμε", "ατε", "ανε"),
        stress=(2, 2, 2, 2, 3),
    )
    forms = expand_form("α-γα-π", form)
    assert {f.display for f in forms} == PAST_PARADIGM
    assert [f.display for f in forms][0] == "αγαπούσα"


def test_expand_form_noun():
    form = ResolvedForm(
        infix=None,
        suffixes=("οσ", "ου", "ο", "οι", "ων", "ουσ"),
        stress=(3, 2, 3, 3, 2),
    )
    forms = expand_form("προ-ο-δ", form)
    assert [f.display for f in forms] == [
        "πρόοδος", "προόδου", "πρόοδο", "πρόοδοι", "προόδων", "προόδους",
    ]


def test_expand_form_concatenation_invariant():
    form = ResolvedForm(infix="ουσ", suffixes=("αμε",), stress=(3,))
    (sf,) = expand_form("α-γα-π", form)
    assert sf.unstressed == "αγαπ" + "ουσ" + "αμε"


def test_expand_stress_only_entry():
    ruleset = resolve(parse("ε-δω(1)."))
    (entry,) = ruleset.entries
    forms = expand_entry(entry)
    assert [f.display for f in forms] == ["εδώ"]


def test_expand_monosyllable_gets_no_stress():
    ruleset = resolve(parse("προ(1)."))
    (sf,) = expand_entry(ruleset.entries[0])
    assert sf.stress is None
    assert sf.display == "προ"


def test_expand_clamps_excess_stress():
    ruleset = resolve(parse("κα-π[[ος] (3)]."))
    (sf,) = expand_entry(ruleset.entries[0])
    assert sf.stress == 2
    assert sf.display == "κάπος"


def test_expand_empty_word():
    form = ResolvedForm(infix=None, suffixes=("",), stress=(1,))
    with pytest.raises(EmptyWord):
        expand_form("", form)


def test_expand_entry_noun_paradigm():
    ruleset = resolve(parse(NOUN_SOURCE))
    forms = expand_entry(ruleset.entries[0])
    assert len(forms) == 6
    assert {f.display for f in forms} == NOUN_PARADIGM


def test_expand_entry_verb_union_no_duplicates():
    ruleset = resolve(parse(VERB_SOURCE))
    forms = expand_entry(ruleset.entries[0])
    displays = [f.display for f in forms]
    assert len(displays) == len(set(displays))
    assert set(displays) == PRESENT_PARADIGM | PAST_PARADIGM


def test_expand_all_counts_by_suffix_arithmetic():
    files = [parse(NOUN_SOURCE), parse(VERB_SOURCE)]
    ruleset = resolve(files)
    forms = list(expand_all(ruleset.entries))
    # Oracle: one form per suffix per alternative, no dedup hits here.
    expected = sum(
        len(form.suffixes) for e in ruleset.entries for form in e.forms
    )
    assert expected == 6 + 10 + 7
    assert len(forms) == expected
    assert len(forms) >= 6 + 7


def test_expand_all_empty():
    assert list(expand_all([])) == []


def test_expand_repeated_entry_distinct_ids():
    src = "!a1=(1). ε-δω!a1. ε-δω!a1."
    ruleset = resolve(parse(src))
    forms = list(expand_all(ruleset.entries))
    assert len(forms) == 2
    assert forms[0].entry_id != forms[1].entry_id


def test_expansion_deterministic():
    files = [parse(NOUN_SOURCE), parse(VERB_SOURCE)]
    ruleset = resolve(files)
    a = [f.display for f in expand_all(ruleset.entries)]
    b = [f.display for f in expand_all(resolve(  # re-parse from scratch
        [parse(NOUN_SOURCE), parse(VERB_SOURCE)]).entries)]
    assert a == b


@given(
    st.lists(st.integers(1, 3), min_size=1, max_size=6).map(tuple),
    st.integers(1, 12),
)
def test_stress_for_total(positions, i):
    p = stress_for(positions, i)
    assert p in positions
    if i <= len(positions):
        assert p == positions[i - 1]
    else:
        assert p == positions[-1]


def test_stress_legality_over_seed_paradigms():
    ruleset = resolve([parse(NOUN_SOURCE), parse(VERB_SOURCE)])
    for sf in expand_all(ruleset.entries):
        if sf.stress is not None:
            assert 1 <= sf.stress <= 3
            assert sf.stress <= syllable_count(sf.unstressed, sf.breaks)
        else:
            assert syllable_count(sf.unstressed, sf.breaks) == 1


def test_form_counter():
    ruleset = resolve([parse(NOUN_SOURCE)])
    assert morphgen.count_forms(ruleset) == 6
