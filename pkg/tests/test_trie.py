"""Compressed trie structure and lookup-cost tests."""

import random

from hypothesis import given
from hypothesis import strategies as st

from glspell.greek import ALPHABET
from glspell.trie import CompressedTrie

words = st.text(alphabet=ALPHABET, min_size=1, max_size=10)


def build_from(keys):
    return CompressedTrie.build({k: i for i, k in enumerate(sorted(set(keys)))})


def test_build_and_exact_prefixes():
    trie = build_from(["προοδ", "προγραμμ", "αγαπ"])
    hits = trie.prefix_records("προοδουσ")
    assert [(rid, c) for rid, c in hits] == [(trie.prefix_records("προοδ")[0][0], 5)]


def test_prefix_records_orders_by_length():
    trie = build_from(["α", "αγ", "αγαπ"])
    hits = trie.prefix_records("αγαπη")
    assert [c for _, c in hits] == [1, 2, 4]


def test_no_match():
    trie = build_from(["προοδ"])
    assert trie.prefix_records("ααα") == []


def test_key_equal_to_word():
    trie = build_from(["καπου"])
    assert [c for _, c in trie.prefix_records("καπου")] == [5]


@given(st.sets(words, min_size=1, max_size=60))
def test_full_compression(keys):
    trie = build_from(keys)
    assert trie.check_compressed()


@given(st.sets(words, min_size=1, max_size=60), words)
def test_prefix_records_against_brute_force(keys, probe):
    keys = sorted(keys)
    trie = build_from(keys)
    expected = [
        (keys.index(k), len(k)) for k in keys if probe.startswith(k)
    ]
    assert trie.prefix_records(probe) == expected


@given(st.sets(words, min_size=1, max_size=200), words)
def test_visit_bound(keys, probe):
    trie = build_from(keys)
    _, visits = trie.prefix_records_instrumented(probe)
    assert visits <= len(probe) + 1


def test_visits_independent_of_dictionary_size():
    rng = random.Random(7)

    def synthetic(n):
        keys = set()
        while len(keys) < n:
            keys.add(
                "".join(rng.choice(ALPHABET) for _ in range(rng.randint(3, 9)))
            )
        return build_from(keys)

    small, large = synthetic(1_000), synthetic(10_000)
    probes = ["".join(rng.choice(ALPHABET) for _ in range(rng.randint(1, 12)))
              for _ in range(500)]
    for trie in (small, large):
        for probe in probes:
            _, visits = trie.prefix_records_instrumented(probe)
            assert visits <= len(probe) + 1


def test_iter_nodes_deterministic_preorder():
    trie = build_from(["αβ", "αγ", "β"])
    labels = [n.label for n in trie.iter_nodes()]
    assert labels == ["", "α", "β", "γ", "β"]
