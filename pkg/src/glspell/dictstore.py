"""Compiled-dictionary storage: trie index over stems, symbol table of
shared infix/inflection/stress pools, per-stem word records, trigram table,
plus the memory-resident and user dictionaries backing the checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import greek, morphgen
from .gwdl import ResolvedEntry, stem_breaks
from .trie import CompressedTrie

BEGIN = "^"
END = "$"

MEMORY_DICT_DEFAULT_SIZE = 800


@dataclass
class SymbolTable:
    """Deduplicated pools shared by all word records."""

    infixes: list[str] = field(default_factory=list)
    inflections: list[tuple[str, ...]] = field(default_factory=list)
    stress_tuples: list[tuple[int, ...]] = field(default_factory=list)
    forms: list[tuple[int | None, int, int]] = field(default_factory=list)

    def __post_init__(self):
        self._infix_ids = {v: i for i, v in enumerate(self.infixes)}
        self._inflection_ids = {v: i for i, v in enumerate(self.inflections)}
        self._stress_ids = {v: i for i, v in enumerate(self.stress_tuples)}
        self._form_ids = {v: i for i, v in enumerate(self.forms)}

    def intern_form(
        self,
        infix: str | None,
        suffixes: tuple[str, ...],
        stress: tuple[int, ...],
    ) -> int:
        infix_id = None
        if infix:
            infix_id = self._intern(self.infixes, self._infix_ids, infix)
        inflection_id = self._intern(
            self.inflections, self._inflection_ids, suffixes
        )
        stress_id = self._intern(self.stress_tuples, self._stress_ids, stress)
        return self._intern(
            self.forms, self._form_ids, (infix_id, inflection_id, stress_id)
        )

    @staticmethod
    def _intern(pool: list, ids: dict, value) -> int:
        found = ids.get(value)
        if found is not None:
            return found
        ids[value] = len(pool)
        pool.append(value)
        return ids[value]

    def form(self, form_id: int) -> tuple[str, tuple[str, ...], tuple[int, ...]]:
        infix_id, inflection_id, stress_id = self.forms[form_id]
        infix = self.infixes[infix_id] if infix_id is not None else ""
        return infix, self.inflections[inflection_id], self.stress_tuples[stress_id]


FLAG_NON_INFLECTED = 1


@dataclass(frozen=True)
class WordRecord:
    stem: str  # letters, hyphens removed; equals the trie key
    breaks: tuple[int, ...]  # forced nucleus breaks from the stem hyphens
    form_ids: tuple[int, ...]
    flags: int = 0


@dataclass(frozen=True)
class TrigramTable:
    grams: frozenset[str]

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "TrigramTable":
        grams = set()
        for w in words:
            grams.update(word_trigrams(w))
        return cls(frozenset(grams))

    def __contains__(self, gram: str) -> bool:
        return gram in self.grams

    def __len__(self) -> int:
        return len(self.grams)


def word_trigrams(letters: str) -> list[str]:
    """3-grams of a word wrapped in begin/end sentinels."""
    wrapped = BEGIN + letters + END
    return [wrapped[i : i + 3] for i in range(len(wrapped) - 2)]


class MatchOutcome:
    """Result of looking one normalized word up in the main dictionary."""

    __slots__ = ("kind", "expected")

    EXACT = "exact"
    STRESS_ONLY = "stress_only"
    NONE = "none"

    def __init__(self, kind: str, expected: tuple[str, ...] = ()):
        self.kind = kind
        self.expected = expected  # distinct expected displays, stress_only

    def __repr__(self):
        if self.kind == self.STRESS_ONLY:
            return f"MatchOutcome(stress_only, {list(self.expected)})"
        return f"MatchOutcome({self.kind})"

    def __eq__(self, other):
        return (
            isinstance(other, MatchOutcome)
            and self.kind == other.kind
            and self.expected == other.expected
        )


EXACT = MatchOutcome(MatchOutcome.EXACT)
NO_MATCH = MatchOutcome(MatchOutcome.NONE)


@dataclass
class CompiledDictionary:
    """Immutable after build/load; shareable across concurrent readers."""

    symbols: SymbolTable
    trie: CompressedTrie
    records: Sequence[WordRecord]
    trigrams: TrigramTable
    memory_forms: tuple[str, ...] = ()  # most frequent surface displays

    def __post_init__(self):
        self._memory_set = frozenset(self.memory_forms)
        self.record_fetches = 0  # instrumentation for the one-fetch claim

    # -- lookups ---------------------------------------------------------

    def stem_candidates(self, letters: str) -> list[tuple[WordRecord, int]]:
        """Terminal stems prefixing ``letters``, shortest first."""
        return [
            (self._record(rid), consumed)
            for rid, consumed in self.trie.prefix_records(letters)
        ]

    def _record(self, record_id: int) -> WordRecord:
        self.record_fetches += 1
        return self.records[record_id]

    def accepts(self, word: greek.NormalizedWord) -> MatchOutcome:
        """Exact / stress-only / no match for one normalized word.

        Candidate stems are tried longest first so that an exact hit
        normally costs a single record fetch.
        """
        letters = word.letters
        given = greek.apply_stress(letters, word.stress, word.breaks)
        expected: list[str] = []
        seen: set[str] = set()
        for rid, consumed in reversed(self.trie.prefix_records(letters)):
            record = self._record(rid)
            residual = letters[consumed:]
            breaks = frozenset(record.breaks)
            for form_id in record.form_ids:
                infix, suffixes, stress = self.symbols.form(form_id)
                if not residual.startswith(infix):
                    continue
                ending = residual[len(infix):]
                for i, suffix in enumerate(suffixes, start=1):
                    if suffix != ending:
                        continue
                    pos = morphgen.surface_stress(
                        letters, morphgen.stress_for(stress, i), breaks
                    )
                    display = greek.apply_stress(letters, pos, breaks)
                    if display == given:
                        return EXACT
                    if display not in seen:
                        seen.add(display)
                        expected.append(display)
        if expected:
            return MatchOutcome(MatchOutcome.STRESS_ONLY, tuple(expected))
        return NO_MATCH

    def accepts_letters(self, letters: str) -> tuple[str, ...]:
        """All stressed displays the dictionary accepts for a letter string."""
        displays: list[str] = []
        seen: set[str] = set()
        for rid, consumed in reversed(self.trie.prefix_records(letters)):
            record = self._record(rid)
            residual = letters[consumed:]
            breaks = frozenset(record.breaks)
            for form_id in record.form_ids:
                infix, suffixes, stress = self.symbols.form(form_id)
                if not residual.startswith(infix):
                    continue
                ending = residual[len(infix):]
                for i, suffix in enumerate(suffixes, start=1):
                    if suffix != ending:
                        continue
                    pos = morphgen.surface_stress(
                        letters, morphgen.stress_for(stress, i), breaks
                    )
                    display = greek.apply_stress(letters, pos, breaks)
                    if display not in seen:
                        seen.add(display)
                        displays.append(display)
        return tuple(displays)

    def memory_contains(self, display_lower: str) -> bool:
        return display_lower in self._memory_set

    def trigram_contains(self, gram: str) -> bool:
        return gram in self.trigrams

    # -- introspection ----------------------------------------------------

    def stats(self) -> dict[str, int]:
        return {
            "records": len(self.records),
            "trie_nodes": self.trie.node_count,
            "infixes": len(self.symbols.infixes),
            "inflections": len(self.symbols.inflections),
            "stress_tuples": len(self.symbols.stress_tuples),
            "forms": len(self.symbols.forms),
            "trigrams": len(self.trigrams),
            "memory_forms": len(self.memory_forms),
        }


def build(
    entries: Iterable[ResolvedEntry],
    frequency_list: Sequence[tuple[int, str]] | None = None,
    memory_size: int = MEMORY_DICT_DEFAULT_SIZE,
) -> CompiledDictionary:
    """Compile resolved entries into the dictionary structures.

    ``frequency_list`` is (count, display) pairs; the memory dictionary
    holds the top-``memory_size`` forms among them that the lexicon
    accepts.  Without a list it stays empty and every lookup takes the
    main path.
    """
    symbols = SymbolTable()
    by_stem: dict[str, dict] = {}
    surface_displays: list[str] = []
    for entry in entries:
        stem_letters = entry.stem_letters
        breaks = tuple(sorted(stem_breaks(entry.stem)))
        rec = by_stem.get(stem_letters)
        if rec is None:
            rec = {"breaks": breaks, "form_ids": [], "flags": 0}
            by_stem[stem_letters] = rec
        for form in entry.forms:
            form_id = symbols.intern_form(form.infix, form.suffixes, form.stress)
            if form_id not in rec["form_ids"]:
                rec["form_ids"].append(form_id)
        if entry.non_inflected:
            rec["flags"] |= FLAG_NON_INFLECTED
        for sf in morphgen.expand_entry(entry):
            surface_displays.append(sf.display)

    records: list[WordRecord] = []
    keys: dict[str, int] = {}
    for stem in sorted(by_stem):
        rec = by_stem[stem]
        keys[stem] = len(records)
        records.append(
            WordRecord(
                stem=stem,
                breaks=rec["breaks"],
                form_ids=tuple(rec["form_ids"]),
                flags=rec["flags"],
            )
        )
    trie = CompressedTrie.build(keys)

    unstressed = []
    for display in surface_displays:
        unstressed.append(greek.normalize(display).letters)
    trigrams = TrigramTable.from_words(unstressed)

    memory_forms: tuple[str, ...] = ()
    if frequency_list:
        accepted_set = set(surface_displays)
        ranked = sorted(frequency_list, key=lambda cf: (-cf[0], cf[1]))
        picked: list[str] = []
        for _, display in ranked:
            if display in accepted_set and display not in picked:
                picked.append(display)
            if len(picked) >= memory_size:
                break
        memory_forms = tuple(picked)
    return CompiledDictionary(symbols, trie, records, trigrams, memory_forms)


class UserDictionary:
    """User-added words; persisted as sorted NFC text, one word per line.

    Mutation requires exclusive access (single-writer contract); reads
    between mutations may be concurrent.
    """

    def __init__(self, words: Iterable[str] = ()):
        self._displays: set[str] = set()
        self._by_letters: dict[str, set[str]] = {}
        for w in words:
            self.add(w)

    def add(self, word: str) -> None:
        norm = greek.normalize(word)  # NonGreekToken propagates
        display = greek.apply_stress(norm.letters, norm.stress, norm.breaks)
        if display in self._displays:
            return
        self._displays.add(display)
        self._by_letters.setdefault(norm.letters, set()).add(display)

    def contains(self, word: greek.NormalizedWord) -> bool:
        display = greek.apply_stress(word.letters, word.stress, word.breaks)
        return display in self._displays

    def displays_for(self, letters: str) -> tuple[str, ...]:
        return tuple(sorted(self._by_letters.get(letters, ())))

    def letters_items(self):
        return self._by_letters.items()

    def __len__(self) -> int:
        return len(self._displays)

    def save(self, path) -> None:
        text = "".join(w + "\n" for w in sorted(self._displays))
        Path(path).write_text(text, encoding="utf-8")

    @classmethod
    def load(cls, path) -> "UserDictionary":
        p = Path(path)
        if not p.exists():
            return cls()
        return cls(
            line.strip() for line in p.read_text(encoding="utf-8").splitlines()
            if line.strip()
        )
