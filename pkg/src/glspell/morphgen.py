"""Expand resolved lexicon entries into their full sets of stressed
surface forms (stem + optional infix + ending, tonos placed per the stress
tuple)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from . import greek
from .gwdl import ResolvedEntry, ResolvedForm, ResolvedRuleSet, stem_breaks


class EmptyWord(ValueError):
    """Stem, infix and suffix are all empty."""


@dataclass(frozen=True)
class SurfaceForm:
    display: str  # stressed NFC string
    unstressed: str  # base letters
    stress: int | None  # syllable from word end, None on monosyllables
    entry_id: int
    form_index: int
    suffix_index: int
    breaks: frozenset[int] = frozenset()


def stress_for(positions: tuple[int, ...], i: int) -> int:
    """Stress position for the i-th (1-based) suffix of an inflection.

    A tuple shorter than the suffix list repeats its last value for the
    remaining suffixes.
    """
    if i <= len(positions):
        return positions[i - 1]
    return positions[-1]


def surface_stress(
    letters: str, wanted: int, breaks: frozenset[int] = frozenset()
) -> int | None:
    """Clamp a rule stress position to the word; monosyllables get none."""
    n = greek.syllable_count(letters, breaks)
    if n == 1:
        return None
    return min(wanted, n)


def expand_form(
    stem: str,
    form: ResolvedForm,
    entry_id: int = 0,
    form_index: int = 0,
) -> list[SurfaceForm]:
    """One surface form per suffix, in rule order."""
    letters_stem = stem.replace("-", "")
    breaks = stem_breaks(stem)
    infix = form.infix or ""
    out = []
    for i, suffix in enumerate(form.suffixes, start=1):
        word = letters_stem + infix + suffix
        if not word:
            raise EmptyWord(f"entry {entry_id}: stem, infix and suffix all empty")
        stress = surface_stress(word, stress_for(form.stress, i), breaks)
        display = greek.apply_stress(word, stress, breaks)
        out.append(
            SurfaceForm(
                display=display,
                unstressed=word,
                stress=stress,
                entry_id=entry_id,
                form_index=form_index,
                suffix_index=i,
                breaks=breaks,
            )
        )
    return out


def expand_entry(entry: ResolvedEntry) -> list[SurfaceForm]:
    """All forms of one entry, deduplicated on display, stable order."""
    seen: set[str] = set()
    out: list[SurfaceForm] = []
    for fi, form in enumerate(entry.forms):
        for sf in expand_form(entry.stem, form, entry.entry_id, fi):
            if sf.display not in seen:
                seen.add(sf.display)
                out.append(sf)
    return out


def expand_all(entries: Iterable[ResolvedEntry]) -> Iterator[SurfaceForm]:
    """Stream every entry's paradigm (per-entry dedup only)."""
    for entry in entries:
        yield from expand_entry(entry)


def count_forms(ruleset: ResolvedRuleSet) -> int:
    return sum(1 for _ in expand_all(ruleset.entries))
