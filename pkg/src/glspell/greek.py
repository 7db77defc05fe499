"""Modern Greek alphabet model: normalization, syllabification, stress.

Internally a word is a sequence of the 24 lowercase base letters (final
sigma stored as plain sigma) plus a stress position counted in syllables
from the word end (1 = final syllable).  Tonos and diaeresis marks, final
sigma and capitalization are display concerns handled by ``normalize`` /
``render``.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache

ALPHABET = "αβγδεζηθικλμνξοπρστυφχψω"
VOWELS = frozenset("αεηιουω")
CONSONANTS = frozenset(ALPHABET) - VOWELS

# Vowel pairs that form a single nucleus unless split by a diaeresis or by
# a tonos on the first vowel.
DIGRAPHS = frozenset(["αι", "ει", "οι", "ου", "υι", "αυ", "ευ"])

COMBINING_TONOS = "́"
COMBINING_DIAERESIS = "̈"
# Legacy tonos codepoints that NFD does not fold to U+0301.
_ACCENT_EQUIV = {"̀": COMBINING_TONOS, "͂": COMBINING_TONOS}
_APOSTROPHES = frozenset("'’ʼ")


class GreekTextError(ValueError):
    pass


class NonGreekToken(GreekTextError):
    """Token contains a character outside Greek letters/diacritics/apostrophe."""


class NoVowel(GreekTextError):
    """Letter sequence cannot be syllabified because it has no vowel."""


class PositionOutOfRange(GreekTextError):
    """Stress position does not address a syllable of the word."""


@dataclass(frozen=True)
class Syllabification:
    """Nucleus spans (start, end) over a letter sequence, word-start first."""

    nuclei: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.nuclei)


@dataclass(frozen=True)
class NormalizedWord:
    """A Greek word reduced to base letters + stress syllable.

    ``breaks`` holds letter indices in front of which a nucleus boundary is
    forced: a diaeresis (ϊ, ϋ) or a tonos on the first vowel of a
    would-be digraph both split the pair.  ``case_mask`` holds the input
    positions that were uppercase; it only affects ``render``.
    """

    letters: str
    stress: int | None = None
    case_mask: frozenset[int] = field(default=frozenset())
    breaks: frozenset[int] = field(default=frozenset())

    def __post_init__(self) -> None:
        if self.stress is not None and not (
            1 <= self.stress <= len(syllabify(self.letters, self.breaks))
        ):
            raise PositionOutOfRange(
                f"stress {self.stress} out of range for {self.letters!r}"
            )


def syllabify(letters: str, breaks: frozenset[int] | tuple[int, ...] = ()) -> Syllabification:
    """Split an unstressed letter sequence into vowel nuclei.

    Nuclei are found left to right: a digraph binds two vowels into one
    nucleus unless a forced break sits between them; any other adjacent
    vowels are hiatus.  Consonants belong to the syllable of the following
    nucleus, trailing consonants to the last one.
    """
    breaks = frozenset(breaks)
    nuclei: list[tuple[int, int]] = []
    i = 0
    n = len(letters)
    while i < n:
        if letters[i] in VOWELS:
            if (
                i + 1 < n
                and letters[i : i + 2] in DIGRAPHS
                and i + 1 not in breaks
            ):
                nuclei.append((i, i + 2))
                i += 2
            else:
                nuclei.append((i, i + 1))
                i += 1
        else:
            i += 1
    if not nuclei:
        raise NoVowel(f"no vowel in {letters!r}")
    return Syllabification(tuple(nuclei))


def syllable_count(letters: str, breaks: frozenset[int] | tuple[int, ...] = ()) -> int:
    return len(syllabify(letters, breaks))


def _decompose(token: str) -> str:
    out = unicodedata.normalize("NFD", token)
    return "".join(_ACCENT_EQUIV.get(ch, ch) for ch in out)


def normalize(token: str) -> NormalizedWord:
    """Normalize one Greek token to base letters + stress position.

    Accepts composed or decomposed Unicode, tonos or legacy oxia accents,
    and apostrophes on elided forms (dropped).  Idempotent through
    ``render``: ``normalize(render(normalize(x))) == normalize(x)``.
    """
    letters: list[str] = []
    case_mask: set[int] = set()
    breaks: set[int] = set()
    stressed_index: int | None = None
    for ch in _decompose(token):
        if ch in _APOSTROPHES:
            continue
        if ch == COMBINING_TONOS:
            if not letters:
                raise NonGreekToken(f"dangling accent in {token!r}")
            stressed_index = len(letters) - 1
            continue
        if ch == COMBINING_DIAERESIS:
            if not letters:
                raise NonGreekToken(f"dangling diaeresis in {token!r}")
            breaks.add(len(letters) - 1)
            continue
        if unicodedata.combining(ch):
            raise NonGreekToken(f"unsupported mark {ch!r} in {token!r}")
        low = ch.lower()
        if low == "ς":
            low = "σ"
        if low not in ALPHABET:
            raise NonGreekToken(f"non-Greek character {ch!r} in {token!r}")
        if ch != low and ch.isupper():
            case_mask.add(len(letters))
        letters.append(low)
    if not letters:
        raise NonGreekToken(f"empty token {token!r}")
    text = "".join(letters)

    # A tonos on the first vowel of a digraph marks hiatus (γάιδαρος).
    if (
        stressed_index is not None
        and stressed_index + 1 < len(text)
        and text[stressed_index : stressed_index + 2] in DIGRAPHS
    ):
        breaks.add(stressed_index + 1)

    stress: int | None = None
    if stressed_index is not None and text[stressed_index] in VOWELS:
        syl = syllabify(text, frozenset(breaks))
        for back, (start, end) in enumerate(reversed(syl.nuclei), start=1):
            if start <= stressed_index < end:
                stress = back
                break
        if stress is not None and len(syl) == 1:
            stress = None  # marked stress does not occur on monosyllables
    return NormalizedWord(
        letters=text,
        stress=stress,
        case_mask=frozenset(case_mask),
        breaks=frozenset(breaks),
    )


def stressed_letter_index(
    letters: str, position: int, breaks: frozenset[int] | tuple[int, ...] = ()
) -> int:
    """Letter index that carries the tonos for a given syllable position.

    On a digraph nucleus the second vowel is the stressable one (ού, αί).
    """
    syl = syllabify(letters, breaks)
    if not (1 <= position <= len(syl)):
        raise PositionOutOfRange(
            f"position {position} out of range for {letters!r} ({len(syl)} syllables)"
        )
    start, end = syl.nuclei[len(syl) - position]
    return end - 1


def apply_stress(
    letters: str,
    position: int | None,
    breaks: frozenset[int] | tuple[int, ...] = (),
) -> str:
    """Place the tonos on the given syllable and render NFC display form.

    Inverse of the stress extraction done by ``normalize``; also restores
    final sigma and any diaeresis needed to keep forced breaks readable.
    """
    tonos_at = None
    if position is not None:
        tonos_at = stressed_letter_index(letters, position, breaks)
    return _render(letters, tonos_at, frozenset(breaks), frozenset())


def strip_stress(word: NormalizedWord) -> str:
    """Base letters of a normalized word, stress discarded."""
    return word.letters


def render(word: NormalizedWord) -> str:
    """Display form: stress + diaeresis + final sigma + original casing."""
    tonos_at = None
    if word.stress is not None:
        tonos_at = stressed_letter_index(word.letters, word.stress, word.breaks)
    return _render(word.letters, tonos_at, word.breaks, word.case_mask)


def _render(
    letters: str,
    tonos_at: int | None,
    breaks: frozenset[int],
    case_mask: frozenset[int],
) -> str:
    out: list[str] = []
    last = len(letters) - 1
    for i, ch in enumerate(letters):
        if ch == "σ" and i == last:
            ch = "ς"
        if i in case_mask:
            ch = ch.upper()
        out.append(ch)
        # A forced break inside a would-be digraph needs a diaeresis unless
        # the preceding vowel already carries the tonos.
        if (
            i in breaks
            and i > 0
            and letters[i - 1 : i + 1] in DIGRAPHS
            and tonos_at != i - 1
        ):
            out.append(COMBINING_DIAERESIS)
        if tonos_at == i:
            out.append(COMBINING_TONOS)
    return unicodedata.normalize("NFC", "".join(out))


@lru_cache(maxsize=65536)
def _normalize_cached(token: str) -> NormalizedWord:
    return normalize(token)


def normalize_cached(token: str) -> NormalizedWord:
    """Memoized ``normalize`` for checker hot paths (pure function)."""
    return _normalize_cached(token)


def is_greek_letter(ch: str) -> bool:
    """True for characters that belong inside a Greek word token."""
    if ch in _WORD_CHARS:
        return True
    return False


# Monotonic Greek word characters: plain and tonos-bearing letters in both
# cases, diaeresis combos, final sigma, plus the combining marks so that
# decomposed input tokenizes identically.
_WORD_CHARS = frozenset(
    "αβγδεζηθικλμνξοπρστυφχψως"
    "άέήίόύώϊϋΐΰ"
    "ΑΒΓΔΕΖΗΘΙΚΛΜΝΞΟΠΡΣΤΥΦΧΨΩ"
    "ΆΈΉΊΌΎΏΪΫ"
    "άέήίόύώ"  # oxia lowercase variants
    + COMBINING_TONOS
    + COMBINING_DIAERESIS
    + "̀͂"
)
