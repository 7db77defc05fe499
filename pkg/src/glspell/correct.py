"""Checker and correction algorithms: stress repair, homophone/allophone
substitution, and typographic error reversal with trigram pruning.

Every candidate a generator returns is accepted by the dictionaries;
ranking puts the cheapest, highest-precision repairs first (stress, then
orthographic, then typographic).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import greek, morphgen
from .dictstore import (
    CompiledDictionary,
    MatchOutcome,
    UserDictionary,
)

# Homophonous vowel sets and two-way allophone pairs.  Substituting any
# member of a group for any other leaves the pronunciation intact.
CONFUSION_GROUPS: tuple[tuple[str, ...], ...] = (
    ("ε", "αι"),
    ("ο", "ω"),
    ("η", "ι", "υ", "ει", "οι"),
    ("χθ", "χτ"),
    ("φθ", "φτ"),
    ("σθ", "στ"),
    ("αυ", "αβ"),
    ("ψ", "πσ"),
    ("ξ", "κσ"),
)

_GROUP_OF: dict[str, tuple[str, ...]] = {}
for _group in CONFUSION_GROUPS:
    for _g in _group:
        _GROUP_OF[_g] = _group
_MAX_GRAPHEME = max(len(g) for g in _GROUP_OF)

CLASS_STRESS = "stress"
CLASS_ORTHOGRAPHIC = "orthographic"
CLASS_DELETION = "typographic:deletion"
CLASS_INSERTION = "typographic:insertion"
CLASS_SUBSTITUTION = "typographic:substitution"
CLASS_TRANSPOSITION = "typographic:transposition"

_CLASS_ORDER = {
    CLASS_STRESS: 0,
    CLASS_ORTHOGRAPHIC: 1,
    CLASS_DELETION: 2,
    CLASS_INSERTION: 3,
    CLASS_SUBSTITUTION: 4,
    CLASS_TRANSPOSITION: 5,
}

DEFAULT_SUGGESTION_LIMIT = 10

SOURCE_MEMORY = "memory"
SOURCE_USER = "user"
SOURCE_MAIN = "main"


@dataclass(frozen=True)
class Suggestion:
    display: str
    error_class: str
    rank: int


@dataclass(frozen=True)
class CheckResult:
    verdict: str  # "accepted" | "flagged"
    source: str | None = None  # memory | user | main, when accepted
    stress_suggestions: tuple[str, ...] = ()

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"


@dataclass
class ProbeStats:
    """Main-dictionary probe counters, per reversed error class."""

    probes: int = 0
    pruned: int = 0
    by_class: dict[str, int] = field(default_factory=dict)

    def count(self, error_class: str) -> None:
        self.probes += 1
        self.by_class[error_class] = self.by_class.get(error_class, 0) + 1


def segment_sites(letters: str) -> list[tuple[str, ...]]:
    """Split a word into confusion segments, longest grapheme first.

    Each element lists the readings of one segment, typed reading first;
    letters outside every confusion set become identity-only segments.
    """
    out: list[tuple[str, ...]] = []
    i = 0
    while i < len(letters):
        for width in range(_MAX_GRAPHEME, 0, -1):
            grapheme = letters[i : i + width]
            group = _GROUP_OF.get(grapheme)
            if group is not None:
                out.append(
                    (grapheme,) + tuple(g for g in group if g != grapheme)
                )
                i += width
                break
        else:
            out.append((letters[i],))
            i += 1
    return out


def substitutable_site_count(letters: str) -> int:
    return sum(1 for alts in segment_sites(letters) if len(alts) > 1)


def enumerate_confusion_strings(letters: str):
    """Brute-force oracle: every string readable through the confusion
    sets, in deterministic order (typed reading first at each site)."""
    sites = segment_sites(letters)

    def rec(i: int, prefix: str):
        if i == len(sites):
            yield prefix
            return
        for alt in sites[i]:
            yield from rec(i + 1, prefix + alt)

    yield from rec(0, "")


def lattice_matches(sites: list[tuple[str, ...]], target: str) -> bool:
    """Can the segment lattice read exactly ``target``?"""
    n = len(sites)
    reachable = {0}
    for alts in sites:
        nxt = set()
        for pos in reachable:
            for alt in alts:
                if target.startswith(alt, pos):
                    nxt.add(pos + len(alt))
        if not nxt:
            return False
        reachable = nxt
    return len(target) in reachable


class Checker:
    """Spelling checker over the three-tier dictionary stack."""

    def __init__(
        self,
        main: CompiledDictionary,
        user: UserDictionary | None = None,
        suggestion_limit: int = DEFAULT_SUGGESTION_LIMIT,
    ):
        self.main = main
        self.user = user if user is not None else UserDictionary()
        self.suggestion_limit = suggestion_limit

    # -- checking ----------------------------------------------------------

    def check(self, token: str) -> CheckResult:
        """Memory-resident, then user, then main dictionary.

        Raises NonGreekToken for tokens outside the Greek alphabet; the
        caller decides whether those are skipped.
        """
        word = greek.normalize_cached(token)
        display = greek.apply_stress(word.letters, word.stress, word.breaks)
        if self.main.memory_contains(display):
            return CheckResult("accepted", SOURCE_MEMORY)
        if self.user.contains(word):
            return CheckResult("accepted", SOURCE_USER)
        outcome = self.main.accepts(word)
        if outcome.kind == MatchOutcome.EXACT:
            return CheckResult("accepted", SOURCE_MAIN)
        if word.stress is None and self._all_caps(word):
            # All-caps text legitimately drops the tonos; accept on letters.
            if outcome.kind == MatchOutcome.STRESS_ONLY:
                return CheckResult("accepted", SOURCE_MAIN)
            if self.user.displays_for(word.letters):
                return CheckResult("accepted", SOURCE_USER)
        stress_suggestions = list(outcome.expected)
        for d in self.user.displays_for(word.letters):
            if d != display and d not in stress_suggestions:
                stress_suggestions.append(d)
        return CheckResult("flagged", stress_suggestions=tuple(stress_suggestions))

    @staticmethod
    def _all_caps(word: greek.NormalizedWord) -> bool:
        return len(word.letters) > 1 and len(word.case_mask) == len(word.letters)

    def _letters_accepted(self, letters: str) -> list[str]:
        """Displays accepted for a letter string, user dictionary included."""
        displays = list(self.main.accepts_letters(letters))
        for d in self.user.displays_for(letters):
            if d not in displays:
                displays.append(d)
        return displays

    # -- orthographic candidates ---------------------------------------------

    def orthographic_candidates(self, letters: str) -> list[str]:
        """Accepted displays readable from ``letters`` through the
        confusion sets (identity included).

        Implemented as an equivalence-class descent over the stem trie
        plus the residual form targets, so the work is bounded by what the
        dictionary contains rather than by the enumeration space.
        """
        sites = segment_sites(letters)
        results: list[str] = []
        seen: set[str] = set()

        # Trie state: ("t", node, chars consumed of node.label, stem text).
        # Residual state: ("r", target, offset, stem, (record, stress, i)).
        states = [("t", self.main.trie.root, 0, "")]

        def dedup(pool):
            out, keys = [], set()
            for s in pool:
                if s[0] == "t":
                    key = ("t", id(s[1]), s[2])
                else:
                    key = ("r", s[3], s[1], s[2], s[4][1], s[4][2])
                if key not in keys:
                    keys.add(key)
                    out.append(s)
            return out

        def open_forms(state):
            """Fork a completed terminal trie node into its form targets."""
            yield state
            if state[0] != "t":
                return
            _, node, off, stem = state
            if off == len(node.label) and node.record_id >= 0:
                record = self.main._record(node.record_id)
                for form_id in record.form_ids:
                    infix, suffixes, stress = self.main.symbols.form(form_id)
                    for si, suffix in enumerate(suffixes, start=1):
                        yield ("r", infix + suffix, 0, stem, (record, stress, si))

        def step(state, ch):
            if state[0] == "t":
                _, node, off, stem = state
                if off < len(node.label):
                    if node.label[off] == ch:
                        yield ("t", node, off + 1, stem + ch)
                    return
                child = node.child_for(ch)
                if child is not None:
                    yield ("t", child, 1, stem + ch)
            else:
                _, target, off, stem, meta = state
                if off < len(target) and target[off] == ch:
                    yield ("r", target, off + 1, stem, meta)

        for alts in sites:
            nxt = []
            for state in states:
                for alt in alts:
                    current = [state]
                    for ch in alt:
                        advanced = []
                        for s in current:
                            for opened in open_forms(s):
                                advanced.extend(step(opened, ch))
                        current = advanced
                        if not current:
                            break
                    nxt.extend(current)
            states = dedup(nxt)
            if not states:
                break

        for state in states:
            for s in open_forms(state):
                if s[0] != "r":
                    continue
                _, target, off, stem, (record, stress, si) = s
                if off != len(target):
                    continue
                word = stem + target
                breaks = frozenset(record.breaks)
                pos = morphgen.surface_stress(
                    word, morphgen.stress_for(stress, si), breaks
                )
                display = greek.apply_stress(word, pos, breaks)
                if display not in seen:
                    seen.add(display)
                    results.append(display)

        # User-dictionary words readable through the same lattice.
        if len(self.user):
            for key, displays in self.user.letters_items():
                if lattice_matches(sites, key):
                    for display in sorted(displays):
                        if display not in seen:
                            seen.add(display)
                            results.append(display)
        return results

    # -- typographic reversal --------------------------------------------------

    def reversal_candidates(
        self,
        letters: str,
        prune: bool = True,
        stats: ProbeStats | None = None,
    ) -> list[tuple[str, str]]:
        """(display, reversed error class) pairs from the four generators.

        The letter-insertion and substitution generators are trigram
        pruned; deletions and transpositions yield at most len(letters)
        candidates and are probed directly.  User-dictionary hits bypass
        pruning (hash lookups, not dictionary searches), so pruning never
        loses an acceptable candidate.
        """
        stats = stats if stats is not None else ProbeStats()
        out: list[tuple[str, str]] = []
        seen: set[tuple[str, str]] = set()

        def emit(candidate: str, error_class: str, skip_main: bool) -> None:
            displays: list[str] = []
            if not skip_main:
                stats.count(error_class)
                displays.extend(self.main.accepts_letters(candidate))
            for d in self.user.displays_for(candidate):
                if d not in displays:
                    displays.append(d)
            for display in displays:
                key = (display, error_class)
                if key not in seen:
                    seen.add(key)
                    out.append(key)

        n = len(letters)
        # reverse an insertion: delete each position
        if n > 1:
            for i in range(n):
                emit(letters[:i] + letters[i + 1 :], CLASS_INSERTION, False)
        # reverse a deletion: insert every letter at every position
        for i in range(n + 1):
            for ch in greek.ALPHABET:
                candidate = letters[:i] + ch + letters[i:]
                pruned = prune and not self._local_trigrams_ok(candidate, i, 1)
                if pruned:
                    stats.pruned += 1
                emit(candidate, CLASS_DELETION, pruned)
        # reverse a substitution: replace each position with another letter
        for i in range(n):
            for ch in greek.ALPHABET:
                if ch == letters[i]:
                    continue
                candidate = letters[:i] + ch + letters[i + 1 :]
                pruned = prune and not self._local_trigrams_ok(candidate, i, 1)
                if pruned:
                    stats.pruned += 1
                emit(candidate, CLASS_SUBSTITUTION, pruned)
        # reverse a transposition: swap each adjacent distinct pair
        for i in range(n - 1):
            if letters[i] != letters[i + 1]:
                emit(
                    letters[:i] + letters[i + 1] + letters[i] + letters[i + 2 :],
                    CLASS_TRANSPOSITION,
                    False,
                )
        return out

    def _local_trigrams_ok(self, candidate: str, pos: int, width: int) -> bool:
        """Are all trigrams overlapping candidate[pos:pos+width] valid?

        Candidates that fail cannot be main-dictionary words: the table
        holds every trigram of every generated form.
        """
        padded = "^" + candidate + "$"
        lo = max(0, pos - 1)
        hi = min(len(padded) - 3, pos + width)
        for start in range(lo, hi + 1):
            if not self.main.trigram_contains(padded[start : start + 3]):
                return False
        return True

    # -- ranked suggestions ------------------------------------------------------

    def suggest(self, token: str, limit: int | None = None) -> list[Suggestion]:
        """Ranked corrections for a flagged token; [] for accepted ones.

        Rank order: error class (stress, orthographic, typographic), then
        memory-dictionary membership, then the display string.
        """
        result = self.check(token)
        if result.accepted:
            return []
        word = greek.normalize_cached(token)
        best: dict[str, str] = {}

        def offer(display: str, error_class: str) -> None:
            current = best.get(display)
            if current is None or _CLASS_ORDER[error_class] < _CLASS_ORDER[current]:
                best[display] = error_class

        for display in result.stress_suggestions:
            offer(display, CLASS_STRESS)
        for display in self.orthographic_candidates(word.letters):
            offer(display, CLASS_ORTHOGRAPHIC)
        for display, error_class in self.reversal_candidates(word.letters):
            offer(display, error_class)

        ranked = sorted(
            best.items(),
            key=lambda item: (
                _CLASS_ORDER[item[1]],
                not self.main.memory_contains(item[0]),
                item[0],
            ),
        )
        if limit is None:
            limit = self.suggestion_limit
        if limit is not None:
            ranked = ranked[:limit]
        return [
            Suggestion(display, error_class, rank)
            for rank, (display, error_class) in enumerate(ranked, start=1)
        ]
