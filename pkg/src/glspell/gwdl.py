"""Lexer, recursive-descent parser and resolver for the word description
language that drives the lexicon: stress rules (``!name``), inflection rules
(``#name``), combined form rules (``$name``) and hyphen-syllabificated stem
entries.

Grammar accepted (reconciled with how rules are actually written in lexicon
files: definitions end with '.', inflection suffix lists may appear with or
without brackets, entries may use a stress-rule reference instead of an
inline tuple)::

    lexicon_file    = [ '%' IDENT NUMBER ] { definition } { word }
    definition      = stress_def | inflection_def | form_def
    stress_def      = STRESSV '=' stress '.'
    stress          = '(' NUMBER { ',' NUMBER } ')'
    inflection_def  = INFLECTIONV '=' suffixes '.'
    suffixes        = [ '[' ] SUFFIX { '|' SUFFIX } [ '|' ] [ ']' ]
    form_def        = FORMV '=' form { '|' form } '.'
    form            = FORMV
                    | [INFIX] ( INFLECTIONV | '[' suffixes ']' )
                      ( STRESSV | stress )
    word            = [ STEM ] '[' form { '|' form } ']' '.'
                    | STEM ( stress | STRESSV ) '.'

Lines starting with ';' are comments.  Whitespace is insignificant between
tokens.  A trailing '|' in a suffix list denotes one empty (zero) ending.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from . import greek

SIGIL_STRESS = "!"
SIGIL_INFLECTION = "#"
SIGIL_FORM = "$"

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_NUMBER_RE = re.compile(r"[0-9]+")
# Stems/suffixes/infixes: Greek letters (with or without marks folded away
# by normalization) plus hyphens inside stems.
_GREEK_RUN_RE = re.compile(r"[Ͱ-Ͽἀ-῿́̈-]+")


class GwdlError(Exception):
    """Parsing/resolution failed with error diagnostics."""

    def __init__(self, diagnostics: list["Diagnostic"]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))


@dataclass(frozen=True)
class Diagnostic:
    file: str
    line: int
    col: int
    severity: str  # "error" | "warning"
    message: str

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}: {self.severity}: {self.message}"


@dataclass(frozen=True)
class Pos:
    line: int
    col: int


_NOPOS = Pos(0, 0)


@dataclass(frozen=True)
class StressRule:
    name: str  # without the '!' sigil
    positions: tuple[int, ...]
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class InflectionRule:
    name: str  # without the '#' sigil
    suffixes: tuple[str, ...]  # unstressed letters; may end with one ""
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class StressRef:
    name: str
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class InflectionRef:
    name: str
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class FormRef:
    name: str
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class Form:
    """One infix+inflection+stress combination."""

    infix: str | None
    inflection: Union[InflectionRef, tuple[str, ...]]
    stress: Union[StressRef, tuple[int, ...]]
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class FormRule:
    name: str  # without the '$' sigil
    alternatives: tuple[Union[Form, FormRef], ...]
    pos: Pos = field(default=_NOPOS, compare=False)


@dataclass(frozen=True)
class LexiconEntry:
    stem: str  # hyphen-syllabificated, possibly ""
    forms: tuple[Union[Form, FormRef], ...] | None  # None for stress-only
    stress: Union[tuple[int, ...], StressRef, None]  # set for stress-only
    pos: Pos = field(default=_NOPOS, compare=False)

    @property
    def stem_letters(self) -> str:
        return self.stem.replace("-", "")


@dataclass
class LexiconFile:
    path: str
    header: tuple[str, int] | None
    stress_rules: dict[str, StressRule]
    inflection_rules: dict[str, InflectionRule]
    form_rules: dict[str, FormRule]
    entries: list[LexiconEntry]
    diagnostics: list[Diagnostic]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LexiconFile):
            return NotImplemented
        return (
            self.header == other.header
            and self.stress_rules == other.stress_rules
            and self.inflection_rules == other.inflection_rules
            and self.form_rules == other.form_rules
            and self.entries == other.entries
        )


# --- lexer -----------------------------------------------------------------

_PUNCT = {"=", "|", ".", "(", ")", "[", "]", ",", "%"}


@dataclass(frozen=True)
class Token:
    kind: str  # punct kinds verbatim; else STRESSV/INFLECTIONV/FORMV/NUMBER/IDENT/GREEK/EOF
    value: str
    line: int
    col: int


def _lex(source: str, path: str, diagnostics: list[Diagnostic]) -> list[Token]:
    tokens: list[Token] = []
    for lineno, line in enumerate(source.splitlines(), start=1):
        if line.lstrip().startswith(";"):
            continue
        i = 0
        n = len(line)
        while i < n:
            ch = line[i]
            if ch.isspace():
                i += 1
                continue
            col = i + 1
            if ch in (SIGIL_STRESS, SIGIL_INFLECTION, SIGIL_FORM):
                m = _NAME_RE.match(line, i + 1)
                if not m:
                    diagnostics.append(
                        Diagnostic(path, lineno, col, "error",
                                   f"expected rule name after {ch!r}")
                    )
                    i += 1
                    continue
                kind = {SIGIL_STRESS: "STRESSV",
                        SIGIL_INFLECTION: "INFLECTIONV",
                        SIGIL_FORM: "FORMV"}[ch]
                tokens.append(Token(kind, m.group(), lineno, col))
                i = m.end()
                continue
            if ch in _PUNCT:
                tokens.append(Token(ch, ch, lineno, col))
                i += 1
                continue
            m = _NUMBER_RE.match(line, i)
            if m:
                tokens.append(Token("NUMBER", m.group(), lineno, col))
                i = m.end()
                continue
            m = _NAME_RE.match(line, i)
            if m:
                tokens.append(Token("IDENT", m.group(), lineno, col))
                i = m.end()
                continue
            m = _GREEK_RUN_RE.match(line, i)
            if m:
                tokens.append(Token("GREEK", m.group(), lineno, col))
                i = m.end()
                continue
            diagnostics.append(
                Diagnostic(path, lineno, col, "error",
                           f"unexpected character {ch!r}")
            )
            i += 1
    tokens.append(Token("EOF", "", lineno if source else 1, 1))
    return tokens


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[Token], path: str, diagnostics: list[Diagnostic]):
        self.tokens = tokens
        self.path = path
        self.diagnostics = diagnostics
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def error(self, expected: str, tok: Token | None = None) -> None:
        tok = tok or self.cur
        got = tok.value or tok.kind
        self.diagnostics.append(
            Diagnostic(self.path, tok.line, tok.col, "error",
                       f"expected {expected}, got {got!r}")
        )

    def expect(self, kind: str, expected: str | None = None) -> Token | None:
        if self.cur.kind == kind:
            return self.advance()
        self.error(expected or kind)
        return None

    def skip_to_dot(self) -> None:
        while self.cur.kind not in (".", "EOF"):
            self.advance()
        if self.cur.kind == ".":
            self.advance()

    # grammar productions ----------------------------------------------

    def parse_file(self) -> LexiconFile:
        header = None
        if self.cur.kind == "%":
            self.advance()
            name_tok = self.expect("IDENT", "header name")
            num_tok = self.expect("NUMBER", "header number")
            if name_tok and num_tok:
                header = (name_tok.value, int(num_tok.value))
        out = LexiconFile(
            path=self.path,
            header=header,
            stress_rules={},
            inflection_rules={},
            form_rules={},
            entries=[],
            diagnostics=self.diagnostics,
        )
        while self.cur.kind != "EOF":
            tok = self.cur
            if tok.kind == "STRESSV":
                self._definition(out, self._stress_def, out.stress_rules)
            elif tok.kind == "INFLECTIONV":
                self._definition(out, self._inflection_def, out.inflection_rules)
            elif tok.kind == "FORMV":
                self._definition(out, self._form_def, out.form_rules)
            elif tok.kind in ("GREEK", "["):
                entry = self._word()
                if entry is not None:
                    out.entries.append(entry)
            else:
                self.error("definition or lexicon entry")
                self.skip_to_dot()
        return out

    def _definition(self, out: LexiconFile, production, table: dict) -> None:
        rule = production()
        if rule is None:
            return
        if rule.name in table:
            self.diagnostics.append(
                Diagnostic(self.path, rule.pos.line, rule.pos.col, "error",
                           f"duplicate definition of {rule.name!r}")
            )
            return
        table[rule.name] = rule

    def _stress_def(self) -> StressRule | None:
        tok = self.advance()  # STRESSV
        if not self.expect("=", "'='"):
            self.skip_to_dot()
            return None
        positions = self._stress_tuple()
        if positions is None or not self.expect(".", "'.'"):
            self.skip_to_dot()
            return None
        return StressRule(tok.value, positions, Pos(tok.line, tok.col))

    def _stress_tuple(self) -> tuple[int, ...] | None:
        if not self.expect("(", "'('"):
            return None
        positions: list[int] = []
        num = self.expect("NUMBER", "stress position")
        if num is None:
            return None
        positions.append(int(num.value))
        while self.cur.kind == ",":
            self.advance()
            num = self.expect("NUMBER", "stress position")
            if num is None:
                return None
            positions.append(int(num.value))
        if not self.expect(")", "')'"):
            return None
        return tuple(positions)

    def _inflection_def(self) -> InflectionRule | None:
        tok = self.advance()  # INFLECTIONV
        if not self.expect("=", "'='"):
            self.skip_to_dot()
            return None
        bracketed = self.cur.kind == "["
        if bracketed:
            self.advance()
        suffixes = self._suffix_list()
        if suffixes is None:
            self.skip_to_dot()
            return None
        if bracketed and not self.expect("]", "']'"):
            self.skip_to_dot()
            return None
        if not self.expect(".", "'.'"):
            self.skip_to_dot()
            return None
        return InflectionRule(tok.value, suffixes, Pos(tok.line, tok.col))

    def _suffix_list(self) -> tuple[str, ...] | None:
        suffixes: list[str] = []
        suffix = self._suffix()
        if suffix is None:
            return None
        suffixes.append(suffix)
        while self.cur.kind == "|":
            self.advance()
            if self.cur.kind in ("]", "."):
                suffixes.append("")  # trailing '|': empty ending
                break
            suffix = self._suffix()
            if suffix is None:
                return None
            suffixes.append(suffix)
        return tuple(suffixes)

    def _suffix(self) -> str | None:
        tok = self.cur
        if tok.kind != "GREEK":
            self.error("suffix")
            return None
        self.advance()
        if "-" in tok.value:
            self.diagnostics.append(
                Diagnostic(self.path, tok.line, tok.col, "error",
                           "hyphens are not allowed in suffixes")
            )
            return None
        return self._greek_letters(tok)

    def _greek_letters(self, tok: Token) -> str | None:
        """Fold a Greek run to base letters; stress marks are rejected."""
        import unicodedata

        decomposed = unicodedata.normalize("NFD", tok.value)
        if greek.COMBINING_TONOS in decomposed or "̀" in decomposed \
                or "͂" in decomposed:
            self.diagnostics.append(
                Diagnostic(self.path, tok.line, tok.col, "error",
                           f"stress marks are not allowed here: {tok.value!r}")
            )
            return None
        try:
            parts = []
            for chunk in tok.value.split("-"):
                parts.append(greek.normalize(chunk).letters if chunk else "")
            return "-".join(parts)
        except greek.GreekTextError as exc:
            self.diagnostics.append(
                Diagnostic(self.path, tok.line, tok.col, "error", str(exc))
            )
            return None

    def _form_def(self) -> FormRule | None:
        tok = self.advance()  # FORMV
        if not self.expect("=", "'='"):
            self.skip_to_dot()
            return None
        alts = self._form_alternatives(terminators=(".",))
        if alts is None or not self.expect(".", "'.'"):
            self.skip_to_dot()
            return None
        return FormRule(tok.value, alts, Pos(tok.line, tok.col))

    def _form_alternatives(self, terminators: tuple[str, ...]):
        alts: list[Union[Form, FormRef]] = []
        while True:
            form = self._form()
            if form is None:
                return None
            alts.append(form)
            if self.cur.kind == "|":
                self.advance()
                continue
            if self.cur.kind in terminators:
                return tuple(alts)
            self.error("'|' or " + " or ".join(repr(t) for t in terminators))
            return None

    def _form(self) -> Union[Form, FormRef, None]:
        tok = self.cur
        if tok.kind == "FORMV":
            self.advance()
            return FormRef(tok.value, Pos(tok.line, tok.col))
        infix: str | None = None
        if tok.kind == "GREEK":
            self.advance()
            if "-" in tok.value:
                self.diagnostics.append(
                    Diagnostic(self.path, tok.line, tok.col, "error",
                               "hyphens are not allowed in infixes")
                )
                return None
            infix = self._greek_letters(tok)
            if infix is None:
                return None
        inflection: Union[InflectionRef, tuple[str, ...], None]
        if self.cur.kind == "INFLECTIONV":
            ref = self.advance()
            inflection = InflectionRef(ref.value, Pos(ref.line, ref.col))
        elif self.cur.kind == "[":
            self.advance()
            suffixes = self._suffix_list()
            if suffixes is None or not self.expect("]", "']'"):
                return None
            inflection = suffixes
        else:
            self.error("inflection rule reference or '[' suffix list ']'")
            return None
        stress: Union[StressRef, tuple[int, ...], None]
        if self.cur.kind == "STRESSV":
            ref = self.advance()
            stress = StressRef(ref.value, Pos(ref.line, ref.col))
        elif self.cur.kind == "(":
            stress = self._stress_tuple()
            if stress is None:
                return None
        else:
            self.error("stress rule reference or '(' positions ')'")
            return None
        return Form(infix, inflection, stress, Pos(tok.line, tok.col))

    def _word(self) -> LexiconEntry | None:
        stem = ""
        tok = self.cur
        if tok.kind == "GREEK":
            self.advance()
            folded = self._greek_letters(tok)
            if folded is None:
                self.skip_to_dot()
                return None
            stem = folded
        if self.cur.kind == "[":
            self.advance()
            alts = self._form_alternatives(terminators=("]",))
            if alts is None or not self.expect("]", "']'"):
                self.skip_to_dot()
                return None
            if not self.expect(".", "'.'"):
                self.skip_to_dot()
                return None
            return LexiconEntry(stem, alts, None, Pos(tok.line, tok.col))
        if not stem:
            self.error("lexicon entry")
            self.skip_to_dot()
            return None
        stress: Union[tuple[int, ...], StressRef, None]
        if self.cur.kind == "STRESSV":
            ref = self.advance()
            stress = StressRef(ref.value, Pos(ref.line, ref.col))
        elif self.cur.kind == "(":
            stress = self._stress_tuple()
            if stress is None:
                self.skip_to_dot()
                return None
        else:
            self.error("'[' forms ']', stress tuple, or stress rule reference")
            self.skip_to_dot()
            return None
        if not self.expect(".", "'.'"):
            self.skip_to_dot()
            return None
        return LexiconEntry(stem, None, stress, Pos(tok.line, tok.col))


def parse(source: str, path: str = "<string>") -> LexiconFile:
    """Parse one lexicon source file.

    Diagnostics are collected on the returned file rather than raised, so a
    single run reports every error.
    """
    diagnostics: list[Diagnostic] = []
    tokens = _lex(source, path, diagnostics)
    return _Parser(tokens, path, diagnostics).parse_file()


def parse_path(path) -> LexiconFile:
    from pathlib import Path

    p = Path(path)
    return parse(p.read_text(encoding="utf-8"), str(p))


# --- resolution ------------------------------------------------------------


@dataclass(frozen=True)
class ResolvedForm:
    infix: str | None
    suffixes: tuple[str, ...]
    stress: tuple[int, ...]


@dataclass(frozen=True)
class ResolvedEntry:
    stem: str  # with hyphens
    forms: tuple[ResolvedForm, ...]
    non_inflected: bool
    entry_id: int
    pos: Pos = field(default=_NOPOS, compare=False)
    source: str = field(default="", compare=False)

    @property
    def stem_letters(self) -> str:
        return self.stem.replace("-", "")


@dataclass
class ResolvedRuleSet:
    """All rules bound, references replaced by their definitions."""

    entries: list[ResolvedEntry]
    infixes: list[str]  # distinct, first-occurrence order
    inflections: list[tuple[str, ...]]
    stress_tuples: list[tuple[int, ...]]


def _merge_files(files: Iterable[LexiconFile], diagnostics: list[Diagnostic]):
    stress: dict[str, StressRule] = {}
    inflection: dict[str, InflectionRule] = {}
    forms: dict[str, FormRule] = {}
    entries: list[tuple[str, LexiconEntry]] = []
    for f in files:
        for table, merged in ((f.stress_rules, stress),
                              (f.inflection_rules, inflection),
                              (f.form_rules, forms)):
            for name, rule in table.items():
                if name in merged:
                    diagnostics.append(
                        Diagnostic(f.path, rule.pos.line, rule.pos.col, "error",
                                   f"duplicate definition of {name!r} across files")
                    )
                else:
                    merged[name] = rule
        entries.extend((f.path, e) for e in f.entries)
    return stress, inflection, forms, entries


def _resolve(files: list[LexiconFile]) -> tuple[ResolvedRuleSet, list[Diagnostic]]:
    diagnostics: list[Diagnostic] = []
    stress, inflection, form_rules, raw_entries = _merge_files(files, diagnostics)

    def resolve_stress(s, path) -> tuple[int, ...] | None:
        if isinstance(s, StressRef):
            rule = stress.get(s.name)
            if rule is None:
                diagnostics.append(
                    Diagnostic(path, s.pos.line, s.pos.col, "error",
                               f"unresolved stress rule '!{s.name}'")
                )
                return None
            return rule.positions
        return s

    def resolve_inflection(inf, path) -> tuple[str, ...] | None:
        if isinstance(inf, InflectionRef):
            rule = inflection.get(inf.name)
            if rule is None:
                diagnostics.append(
                    Diagnostic(path, inf.pos.line, inf.pos.col, "error",
                               f"unresolved inflection rule '#{inf.name}'")
                )
                return None
            return rule.suffixes
        return inf

    def resolve_forms(alts, path, active: tuple[str, ...]) -> list[ResolvedForm] | None:
        out: list[ResolvedForm] = []
        for alt in alts:
            if isinstance(alt, FormRef):
                rule = form_rules.get(alt.name)
                if rule is None:
                    diagnostics.append(
                        Diagnostic(path, alt.pos.line, alt.pos.col, "error",
                                   f"unresolved form rule '${alt.name}'")
                    )
                    return None
                if alt.name in active:
                    diagnostics.append(
                        Diagnostic(path, alt.pos.line, alt.pos.col, "error",
                                   f"cycle detected through '${alt.name}'")
                    )
                    return None
                nested = resolve_forms(rule.alternatives, path, active + (alt.name,))
                if nested is None:
                    return None
                out.extend(nested)
                continue
            suffixes = resolve_inflection(alt.inflection, path)
            positions = resolve_stress(alt.stress, path)
            if suffixes is None or positions is None:
                return None
            out.append(ResolvedForm(alt.infix, suffixes, positions))
        return out

    entries: list[ResolvedEntry] = []
    for path, entry in raw_entries:
        if entry.forms is not None:
            resolved = resolve_forms(entry.forms, path, ())
            if resolved is None:
                continue
            entries.append(
                ResolvedEntry(entry.stem, tuple(resolved), False,
                              len(entries), entry.pos, path)
            )
        else:
            positions = resolve_stress(entry.stress, path)
            if positions is None:
                continue
            # One single-suffix form per admissible stress position.
            forms = tuple(
                ResolvedForm(None, ("",), (p,)) for p in positions
            )
            entries.append(
                ResolvedEntry(entry.stem, forms, True, len(entries),
                              entry.pos, path)
            )

    infixes: list[str] = []
    inflections: list[tuple[str, ...]] = []
    tuples: list[tuple[int, ...]] = []
    for e in entries:
        for f in e.forms:
            if f.infix and f.infix not in infixes:
                infixes.append(f.infix)
            if f.suffixes not in inflections:
                inflections.append(f.suffixes)
            if f.stress not in tuples:
                tuples.append(f.stress)
    return ResolvedRuleSet(entries, infixes, inflections, tuples), diagnostics


def resolve(files: LexiconFile | list[LexiconFile]) -> ResolvedRuleSet:
    """Bind every rule reference; raise :class:`GwdlError` on failure."""
    if isinstance(files, LexiconFile):
        files = [files]
    ruleset, diagnostics = _resolve(files)
    errors = [d for d in diagnostics if d.severity == "error"]
    if errors:
        raise GwdlError(errors)
    return ruleset


# --- validation ------------------------------------------------------------


def validate(files: LexiconFile | list[LexiconFile]) -> list[Diagnostic]:
    """Parse/resolve diagnostics plus semantic checks, as a flat list."""
    if isinstance(files, LexiconFile):
        files = [files]
    diagnostics: list[Diagnostic] = []
    for f in files:
        diagnostics.extend(f.diagnostics)
    ruleset, resolve_diags = _resolve(files)
    diagnostics.extend(resolve_diags)

    for f in files:
        for rule in f.stress_rules.values():
            for p in rule.positions:
                if not 1 <= p <= 3:
                    diagnostics.append(
                        Diagnostic(f.path, rule.pos.line, rule.pos.col, "error",
                                   f"stress position {p} out of range 1..3 in '!{rule.name}'")
                    )

    for entry in ruleset.entries:
        diagnostics.extend(_check_entry(entry))
    return diagnostics


def _check_entry(entry: ResolvedEntry) -> list[Diagnostic]:
    diags: list[Diagnostic] = []

    def diag(severity: str, message: str) -> None:
        diags.append(Diagnostic(entry.source, entry.pos.line, entry.pos.col,
                                severity, message))

    stem_letters = entry.stem_letters
    # Hyphen consistency: every chunk except a trailing consonant-only one
    # must contain exactly one nucleus, whole.  Where hyphens fall inside a
    # consonant run is a typographic choice we do not police.
    if "-" in entry.stem:
        chunks = entry.stem.split("-")
        if any(not c for c in chunks):
            diag("error", f"empty syllable chunk in stem {entry.stem!r}")
            return diags
        tail_consonant = all(c not in greek.VOWELS for c in chunks[-1])
        vowel_chunks = chunks[:-1] if tail_consonant else chunks
        try:
            syl = greek.syllabify(stem_letters, _stem_breaks(entry.stem))
        except greek.NoVowel:
            diag("error", f"stem {entry.stem!r} has no vowel")
            return diags
        spans = []
        offset = 0
        for c in vowel_chunks:
            spans.append((offset, offset + len(c)))
            offset += len(c) + 0  # hyphens not counted in letter offsets
        if len(vowel_chunks) != len(syl.nuclei) or any(
            not (lo <= start and end <= hi)
            for (lo, hi), (start, end) in zip(spans, syl.nuclei)
        ):
            diag("error",
                 f"stem hyphens {entry.stem!r} disagree with syllabification")
    for fi, form in enumerate(entry.forms):
        if len(form.stress) > len(form.suffixes):
            diag("error",
                 f"stress tuple {form.stress} longer than its "
                 f"{len(form.suffixes)}-suffix inflection (form {fi + 1})")
        for p in form.stress:
            if not 1 <= p <= 3:
                diag("error", f"stress position {p} out of range 1..3")
        for si, suffix in enumerate(form.suffixes, start=1):
            word = stem_letters + (form.infix or "") + suffix
            if not word:
                diag("error", "entry produces an empty word")
                continue
            try:
                n = greek.syllable_count(word, _stem_breaks(entry.stem))
            except greek.NoVowel:
                diag("error", f"form {word!r} has no vowel")
                continue
            from .morphgen import stress_for

            wanted = stress_for(form.stress, si)
            if wanted > n:
                diag("warning",
                     f"stress position {wanted} clamped to {n} on {word!r}")
    return diags


def _stem_breaks(stem: str) -> frozenset[int]:
    """Forced nucleus breaks implied by the stem's hyphens (ρολο-ι)."""
    breaks = set()
    letters = stem.replace("-", "")
    offset = 0
    for chunk in stem.split("-")[:-1]:
        offset += len(chunk)
        if (
            0 < offset < len(letters)
            and letters[offset - 1 : offset + 1] in greek.DIGRAPHS
        ):
            breaks.add(offset)
    return frozenset(breaks)


def stem_breaks(stem: str) -> frozenset[int]:
    return _stem_breaks(stem)


# --- canonical printer -----------------------------------------------------


def print_lexicon(f: LexiconFile) -> str:
    """Canonical text form; ``parse(print_lexicon(ast)) == ast``."""
    lines: list[str] = []
    if f.header is not None:
        lines.append(f"% {f.header[0]} {f.header[1]}")
    for rule in f.stress_rules.values():
        lines.append(f"!{rule.name}={_print_tuple(rule.positions)}.")
    for rule in f.inflection_rules.values():
        lines.append(f"#{rule.name}={_print_suffixes(rule.suffixes)}.")
    for rule in f.form_rules.values():
        alts = "|".join(_print_form(a) for a in rule.alternatives)
        lines.append(f"${rule.name}={alts}.")
    for entry in f.entries:
        lines.append(_print_entry(entry))
    return "\n".join(lines) + "\n"


def _print_tuple(positions: tuple[int, ...]) -> str:
    return "(" + ",".join(str(p) for p in positions) + ")"


def _print_suffixes(suffixes: tuple[str, ...]) -> str:
    if suffixes and suffixes[-1] == "":
        return "|".join(_display(s) for s in suffixes[:-1]) + "|"
    return "|".join(_display(s) for s in suffixes)


def _print_form(form: Union[Form, FormRef]) -> str:
    if isinstance(form, FormRef):
        return f"${form.name}"
    parts = []
    if form.infix:
        parts.append(_display(form.infix) + " ")
    if isinstance(form.inflection, InflectionRef):
        parts.append(f"#{form.inflection.name}")
    else:
        parts.append("[" + _print_suffixes(form.inflection) + "]")
    parts.append(" ")
    if isinstance(form.stress, StressRef):
        parts.append(f"!{form.stress.name}")
    else:
        parts.append(_print_tuple(form.stress))
    return "".join(parts)


def _print_entry(entry: LexiconEntry) -> str:
    if entry.forms is not None:
        alts = "|".join(_print_form(a) for a in entry.forms)
        return f"{_display(entry.stem)}[{alts}]."
    if isinstance(entry.stress, StressRef):
        return f"{_display(entry.stem)}!{entry.stress.name}."
    return f"{_display(entry.stem)}{_print_tuple(entry.stress)}."


def _display(letters: str) -> str:
    """Keep internal sigma when printing rule text (ς only ends words)."""
    return letters


def format_diagnostics(diagnostics: Iterable[Diagnostic]) -> str:
    return "\n".join(str(d) for d in diagnostics)


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diagnostics)
