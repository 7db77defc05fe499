"""Document tokenization and the interactive correction session
(Skip / Edit / Store / Correct / Exit) shared by the CLI and the HTTP
service."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import greek
from .correct import Checker, Suggestion

ACTION_SKIP = "skip"
ACTION_EDIT = "edit"
ACTION_STORE = "store"
ACTION_CORRECT = "correct"
ACTION_EXIT = "exit"

STATUS_ACTIVE = "active"
STATUS_EXITED = "exited"
STATUS_COMPLETED = "completed"


class SessionError(Exception):
    pass


class SessionClosed(SessionError):
    pass


class SessionActive(SessionError):
    pass


class BadSuggestionIndex(SessionError):
    pass


@dataclass(frozen=True)
class Token:
    text: str
    start: int  # UTF-8 byte offset in the document
    end: int
    kind: str  # "greek-word" | "other"


_WORD_RE = re.compile(
    "["
    "ΆΈ-ΊΌΎ-ΡΣ-ώΐΰ"
    "Ͱ-ͳἀ-῿"
    "̀́̈͂"
    "]+"
)


def tokenize_document(text: str) -> list[Token]:
    """Maximal runs of Greek letters/diacritics become greek-word tokens;
    everything between them is kind "other" and never checked.  Spans are
    UTF-8 byte offsets and tile the document exactly."""
    tokens: list[Token] = []
    byte_pos = 0
    char_pos = 0
    for m in _WORD_RE.finditer(text):
        if m.start() > char_pos:
            gap = text[char_pos : m.start()]
            tokens.append(
                Token(gap, byte_pos, byte_pos + _blen(gap), "other")
            )
            byte_pos += _blen(gap)
        word = m.group()
        tokens.append(
            Token(word, byte_pos, byte_pos + _blen(word), "greek-word")
        )
        byte_pos += _blen(word)
        char_pos = m.end()
    if char_pos < len(text):
        gap = text[char_pos:]
        tokens.append(Token(gap, byte_pos, byte_pos + _blen(gap), "other"))
    return tokens


def _blen(s: str) -> int:
    return len(s.encode("utf-8"))


@dataclass
class Decision:
    span: tuple[int, int]
    action: str
    replacement: str | None = None


@dataclass
class Flag:
    token: Token
    word: str  # current text of the flagged token (after edits)
    suggestions: list[Suggestion]
    index: int  # position of the token in the token list
    ordinal: int  # k of n flagged so far (1-based)


class CorrectionSession:
    """Walks a document's flagged tokens and applies user decisions.

    The document text never mutates; decisions record replacements by the
    original token spans and ``export`` splices them in at the end.
    """

    _ids = itertools.count(1)

    def __init__(self, text: str, checker: Checker, journal: Path | None = None):
        self.id = f"s{next(self._ids)}"
        self.text = text
        self.checker = checker
        self.tokens = tokenize_document(text)
        self.status = STATUS_ACTIVE
        self.decisions: list[Decision] = []
        self._replacements: dict[int, str] = {}  # token index -> new text
        self._cursor = -1  # index into tokens of the current flag
        self._flag: Flag | None = None
        self._flag_count = 0
        self._journal = Path(journal) if journal else None
        if self._journal:
            self._journal_write({"event": "open", "text": text})

    # -- flag iteration -----------------------------------------------------

    def current_flag(self) -> Flag | None:
        if self.status == STATUS_EXITED:
            raise SessionClosed(f"session {self.id} is {self.status}")
        return self._flag

    def next_flag(self) -> Flag | None:
        """Advance to the next flagged greek-word token; None when done.

        Idempotent: repeated calls return the same flag until a decision is
        applied, and keep returning None once the walk completed.
        """
        if self.status == STATUS_EXITED:
            raise SessionClosed(f"session {self.id} is {self.status}")
        if self.status == STATUS_COMPLETED:
            return None
        if self._flag is not None:
            return self._flag
        i = self._cursor + 1
        while i < len(self.tokens):
            token = self.tokens[i]
            if token.kind == "greek-word" and i not in self._replacements:
                if not self._accepted(token.text):
                    self._cursor = i
                    self._flag_count += 1
                    self._flag = Flag(
                        token=token,
                        word=token.text,
                        suggestions=self.checker.suggest(token.text),
                        index=i,
                        ordinal=self._flag_count,
                    )
                    return self._flag
            i += 1
        self._cursor = len(self.tokens)
        self.status = STATUS_COMPLETED
        self._journal_write({"event": "completed"})
        return None

    def _accepted(self, text: str) -> bool:
        try:
            return self.checker.check(text).accepted
        except greek.NonGreekToken:
            return True  # mixed-script runs are skipped, not flagged

    # -- actions --------------------------------------------------------------

    def apply(self, action: str, replacement: str | None = None,
              index: int | None = None) -> None:
        """Apply one user decision to the current flag."""
        if action == ACTION_EXIT:
            if self.status == STATUS_ACTIVE:
                self.status = STATUS_EXITED
                self._journal_write({"event": "action", "action": action})
            return
        if self.status != STATUS_ACTIVE:
            raise SessionClosed(f"session {self.id} is {self.status}")
        flag = self._flag
        if flag is None:
            flag = self.next_flag()
        if flag is None:
            raise SessionClosed("no flagged word remains")
        if action == ACTION_SKIP:
            self._journal_write(
                {"event": "action", "action": ACTION_SKIP,
                 "span": [flag.token.start, flag.token.end]}
            )
            self._advance()
        elif action == ACTION_STORE:
            self.checker.user.add(flag.word)
            self._record(flag, ACTION_STORE, None)
            self._advance()
        elif action == ACTION_CORRECT:
            if index is None or not 1 <= index <= len(flag.suggestions):
                raise BadSuggestionIndex(
                    f"index {index} not in 1..{len(flag.suggestions)}"
                )
            chosen = _match_case(
                flag.token.text, flag.suggestions[index - 1].display
            )
            self._splice(flag, chosen)
            self._record(flag, ACTION_CORRECT, chosen)
            self._advance()
        elif action == ACTION_EDIT:
            if replacement is None:
                raise SessionError("edit needs a replacement")
            self._splice(flag, replacement)
            self._record(flag, ACTION_EDIT, replacement)
            if self._accepted(replacement):
                self._advance()
            else:
                # still wrong: the edited word stays the current flag
                self._flag = Flag(
                    token=flag.token,
                    word=replacement,
                    suggestions=self.checker.suggest(replacement),
                    index=flag.index,
                    ordinal=flag.ordinal,
                )
        else:
            raise SessionError(f"unknown action {action!r}")

    def _record(self, flag: Flag, action: str, replacement: str | None) -> None:
        span = (flag.token.start, flag.token.end)
        self.decisions = [d for d in self.decisions if d.span != span]
        self.decisions.append(Decision(span, action, replacement))
        self._journal_write(
            {"event": "action", "action": action, "span": list(span),
             "replacement": replacement}
        )

    def _splice(self, flag: Flag, replacement: str) -> None:
        self._replacements[flag.index] = replacement

    def _advance(self) -> None:
        self._flag = None
        self.next_flag()

    # -- output ------------------------------------------------------------------

    def export(self) -> str:
        """Original document with the recorded replacements spliced in."""
        if self.status == STATUS_ACTIVE:
            raise SessionActive(f"session {self.id} is still active")
        out = []
        for i, token in enumerate(self.tokens):
            out.append(self._replacements.get(i, token.text))
        return "".join(out)

    def flags_total(self) -> int:
        return self._flag_count

    def _journal_write(self, payload: dict) -> None:
        if self._journal is None:
            return
        with self._journal.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, ensure_ascii=False) + "\n")


def resume_session(journal: Path, checker: Checker) -> CorrectionSession:
    """Rebuild a session by replaying its journal.

    Correct decisions are replayed as edits of the recorded replacement,
    so the outcome does not depend on suggestion indexes having stayed
    stable; store replays are idempotent against the user dictionary.
    """
    journal = Path(journal)
    events = [
        json.loads(line)
        for line in journal.read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    if not events or events[0].get("event") != "open":
        raise SessionError(f"journal {journal} has no open event")
    session = CorrectionSession(events[0]["text"], checker)
    for event in events[1:]:
        if event.get("event") != "action":
            continue
        action = event["action"]
        if action == ACTION_EXIT:
            session.apply(ACTION_EXIT)
            break
        span = tuple(event.get("span", ()))
        # Advance to the flag the event was recorded against.  A flag past
        # the recorded span means the event is already effective (a stored
        # word no longer flags after its side effect persisted).
        while True:
            flag = session.next_flag()
            if flag is None:
                break
            fspan = (flag.token.start, flag.token.end)
            if fspan == span:
                if action == ACTION_SKIP:
                    session.apply(ACTION_SKIP)
                elif action == ACTION_STORE:
                    session.apply(ACTION_STORE)
                else:
                    session.apply(ACTION_EDIT,
                                  replacement=event["replacement"])
                break
            if fspan[0] > span[0]:
                break
            session.apply(ACTION_SKIP)
        if session.status != STATUS_ACTIVE:
            break
    session._journal = journal  # keep appending after the replay
    return session


def _match_case(original: str, replacement: str) -> str:
    """Carry a leading capital over to the replacement (Τώρα-style)."""
    if original[:1].isupper() and replacement:
        return replacement[0].upper() + replacement[1:]
    return replacement


def check_document(text: str, checker: Checker) -> list[Flag]:
    """Non-interactive pass: every flagged token with its suggestions."""
    flags = []
    ordinal = 0
    for i, token in enumerate(tokenize_document(text)):
        if token.kind != "greek-word":
            continue
        try:
            if checker.check(token.text).accepted:
                continue
        except greek.NonGreekToken:
            continue
        ordinal += 1
        flags.append(
            Flag(
                token=token,
                word=token.text,
                suggestions=checker.suggest(token.text),
                index=i,
                ordinal=ordinal,
            )
        )
    return flags
