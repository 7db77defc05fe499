"""The glspell command line: batch checking, interactive fixing, serving.

    glspell check FILE --dict D.gwd [--user U.txt] [--report tsv|pretty]
    glspell fix FILE --dict D.gwd [--user U.txt] [-o OUT]
    glspell serve --dict D.gwd --listen ADDR [--user U.txt] [--assets DIR]
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import gwdformat
from .correct import Checker
from .dictstore import UserDictionary
from .session import (
    ACTION_CORRECT,
    ACTION_EDIT,
    ACTION_EXIT,
    ACTION_SKIP,
    ACTION_STORE,
    STATUS_ACTIVE,
    BadSuggestionIndex,
    CorrectionSession,
    check_document,
)

EXIT_OK = 0
EXIT_FLAGS = 1
EXIT_IO = 2


def _load_checker(args) -> Checker:
    main = gwdformat.load(args.dict, policy=args.load_policy)
    user = (
        UserDictionary.load(args.user) if args.user else UserDictionary()
    )
    return Checker(main, user)


def _line_col(text: str, byte_offset: int) -> tuple[int, int]:
    prefix = text.encode("utf-8")[:byte_offset].decode("utf-8")
    line = prefix.count("\n") + 1
    col = len(prefix) - (prefix.rfind("\n") + 1) + 1
    return line, col


def _cmd_check(args) -> int:
    checker = _load_checker(args)
    text = Path(args.file).read_text(encoding="utf-8")
    flags = check_document(text, checker)
    for flag in flags:
        line, col = _line_col(text, flag.token.start)
        joined = ";".join(s.display for s in flag.suggestions)
        if args.report == "tsv":
            print(f"{line}\t{col}\t{flag.word}\t{joined}")
        else:
            print(f"{args.file}:{line}:{col}: {flag.word}")
            for s in flag.suggestions:
                print(f"    {s.rank}. {s.display} ({s.error_class})")
    return EXIT_FLAGS if flags else EXIT_OK


def _cmd_fix(args) -> int:
    checker = _load_checker(args)
    text = Path(args.file).read_text(encoding="utf-8")
    journal = Path(args.journal) if args.journal else None
    if journal is not None and journal.exists() and journal.stat().st_size:
        from .session import resume_session

        session = resume_session(journal, checker)
        print(f"resumed session from {journal}", file=sys.stdout)
    else:
        session = CorrectionSession(text, checker, journal=journal)
    out = sys.stdout
    while True:
        flag = session.next_flag()
        if flag is None:
            break
        print(f"\n{flag.word}  (flag {flag.ordinal})", file=out)
        for s in flag.suggestions:
            print(f"  {s.rank}. {s.display} ({s.error_class})", file=out)
        choice = _prompt(out)
        if choice == "s":
            session.apply(ACTION_SKIP)
        elif choice == "e":
            replacement = input("replacement: ").strip()
            session.apply(ACTION_EDIT, replacement=replacement)
        elif choice == "t":
            session.apply(ACTION_STORE)
            if args.user:
                checker.user.save(args.user)
        elif choice == "x":
            session.apply(ACTION_EXIT)
            break
        elif choice.isdigit():
            try:
                session.apply(ACTION_CORRECT, index=int(choice))
            except BadSuggestionIndex as exc:
                print(f"? {exc}", file=out)
        else:
            print("?", file=out)
    if session.status == STATUS_ACTIVE:
        session.apply(ACTION_EXIT)
    corrected = session.export()
    target = Path(args.output) if args.output else Path(args.file)
    target.write_text(corrected, encoding="utf-8")
    print(f"\nwrote {target}", file=out)
    return EXIT_OK


def _prompt(out) -> str:
    print("[s]kip  [e]dit  s[t]ore  number=correct  e[x]it", file=out)
    return input("> ").strip().lower()


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    checker = _load_checker(args)
    app = create_app(
        checker,
        user_dict_path=Path(args.user) if args.user else None,
        assets_dir=Path(args.assets) if args.assets else None,
    )
    host, _, port = args.listen.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="glspell",
                                     description="Greek spelling checker")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--dict", required=True, metavar="D.gwd")
        p.add_argument("--user", metavar="U.txt")
        p.add_argument("--load-policy", choices=("eager", "mmap"),
                       default="eager")

    p = sub.add_parser("check", help="report flagged words, one per line")
    p.add_argument("file", metavar="FILE")
    common(p)
    p.add_argument("--report", choices=("tsv", "pretty"), default="tsv")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("fix", help="interactive correction session")
    p.add_argument("file", metavar="FILE")
    common(p)
    p.add_argument("-o", "--output", metavar="OUT")
    p.add_argument("--journal", metavar="JOURNAL.jsonl")
    p.set_defaults(func=_cmd_fix)

    p = sub.add_parser("serve", help="run the HTTP correction service")
    common(p)
    p.add_argument("--listen", default="127.0.0.1:8750", metavar="ADDR")
    p.add_argument("--assets", metavar="DIR",
                   help="static web UI directory to serve at /")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (OSError, gwdformat.GwdFormatError) as exc:
        print(f"glspell: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
