"""Dictionary compiler: lexicon sources (+ optional frequency list) in,
.gwd binary and a build report out.

CLI:
    mkdict build -o OUT.gwd [--freq FREQ.tsv] [--mem-size N] SRC...
    mkdict report OUT.gwd
    mkdict expand SRC...
    mkdict validate SRC...

Exit codes: 0 ok, 1 diagnostics, 2 I/O errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from . import dictstore, gwdformat, morphgen
from .gwdl import (
    Diagnostic,
    LexiconFile,
    format_diagnostics,
    has_errors,
    parse_path,
    resolve,
    validate,
)

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_IO = 2


@dataclass
class BuildReport:
    entries: int
    surface_forms: int
    infixes: int
    inflections: int
    stress_tuples: int
    trie_nodes: int
    records: int
    trigrams: int
    memory_forms: int
    section_sizes: dict[str, int] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [
            f"entries            {self.entries}",
            f"surface forms      {self.surface_forms}",
            f"distinct infixes   {self.infixes}",
            f"distinct inflections {self.inflections}",
            f"distinct stress tuples {self.stress_tuples}",
            f"trie nodes         {self.trie_nodes}",
            f"word records       {self.records}",
            f"trigrams           {self.trigrams}",
            f"memory dictionary  {self.memory_forms}",
        ]
        for tag, size in self.section_sizes.items():
            out.append(f"section {tag}       {size} bytes")
        return out


def read_frequency_list(path) -> list[tuple[int, str]]:
    """TSV lines "count TAB form", unordered; ties break lexicographically."""
    pairs = []
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        try:
            count, form = line.split("\t")
            pairs.append((int(count), form.strip()))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: bad frequency line {line!r}") from exc
    return pairs


def _section_sizes(raw: bytes) -> dict[str, int]:
    import struct

    sizes = {}
    for k in range(struct.unpack_from("<H", raw, 6)[0]):
        tag, _, length = struct.unpack_from("<IQQ", raw, 8 + k * 20)
        sizes[tag.to_bytes(4, "little").decode("ascii")] = length
    return sizes


def compile_lexicon(
    sources: list,
    freq=None,
    out=None,
    memory_size: int = dictstore.MEMORY_DICT_DEFAULT_SIZE,
) -> BuildReport:
    """Parse, validate, expand, and serialize; atomic on-disk output.

    Raises :class:`CompileFailed` when any error-severity diagnostic is
    present; nothing is written in that case.
    """
    files = [parse_path(p) for p in sources]
    diagnostics = validate(files)
    if has_errors(diagnostics):
        raise CompileFailed(diagnostics)
    ruleset = resolve(files)
    frequency_list = read_frequency_list(freq) if freq else None
    compiled = dictstore.build(ruleset.entries, frequency_list, memory_size)
    raw = gwdformat.serialize(compiled)
    if out is not None:
        out = Path(out)
        fd, tmp = tempfile.mkstemp(dir=out.parent or Path("."), suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(raw)
            os.replace(tmp, out)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    stats = compiled.stats()
    return BuildReport(
        entries=len(ruleset.entries),
        surface_forms=morphgen.count_forms(ruleset),
        infixes=stats["infixes"],
        inflections=stats["inflections"],
        stress_tuples=stats["stress_tuples"],
        trie_nodes=stats["trie_nodes"],
        records=stats["records"],
        trigrams=stats["trigrams"],
        memory_forms=stats["memory_forms"],
        section_sizes=_section_sizes(raw),
        diagnostics=diagnostics,
    )


class CompileFailed(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__(f"{len(diagnostics)} diagnostics")


def _cmd_build(args) -> int:
    try:
        report = compile_lexicon(
            args.sources, freq=args.freq, out=args.output, memory_size=args.mem_size
        )
    except CompileFailed as exc:
        print(format_diagnostics(exc.diagnostics), file=sys.stderr)
        return EXIT_DIAGNOSTICS
    except OSError as exc:
        print(f"mkdict: {exc}", file=sys.stderr)
        return EXIT_IO
    for d in report.diagnostics:
        print(str(d), file=sys.stderr)
    for line in report.lines():
        print(line)
    return EXIT_OK


def _cmd_report(args) -> int:
    try:
        compiled = gwdformat.load(args.dictionary)
        raw = Path(args.dictionary).read_bytes()
    except (OSError, gwdformat.GwdFormatError) as exc:
        print(f"mkdict: {exc}", file=sys.stderr)
        return EXIT_IO
    stats = compiled.stats()
    print(f"word records       {stats['records']}")
    print(f"trie nodes         {stats['trie_nodes']}")
    print(f"distinct infixes   {stats['infixes']}")
    print(f"distinct inflections {stats['inflections']}")
    print(f"distinct stress tuples {stats['stress_tuples']}")
    print(f"trigrams           {stats['trigrams']}")
    print(f"memory dictionary  {stats['memory_forms']}")
    for tag, size in _section_sizes(raw).items():
        print(f"section {tag}       {size} bytes")
    return EXIT_OK


def _cmd_expand(args) -> int:
    files = [parse_path(p) for p in args.sources]
    diagnostics = validate(files)
    if has_errors(diagnostics):
        print(format_diagnostics(diagnostics), file=sys.stderr)
        return EXIT_DIAGNOSTICS
    ruleset = resolve(files)
    for sf in morphgen.expand_all(ruleset.entries):
        print(f"{sf.display}\t{sf.entry_id}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    try:
        files = [parse_path(p) for p in args.sources]
    except OSError as exc:
        print(f"mkdict: {exc}", file=sys.stderr)
        return EXIT_IO
    diagnostics = validate(files)
    if diagnostics:
        print(format_diagnostics(diagnostics))
    return EXIT_DIAGNOSTICS if has_errors(diagnostics) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mkdict", description="Compile lexicon sources into a .gwd dictionary"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="compile sources to a binary dictionary")
    p.add_argument("sources", nargs="+", metavar="SRC")
    p.add_argument("-o", "--output", required=True, metavar="OUT.gwd")
    p.add_argument("--freq", metavar="FREQ.tsv")
    p.add_argument("--mem-size", type=int,
                   default=dictstore.MEMORY_DICT_DEFAULT_SIZE)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("report", help="print statistics of a built dictionary")
    p.add_argument("dictionary", metavar="OUT.gwd")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("expand", help="dump every generated surface form")
    p.add_argument("sources", nargs="+", metavar="SRC")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("validate", help="report diagnostics for sources")
    p.add_argument("sources", nargs="+", metavar="SRC")
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except OSError as exc:
        print(f"mkdict: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
