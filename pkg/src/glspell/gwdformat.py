"""Binary dictionary file (.gwd) serialization.

Layout (little-endian throughout; see docs/gwd_format.md for the full
field-by-field reference):

* header: magic ``GWD1``, format version u16, section count u16
* section directory: (tag u32, offset u64, length u64) per section,
  tags SYMS, TRIE, RECS, TRIG, FREQ in that order
* the five section payloads
* CRC-32 of every preceding byte, u32, trailing the file

Internal letters are stored as one byte each (index into the 24-letter
alphabet); only memory-dictionary forms are stored as UTF-8 text.
"""

from __future__ import annotations

import mmap
import struct
import zlib
from pathlib import Path

from .dictstore import (
    CompiledDictionary,
    SymbolTable,
    TrigramTable,
    WordRecord,
)
from .greek import ALPHABET
from .trie import CompressedTrie, TrieNode

MAGIC = b"GWD1"
VERSION = 1
SECTION_TAGS = (b"SYMS", b"TRIE", b"RECS", b"TRIG", b"FREQ")

_LETTER_INDEX = {ch: i for i, ch in enumerate(ALPHABET)}
_SENTINEL_INDEX = {"^": 24, "$": 25}
_TRIGRAM_SPACE = 26 * 26 * 26
_TRIGRAM_BYTES = (_TRIGRAM_SPACE + 7) // 8
_NO_INFIX = 0xFFFF


class GwdFormatError(Exception):
    pass


class BadMagic(GwdFormatError):
    pass


class UnsupportedVersion(GwdFormatError):
    pass


class ChecksumMismatch(GwdFormatError):
    pass


class Truncated(GwdFormatError):
    pass


def _letters_bytes(letters: str) -> bytes:
    return bytes(_LETTER_INDEX[ch] for ch in letters)


def _letters_str(raw: bytes) -> str:
    return "".join(ALPHABET[b] for b in raw)


def _gram_index(gram: str) -> int:
    a, b, c = (
        _SENTINEL_INDEX.get(ch, _LETTER_INDEX.get(ch, -1)) for ch in gram
    )
    if -1 in (a, b, c):
        raise ValueError(f"bad trigram {gram!r}")
    return (a * 26 + b) * 26 + c


def _gram_str(index: int) -> str:
    chars = []
    for _ in range(3):
        chars.append(index % 26)
        index //= 26
    table = ALPHABET + "^$"
    return "".join(table[c] for c in reversed(chars))


# --- section writers ---------------------------------------------------------


def _write_syms(symbols: SymbolTable) -> bytes:
    out = bytearray()
    out += struct.pack("<I", len(symbols.infixes))
    for infix in symbols.infixes:
        raw = _letters_bytes(infix)
        out += struct.pack("<B", len(raw)) + raw
    out += struct.pack("<I", len(symbols.inflections))
    for suffixes in symbols.inflections:
        out += struct.pack("<B", len(suffixes))
        for s in suffixes:
            raw = _letters_bytes(s)
            out += struct.pack("<B", len(raw)) + raw
    out += struct.pack("<I", len(symbols.stress_tuples))
    for positions in symbols.stress_tuples:
        out += struct.pack("<B", len(positions)) + bytes(positions)
    out += struct.pack("<I", len(symbols.forms))
    for infix_id, inflection_id, stress_id in symbols.forms:
        out += struct.pack(
            "<HHH",
            _NO_INFIX if infix_id is None else infix_id,
            inflection_id,
            stress_id,
        )
    return bytes(out)


def _write_trie(trie: CompressedTrie) -> bytes:
    nodes = list(trie.iter_nodes())
    index = {id(node): i for i, node in enumerate(nodes)}
    out = bytearray(struct.pack("<I", len(nodes)))
    for node in nodes:
        raw = _letters_bytes(node.label)
        out += struct.pack("<H", len(raw)) + raw
        out += struct.pack("<i", node.record_id)
        out += struct.pack("<H", len(node.children))
        for child in node.children:
            out += struct.pack("<I", index[id(child)])
    return bytes(out)


def _write_record(record: WordRecord) -> bytes:
    out = bytearray()
    stem = _letters_bytes(record.stem)
    out += struct.pack("<B", len(stem)) + stem
    out += struct.pack("<B", len(record.breaks)) + bytes(record.breaks)
    out += struct.pack("<B", record.flags)
    out += struct.pack("<H", len(record.form_ids))
    for fid in record.form_ids:
        out += struct.pack("<I", fid)
    return bytes(out)


def _write_recs(records) -> bytes:
    blobs = [_write_record(r) for r in records]
    out = bytearray(struct.pack("<I", len(blobs)))
    offset = 0
    for blob in blobs:
        out += struct.pack("<I", offset)
        offset += len(blob)
    for blob in blobs:
        out += blob
    return bytes(out)


def _write_trig(trigrams: TrigramTable) -> bytes:
    bits = bytearray(_TRIGRAM_BYTES)
    for gram in trigrams.grams:
        i = _gram_index(gram)
        bits[i >> 3] |= 1 << (i & 7)
    return bytes(bits)


def _write_freq(memory_forms: tuple[str, ...]) -> bytes:
    out = bytearray(struct.pack("<I", len(memory_forms)))
    for display in memory_forms:
        raw = display.encode("utf-8")
        out += struct.pack("<B", len(raw)) + raw
    return bytes(out)


def serialize(dictionary: CompiledDictionary) -> bytes:
    sections = (
        _write_syms(dictionary.symbols),
        _write_trie(dictionary.trie),
        _write_recs(dictionary.records),
        _write_trig(dictionary.trigrams),
        _write_freq(dictionary.memory_forms),
    )
    header = MAGIC + struct.pack("<HH", VERSION, len(sections))
    directory_size = len(SECTION_TAGS) * struct.calcsize("<IQQ")
    offset = len(header) + directory_size
    directory = bytearray()
    for tag, payload in zip(SECTION_TAGS, sections):
        directory += struct.pack(
            "<IQQ", int.from_bytes(tag, "little"), offset, len(payload)
        )
        offset += len(payload)
    body = header + bytes(directory) + b"".join(sections)
    return body + struct.pack("<I", zlib.crc32(body))


# --- readers -----------------------------------------------------------------


class _Reader:
    def __init__(self, buf, offset: int = 0, end: int | None = None):
        self.buf = buf
        self.i = offset
        self.end = len(buf) if end is None else end

    def take(self, n: int) -> bytes:
        if self.i + n > self.end:
            raise Truncated(f"need {n} bytes at {self.i}, have {self.end - self.i}")
        out = self.buf[self.i : self.i + n]
        self.i += n
        return bytes(out)

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def _read_syms(r: _Reader) -> SymbolTable:
    (n,) = r.unpack("<I")
    infixes = [_letters_str(r.take(r.unpack("<B")[0])) for _ in range(n)]
    (n,) = r.unpack("<I")
    inflections = []
    for _ in range(n):
        (count,) = r.unpack("<B")
        inflections.append(
            tuple(_letters_str(r.take(r.unpack("<B")[0])) for _ in range(count))
        )
    (n,) = r.unpack("<I")
    stress_tuples = [tuple(r.take(r.unpack("<B")[0])) for _ in range(n)]
    (n,) = r.unpack("<I")
    forms = []
    for _ in range(n):
        infix_id, inflection_id, stress_id = r.unpack("<HHH")
        forms.append(
            (None if infix_id == _NO_INFIX else infix_id, inflection_id, stress_id)
        )
    return SymbolTable(infixes, inflections, stress_tuples, forms)


def _read_trie(r: _Reader) -> CompressedTrie:
    (count,) = r.unpack("<I")
    raw_nodes = []
    for _ in range(count):
        (label_len,) = r.unpack("<H")
        label = _letters_str(r.take(label_len))
        (record_id,) = r.unpack("<i")
        (child_count,) = r.unpack("<H")
        children = [r.unpack("<I")[0] for _ in range(child_count)]
        raw_nodes.append((label, record_id, children))
    built: list[TrieNode | None] = [None] * count
    # children always follow their parent in preorder; build back-to-front
    for i in range(count - 1, -1, -1):
        label, record_id, children = raw_nodes[i]
        built[i] = TrieNode(label, record_id, tuple(built[c] for c in children))
    if count == 0:
        raise Truncated("trie section has no nodes")
    return CompressedTrie(built[0], count)


def _parse_record(r: _Reader) -> WordRecord:
    (stem_len,) = r.unpack("<B")
    stem = _letters_str(r.take(stem_len))
    (break_count,) = r.unpack("<B")
    breaks = tuple(r.take(break_count))
    (flags,) = r.unpack("<B")
    (form_count,) = r.unpack("<H")
    form_ids = tuple(r.unpack("<I")[0] for _ in range(form_count))
    return WordRecord(stem, breaks, form_ids, flags)


class LazyRecords:
    """Record accessor over a mapped buffer; parses one record per fetch."""

    def __init__(self, buf, start: int, end: int):
        r = _Reader(buf, start, end)
        (self._count,) = r.unpack("<I")
        self._offsets = [r.unpack("<I")[0] for _ in range(self._count)]
        self._base = r.i
        self._buf = buf
        self._end = end

    def __len__(self) -> int:
        return self._count

    def __getitem__(self, i: int) -> WordRecord:
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(self._count))]
        if i < 0:
            i += self._count
        if not 0 <= i < self._count:
            raise IndexError(i)
        return _parse_record(_Reader(self._buf, self._base + self._offsets[i], self._end))

    def __iter__(self):
        for i in range(self._count):
            yield self[i]


def _read_recs_eager(r: _Reader) -> list[WordRecord]:
    (count,) = r.unpack("<I")
    for _ in range(count):
        r.unpack("<I")
    return [_parse_record(r) for _ in range(count)]


def _read_trig(r: _Reader) -> TrigramTable:
    bits = r.take(_TRIGRAM_BYTES)
    grams = set()
    for i in range(_TRIGRAM_SPACE):
        if bits[i >> 3] & (1 << (i & 7)):
            grams.add(_gram_str(i))
    return TrigramTable(frozenset(grams))


def _read_freq(r: _Reader) -> tuple[str, ...]:
    (count,) = r.unpack("<I")
    return tuple(
        r.take(r.unpack("<B")[0]).decode("utf-8") for _ in range(count)
    )


def deserialize(data: bytes) -> CompiledDictionary:
    return _load(data, lazy_records=False)


def _load(data, lazy_records: bool) -> CompiledDictionary:
    if len(data) < len(MAGIC) + 4 + 4:
        raise Truncated("file shorter than header")
    if bytes(data[:4]) != MAGIC:
        raise BadMagic(f"magic {bytes(data[:4])!r} != {MAGIC!r}")
    version, nsections = struct.unpack_from("<HH", data, 4)
    if version != VERSION:
        raise UnsupportedVersion(f"format version {version}")
    stored_crc = struct.unpack_from("<I", data, len(data) - 4)[0]
    actual_crc = zlib.crc32(bytes(data[: len(data) - 4]))
    if stored_crc != actual_crc:
        raise ChecksumMismatch(f"crc {stored_crc:#x} != {actual_crc:#x}")
    directory = {}
    entry_size = struct.calcsize("<IQQ")
    for k in range(nsections):
        tag, offset, length = struct.unpack_from("<IQQ", data, 8 + k * entry_size)
        if offset + length > len(data) - 4:
            raise Truncated("section extends past checksum")
        directory[tag.to_bytes(4, "little")] = (offset, length)
    for tag in SECTION_TAGS:
        if tag not in directory:
            raise Truncated(f"missing section {tag!r}")

    def reader(tag: bytes) -> _Reader:
        offset, length = directory[tag]
        return _Reader(data, offset, offset + length)

    symbols = _read_syms(reader(b"SYMS"))
    trie = _read_trie(reader(b"TRIE"))
    if lazy_records:
        offset, length = directory[b"RECS"]
        records = LazyRecords(data, offset, offset + length)
    else:
        records = _read_recs_eager(reader(b"RECS"))
    trigrams = _read_trig(reader(b"TRIG"))
    memory_forms = _read_freq(reader(b"FREQ"))
    return CompiledDictionary(symbols, trie, records, trigrams, memory_forms)


def save(dictionary: CompiledDictionary, path) -> None:
    Path(path).write_bytes(serialize(dictionary))


def load(path, policy: str = "eager") -> CompiledDictionary:
    """Load a .gwd file.

    ``policy="eager"`` reads and parses everything up front;
    ``policy="mmap"`` maps the file and fetches word records on demand.
    """
    if policy == "eager":
        return deserialize(Path(path).read_bytes())
    if policy == "mmap":
        with open(path, "rb") as fh:
            buf = mmap.mmap(fh.fileno(), 0, access=mmap.ACCESS_READ)
        return _load(buf, lazy_records=True)
    raise ValueError(f"unknown load policy {policy!r}")
