"""
Module Streams
--------------
Several modules in one file, read lazily in order. Text streams start each
module at a line beginning with ``#module``; numeric streams are plain
concatenations of numeric modules. A directory layout with one module per
``mod-<index>.lp`` file is supported as well.

All modules of one stream share a symbol table, so they can be composed
directly.

Usage:
    from modsm.formats.stream import stream_modules, write_stream

    for m in stream_modules(path.read_bytes()):
        ...
"""

import logging
import re
from collections.abc import Iterable, Iterator
from dataclasses import replace
from enum import StrEnum
from pathlib import Path

from modsm.core.atoms import Atom, SymbolTable
from modsm.core.module import Module, rename_apart
from modsm.errors import ModsmError, StreamError
from modsm.formats.smodels import decode_lines, encode_smodels, iter_sections
from modsm.formats.smodels import decode_utf8 as decode_numeric
from modsm.formats.text import decode_utf8 as decode_text
from modsm.formats.text import parse_text, print_text

logger = logging.getLogger(__name__)

MODULE_FILE = re.compile(r"^mod-(\d+)\.lp$")
NAMELESS_LABEL = re.compile(r"(?<![\w'])_h(\d+)(?![\w'(])")


class Format(StrEnum):
    TEXT = "text"
    SMODELS = "smodels"


def _lines(source: bytes | str | Iterable[str], fmt: Format) -> Iterable[str]:
    if isinstance(source, bytes):
        decode = decode_text if fmt is Format.TEXT else decode_numeric
        return decode(source).splitlines()
    if isinstance(source, str):
        return source.splitlines()
    return source


def _reserve_nameless(lines: Iterable[str], symbols: SymbolTable) -> None:
    """Claim every ``_h<k>`` id of a stream before any named atom is interned."""
    for line in lines:
        for match in NAMELESS_LABEL.finditer(line.partition("%")[0]):
            atom_id = int(match.group(1))
            if symbols.by_id(atom_id) is None:
                symbols.adopt(atom_id)


def _text_chunks(lines: Iterable[str]) -> Iterator[str]:
    chunk: list[str] = []
    for line in lines:
        if line.startswith("#module") and chunk:
            yield "\n".join(chunk)
            chunk = []
        chunk.append(line.rstrip("\n"))
    if chunk:
        yield "\n".join(chunk)


def _has_content(chunk: str) -> bool:
    return any(line.strip() and not line.lstrip().startswith("%") for line in chunk.splitlines())


def stream_modules(
    source: bytes | str | Iterable[str],
    fmt: Format | str = Format.TEXT,
    symbols: SymbolTable | None = None,
    hidden_seen: set[Atom] | None = None,
) -> Iterator[Module]:
    """
    Lazily yield the modules of a stream in order.

    Hidden nameless atoms that an earlier module already hid are renamed
    apart; visible nameless atoms link modules like named ones do.
    ``hidden_seen`` carries that record across several streams.

    Raises:
        StreamError: wrapping the first per-module failure with its index.
    """
    symbols = symbols if symbols is not None else SymbolTable()
    fmt = Format(fmt)
    index = 0
    hidden_seen = hidden_seen if hidden_seen is not None else set()
    try:
        if fmt is Format.TEXT:
            lines = list(_lines(source, fmt))
            _reserve_nameless(lines, symbols)
            for chunk in _text_chunks(lines):
                if not _has_content(chunk):
                    continue
                module = parse_text(chunk, symbols)
                # hidden _h<k> atoms are local to their module; visible ones link
                local = {a for a in module.hidden if a.name is None}
                module = rename_apart(module, local & hidden_seen)
                hidden_seen.update(a for a in module.hidden if a.name is None)
                yield module
                index += 1
        else:
            for section in iter_sections(_lines(source, fmt)):
                yield decode_lines(section, symbols)
                index += 1
    except StreamError:
        raise
    except ModsmError as e:
        raise StreamError(index, e) from e
    logger.info(f"Read {index} modules from stream")


def write_stream(modules: Iterable[Module], fmt: Format | str = Format.TEXT) -> bytes:
    """Serialize modules in order. Unnamed text modules are named ``m<index>``."""
    fmt = Format(fmt)
    parts: list[bytes] = []
    for index, module in enumerate(modules):
        if fmt is Format.TEXT:
            parts.append(print_text(replace(module, name=module.name or f"m{index}")))
        else:
            parts.append(encode_smodels(module))
    return b"".join(parts)


def write_directory(
    modules: Iterable[Module], directory: Path, fmt: Format | str = Format.TEXT
) -> list[Path]:
    """Write one ``mod-<index>.lp`` file per module."""
    fmt = Format(fmt)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for index, module in enumerate(modules):
        path = directory / f"mod-{index}.lp"
        data = print_text(module) if fmt is Format.TEXT else encode_smodels(module)
        path.write_bytes(data)
        paths.append(path)
    logger.info(f"Wrote {len(paths)} module files to {directory}")
    return paths


def read_directory(
    directory: Path,
    fmt: Format | str = Format.TEXT,
    symbols: SymbolTable | None = None,
) -> Iterator[Module]:
    """Read ``mod-<index>.lp`` files in index order into one symbol table."""
    symbols = symbols if symbols is not None else SymbolTable()
    files = sorted(
        (int(match.group(1)), path)
        for path in directory.iterdir()
        if (match := MODULE_FILE.match(path.name))
    )
    sources = [(index, path.read_bytes()) for index, path in files]
    if Format(fmt) is Format.TEXT:
        for index, data in sources:
            try:
                _reserve_nameless(_lines(data, Format.TEXT), symbols)
            except ModsmError as e:
                raise StreamError(index, e) from e
    hidden_seen: set[Atom] = set()
    for index, data in sources:
        try:
            yield from stream_modules(data, fmt, symbols, hidden_seen)
        except StreamError as e:
            raise StreamError(index, e.cause) from e
