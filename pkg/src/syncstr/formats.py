"""File formats shared by the CLI.

SSIX binary word: b"SSIX", version byte 0x01, big-endian u32 n, q_msg,
q_idx, then n pairs of big-endian u32 (msg, idx).

Text string: one line of comma-separated decimal symbols; product symbols
join their components with ':' (e.g. "3:1:7").

Edit script: one operation per line, "D <pos>" or "I <pos> <symbol>",
with 1-based positions on the evolving string and symbols in the text
symbol syntax.
"""

from __future__ import annotations

import struct
from typing import Sequence

from .channel import Delete, Insert, Op
from .errors import ParameterError

MAGIC = b"SSIX"
VERSION = 1
_HEADER = struct.Struct(">4sBIII")
_PAIR = struct.Struct(">II")
U32 = 1 << 32


def write_ssix(pairs: Sequence[tuple[int, int]], q_msg: int, q_idx: int) -> bytes:
    for v in (q_msg, q_idx):
        if not 0 <= v < U32:
            raise ParameterError("alphabet size does not fit in u32")
    out = bytearray(_HEADER.pack(MAGIC, VERSION, len(pairs), q_msg, q_idx))
    for m, i in pairs:
        if not (0 <= m < U32 and 0 <= i < U32):
            raise ParameterError(f"symbol pair {(m, i)} does not fit in u32")
        out += _PAIR.pack(m, i)
    return bytes(out)


def read_ssix(data: bytes) -> tuple[list[tuple[int, int]], int, int]:
    if len(data) < _HEADER.size:
        raise ParameterError("truncated SSIX header")
    magic, version, n, q_msg, q_idx = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ParameterError("not an SSIX file")
    if version != VERSION:
        raise ParameterError(f"unsupported SSIX version {version}")
    if len(data) != _HEADER.size + n * _PAIR.size:
        raise ParameterError("SSIX length does not match its header")
    pairs = [_PAIR.unpack_from(data, _HEADER.size + t * _PAIR.size) for t in range(n)]
    return [(int(m), int(i)) for m, i in pairs], q_msg, q_idx


def format_symbol(sym) -> str:
    if isinstance(sym, tuple):
        return ":".join(format_symbol(c) for c in sym)
    return str(int(sym))


def parse_symbol(text: str):
    parts = text.strip().split(":")
    try:
        vals = tuple(int(p) for p in parts)
    except ValueError:
        raise ParameterError(f"bad symbol {text!r}") from None
    if any(v < 0 for v in vals):
        raise ParameterError(f"negative symbol {text!r}")
    return vals[0] if len(vals) == 1 else vals


def format_string(symbols: Sequence) -> str:
    return ",".join(format_symbol(s) for s in symbols) + "\n"


def parse_string(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    return [parse_symbol(tok) for tok in text.split(",")]


def format_script(script: Sequence[Op]) -> str:
    lines = []
    for op in script:
        if isinstance(op, Delete):
            lines.append(f"D {op.pos}")
        else:
            lines.append(f"I {op.pos} {format_symbol(op.symbol)}")
    return "".join(line + "\n" for line in lines)


def parse_script(text: str) -> list[Op]:
    ops: list[Op] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields:
            continue
        try:
            if fields[0] == "D" and len(fields) == 2:
                ops.append(Delete(int(fields[1])))
            elif fields[0] == "I" and len(fields) == 3:
                ops.append(Insert(int(fields[1]), parse_symbol(fields[2])))
            else:
                raise ValueError
        except ValueError:
            raise ParameterError(f"bad script line {lineno}: {line!r}") from None
    return ops
