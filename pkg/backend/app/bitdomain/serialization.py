"""
Binary and JSON forms of truth tables.

Binary layout: 8-byte magic, u32 r, u32 c, then the entries as
little-endian u32. A bare permutation (no sponge parameters) is written
with r = 0 and c = n.
"""
import json
import struct
from pathlib import Path
from typing import Union

import numpy as np

from app.core.errors import ParameterError

from .models import FunctionTable, PermutationTable, SpongeParams

FUNCTION_MAGIC = b"SPFUNC\x00\x01"
PERMUTATION_MAGIC = b"SPPERM\x00\x01"
HEADER = struct.Struct("<8sII")

Table = Union[FunctionTable, PermutationTable]


def to_bytes(table: Table) -> bytes:
    if isinstance(table, FunctionTable):
        header = HEADER.pack(FUNCTION_MAGIC, table.params.r, table.params.c)
        return header + table.table.astype("<u4").tobytes()
    if table.params is not None:
        r, c = table.params.r, table.params.c
    else:
        r, c = 0, table.n
    return HEADER.pack(PERMUTATION_MAGIC, r, c) + table.forward.astype("<u4").tobytes()


def from_bytes(data: bytes) -> Table:
    if len(data) < HEADER.size:
        raise ParameterError("truncated table header")
    magic, r, c = HEADER.unpack_from(data)
    entries = np.frombuffer(data, dtype="<u4", offset=HEADER.size)

    if magic == FUNCTION_MAGIC:
        return FunctionTable(params=SpongeParams(r, c), table=entries)
    if magic == PERMUTATION_MAGIC:
        params = SpongeParams(r, c) if r else None
        return PermutationTable(n=r + c, forward=entries, params=params)
    raise ParameterError(f"unknown table magic {magic!r}")


def save_table(table: Table, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_bytes(to_bytes(table))
    return path


def load_table(path: Union[str, Path]) -> Table:
    return from_bytes(Path(path).read_bytes())


def to_json(table: Table) -> str:
    """Debug form; not meant for large tables."""
    return json.dumps(table.to_dict())
