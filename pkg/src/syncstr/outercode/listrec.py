"""Exhaustive list recovery for small Reed-Solomon codes."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ..align import as_fraction
from ..errors import ParameterError
from .rs import RSCode

MAX_CODEBOOK = 10**6


def codebook(code: RSCode) -> np.ndarray:
    """All q^k codewords, rows ordered by message read as base-q digits."""
    if code.q ** code.k > MAX_CODEBOOK:
        raise ParameterError(f"codebook of size {code.q}^{code.k} is too large for exhaustive search")
    g = code.generator_matrix()
    dtype = np.uint16 if code.q <= 1 << 16 else np.int64
    book = np.zeros((1, code.n), dtype=dtype)
    for i in range(code.k):
        scaled = np.stack([code.gf.scale_vec(g[i], v) for v in range(code.q)]).astype(dtype)
        book = (book[:, None, :] ^ scaled[None, :, :]).reshape(-1, code.n)
    return book


def list_recover_bruteforce(
    code: RSCode, lists: Sequence[Iterable[int]], alpha
) -> list[list[int]]:
    """Codewords whose symbol lies in the position's list in >= ceil(alpha*n) places."""
    a = as_fraction(alpha)
    if not 0 < a <= 1:
        raise ParameterError("alpha must lie in (0, 1]")
    if len(lists) != code.n:
        raise ParameterError(f"need {code.n} lists, got {len(lists)}")
    member = np.zeros((code.n, code.q), dtype=bool)
    for pos, cands in enumerate(lists):
        for x in cands:
            if 0 <= x < code.q:
                member[pos, x] = True
    book = codebook(code)
    agree = member[np.arange(code.n), book].sum(axis=1)
    need = math.ceil(a * code.n)
    return [[int(x) for x in row] for row in book[agree >= need]]
