"""Indexing-based insertion/deletion codecs.

A message is first encoded by an outer Reed-Solomon code and each codeword
symbol is paired with the matching symbol of an index string. The receiver
uses the index components to guess where every received symbol came from,
rebuilds a word with erasures where guesses collide or are missing, and
hands it to the outer decoder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

import numpy as np
from numba import njit

from .align import _lcs_pairs, as_fraction, check_eps
from .errors import DecodeFailure, ParameterError
from .outercode.gf import GF
from .outercode.listrec import list_recover_bruteforce
from .outercode.rs import ERASURE, RSCode
from .rng import derive_seed
from .syncgen import gen_self_matching, gen_sync, self_matching_alphabet

UNDETERMINED = None


def index(m: Sequence, s: Sequence) -> list[tuple]:
    """Pair message symbols with index symbols."""
    if len(m) != len(s):
        raise ParameterError(f"message length {len(m)} differs from index length {len(s)}")
    return list(zip(m, s))


def _index_codes(s: Sequence[Hashable], stream: Sequence[Hashable]) -> tuple[np.ndarray, np.ndarray]:
    """Codes for s, and for the stream with symbols absent from s mapped to -1."""
    table: dict = {}
    sc = np.fromiter((table.setdefault(x, len(table)) for x in s), dtype=np.int64, count=len(s))
    rc = np.fromiter((table.get(x, -1) for x in stream), dtype=np.int64, count=len(stream))
    return sc, rc


@dataclass
class RepositionTrace:
    guesses: list[int | None]
    rounds: list[list[tuple[int, int]]] = field(default_factory=list)  # (received idx 0-based, position)


def reposition_global_trace(s: Sequence, received: Sequence[tuple], rounds: int) -> RepositionTrace:
    """Repeated LCS matching of the index string against the unmatched
    received index components; every matched symbol takes the position it
    was matched to and leaves the pool."""
    if rounds < 1:
        raise ParameterError("rounds must be at least 1")
    sc, rc = _index_codes(s, [r[1] for r in received])
    guesses: list[int | None] = [UNDETERMINED] * len(received)
    alive = np.arange(len(received))
    trace = RepositionTrace(guesses)
    for _ in range(rounds):
        if alive.size == 0:
            break
        pairs = _lcs_pairs(sc, rc[alive])
        if pairs.shape[0] == 0:
            break
        matched = []
        for i, j in pairs:
            idx = int(alive[j - 1])
            guesses[idx] = int(i)
            matched.append((idx, int(i)))
        trace.rounds.append(matched)
        keep = np.ones(alive.size, dtype=bool)
        keep[pairs[:, 1] - 1] = False
        alive = alive[keep]
    return trace


def reposition_global(s: Sequence, received: Sequence[tuple], rounds: int) -> list[int | None]:
    return reposition_global_trace(s, received, rounds).guesses


def reconstruct(guesses: Sequence[int | None], received: Sequence[tuple], n: int) -> list:
    """Message symbol of the unique claimant of each slot, else ERASURE."""
    claims: list[list] = [[] for _ in range(n)]
    for g, sym in zip(guesses, received):
        if g is not None and 1 <= g <= n:
            claims[g - 1].append(sym[0])
    return [c[0] if len(c) == 1 else ERASURE for c in claims]


def _guard_symbols(word: list, q: int) -> list:
    # inserted junk may carry values outside the field; treat as erasures
    return [x if isinstance(x, int) and 0 <= x < q else ERASURE for x in word]


def _half_errors(word: Sequence[int], codeword: Sequence[int]) -> int:
    return sum(1 if w == ERASURE else 2 * (w != c) for w, c in zip(word, codeword))


@dataclass(frozen=True)
class DecodeReport:
    message: list[int]
    guesses: list[int | None]
    erasures: int
    errors: int


class UniqueCodec:
    """Outer RS code indexed by an eps_S-self-matching string.

    ``eps`` is the gap between the outer code's relative redundancy and the
    tolerated insdel fraction: (n - k)/n = delta + eps/3. The index string
    is eps_S-self-matching with eps_S = (eps/36)^2 unless overridden.
    """

    def __init__(
        self,
        n: int,
        k: int,
        delta,
        field_bits: int = 16,
        seed: int = 0,
        eps_s=None,
        q_idx: int | None = None,
        rounds: int | None = None,
    ):
        self.code = RSCode(n, k, GF(field_bits))
        self.n, self.k = n, k
        self.delta = as_fraction(delta)
        self.eps = 3 * (Fraction(n - k, n) - self.delta)
        if self.eps <= 0:
            raise ParameterError("outer redundancy must exceed delta")
        self.eps_s = as_fraction(eps_s) if eps_s is not None else (self.eps / 36) ** 2
        check_eps(self.eps_s)
        self.q_idx = q_idx or self_matching_alphabet(self.eps_s)
        self.rounds = rounds or math.ceil(1 / math.sqrt(self.eps_s))
        self.seed = seed
        self.index_string = gen_self_matching(n, self.eps_s, derive_seed(seed, "index"), q=self.q_idx)

    @classmethod
    def desk(cls, seed: int = 0) -> "UniqueCodec":
        return cls(200, 120, Fraction(1, 4), 16, seed)

    @property
    def q_msg(self) -> int:
        return self.code.q

    @property
    def rate(self) -> float:
        lf = math.log2(self.code.q)
        return self.k * lf / (self.n * (lf + math.log2(self.q_idx)))

    def encode(self, msg: Sequence[int]) -> list[tuple[int, int]]:
        return index(self.code.encode(msg), self.index_string)

    def decode_report(self, received: Sequence[tuple]) -> DecodeReport:
        guesses = reposition_global(self.index_string, received, self.rounds)
        word = _guard_symbols(reconstruct(guesses, received, self.n), self.code.q)
        result = self.code.decode(word)
        if _half_errors(word, result.codeword) > self.n - self.k:
            raise DecodeFailure("decoded codeword is outside the half-error radius")
        return DecodeReport(result.message, guesses, word.count(ERASURE), result.errors)

    def decode(self, received: Sequence[tuple]) -> list[int]:
        return self.decode_report(received).message


# ---------------------------------------------------------------- lists


def reposition_lists(s: Sequence, received: Sequence[tuple], rounds: int) -> list[list]:
    """Candidate message symbols per position from ``rounds`` LCS passes."""
    trace = reposition_global_trace(s, received, rounds)
    lists: list[list] = [[] for _ in range(len(s))]
    for g, sym in zip(trace.guesses, received):
        if g is not None:
            lists[g - 1].append(sym[0])
    return lists


class ListCodec:
    """RS code with exhaustive list recovery, indexed by a synchronization string.

    eps = 1 - delta - k/n; K = ceil(8(1+gamma)/eps) matching rounds;
    the index is eps_s-synchronizing with eps_s = eps^2 / (64(1+gamma));
    list recovery asks for agreement alpha = 1 - delta - eps/4.
    """

    def __init__(self, n: int, k: int, delta, gamma, field_bits: int = 4, seed: int = 0):
        self.code = RSCode(n, k, GF(field_bits))
        self.n, self.k = n, k
        self.delta, self.gamma = as_fraction(delta), as_fraction(gamma)
        self.eps = 1 - self.delta - Fraction(k, n)
        if self.eps <= 0:
            raise ParameterError("rate leaves no room for the requested deletions")
        self.rounds = math.ceil(8 * (1 + self.gamma) / self.eps)
        self.eps_s = self.eps**2 / (64 * (1 + self.gamma))
        self.alpha = 1 - self.delta - self.eps / 4
        self.index_string = gen_sync(n, self.eps_s, derive_seed(seed, "index"))

    @classmethod
    def desk(cls, seed: int = 0) -> "ListCodec":
        return cls(8, 2, Fraction(1, 5), Fraction(3, 2), 4, seed)

    def encode(self, msg: Sequence[int]) -> list[tuple[int, int]]:
        return index(self.code.encode(msg), self.index_string)

    def decode(self, received: Sequence[tuple]) -> list[list[int]]:
        lists = reposition_lists(self.index_string, received, self.rounds)
        words = list_recover_bruteforce(self.code, lists, self.alpha)
        return [w[: self.k] for w in words]


# --------------------------------------------------------------- online


@njit(cache=True)
def _rsd_bounded(s, i, r, t, buf, best_num, best_den, strict):
    """RSD(s[:i], r[:t]) as (num, den), or (-1, 1) once it provably loses.

    Losing means exceeding best (or reaching it when ``strict``). The LCS
    table of the reversed strings grows one L-shaped layer per suffix length.
    """
    run_num, run_den = 0, 1
    big = max(i, t)
    for k in range(1, big + 1):
        x_lim = min(k, i)
        y_lim = min(k, t)
        # column y = k over rows 1..min(k-1, i), then row x = k over 1..y_lim
        if k <= t:
            by = r[t - k]
            for x in range(1, min(k - 1, i) + 1):
                if s[i - x] == by:
                    buf[x, k] = buf[x - 1, k - 1] + 1
                elif buf[x - 1, k] >= buf[x, k - 1]:
                    buf[x, k] = buf[x - 1, k]
                else:
                    buf[x, k] = buf[x, k - 1]
        if k <= i:
            ax = s[i - k]
            for y in range(1, y_lim + 1):
                if ax == r[t - y]:
                    buf[k, y] = buf[k - 1, y - 1] + 1
                elif buf[k - 1, y] >= buf[k, y - 1]:
                    buf[k, y] = buf[k - 1, y]
                else:
                    buf[k, y] = buf[k, y - 1]
        ed = x_lim + y_lim - 2 * buf[x_lim, y_lim]
        if ed * run_den > run_num * 2 * k:
            run_num, run_den = ed, 2 * k
            if run_num == run_den:  # RSD never exceeds 1
                break
        c = run_num * best_den - best_num * run_den
        if c > 0 or (strict and c == 0):
            return -1, 1
    return run_num, run_den


@njit(cache=True)
def _online_guess(s, r, t, prev, buf):
    n = s.shape[0]
    best_i, best_num, best_den = -1, 1, 0  # +infinity
    start = min(max(prev + 1, 1), n)
    for step in range(2 * n + 2):
        # visit start, start+1, start-1, start+2, start-2, ...
        off = (step + 1) // 2
        i = start + off if step % 2 == 1 else start - off
        if i < 1 or i > n:
            if start + off > n and start - off < 1:
                break
            continue
        if best_i < 0:
            num, den = _rsd_bounded(s, i, r, t, buf, 1, 0, False)
        else:
            num, den = _rsd_bounded(s, i, r, t, buf, best_num, best_den, i > best_i)
        if num < 0:
            continue
        better = best_i < 0 or num * best_den < best_num * den or (
            num * best_den == best_num * den and i < best_i
        )
        if better:
            best_i, best_num, best_den = i, num, den
    return best_i


class OnlineRepositioner:
    """Guesses each arrival's position as argmin_i RSD(s[1..i], arrivals so far).

    Ties go to the smallest i. Decisions are final.
    """

    def __init__(self, s: Sequence[Hashable], capacity: int | None = None):
        self.codes, _ = _index_codes(s, [])
        self._table = {x: int(c) for x, c in zip(s, self.codes)}
        self.n = len(s)
        cap = capacity or 4 * max(self.n, 1)
        self._recv = np.empty(cap, dtype=np.int64)
        self._buf = np.zeros((self.n + 1, cap + 1), dtype=np.int64)
        self.t = 0
        self.prev = 0

    def push(self, idx_symbol: Hashable) -> int:
        if self.t == self._recv.shape[0]:
            grow = self._recv.shape[0] * 2
            recv = np.empty(grow, dtype=np.int64)
            recv[: self.t] = self._recv[: self.t]
            self._recv = recv
            self._buf = np.zeros((self.n + 1, grow + 1), dtype=np.int64)
        self._recv[self.t] = self._table.get(idx_symbol, -1)
        self.t += 1
        guess = int(_online_guess(self.codes, self._recv, self.t, self.prev, self._buf))
        self.prev = guess
        return guess


def reposition_online(s: Sequence[Hashable], stream: Sequence[Hashable]) -> list[int]:
    rep = OnlineRepositioner(s, capacity=max(len(stream), 1))
    return [rep.push(x) for x in stream]
