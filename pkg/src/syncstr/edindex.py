"""Edit-distance-approximating index strings and fast repositioning.

The index I is a concatenation of N-symbol codewords of a random code
(one codeword per block). To compare S x I against a received string S',
each N-block of S' is list-decoded against the code using only its index
components; edges join identical full symbols between the block and the
sent blocks within ``w`` of any decoded candidate, and the largest
non-crossing matching of those edges is a common subsequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

import numpy as np

from .align import as_fraction, check_eps, longest_noncrossing_matching
from .codec import RepositionTrace, _guard_symbols, _half_errors, index, reconstruct
from .errors import DecodeFailure, ParameterError
from .outercode.gf import GF
from .outercode.rs import RSCode
from .rng import SplitMix64, derive_seed
from .syncgen import gen_sync

NULL = -1  # pads ragged received blocks; never equals an index symbol


def _closest_divisor(n: int, target: int) -> int:
    best = 1
    for d in range(1, n + 1):
        if n % d == 0 and abs(d - target) <= abs(best - target):
            best = d
    return best


@dataclass(eq=False)
class EDIndex:
    n: int
    block: int  # N
    eps_i: Fraction
    q: int
    codewords: np.ndarray  # (blocks, N)
    requested_block: int
    _masks: dict = field(default_factory=dict, repr=False)

    @property
    def blocks(self) -> int:
        return self.n // self.block

    @property
    def window(self) -> int:
        return math.ceil(1 / self.eps_i)

    @property
    def sequence(self) -> list[int]:
        return [int(x) for x in self.codewords.reshape(-1)]

    def __post_init__(self):
        width = self.block + 1  # one separator bit per codeword segment
        masks: dict[int, int] = {}
        for b, word in enumerate(self.codewords):
            base = b * width
            for j, x in enumerate(word):
                masks[int(x)] = masks.get(int(x), 0) | (1 << (base + j))
        self._masks = masks
        seg = (1 << self.block) - 1
        self._full = sum(seg << (b * width) for b in range(self.blocks))

    def block_lcs(self, window: Sequence[int]) -> np.ndarray:
        """LCS of ``window`` with every codeword at once.

        Bit-parallel LCS on all codewords packed side by side; after each
        addition the separator bits swallow carries and are cleared.
        """
        v = self._full
        for y in window:
            m = self._masks.get(y)
            if m is None:
                continue
            u = v & m
            v = ((v + u) | (v ^ u)) & self._full
        width = self.block + 1
        nbytes = (self.blocks * width + 7) // 8
        bits = np.unpackbits(
            np.frombuffer(v.to_bytes(nbytes, "little"), dtype=np.uint8), bitorder="little"
        )[: self.blocks * width].reshape(self.blocks, width)[:, : self.block]
        return self.block - bits.sum(axis=1)

    def list_decode(self, window: Sequence[int]) -> list[int]:
        """Block ids whose codeword turns into ``window`` (padded to N with NULL)
        by at most (1 - eps_i)N deletions and (1 - eps_i)N insertions."""
        w = list(window) + [NULL] * (self.block - len(window))
        common = self.block_lcs(w)
        slack = math.floor((1 - self.eps_i) * self.block)
        ok = (self.block - common <= slack) & (len(w) - common <= slack)
        return [int(b) for b in np.nonzero(ok)[0]]


def build_ed_index(n: int, eps_i, seed: int, c1: int = 4) -> EDIndex:
    e = check_eps(eps_i)
    if n < 1:
        raise ParameterError("n must be positive")
    target = max(math.ceil(c1 * math.log2(n)), 1) if n > 1 else 1
    block = _closest_divisor(n, target)
    q = math.ceil(1 / e**3)
    rng = SplitMix64(derive_seed(seed, "ed-index"))
    words = np.array(rng.symbols(n, q), dtype=np.int64).reshape(n // block, block)
    return EDIndex(n, block, e, q, words, target)


def _isym(x) -> Hashable:
    return x[-1] if isinstance(x, tuple) else x


@dataclass(frozen=True)
class Approximation:
    matching: list[tuple[int, int]]
    estimate: int
    edges: int


def _positions(sxi: Sequence) -> dict:
    where: dict = {}
    for i, x in enumerate(sxi, 1):
        where.setdefault(x, []).append(i)
    return where


def approx_matching(
    idx: EDIndex, sxi: Sequence, s_prime: Sequence, where: dict | None = None
) -> Approximation:
    """Common subsequence of sxi (indexed by ``idx``) and s_prime from the
    block-restricted candidate graph; pairs are 1-based (sent, received).

    ``where`` may carry a precomputed symbol -> positions map of sxi.
    """
    if len(sxi) != idx.n:
        raise ParameterError(f"indexed string has length {len(sxi)}, index has {idx.n}")
    if where is None:
        where = _positions(sxi)
    big_n, w = idx.block, idx.window
    edges = []
    prev: list[int] = []
    for start in range(0, len(s_prime), big_n):
        chunk = s_prime[start : start + big_n]
        cands = idx.list_decode([_isym(x) for x in chunk])
        if len(chunk) < big_n:
            # a ragged tail is too short to clear the list-decoding
            # threshold on its own; it continues the previous block
            cands = sorted(set(cands) | set(prev))
        prev = cands
        if not cands:
            continue
        allowed = set()
        for b in cands:
            allowed.update(range(max(b - w, 0), min(b + w, idx.blocks - 1) + 1))
        for off, x in enumerate(chunk):
            for i in where.get(x, ()):
                if (i - 1) // big_n in allowed:
                    edges.append((i, start + off + 1))
    matching = longest_noncrossing_matching(edges)
    return Approximation(matching, len(sxi) + len(s_prime) - 2 * len(matching), len(edges))


def approx_ed(idx: EDIndex, sxi: Sequence, s_prime: Sequence) -> tuple[list[tuple[int, int]], int]:
    """(matching, estimate) with estimate >= the exact insertion/deletion distance."""
    a = approx_matching(idx, sxi, s_prime)
    return a.matching, a.estimate


def reposition_fast(
    idx: EDIndex, s_combined: Sequence, received: Sequence[tuple], rounds: int
) -> RepositionTrace:
    """Repeated approximate matching of s_combined against the unmatched
    received index components. Each round's matching is monotone, so no
    position collects more than ``rounds`` claims."""
    if rounds < 1:
        raise ParameterError("rounds must be at least 1")
    guesses: list[int | None] = [None] * len(received)
    trace = RepositionTrace(guesses)
    alive = list(range(len(received)))
    where = _positions(s_combined)
    for _ in range(rounds):
        if not alive:
            break
        sub = [received[j][1] for j in alive]
        m = approx_matching(idx, s_combined, sub, where).matching
        if not m:
            break
        matched = []
        taken = set()
        for i, j in m:
            r = alive[j - 1]
            guesses[r] = i
            matched.append((r, i))
            taken.add(j - 1)
        trace.rounds.append(matched)
        alive = [r for t, r in enumerate(alive) if t not in taken]
    return trace


class FastCodec:
    """RS outer code indexed by (synchronization string x edit-distance index).

    With outer redundancy (n - k)/n = delta + eps/2, the index works at
    e = eps/4: eps_I = 2e/9, eps_s = e^2/18 and K = ceil(6/e) rounds.
    """

    def __init__(self, n: int, k: int, delta, field_bits: int = 16, seed: int = 0, c1: int = 4):
        self.code = RSCode(n, k, GF(field_bits))
        self.n, self.k = n, k
        self.delta = as_fraction(delta)
        self.eps = 2 * (Fraction(n - k, n) - self.delta)
        if self.eps <= 0:
            raise ParameterError("outer redundancy must exceed delta")
        e = self.eps / 4
        self.eps_i = 2 * e / 9
        self.eps_s = e**2 / 18
        self.rounds = math.ceil(6 / e)
        self.ed_index = build_ed_index(n, self.eps_i, derive_seed(seed, "ed-index"), c1)
        sync = gen_sync(n, self.eps_s, derive_seed(seed, "sync"))
        self.index_string = list(zip(sync, self.ed_index.sequence))

    def encode(self, msg: Sequence[int]) -> list[tuple]:
        return index(self.code.encode(msg), self.index_string)

    def decode(self, received: Sequence[tuple]) -> list[int]:
        trace = reposition_fast(self.ed_index, self.index_string, received, self.rounds)
        word = _guard_symbols(reconstruct(trace.guesses, received, self.n), self.code.q)
        result = self.code.decode(word)
        if _half_errors(word, result.codeword) > self.n - self.k:
            raise DecodeFailure("decoded codeword is outside the half-error radius")
        return result.message
