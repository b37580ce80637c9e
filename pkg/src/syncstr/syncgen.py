"""Construction of self-matching, synchronization and long-distance strings.

Generators are deterministic functions of their parameters and a 64-bit
seed. Short synchronization strings come from a randomized depth-first
search with an exact incremental check; longer ones are grown with the
squaring boost, which trades a little of the eps budget for length.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .align import (
    _suffix_triples_ok,
    as_fraction,
    check_eps,
    verify_self_matching,
    verify_sync,
)
from .errors import GenerationError, ParameterError
from .outercode.gf import GF
from .outercode.rs import RSCode
from .rng import SplitMix64, derive_seed

BASE_MAX = 128
BOOST_LIMIT = Fraction(99, 100)
DEFAULT_RETRIES = 64


def self_matching_alphabet(eps) -> int:
    e = check_eps(eps)
    return math.ceil(2 * math.e**2 / float(e) ** 2)


def sync_alphabet(eps) -> int:
    e = check_eps(eps)
    return math.ceil(4 / e**2)


def sample_self_matching(n: int, eps, seed: int, attempt: int = 0, q: int | None = None) -> list[int]:
    """One uniform sample over the self-matching alphabet (unverified)."""
    q = q or self_matching_alphabet(eps)
    return SplitMix64(derive_seed(seed, "self-matching", n, attempt)).symbols(n, q)


def gen_self_matching(
    n: int, eps, seed: int, max_attempts: int = DEFAULT_RETRIES, q: int | None = None
) -> list[int]:
    """Sample-and-verify an eps-self-matching string of length n."""
    check_eps(eps)
    if n < 0:
        raise ParameterError("n must be non-negative")
    if n == 0:
        return []
    for attempt in range(max_attempts):
        s = sample_self_matching(n, eps, seed, attempt, q)
        if verify_self_matching(s, eps):
            return s
    raise GenerationError(f"no eps-self-matching string after {max_attempts} attempts", max_attempts)


def _dfs_sync(n: int, e: Fraction, q: int, rng: SplitMix64, budget: int) -> np.ndarray | None:
    s = np.zeros(n, dtype=np.int64)
    orders: list[list[int] | None] = [None] * n
    ptr = [0] * n
    pos = steps = 0
    while 0 <= pos < n and steps < budget:
        if orders[pos] is None:
            order = list(range(q))
            rng.shuffle(order)
            orders[pos] = order
            ptr[pos] = 0
        order = orders[pos]
        placed = False
        while ptr[pos] < q:
            s[pos] = order[ptr[pos]]
            ptr[pos] += 1
            steps += 1
            if _suffix_triples_ok(s, pos + 1, e.numerator, e.denominator):
                placed = True
                break
        if placed:
            pos += 1
        else:
            orders[pos] = None
            pos -= 1
    return s if pos == n else None


def gen_sync_base(n: int, eps, seed: int, max_attempts: int = DEFAULT_RETRIES) -> list[int]:
    """An eps-synchronization string of length n <= 128 over ceil(4/eps^2) symbols.

    When the alphabet is at least n the all-distinct string 0..n-1 is
    returned; it synchronizes for every eps.
    """
    e = check_eps(eps)
    if not 0 <= n <= BASE_MAX:
        raise ParameterError(f"base generator handles 0 <= n <= {BASE_MAX}, got {n}")
    q = sync_alphabet(e)
    if q >= n:
        return list(range(n))
    for attempt in range(max_attempts):
        rng = SplitMix64(derive_seed(seed, "sync-base", n, attempt))
        s = _dfs_sync(n, e, q, rng, budget=200 * n * q)
        if s is not None:
            out = [int(x) for x in s]
            if verify_sync(out, e):
                return out
    raise GenerationError(f"no {eps}-synchronization string of length {n}", max_attempts)


def boost_square(s: Sequence, gamma, eps=None) -> list[tuple]:
    """Length gamma*n^2 string of triples built from an n-symbol string.

    Symbol i (1-based) is (s[i mod n], s[(i + n/2) mod n], s[ceil(i/(gamma n)) - 1]).
    If ``s`` is eps-synchronizing the output is (eps + 6 gamma)-synchronizing.
    """
    n = len(s)
    g = as_fraction(gamma)
    if n == 0 or n % 2:
        raise ParameterError("boosting needs a non-empty string of even length")
    if g <= 0 or (g * n).denominator != 1:
        raise ParameterError("gamma * n must be a positive integer")
    if eps is not None and as_fraction(eps) + 6 * g >= BOOST_LIMIT:
        raise ParameterError(f"eps + 6 gamma = {float(as_fraction(eps) + 6 * g)} is not below 0.99")
    width = int(g * n)
    half = n // 2
    return [
        (s[i % n], s[(i + half) % n], s[-(-i // width) - 1])
        for i in range(1, width * n + 1)
    ]


def pack(symbols: Sequence[tuple], radices: Sequence[int]) -> list[int]:
    """Mixed-radix packing of product symbols into single integers."""
    out = []
    for sym in symbols:
        v = 0
        for c, r in zip(sym, radices):
            v = v * r + c
        out.append(v)
    return out


def unpack(values: Sequence[int], radices: Sequence[int]) -> list[tuple]:
    out = []
    for v in values:
        comps = []
        for r in reversed(radices):
            v, c = divmod(v, r)
            comps.append(c)
        out.append(tuple(reversed(comps)))
    return out


@dataclass(frozen=True)
class BoostPlan:
    """How a long synchronization string is grown from a base string.

    ``divisors`` lists g for each squaring step (gamma = 1/g); the final
    string is eps-synchronizing for eps = base_eps + cost.
    """

    base_length: int
    base_eps: Fraction
    divisors: tuple[int, ...] = field(default=())

    @property
    def cost(self) -> Fraction:
        return sum((Fraction(6, g) for g in self.divisors), Fraction(0))

    @property
    def eps(self) -> Fraction:
        return self.base_eps + self.cost

    @property
    def lengths(self) -> list[int]:
        out = [self.base_length]
        for g in self.divisors:
            out.append(out[-1] ** 2 // g)
        return out


def _cheapest_chain(start: int, n: int) -> tuple[int, ...]:
    """Divisor sequence of least total cost 6*sum(1/g) reaching length >= n."""
    cap = max(4 * n, start)
    heap = [(Fraction(0), start, ())]
    seen: dict[int, Fraction] = {}
    while heap:
        cost, length, chain = heapq.heappop(heap)
        if length >= n:
            return chain
        if seen.get(length, None) is not None and seen[length] <= cost:
            continue
        seen[length] = cost
        for g in range(2, length):
            if length % g == 0:
                nxt = length * length // g
                if nxt <= cap:
                    heapq.heappush(heap, (cost + Fraction(6, g), nxt, chain + (g,)))
    raise ParameterError(f"cannot boost from length {start} to {n}")


def boost_plan(n: int, eps=None, base_eps=None) -> BoostPlan:
    """Plan for a length-n string.

    With ``eps`` the base target is chosen so the final string is
    eps-synchronizing; with ``base_eps`` the base is fixed and the achieved
    eps is whatever the chain adds.
    """
    if n <= BASE_MAX:
        b = check_eps(base_eps if base_eps is not None else eps)
        return BoostPlan(n, b)
    chain = _cheapest_chain(BASE_MAX, n)
    cost = sum((Fraction(6, g) for g in chain), Fraction(0))
    if base_eps is not None:
        b = check_eps(base_eps)
    else:
        b = check_eps(eps) - cost
        if b <= 0:
            raise ParameterError(f"eps={eps} is too small: boosting to {n} costs {float(cost):.4f}")
    plan = BoostPlan(BASE_MAX, b, chain)
    if plan.eps >= BOOST_LIMIT:
        raise ParameterError(f"boosted eps {float(plan.eps):.4f} is not below 0.99")
    return plan


def build_from_plan(plan: BoostPlan, seed: int) -> tuple[list[int], int]:
    """Run a plan; returns the packed symbols and their alphabet size."""
    s = gen_sync_base(plan.base_length, plan.base_eps, derive_seed(seed, "base"))
    q = max(min(sync_alphabet(plan.base_eps), plan.base_length), 1)
    eps = plan.base_eps
    for g in plan.divisors:
        s = pack(boost_square(s, Fraction(1, g), eps), (q, q, q))
        q = q**3
        eps += Fraction(6, g)
    return s, q


def gen_sync(n: int, eps, seed: int) -> list[int]:
    """An eps-synchronization string of any length n."""
    if n < 0:
        raise ParameterError("n must be non-negative")
    if sync_alphabet(eps) >= n:
        return list(range(n))
    plan = boost_plan(n, eps=eps)
    s, _ = build_from_plan(plan, seed)
    return s[:n]


# --------------------------------------------------------- long distance


@dataclass(frozen=True)
class LongDistanceLayout:
    n: int
    eps: Fraction
    block: int  # N
    k: int  # inner RS dimension
    blocks: int
    period: int  # l, length of the small sync string

    @property
    def counter_modulus(self) -> int:
        return math.ceil(8 / self.eps**3)


def long_distance_layout(n: int, eps, c0: int = 4) -> LongDistanceLayout:
    e = check_eps(eps)
    if n < 2:
        raise ParameterError("n must be at least 2")
    big_n = max(math.ceil(c0 * math.log2(n)), 8)
    if n < big_n:
        raise ParameterError(f"n={n} is shorter than one block ({big_n})")
    if big_n > 255:
        raise ParameterError("block length exceeds GF(256) code length")
    blocks = -(-n // big_n)
    k = math.floor(e * big_n / 2) + 1
    while 256**k < blocks:
        k += 1
    if k > big_n:
        raise ParameterError("inner code dimension exceeds block length")
    period = max(2 * math.ceil(math.log2(n)), 2)
    return LongDistanceLayout(n, e, big_n, k, blocks, period)


def block_coefficients(b: int, k: int) -> list[int]:
    """Base-256 digits of b as polynomial coefficients, constant term first.

    The lowest digit lands on the top-degree coefficient so consecutive block
    numbers never map to constant words.
    """
    out = []
    for _ in range(k):
        b, d = divmod(b, 256)
        out.append(d)
    return out[::-1]


def build_long_distance(n: int, eps, seed: int, c0: int = 4) -> list[tuple]:
    """Symbols (C_b[j], M[j], s'[i mod l], s'[(i + l//2) mod l]), i = b*N + j.

    C_b is the evaluation-form RS codeword of block number b, M an eps/4-self-matching
    string indexing codeword positions, s' a short eps-synchronization
    string repeated with a half-period shift.
    """
    lay = long_distance_layout(n, eps, c0)
    code = RSCode(lay.block, lay.k, GF(8))
    marks = gen_self_matching(lay.block, lay.eps / 4, derive_seed(seed, "inner-index"))
    small = gen_sync_base(lay.period, lay.eps, derive_seed(seed, "period"))
    half = lay.period // 2
    out: list[tuple] = []
    for b in range(lay.blocks):
        word = code.evaluate(block_coefficients(b, lay.k))
        for j in range(lay.block):
            i = len(out)
            if i == n:
                break
            out.append((word[j], marks[j], small[i % lay.period], small[(i + half) % lay.period]))
    return out


def build_local_index(n: int, eps, seed: int, c0: int = 4) -> list[tuple]:
    """Long-distance symbols extended with a block counter mod ceil(8/eps^3)."""
    lay = long_distance_layout(n, eps, c0)
    base = build_long_distance(n, eps, seed, c0)
    mod = lay.counter_modulus
    return [sym + ((i // lay.block) % mod,) for i, sym in enumerate(base)]


# ------------------------------------------------------------- infinite

INFINITE_K = 4


def infinite_piece_plan(m: int, eps) -> BoostPlan:
    """Each piece targets eps/2; pieces longer than the base get boosted on top."""
    return boost_plan(m, base_eps=check_eps(eps) / 2)


def _piece(m: int, eps, seed: int) -> list[int]:
    s, _ = build_from_plan(infinite_piece_plan(m, eps), derive_seed(seed, "piece", m))
    return s[:m]


def infinite_prefix(n: int, eps, seed: int) -> list[tuple[int, int]]:
    """First n symbols of T[i] = (U[i], V[i]).

    U concatenates pieces of lengths k, k^3, k^5, ... and V pieces of
    lengths k^2, k^4, ...; each piece depends only on (seed, its length),
    so shorter prefixes are prefixes of longer ones.
    """
    check_eps(eps)
    if n < 0:
        raise ParameterError("n must be non-negative")
    streams = []
    for first in (INFINITE_K, INFINITE_K**2):
        stream: list[int] = []
        m = first
        while len(stream) < n:
            stream.extend(_piece(m, eps, seed))
            m *= INFINITE_K**2
        streams.append(stream)
    u, v = streams
    return [(u[i], v[i]) for i in range(n)]
