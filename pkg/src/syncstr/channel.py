"""Budgeted insertion/deletion channel: edit scripts, adversaries, audits.

Scripts act on the evolving string: each operation's position refers to
the string as left by the previous operations. Positions are 1-based.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Sequence, Union

from .align import as_fraction, lcs_length
from .errors import ParameterError
from .rng import SplitMix64, derive_seed


@dataclass(frozen=True)
class Delete:
    pos: int


@dataclass(frozen=True)
class Insert:
    pos: int
    symbol: Any


Op = Union[Delete, Insert]
SymbolSource = Union[int, Callable[[SplitMix64], Any]]


@dataclass(frozen=True)
class Budget:
    """Deletions <= floor(delta_del * n), insertions <= floor(gamma_ins * n)."""

    delta_del: Fraction | float = 0
    gamma_ins: Fraction | float = 0

    def __post_init__(self):
        d, g = as_fraction(self.delta_del), as_fraction(self.gamma_ins)
        if not 0 <= d <= 1 or g < 0:
            raise ParameterError(f"invalid budget ({self.delta_del}, {self.gamma_ins})")

    def counts(self, n: int) -> tuple[int, int]:
        return (
            math.floor(as_fraction(self.delta_del) * n),
            math.floor(as_fraction(self.gamma_ins) * n),
        )


def apply(script: Sequence[Op], x: Sequence) -> tuple[list, list[int | None]]:
    """Run a script; returns y and, per output symbol, its 1-based source
    position in x (None for inserted symbols)."""
    y = list(x)
    origin: list[int | None] = list(range(1, len(x) + 1))
    for op in script:
        if isinstance(op, Delete):
            if not 1 <= op.pos <= len(y):
                raise ParameterError(f"delete position {op.pos} outside 1..{len(y)}")
            del y[op.pos - 1]
            del origin[op.pos - 1]
        elif isinstance(op, Insert):
            if not 1 <= op.pos <= len(y) + 1:
                raise ParameterError(f"insert position {op.pos} outside 1..{len(y) + 1}")
            y.insert(op.pos - 1, op.symbol)
            origin.insert(op.pos - 1, None)
        else:
            raise ParameterError(f"unknown edit operation {op!r}")
    return y, origin


def count_ops(script: Sequence[Op]) -> tuple[int, int]:
    dels = sum(isinstance(op, Delete) for op in script)
    return dels, len(script) - dels


def _symbol_drawer(symbols: SymbolSource) -> Callable[[SplitMix64], Any]:
    if callable(symbols):
        return symbols
    if symbols < 1:
        raise ParameterError("alphabet size must be positive")
    return lambda rng: rng.below(symbols)


def random_adversary(n: int, budget: Budget, seed: int, symbols: SymbolSource = 2) -> list[Op]:
    """Full-budget random script: uniform deletions first, then uniform insertions.

    ``symbols`` is an alphabet size or a callable drawing one symbol from the rng.
    """
    dels, ins = budget.counts(n)
    rng = SplitMix64(derive_seed(seed, "random-adversary"))
    draw = _symbol_drawer(symbols)
    script: list[Op] = []
    length = n
    for _ in range(min(dels, n)):
        script.append(Delete(rng.randint(1, length)))
        length -= 1
    for _ in range(ins):
        script.append(Insert(rng.randint(1, length + 1), draw(rng)))
        length += 1
    return script


def burst_adversary(n: int, budget: Budget, seed: int, symbols: SymbolSource = 2) -> list[Op]:
    """One contiguous run of deletions and one contiguous run of insertions."""
    dels, ins = budget.counts(n)
    dels = min(dels, n)
    rng = SplitMix64(derive_seed(seed, "burst-adversary"))
    draw = _symbol_drawer(symbols)
    start = rng.randint(1, n - dels + 1)
    script: list[Op] = [Delete(start) for _ in range(dels)]
    at = rng.randint(1, n - dels + 1)
    script.extend(Insert(at + t, draw(rng)) for t in range(ins))
    return script


def least_frequent_attack(
    x: Sequence[Hashable],
    q: int | None,
    budget: Budget,
    key: Callable[[Any], Hashable] | None = None,
) -> list[Op]:
    """Delete every occurrence of the d least frequent symbol values, d maximal.

    Values are ordered by (frequency, value); with ``q`` the candidate values
    are 0..q-1 (absent ones cost nothing), otherwise the values present in x.
    ``key`` maps a symbol to the value being counted.
    """
    key = key or (lambda s: s)
    vals = [key(s) for s in x]
    freq = Counter(vals)
    universe = range(q) if q is not None else freq.keys()
    order = sorted(universe, key=lambda v: (freq.get(v, 0), v))
    allowed, _ = budget.counts(len(x))
    doomed = set()
    used = 0
    for v in order:
        c = freq.get(v, 0)
        if used + c > allowed:
            break
        used += c
        doomed.add(v)
    return [Delete(i + 1) for i in range(len(x) - 1, -1, -1) if vals[i] in doomed]


def periodic_insertion_attack(
    x: Sequence, budget: Budget, symbols: tuple = (0, 1)
) -> list[Op]:
    """Insertions pushing x toward the alternation s0 s1 s0 s1 ...

    x is embedded greedily into the alternation starting at s0; each gap
    costs one insertion while the budget lasts, then the tail is padded.
    With gamma = 1 on a binary x the result is exactly (s0 s1)^n.
    """
    _, allowed = budget.counts(len(x))
    s0, s1 = symbols
    script: list[Op] = []
    length = 0  # current output length
    expect = s0
    for sym in x:
        if sym != expect and allowed > 0 and sym in (s0, s1):
            script.append(Insert(length + 1, expect))
            allowed -= 1
            length += 1
            expect = s1 if expect == s0 else s0
        length += 1
        expect = s1 if sym == s0 else s0
    while allowed > 0 and len(x) > 0:
        script.append(Insert(length + 1, expect))
        allowed -= 1
        length += 1
        expect = s1 if expect == s0 else s0
    return script


def verify_budget(x: Sequence, y: Sequence, budget: Budget) -> bool:
    """True iff some script within budget maps x to y."""
    dels, ins = budget.counts(len(x))
    common = lcs_length(x, y)
    return len(x) - common <= dels and len(y) - common <= ins


def split_budget(n: int, delta, seed: int) -> Budget:
    """Random split of a total edit budget floor(delta*n) into deletions and insertions."""
    total = math.floor(as_fraction(delta) * n)
    dels = SplitMix64(derive_seed(seed, "split")).randint(0, total) if n else 0
    if n == 0:
        return Budget(0, 0)
    return Budget(Fraction(dels, n), Fraction(total - dels, n))
