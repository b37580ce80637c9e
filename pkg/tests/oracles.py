"""Slow reference implementations used as independent test oracles.

Nothing here imports the package; each oracle is the textbook definition.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def lcs_table(a, b):
    t = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                t[i][j] = t[i - 1][j - 1] + 1
            else:
                t[i][j] = max(t[i - 1][j], t[i][j - 1])
    return t


def lcs_len(a, b) -> int:
    return lcs_table(a, b)[len(a)][len(b)]


def insdel_distance(a, b) -> int:
    """Direct recursion on insertions and deletions (no LCS shortcut)."""
    d = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a) + 1):
        for j in range(len(b) + 1):
            if i == 0 or j == 0:
                d[i][j] = i + j
            elif a[i - 1] == b[j - 1]:
                d[i][j] = d[i - 1][j - 1]
            else:
                d[i][j] = 1 + min(d[i - 1][j], d[i][j - 1])
    return d[len(a)][len(b)]


def rsd(a, b) -> Fraction:
    if not a and not b:
        return Fraction(0)
    best = Fraction(0)
    for k in range(1, max(len(a), len(b)) + 1):
        sa = a[len(a) - min(k, len(a)) :]
        sb = b[len(b) - min(k, len(b)) :]
        best = max(best, Fraction(insdel_distance(sa, sb), 2 * k))
    return best


def is_monotone(pairs) -> bool:
    return all(p[0] < q[0] and p[1] < q[1] for p, q in zip(pairs, pairs[1:]))


def max_noncrossing_exhaustive(edges) -> int:
    edges = sorted(set(edges))
    for size in range(len(edges), 0, -1):
        for sub in itertools.combinations(edges, size):
            if is_monotone(list(sub)):
                return size
    return 0


def max_noncrossing_search(edges) -> int:
    """Visit every non-crossing subset (include/exclude each edge in order)."""
    edges = sorted(set(edges))
    best = 0

    def walk(k, last, size):
        nonlocal best
        best = max(best, size)
        for t in range(k, len(edges)):
            a, b = edges[t]
            if last is None or (a > last[0] and b > last[1]):
                walk(t + 1, (a, b), size + 1)

    walk(0, None, 0)
    return best


def self_matching_exhaustive(s) -> int:
    """Largest monotone self-matching with a_i != b_i, by subset search."""
    edges = [(i, j) for i in range(len(s)) for j in range(len(s)) if i != j and s[i] == s[j]]
    return max_noncrossing_exhaustive(edges)


def self_matching_dp(s) -> int:
    """LCS of s with itself where the diagonal pairs are forbidden."""
    n = len(s)
    t = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            t[i][j] = max(t[i - 1][j], t[i][j - 1])
            if i != j and s[i - 1] == s[j - 1]:
                t[i][j] = max(t[i][j], t[i - 1][j - 1] + 1)
    return t[n][n]


def sync_violations(s, eps: Fraction):
    """All triples (1-based, half-open) with ED(S[i,j), S[j,k)) <= (1-eps)(k-i)."""
    n = len(s)
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 2):
                if insdel_distance(s[i - 1 : j - 1], s[j - 1 : k - 1]) <= (1 - eps) * (k - i):
                    out.append((i, j, k))
    return out


def long_distance_ok(s, eps: Fraction, c) -> bool:
    n = len(s)
    need = math.ceil(Fraction(c) * Fraction(math.log2(n))) if n >= 2 else 0
    subs = [(i, j) for i in range(n) for j in range(i + 1, n + 1)]
    for (i, j), (i2, j2) in itertools.product(subs, subs):
        if j > i2:  # disjoint, first before second
            continue
        total = (j - i) + (j2 - i2)
        if j != i2 and total < need:
            continue
        if insdel_distance(s[i:j], s[i2:j2]) <= (1 - eps) * total:
            return False
    return True


def apply_script(ops, x):
    """ops: list of ("D", pos) / ("I", pos, sym), applied one at a time."""
    y = list(x)
    for op in ops:
        if op[0] == "D":
            y = y[: op[1] - 1] + y[op[1] :]
        else:
            y = y[: op[1] - 1] + [op[2]] + y[op[1] - 1 :]
    return y


def gf_mul(a: int, b: int, poly: int, m: int) -> int:
    """Carry-less multiply then reduce, bit by bit."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return r


def list_recover_double_loop(n, k, q, encode, lists, alpha):
    need = math.ceil(Fraction(alpha) * n)
    out = []
    for msg in itertools.product(range(q), repeat=k):
        word = encode(list(msg))
        if sum(1 for pos in range(n) if word[pos] in lists[pos]) >= need:
            out.append(word)
    return out
