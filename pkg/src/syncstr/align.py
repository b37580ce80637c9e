"""Insertion/deletion alignment primitives.

Edit distance throughout the package counts insertions and deletions only
(a substitution costs 2), so ``ED(a, b) = |a| + |b| - 2 * LCS(a, b)``.
Positions in matchings are 1-based.

Sequences may hold any hashable symbols (ints, characters, tuples of
product components); they are interned to dense integer codes before
reaching the compiled kernels.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

import numpy as np
from numba import njit

from .errors import ParameterError

Pair = tuple[int, int]


def as_fraction(x) -> Fraction:
    """Exact rational view of a parameter; floats go through their repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(repr(float(x)))


def check_eps(eps) -> Fraction:
    e = as_fraction(eps)
    if not 0 < e < 1:
        raise ParameterError(f"eps must lie in (0, 1), got {eps}")
    return e


def intern(*seqs: Sequence[Hashable]) -> list[np.ndarray]:
    """Map the symbols of several sequences to shared dense int64 codes."""
    table: dict = {}
    out = []
    for seq in seqs:
        codes = np.fromiter(
            (table.setdefault(x, len(table)) for x in seq), dtype=np.int64, count=len(seq)
        )
        out.append(codes)
    return out


# ---------------------------------------------------------------- kernels


@njit(cache=True)
def _lcs_pairs(a, b):
    n, m = a.shape[0], b.shape[0]
    t = np.zeros((n + 1, m + 1), np.int32)
    for i in range(1, n + 1):
        ai = a[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                t[i, j] = t[i - 1, j - 1] + 1
            elif t[i - 1, j] >= t[i, j - 1]:
                t[i, j] = t[i - 1, j]
            else:
                t[i, j] = t[i, j - 1]
    size = t[n, m]
    out = np.empty((size, 2), np.int64)
    i, j, p = n, m, size
    while i > 0 and j > 0:
        if a[i - 1] == b[j - 1]:
            p -= 1
            out[p, 0] = i
            out[p, 1] = j
            i -= 1
            j -= 1
        elif t[i - 1, j] >= t[i, j - 1]:
            i -= 1
        else:
            j -= 1
    return out


@njit(cache=True)
def _rsd_max(a, b):
    # LCS table over the reversed strings: cell (x, y) is the LCS of the
    # length-x suffix of a and the length-y suffix of b.
    n, m = a.shape[0], b.shape[0]
    t = np.zeros((n + 1, m + 1), np.int32)
    for x in range(1, n + 1):
        ax = a[n - x]
        for y in range(1, m + 1):
            if ax == b[m - y]:
                t[x, y] = t[x - 1, y - 1] + 1
            elif t[x - 1, y] >= t[x, y - 1]:
                t[x, y] = t[x - 1, y]
            else:
                t[x, y] = t[x, y - 1]
    best_ed, best_k = 0, 1
    for k in range(1, max(n, m) + 1):
        ka = min(k, n)
        kb = min(k, m)
        ed = ka + kb - 2 * t[ka, kb]
        if ed * best_k > best_ed * k:
            best_ed, best_k = ed, k
    return best_ed, best_k


@njit(cache=True)
def _sync_scan(s, num, den, stop_at_first):
    """Scan every triple i < j < k of ``s`` (0-based, half-open intervals).

    For each split ``j`` a seaweed combing of ``s[:j]`` against ``s[j:]``
    yields LCS(s[i:j], s[j:k]) for all i, k at once.  Returns the worst
    ratio 2*LCS/(k-i) as (numerator, denominator) and the first triple with
    2*LCS*den >= num*(k-i), or (-1, -1, -1).
    """
    n = s.shape[0]
    worst_num, worst_den = 0, 1
    fi, fj, fk = -1, -1, -1
    v = np.empty(n, np.int64)
    cnt = np.zeros((n + 1, n + 2), np.int64)
    for j in range(1, n):
        m = j
        nc = n - j
        for c in range(nc):
            v[c] = m + c
        for r in range(m):
            hr = m - 1 - r
            ar = s[r]
            for c in range(nc):
                vc = v[c]
                if ar == s[j + c] or hr > vc:
                    v[c] = hr
                    hr = vc
        for t in range(m + 1):
            for k in range(nc + 2):
                cnt[t, k] = 0
        for c in range(nc):
            lab = v[c]
            if lab >= m:
                k0 = max(c, lab - m) + 1
                t0 = 0
            else:
                k0 = c + 1
                t0 = m - lab
            if k0 <= nc and t0 < m:
                cnt[t0, k0] += 1
        for t in range(m):
            for k in range(1, nc + 1):
                cnt[t, k] += cnt[t, k - 1]
                if t > 0:
                    cnt[t, k] += cnt[t - 1, k] - cnt[t - 1, k - 1]
        for t in range(m):
            for k in range(1, nc + 1):
                lcs2 = 2 * (k - cnt[t, k])
                total = (j - t) + k
                if lcs2 * worst_den > worst_num * total:
                    worst_num, worst_den = lcs2, total
                if fi < 0 and lcs2 * den >= num * total:
                    fi, fj, fk = t, j, j + k
                    if stop_at_first:
                        return worst_num, worst_den, fi, fj, fk
    return worst_num, worst_den, fi, fj, fk


@njit(cache=True)
def _long_distance_scan(s, num, den, min_total, stop_at_first):
    """Worst 2*LCS/l over disjoint substring pairs s[i:j], s[i2:j2], j <= i2,
    that are adjacent or have total length l >= min_total."""
    n = s.shape[0]
    worst_num, worst_den = 0, 1
    found = np.full(4, -1, np.int64)
    row_prev = np.zeros(n + 1, np.int64)
    row = np.zeros(n + 1, np.int64)
    for i in range(n):
        for i2 in range(i + 1, n):
            la = i2 - i
            lb = n - i2
            for y in range(lb + 1):
                row_prev[y] = 0
            for x in range(1, la + 1):
                row[0] = 0
                ax = s[i + x - 1]
                for y in range(1, lb + 1):
                    if ax == s[i2 + y - 1]:
                        row[y] = row_prev[y - 1] + 1
                    elif row_prev[y] >= row[y - 1]:
                        row[y] = row_prev[y]
                    else:
                        row[y] = row[y - 1]
                adjacent = x == la
                for y in range(1, lb + 1):
                    total = x + y
                    if not adjacent and total < min_total:
                        continue
                    lcs2 = 2 * row[y]
                    if lcs2 * worst_den > worst_num * total:
                        worst_num, worst_den = lcs2, total
                    if found[0] < 0 and lcs2 * den >= num * total:
                        found[0] = i
                        found[1] = i + x
                        found[2] = i2
                        found[3] = i2 + y
                        if stop_at_first:
                            return worst_num, worst_den, found
                for y in range(lb + 1):
                    row_prev[y] = row[y]
    return worst_num, worst_den, found


@njit(cache=True)
def _suffix_triples_ok(s, k, num, den):
    """True iff every triple i < j < k ending exactly at ``k`` satisfies
    2*LCS(s[i:j], s[j:k]) * den < num * (k - i)."""
    row_prev = np.zeros(k + 1, np.int64)
    row = np.zeros(k + 1, np.int64)
    for j in range(1, k):
        lb = k - j
        for y in range(lb + 1):
            row_prev[y] = 0
        # rows walk s[:j] backwards, columns walk s[j:k] backwards
        for x in range(1, j + 1):
            ax = s[j - x]
            row[0] = 0
            for y in range(1, lb + 1):
                if ax == s[k - y]:
                    row[y] = row_prev[y - 1] + 1
                elif row_prev[y] >= row[y - 1]:
                    row[y] = row_prev[y]
                else:
                    row[y] = row[y - 1]
            if 2 * row[lb] * den >= num * (x + lb):
                return False
            for y in range(lb + 1):
                row_prev[y] = row[y]
    return True


# ------------------------------------------------------------ operations


def lcs_length(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Length of a longest common subsequence (bit-parallel, Hyyro 2004)."""
    if len(a) < len(b):
        a, b = b, a
    n = len(a)
    if n == 0 or len(b) == 0:
        return 0
    masks: dict = {}
    for i, x in enumerate(a):
        masks[x] = masks.get(x, 0) | (1 << i)
    full = (1 << n) - 1
    v = full
    for y in b:
        u = v & masks.get(y, 0)
        v = ((v + u) | (v - u)) & full
    return n - v.bit_count()


def edit_distance(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Insertion/deletion distance."""
    return len(a) + len(b) - 2 * lcs_length(a, b)


def lcs(a: Sequence[Hashable], b: Sequence[Hashable]) -> list[Pair]:
    """A maximum monotone matching of equal symbols, as 1-based pairs.

    The backtrace takes the diagonal on a match and otherwise drops a
    symbol of ``a`` whenever that keeps the optimum, so the result is a
    deterministic function of the inputs.
    """
    if len(a) == 0 or len(b) == 0:
        return []
    ca, cb = intern(a, b)
    return [(int(i), int(j)) for i, j in _lcs_pairs(ca, cb)]


def rsd(a: Sequence[Hashable], b: Sequence[Hashable]) -> Fraction:
    """Relative suffix distance: max over k of ED(k-suffixes) / 2k.

    A suffix longer than its string is the whole string.
    """
    if len(a) == 0 and len(b) == 0:
        return Fraction(0)
    ca, cb = intern(a, b)
    ed, k = _rsd_max(ca, cb)
    return Fraction(int(ed), 2 * int(k))


def longest_noncrossing_matching(
    edges: Iterable[Pair], n_left: int | None = None, n_right: int | None = None
) -> list[Pair]:
    """Largest subset of edges strictly increasing in both coordinates.

    Edges sorted by (left asc, right desc) reduce the problem to a longest
    strictly increasing subsequence on the right endpoints (Hunt-Szymanski).
    """
    es = sorted(set(edges), key=lambda e: (e[0], -e[1]))
    if n_left is not None or n_right is not None:
        for a, b in es:
            if (n_left is not None and not 1 <= a <= n_left) or (
                n_right is not None and not 1 <= b <= n_right
            ):
                raise ParameterError(f"edge {(a, b)} out of range")
    tails: list[int] = []  # smallest right endpoint ending a chain of each length
    tail_edge: list[int] = []
    parent = [-1] * len(es)
    for idx, (_, b) in enumerate(es):
        pos = bisect_left(tails, b)
        if pos == len(tails):
            tails.append(b)
            tail_edge.append(idx)
        else:
            tails[pos] = b
            tail_edge[pos] = idx
        parent[idx] = tail_edge[pos - 1] if pos > 0 else -1
    out = []
    idx = tail_edge[-1] if tail_edge else -1
    while idx >= 0:
        out.append(es[idx])
        idx = parent[idx]
    out.reverse()
    return out


def self_matching(s: Sequence[Hashable]) -> list[Pair]:
    """Largest monotone matching of ``s`` against itself with no aligned pair."""
    where: dict = {}
    for i, x in enumerate(s, 1):
        where.setdefault(x, []).append(i)
    edges = []
    for i, x in enumerate(s, 1):
        for j in where[x]:
            if j != i:
                edges.append((i, j))
    return longest_noncrossing_matching(edges)


def self_matching_size(s: Sequence[Hashable]) -> int:
    return len(self_matching(s))


def verify_self_matching(s: Sequence[Hashable], eps) -> bool:
    """True iff no non-aligned self-matching of size ceil(|s| * eps) exists."""
    e = check_eps(eps)
    return self_matching_size(s) < math.ceil(len(s) * e)


def sync_violation(s: Sequence[Hashable], eps) -> tuple[int, int, int] | None:
    """First triple (i, j, k), 1-based with half-open intervals [i, j) and
    [j, k), breaking the eps-synchronization inequality, or None.

    Triples are scanned by split j ascending, then i ascending, then k.
    """
    e = check_eps(eps)
    if len(s) < 2:
        return None
    (codes,) = intern(s)
    _, _, i, j, k = _sync_scan(codes, e.numerator, e.denominator, True)
    if i < 0:
        return None
    return int(i) + 1, int(j) + 1, int(k) + 1


def verify_sync(s: Sequence[Hashable], eps) -> bool:
    """ED(S[i,j), S[j,k)) > (1 - eps)(k - i) for every i < j < k."""
    return sync_violation(s, eps) is None


def sync_profile(s: Sequence[Hashable]) -> Fraction:
    """Smallest threshold t such that ``s`` is eps-synchronizing for every eps > t."""
    if len(s) < 2:
        return Fraction(0)
    (codes,) = intern(s)
    num, den, *_ = _sync_scan(codes, 1, 1, False)
    return Fraction(int(num), int(den))


def _min_total(n: int, c) -> int:
    if n < 2:
        return 0
    return math.ceil(as_fraction(c) * Fraction(math.log2(n)))


def long_distance_violation(s: Sequence[Hashable], eps, c):
    """First offending pair of intervals as ((i, j), (i2, j2)), 1-based half-open."""
    e = check_eps(eps)
    if len(s) < 2:
        return None
    (codes,) = intern(s)
    _, _, found = _long_distance_scan(
        codes, e.numerator, e.denominator, _min_total(len(s), c), True
    )
    if found[0] < 0:
        return None
    i, j, i2, j2 = (int(x) + 1 for x in found)
    return (i, j), (i2, j2)


def verify_long_distance(s: Sequence[Hashable], eps, c) -> bool:
    """Check the c-long-distance eps-synchronization property.

    Every pair of disjoint substrings that is adjacent or has total length
    at least c*log2(n) must have ED > (1 - eps) * total length.
    """
    return long_distance_violation(s, eps, c) is None


def long_distance_profile(s: Sequence[Hashable], c) -> Fraction:
    """Smallest t such that ``s`` passes ``verify_long_distance`` for all eps > t."""
    if len(s) < 2:
        return Fraction(0)
    (codes,) = intern(s)
    num, den, _ = _long_distance_scan(codes, 1, 1, _min_total(len(s), c), False)
    return Fraction(int(num), int(den))
