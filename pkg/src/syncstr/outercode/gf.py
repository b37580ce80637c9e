"""Binary extension fields GF(2^m) via log/antilog tables."""

from __future__ import annotations

import numpy as np
from numba import njit

from ..errors import ParameterError

PRIMITIVE_POLYS = {4: 0x13, 8: 0x11D, 16: 0x1100B}


@njit(cache=True)
def _horner(p, xs, exp, log):
    out = np.zeros(xs.size, dtype=np.int64)
    for t in range(xs.size):
        x = xs[t]
        lx = log[x]
        y = 0
        for c in p:
            if y != 0 and x != 0:
                y = exp[log[y] + lx]
            else:
                y = 0
            y ^= c
        out[t] = y
    return out


@njit(cache=True)
def _poly_mul(p, q, exp, log):
    out = np.zeros(p.size + q.size - 1, dtype=np.int64)
    for j in range(q.size):
        if q[j] == 0:
            continue
        lq = log[q[j]]
        for i in range(p.size):
            if p[i] != 0:
                out[i + j] ^= exp[log[p[i]] + lq]
    return out


class GF:
    """GF(2^m) with generator alpha = x (primitive polynomial per degree).

    Elements are ints in [0, 2^m). Scalar helpers work on Python ints; the
    ``*_vec`` variants accept numpy arrays.
    """

    def __init__(self, m: int = 8):
        if m not in PRIMITIVE_POLYS:
            raise ParameterError(f"unsupported field degree {m}; pick one of {sorted(PRIMITIVE_POLYS)}")
        self.m = m
        self.size = 1 << m
        self.order = self.size - 1
        exp = np.zeros(2 * self.order, dtype=np.int64)
        log = np.zeros(self.size, dtype=np.int64)
        x = 1
        for i in range(self.order):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.size:
                x ^= PRIMITIVE_POLYS[m]
        exp[self.order:] = exp[: self.order]
        self.exp = exp
        self.log = log

    def __repr__(self) -> str:
        return f"GF(2^{self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("GF", self.m))

    @classmethod
    def of_size(cls, q: int) -> "GF":
        m = q.bit_length() - 1
        if q != 1 << m:
            raise ParameterError(f"field size {q} is not a power of two")
        return cls(m)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF")
        if a == 0:
            return 0
        return int(self.exp[(self.log[a] - self.log[b]) % self.order])

    def inv(self, a: int) -> int:
        return self.div(1, a)

    def pow_alpha(self, i: int) -> int:
        return int(self.exp[i % self.order])

    def mul_vec(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[(self.log[a] + self.log[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, out)

    def scale_vec(self, a, c: int):
        a = np.asarray(a, dtype=np.int64)
        if c == 0:
            return np.zeros_like(a)
        out = self.exp[(self.log[a] + self.log[c]) % self.order]
        return np.where(a == 0, 0, out)

    # polynomials are int arrays, highest degree first

    def poly_eval(self, p, x: int) -> int:
        y = 0
        for c in p:
            y = self.mul(y, x) ^ int(c)
        return y

    def poly_eval_many(self, p, xs):
        """Horner evaluation of p at every point of ``xs``."""
        xs = np.asarray(xs, dtype=np.int64)
        return _horner(np.asarray(p, dtype=np.int64), xs, self.exp, self.log)

    def poly_mul(self, p, q):
        return _poly_mul(np.asarray(p, dtype=np.int64), np.asarray(q, dtype=np.int64), self.exp, self.log)
