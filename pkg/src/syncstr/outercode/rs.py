"""Systematic Reed-Solomon codes over GF(2^m) with errors-and-erasures decoding.

Codeword position j carries the coefficient of x^(n-1-j); the first k
positions hold the message. The generator polynomial has roots
alpha^0 .. alpha^(n-k-1), so the minimum distance is n - k + 1 and any
pattern of e errors and s erasures with 2e + s <= n - k is corrected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from ..errors import DecodeFailure, ParameterError
from .gf import GF

ERASURE = -1


@njit(cache=True)
def _gf_mul(a, b, exp, log, order):
    # exp is stored twice over, so log sums need no reduction
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


@njit(cache=True)
def _syndromes(r, pexp, nk, exp, log, order):
    out = np.zeros(nk, dtype=np.int64)
    for j in range(r.size):
        if r[j] == 0:
            continue
        lj, step = log[r[j]], pexp[j]
        acc = lj
        for i in range(nk):
            out[i] ^= exp[acc]
            acc += step
            if acc >= order:
                acc -= order
    return out


@njit(cache=True)
def _berlekamp_massey(syn, gamma, s, nk, exp, log, order):
    """Errata locator (lowest degree first, padded to nk+1) and its register length."""
    lam = np.zeros(nk + 2, dtype=np.int64)
    b = np.zeros(nk + 2, dtype=np.int64)
    lam[: gamma.size] = gamma
    b[: gamma.size] = gamma
    tmp = np.zeros(nk + 2, dtype=np.int64)
    ell = s
    for step in range(s + 1, nk + 1):
        delta = 0
        for i in range(min(step, nk + 1)):
            delta ^= _gf_mul(lam[i], syn[step - 1 - i], exp, log, order)
        # b <- x*b
        for i in range(nk + 1, 0, -1):
            b[i] = b[i - 1]
        b[0] = 0
        if delta == 0:
            continue
        for i in range(nk + 2):
            tmp[i] = lam[i] ^ _gf_mul(b[i], delta, exp, log, order)
        if 2 * ell <= step + s - 1:
            inv = exp[order - log[delta]]
            for i in range(nk + 2):
                b[i] = _gf_mul(lam[i], inv, exp, log, order)
            ell = step + s - ell
        for i in range(nk + 2):
            lam[i] = tmp[i]
    return lam, ell


@dataclass(frozen=True)
class DecodeResult:
    message: list[int]
    codeword: list[int]
    errors: int
    erasures: int


@dataclass(eq=False)
class RSCode:
    n: int
    k: int
    gf: GF = field(default_factory=lambda: GF(8))

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ParameterError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if self.n > self.gf.order:
            raise ParameterError(f"block length {self.n} exceeds {self.gf.order} for {self.gf}")
        gen = np.array([1], dtype=np.int64)
        for i in range(self.n - self.k):
            gen = self.gf.poly_mul(gen, [1, self.gf.pow_alpha(i)])
        self.generator = gen
        # exponent of the locator of each position: X_j = alpha^(n-1-j)
        self._pexp = np.arange(self.n - 1, -1, -1, dtype=np.int64)
        self._gen_matrix = None

    @property
    def q(self) -> int:
        return self.gf.size

    @property
    def distance(self) -> int:
        return self.n - self.k + 1

    def encode(self, msg) -> list[int]:
        msg = np.asarray(msg, dtype=np.int64)
        if msg.shape != (self.k,):
            raise ParameterError(f"message must have {self.k} symbols, got {msg.shape[0] if msg.ndim else 0}")
        if msg.size and (msg.min() < 0 or msg.max() >= self.q):
            raise ParameterError("message symbol outside the field")
        nk = self.n - self.k
        rem = np.zeros(nk, dtype=np.int64)
        gen_tail = self.generator[1:]
        for c in msg:
            coef = int(c) ^ (int(rem[0]) if nk else 0)
            if nk:
                rem[:-1] = rem[1:]
                rem[-1] = 0
                if coef:
                    rem ^= self.gf.scale_vec(gen_tail, coef)
        return [int(x) for x in msg] + [int(x) for x in rem]

    def evaluate(self, coeffs) -> list[int]:
        """Evaluation-form encoding: position j holds f(alpha^j), deg f < k.

        ``coeffs`` lists f from the constant term up. This is a separate MDS
        code with the same n and k (two distinct words agree in fewer than k
        positions); unlike the systematic map it spreads those agreements
        instead of stacking them at the front. ``decode`` does not apply.
        """
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != (self.k,):
            raise ParameterError(f"need {self.k} coefficients")
        points = self.gf.exp[np.arange(self.n) % self.gf.order]
        return [int(x) for x in self.gf.poly_eval_many(coeffs[::-1], points)]

    def generator_matrix(self) -> np.ndarray:
        """Rows are the encodings of the unit messages."""
        if self._gen_matrix is None:
            rows = []
            for i in range(self.k):
                e = [0] * self.k
                e[i] = 1
                rows.append(self.encode(e))
            self._gen_matrix = np.array(rows, dtype=np.int64).reshape(self.k, self.n)
        return self._gen_matrix

    def syndromes(self, word) -> np.ndarray:
        r = np.asarray(word, dtype=np.int64)
        nk = self.n - self.k
        return _syndromes(r, self._pexp, nk, self.gf.exp, self.gf.log, self.gf.order)

    def decode(self, received) -> DecodeResult:
        """Correct errors and erasures (entries equal to ERASURE)."""
        gf = self.gf
        r = np.array(received, dtype=np.int64)
        if r.shape != (self.n,):
            raise ParameterError(f"received word must have {self.n} symbols")
        erased = np.nonzero(r == ERASURE)[0]
        if np.any((r < ERASURE) | (r >= self.q)):
            raise ParameterError("received symbol outside the field")
        nk = self.n - self.k
        s = int(erased.size)
        if s > nk:
            raise DecodeFailure(f"{s} erasures exceed the correction radius {nk}")
        r[erased] = 0
        syn = self.syndromes(r)
        if not syn.any() and s == 0:
            word = [int(x) for x in r]
            return DecodeResult(word[: self.k], word, 0, 0)

        # erasure locator, lowest degree first
        gamma = np.array([1], dtype=np.int64)
        for j in erased:
            gamma = gf.poly_mul(gamma, [1, gf.pow_alpha(int(self._pexp[j]))])
        lam, ell = _berlekamp_massey(syn, gamma, s, nk, gf.exp, gf.log, gf.order)
        lam = np.trim_zeros(lam, "b")
        degree = len(lam) - 1
        if degree != ell or degree > nk:
            raise DecodeFailure("errata locator degree mismatch")

        # Chien search over the n positions: root at X_j^-1
        inv_points = gf.exp[(-self._pexp) % gf.order]
        vals = gf.poly_eval_many(lam[::-1], inv_points)
        where = np.nonzero(vals == 0)[0]
        if where.size != degree:
            raise DecodeFailure("errata locator does not split over the code positions")

        omega = gf.poly_mul(syn, lam)[:nk]
        dlam = lam[1:].copy()
        dlam[1::2] = 0  # derivative in characteristic 2 keeps odd terms
        xinv = inv_points[where]
        num = gf.poly_eval_many(omega[::-1], xinv)
        den = gf.poly_eval_many(dlam[::-1], xinv) if dlam.size else np.zeros_like(xinv)
        if np.any(den == 0):
            raise DecodeFailure("zero derivative in Forney step")
        x = gf.exp[self._pexp[where] % gf.order]
        mags = gf.mul_vec(x, gf.exp[(gf.log[num] - gf.log[den]) % gf.order])
        mags = np.where(num == 0, 0, mags)
        r[where] ^= mags
        if self.syndromes(r).any():
            raise DecodeFailure("residual syndrome after correction")
        errors = int(np.count_nonzero(mags[~np.isin(where, erased)]))
        word = [int(v) for v in r]
        return DecodeResult(word[: self.k], word, errors, s)


def rs_encode(code: RSCode, msg) -> list[int]:
    return code.encode(msg)


def rs_decode_ee(code: RSCode, received) -> list[int]:
    return code.decode(received).message
