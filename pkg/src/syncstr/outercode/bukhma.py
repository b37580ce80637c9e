"""Bukh-Ma binary codes: square waves (0^r 1^r)* at geometrically spaced periods."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..align import check_eps, as_fraction, lcs_length
from ..errors import ParameterError


def square_wave(r: int, n: int) -> list[int]:
    return [(i // r) % 2 for i in range(n)]


@dataclass(frozen=True)
class BukhMaFamily:
    n: int
    periods: tuple[int, ...]

    def codewords(self) -> list[list[int]]:
        return [square_wave(r, self.n) for r in self.periods]


def bukh_ma_periods(n: int, eps) -> list[int]:
    """ceil(b^k) for b = 1/eps^4 and every k >= 0 with b^k < n, kept if <= n/2."""
    e = check_eps(eps)
    base = 1 / e**4
    if base < 2:
        raise ParameterError("need 1/eps^4 >= 2")
    out: list[int] = []
    power = Fraction(1)
    while power < n:
        r = -(-power.numerator // power.denominator)
        if 2 * r <= n and r not in out:
            out.append(r)
        power *= base
    return out


def bukh_ma_generate(n: int, eps) -> BukhMaFamily:
    if n < 2:
        raise ParameterError("n must be at least 2")
    return BukhMaFamily(n, tuple(bukh_ma_periods(n, eps)))


def bukh_ma_list_decode(y, family: BukhMaFamily, delta, gamma) -> list[list[int]]:
    """Every codeword reachable from ``y`` with <= delta*n deletions and <= gamma*n insertions."""
    d, g = as_fraction(delta), as_fraction(gamma)
    n = family.n
    out = []
    for c in family.codewords():
        common = lcs_length(c, y)
        if n - common <= d * n and len(y) - common <= g * n:
            out.append(c)
    return out
