"""Binary sequence analysis: linear complexity, recurrences, periods, and
binomial coefficients modulo 2.

Sequences are plain sequences of 0/1 ints indexed from 0.
"""

from __future__ import annotations

import re
from collections.abc import Sequence

from .poly import Poly

Bits = Sequence[int]


def parse_bits(text: str) -> list[int]:
    """Read an ASCII '0'/'1' stream; whitespace is ignored."""
    s = re.sub(r"\s+", "", text)
    if not set(s) <= {"0", "1"}:
        bad = sorted(set(s) - {"0", "1"})
        raise ValueError(f"bit stream contains characters other than 0/1: {bad!r}")
    return [int(c) for c in s]


def format_bits(bits: Bits) -> str:
    return "".join("1" if b else "0" for b in bits)


def pack_bits(bits: Bits) -> int:
    """Pack a_0, a_1, ... into an int with a_i at bit i."""
    v = 0
    for i, b in enumerate(bits):
        if b:
            v |= 1 << i
    return v


def berlekamp_massey(s: Bits) -> tuple[int, Poly]:
    """Linear complexity of ``s`` and its characteristic polynomial.

    The polynomial is returned in characteristic form: if it is
    ``X^L + sum_{j<L} q_j X^j`` then ``s[n+L] = sum_j q_j s[n+j]``. The usual
    connection polynomial is ``charpoly.reciprocal(L)``.

    Connection polynomials are kept bit-packed (bit j = coefficient of D^j)
    and the discrepancy is one AND plus a parity count.
    """
    c, b = 1, 1
    lc, m = 0, -1
    window = 0  # bit j holds s[n - j]
    for n, bit in enumerate(s):
        window = (window << 1) | (bit & 1)
        if (c & window).bit_count() & 1:
            t = c
            c ^= b << (n - m)
            if 2 * lc <= n:
                lc, b, m = n + 1 - lc, t, n
    # c may have degree < lc (e.g. 0001 has lc 4, connection poly 1)
    return lc, Poly(c).reciprocal(lc)


def connection_polynomial(charpoly: Poly, lc: int) -> Poly:
    return charpoly.reciprocal(lc)


def satisfies_recurrence(s: Bits, q: Poly) -> bool:
    """True iff sum_j q_j s[n+j] = 0 for every window that fits in ``s``."""
    if not q:
        raise ValueError("the zero polynomial defines no recurrence")
    d = int(q.degree)
    if len(s) < d + 1:
        raise ValueError(f"sequence of length {len(s)} is too short for degree {d}")
    taps = q.exponents()
    return all(sum(s[n + j] for j in taps) % 2 == 0 for n in range(len(s) - d))


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def min_period(s: Bits, bound: int) -> int:
    """Smallest divisor T of ``bound`` with s[n+T] == s[n] across the window.

    ``bound`` must be a known multiple of the period and ``s`` must hold at
    least ``bound`` bits; with fewer than ``2*bound`` bits the answer only
    certifies that no smaller divisor fits the observed window.
    """
    if bound < 1:
        raise ValueError("period bound must be positive")
    if len(s) < bound:
        raise ValueError(f"need at least {bound} bits, got {len(s)}")
    for t in _divisors(bound):
        if all(s[n + t] == s[n] for n in range(len(s) - t)):
            return t
    raise ValueError(f"no divisor of {bound} is a period of the observed window")


def binom_mod2(n: int, i: int) -> int:
    """C(n, i) mod 2 by Lucas: 1 iff every set bit of i is set in n."""
    if n < 0 or i < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return 1 if i & ~n == 0 else 0


def binom_period(i: int) -> int:
    """Period of n -> C(n, i) mod 2: the least power of two exceeding i."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    return 1 if i == 0 else 1 << i.bit_length()


def linear_complexity(s: Bits) -> int:
    return berlekamp_massey(s)[0]


__all__ = [
    "Bits",
    "berlekamp_massey",
    "binom_mod2",
    "binom_period",
    "connection_polynomial",
    "format_bits",
    "linear_complexity",
    "min_period",
    "pack_bits",
    "parse_bits",
    "satisfies_recurrence",
]
