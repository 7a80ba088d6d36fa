"""Polynomials over GF(2).

A polynomial is stored as a nonnegative integer whose bit ``i`` is the
coefficient of ``X**i``, so ``X^5 + X^2 + 1`` is ``0b100101``. Addition is
XOR and multiplication is carry-less.

The zero polynomial has degree ``NEG_INF`` (negative infinity), which compares
below every finite degree and never takes part in integer arithmetic by
accident.

Two text forms are understood: exponent form (``"x^5+x^2+1"``) and hex form
with an explicit degree (``"0x25@5"``).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce

NEG_INF = -math.inf

#: Largest degree for which ``poly_is_primitive`` will factor ``2**L - 1``.
PRIMITIVE_DEGREE_CAP = 40


def _clmul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _spread(a: int) -> int:
    # squaring in characteristic 2: bit i moves to bit 2i
    r = 0
    i = 0
    while a:
        if a & 1:
            r |= 1 << (2 * i)
        a >>= 1
        i += 1
    return r


@dataclass(frozen=True)
class Poly:
    """Immutable polynomial over GF(2)."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("polynomial bit pattern must be nonnegative")

    @classmethod
    def from_exponents(cls, exponents) -> Poly:
        bits = 0
        for e in exponents:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def from_coeffs(cls, coeffs) -> Poly:
        """Build from coefficients listed by increasing exponent."""
        return cls(sum(1 << i for i, c in enumerate(coeffs) if c & 1))

    @classmethod
    def parse(cls, text: str) -> Poly:
        return parse_poly(text)

    @property
    def degree(self) -> int | float:
        if self.bits == 0:
            return NEG_INF
        return self.bits.bit_length() - 1

    def coeff(self, i: int) -> int:
        return (self.bits >> i) & 1

    def coeffs(self) -> list[int]:
        """Coefficients c_0, c_1, ..., c_deg (empty for the zero polynomial)."""
        return [(self.bits >> i) & 1 for i in range(self.bits.bit_length())]

    def exponents(self) -> list[int]:
        return [i for i in range(self.bits.bit_length()) if self.bits >> i & 1]

    def __bool__(self) -> bool:
        return self.bits != 0

    def __add__(self, other: Poly) -> Poly:
        return Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: Poly) -> Poly:
        return Poly(_clmul(self.bits, other.bits))

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        q, r = _divmod(self.bits, other.bits)
        return Poly(q), Poly(r)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = 1, self.bits
        while e:
            if e & 1:
                result = _clmul(result, base)
            base = _clmul(base, base)
            e >>= 1
        return Poly(result)

    def square(self) -> Poly:
        return Poly(_spread(self.bits))

    def is_square(self) -> bool:
        return all(e % 2 == 0 for e in self.exponents())

    def sqrt(self) -> Poly:
        """Inverse of the Frobenius map; only defined for even-exponent polynomials."""
        if not self.is_square():
            raise ValueError(f"{self} is not a square in GF(2)[X]")
        return Poly.from_exponents(e // 2 for e in self.exponents())

    def derivative(self) -> Poly:
        return Poly.from_exponents(e - 1 for e in self.exponents() if e % 2 == 1)

    def reciprocal(self, degree: int | None = None) -> Poly:
        """X^degree * self(1/X); converts between connection and characteristic form."""
        if degree is None:
            degree = 0 if not self else int(self.degree)
        if self and self.degree > degree:
            raise ValueError("reciprocal degree smaller than polynomial degree")
        return Poly.from_exponents(degree - e for e in self.exponents())

    def __call__(self, x):
        """Evaluate by Horner's rule; ``x`` may be a bit or a field element."""
        acc = x * 0
        for c in reversed(self.coeffs()):
            acc = acc * x + c
        return acc % 2 if isinstance(acc, int) else acc

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def hex(self) -> str:
        return format_poly_hex(self)


ZERO = Poly(0)
ONE = Poly(1)
X = Poly(2)

_TERM = re.compile(r"^(?:(x)(?:\^(\d+))?|(\d+))$")
_HEX = re.compile(r"^0x([0-9a-f]+)@(\d+)$")


def parse_poly(text: str) -> Poly:
    """Parse ``"x^5+x^2+1"`` or ``"0x25@5"`` (case-insensitive)."""
    s = re.sub(r"\s+", "", text).lower()
    if not s:
        raise ValueError("empty polynomial text")
    m = _HEX.match(s)
    if m:
        bits, deg = int(m.group(1), 16), int(m.group(2))
        if bits.bit_length() - 1 != deg:
            raise ValueError(f"hex polynomial {text!r} does not have degree {deg}")
        return Poly(bits)
    bits = 0
    for term in s.split("+"):
        t = _TERM.match(term)
        if t is None:
            raise ValueError(f"malformed polynomial term {term!r} in {text!r}")
        if t.group(1):
            e = int(t.group(2)) if t.group(2) is not None else 1
            bits ^= 1 << e
        else:
            c = int(t.group(3))
            if c not in (0, 1):
                raise ValueError(f"coefficient {c} is not in GF(2)")
            bits ^= c
    return Poly(bits)


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for e in reversed(p.exponents()):
        terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
    return "+".join(terms)


def format_poly_hex(p: Poly) -> str:
    if not p:
        raise ValueError("the zero polynomial has no hex form")
    return f"0x{p.bits:X}@{int(p.degree)}"


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_mod(a: Poly, m: Poly) -> Poly:
    if not m:
        raise ZeroDivisionError("zero modulus")
    return a % m


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; over GF(2) every nonzero polynomial is monic."""
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    x, y = a.bits, b.bits
    while y:
        x, y = y, _divmod(x, y)[1]
    return Poly(x)


def poly_powmod(base: Poly, e: int, m: Poly) -> Poly:
    if not m:
        raise ZeroDivisionError("zero modulus")
    mb = m.bits
    result = _divmod(1, mb)[1]
    b = _divmod(base.bits, mb)[1]
    while e:
        if e & 1:
            result = _divmod(_clmul(result, b), mb)[1]
        b = _divmod(_clmul(b, b), mb)[1]
        e >>= 1
    return Poly(result)


def _x_pow2k_mod(k: int, m: Poly) -> Poly:
    # X^(2^k) mod m by k squarings
    mb = m.bits
    r = _divmod(2, mb)[1]
    for _ in range(k):
        r = _divmod(_spread(r), mb)[1]
    return Poly(r)


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division (desk-scale only)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def poly_is_irreducible(p: Poly) -> bool:
    """Rabin's test: X^(2^L) = X mod p and gcd(X^(2^(L/r)) - X, p) = 1 for primes r | L."""
    if not p or p.degree < 1:
        raise ValueError("irreducibility is undefined for constant polynomials")
    L = int(p.degree)
    if L == 1:
        return True
    if p.coeff(0) == 0:
        return False
    if _x_pow2k_mod(L, p) != X % p:
        return False
    for r in prime_factors(L):
        h = _x_pow2k_mod(L // r, p) + X
        if poly_gcd(h, p) != ONE:
            return False
    return True


def poly_is_primitive(p: Poly, max_degree: int = PRIMITIVE_DEGREE_CAP) -> bool:
    """True iff X has multiplicative order exactly 2^L - 1 modulo the irreducible ``p``."""
    if not poly_is_irreducible(p):
        raise ValueError(f"{p} is reducible; primitivity is only defined for irreducibles")
    L = int(p.degree)
    if L > max_degree:
        raise OverflowError(f"degree {L} exceeds the factorization cap {max_degree}")
    if p.coeff(0) == 0:
        return False  # p = X
    order = (1 << L) - 1
    if poly_powmod(X, order, p) != ONE % p:
        return False
    return all(poly_powmod(X, order // r, p) != ONE % p for r in prime_factors(order))


def poly_power_exponent(m: Poly, base: Poly) -> int | None:
    """Return ``k`` with ``m == base**k``, or None if ``m`` is not such a power."""
    if not base or base.degree < 1 or not m:
        return None
    k = 0
    while m != ONE:
        q, r = divmod(m, base)
        if r:
            return None
        m, k = q, k + 1
    return k


def primitive_polys(degree: int) -> list[Poly]:
    """All primitive polynomials of the given degree in increasing bit order."""
    return [
        p
        for p in (Poly(b) for b in range(1 << degree, 1 << (degree + 1)))
        if poly_is_irreducible(p) and poly_is_primitive(p)
    ]


def product(polys) -> Poly:
    return reduce(lambda a, b: a * b, polys, ONE)
