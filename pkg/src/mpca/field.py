"""Arithmetic in GF(2^L) = GF(2)[X] / (modulus)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .poly import Poly, _clmul, _divmod, poly_is_irreducible, poly_is_primitive


@dataclass(frozen=True)
class FieldCtx:
    """The field GF(2^L) defined by an irreducible modulus of degree L."""

    modulus: Poly

    def __post_init__(self):
        if not self.modulus or self.modulus.degree < 1:
            raise ValueError("field modulus must have degree >= 1")
        if not poly_is_irreducible(self.modulus):
            raise ValueError(f"field modulus {self.modulus} is reducible")

    @property
    def L(self) -> int:
        return int(self.modulus.degree)

    @property
    def order(self) -> int:
        return 1 << self.L

    @cached_property
    def is_primitive(self) -> bool:
        return poly_is_primitive(self.modulus)

    def elem(self, rep: int | Poly) -> FieldElem:
        if isinstance(rep, Poly):
            rep = rep.bits
        return FieldElem(_divmod(rep, self.modulus.bits)[1], self)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(0, self)

    @property
    def one(self) -> FieldElem:
        return FieldElem(1, self)

    @property
    def alpha(self) -> FieldElem:
        """The residue class of X, a root of the modulus."""
        return self.elem(2)

    def elements(self):
        for rep in range(self.order):
            yield FieldElem(rep, self)


@dataclass(frozen=True)
class FieldElem:
    rep: int
    ctx: FieldCtx

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ValueError("elements belong to different fields")
            return other.rep
        if isinstance(other, int):
            return other & 1
        return NotImplemented

    def __add__(self, other) -> FieldElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.rep ^ o, self.ctx)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other) -> FieldElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(_divmod(_clmul(self.rep, o), self.ctx.modulus.bits)[1], self.ctx)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FieldElem:
        if e < 0:
            e %= self.ctx.order - 1
            if self.rep == 0:
                raise ZeroDivisionError("zero has no inverse")
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElem:
        return self ** (self.ctx.order - 2) if self.rep else self ** -1

    def __bool__(self) -> bool:
        return self.rep != 0

    def trace(self) -> int:
        """Absolute trace to GF(2): sum of the L conjugates x^(2^j)."""
        acc = self.ctx.zero
        x = self
        for _ in range(self.ctx.L):
            acc = acc + x
            x = x * x
        if acc.rep not in (0, 1):
            raise ArithmeticError("trace left GF(2); modulus arithmetic is broken")
        return acc.rep

    def conjugates(self) -> list[FieldElem]:
        out = [self]
        for _ in range(self.ctx.L - 1):
            out.append(out[-1] * out[-1])
        return out

    def __repr__(self) -> str:
        return f"FieldElem({self.rep:#x} mod {self.ctx.modulus})"
