"""LFSRs, the shrinking generator, and clock-controlled shrinking generators.

States are written stage 1 first (stage 1 is the output stage). Internally a
state is packed with stage ``k`` at bit ``k - 1``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

from .field import FieldCtx, FieldElem
from .poly import Poly, poly_is_primitive


class DegenerateGeneratorError(ValueError):
    """A generator register holds the all-zero state."""


class CoprimeLengthError(ValueError):
    """Register lengths of a shrinking generator must be coprime."""


def parse_state(text: str) -> list[int]:
    s = text.strip()
    if not s or not set(s) <= {"0", "1"}:
        raise ValueError(f"state must be a nonempty 0/1 string, got {text!r}")
    return [int(c) for c in s]


class Lfsr:
    """Fibonacci LFSR with characteristic polynomial in the form
    X^L + sum c_i X^(L-i): stage 1 is output, stages shift down, stage L
    receives the feedback.

    Instances are stateful; ``clock`` advances the register.
    """

    def __init__(self, charpoly: Poly, state: Sequence[int] | None = None):
        if not charpoly or charpoly.degree < 1:
            raise ValueError("LFSR characteristic polynomial must have degree >= 1")
        self.charpoly = charpoly
        self.length = int(charpoly.degree)
        if state is None:
            state = [1] * self.length
        if len(state) != self.length:
            raise ValueError(f"state has {len(state)} stages, polynomial degree is {self.length}")
        self._state = sum((b & 1) << k for k, b in enumerate(state))
        self._taps = charpoly.bits & ((1 << self.length) - 1)

    @property
    def state(self) -> list[int]:
        return [(self._state >> k) & 1 for k in range(self.length)]

    @property
    def is_zero(self) -> bool:
        return self._state == 0

    @property
    def output(self) -> int:
        return self._state & 1

    def stage(self, k: int) -> int:
        if not 1 <= k <= self.length:
            raise IndexError(f"stage {k} outside 1..{self.length}")
        return (self._state >> (k - 1)) & 1

    def clock(self) -> int:
        """Emit stage 1 and shift; returns the emitted bit."""
        out = self._state & 1
        fb = (self._state & self._taps).bit_count() & 1
        self._state = (self._state >> 1) | (fb << (self.length - 1))
        return out

    def copy(self) -> Lfsr:
        return Lfsr(self.charpoly, self.state)

    def __repr__(self) -> str:
        return f"Lfsr({self.charpoly}, {''.join(map(str, self.state))})"


def lfsr_bits(r: Lfsr, n: int) -> list[int]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [r.clock() for _ in range(n)]


def pn_trace_eval(ctx: FieldCtx, a: FieldElem, n: int) -> int:
    """n-th bit of the PN-sequence Tr(a * alpha^n)."""
    if not ctx.is_primitive:
        raise ValueError(f"{ctx.modulus} is not primitive")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (a * ctx.alpha ** n).trace()


def _require_primitive(r: Lfsr, name: str) -> None:
    if not poly_is_primitive(r.charpoly):
        raise ValueError(f"{name} polynomial {r.charpoly} is not primitive")


@dataclass
class ShrinkConfig:
    sr1: Lfsr
    sr2: Lfsr

    def __post_init__(self):
        _require_primitive(self.sr1, "SR1")
        _require_primitive(self.sr2, "SR2")
        if math.gcd(self.sr1.length, self.sr2.length) != 1:
            raise CoprimeLengthError(
                f"register lengths {self.sr1.length} and {self.sr2.length} are not coprime"
            )

    @property
    def L1(self) -> int:
        return self.sr1.length

    @property
    def L2(self) -> int:
        return self.sr2.length


def shrink(cfg: ShrinkConfig, n: int) -> list[int]:
    """First ``n`` shrunken bits. Registers in ``cfg`` are left untouched."""
    if cfg.sr1.is_zero or cfg.sr2.is_zero:
        raise DegenerateGeneratorError("shrinking generator register in the zero state")
    sr1, sr2 = cfg.sr1.copy(), cfg.sr2.copy()
    out: list[int] = []
    while len(out) < n:
        a, b = sr1.clock(), sr2.clock()
        if a:
            out.append(b)
    return out


@dataclass
class CcsgConfig:
    """Clock-controlled shrinking generator.

    At each step SR2 is clocked ``df_base + sum_k 2^k * stage(df_stages[k])``
    times, stages read from SR1 before it advances. With ``select`` set, SR2's
    bit is kept only when SR1's output bit is 1, otherwise every step emits.
    """

    sr1: Lfsr
    sr2: Lfsr
    df_stages: list[int] = field(default_factory=list)
    df_base: int = 1
    select: bool = True

    def __post_init__(self):
        if self.df_base < 1:
            raise ValueError("df_base must be >= 1")
        if len(set(self.df_stages)) != len(self.df_stages):
            raise ValueError("df_stages must be distinct")
        for k in self.df_stages:
            if not 1 <= k <= self.sr1.length:
                raise ValueError(f"df stage {k} outside 1..{self.sr1.length}")

    def decimation(self, sr1: Lfsr) -> int:
        return self.df_base + sum(sr1.stage(k) << i for i, k in enumerate(self.df_stages))


def ccsg_generate(cfg: CcsgConfig, n: int) -> list[int]:
    if cfg.sr1.is_zero or cfg.sr2.is_zero:
        raise DegenerateGeneratorError("CCSG register in the zero state")
    sr1, sr2 = cfg.sr1.copy(), cfg.sr2.copy()
    out: list[int] = []
    while len(out) < n:
        clocks = cfg.decimation(sr1)
        if not cfg.select or sr1.output:
            out.append(sr2.output)
        for _ in range(clocks):
            sr2.clock()
        sr1.clock()
    return out
