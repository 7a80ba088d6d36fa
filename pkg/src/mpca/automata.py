"""Null-boundary hybrid 90/150 cellular automata and their multiplicative-
polynomial (MPCA) constructions.

Rule vectors and states are bit vectors with cell 1 as the most significant
bit of the packed value, so ``"8C031@20"`` reads cell by cell as
``1000 1100 0000 0011 0001``. A rule bit of 1 means rule 150 (cell includes
its own old value), 0 means rule 90.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .field import FieldCtx, FieldElem
from .linalg import BitMatrix, InconsistentSystemError, solve_linear
from .poly import ONE, X, Poly, poly_is_irreducible
from .registers import pn_trace_eval
from .sequences import binom_mod2, binom_period

#: Largest automaton handled by ``enumerate_cycles`` unless overridden.
ENUMERATION_BOUND = 24
#: Largest degree handled by ``synthesize_ca`` unless overridden.
SYNTHESIS_BOUND = 20


class EmbeddingError(ValueError):
    """A sequence cannot be produced at the requested cell of an automaton."""


_HEX_FORM = re.compile(r"^(?:0x)?([0-9a-fA-F]+)@(\d+)$")


@dataclass(frozen=True)
class BitVector:
    value: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("length must be >= 1")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(f"value {self.value:#x} exceeds {self.length} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]):
        v = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"cell value {b!r} is not a bit")
            v = (v << 1) | b
        return cls(v, len(bits))

    @classmethod
    def from_hex(cls, text: str, length: int):
        digits = text.strip()
        if digits.lower().startswith("0x"):
            digits = digits[2:]
        if 4 * len(digits) < length:
            raise ValueError(f"{len(digits)} hex digits cannot carry {length} cells")
        return cls(int(digits, 16), length)

    @classmethod
    def parse(cls, text: str):
        """Binary string, ``HEX@len``, or a word list such as ``"150 90 90"``."""
        s = text.strip()
        m = _HEX_FORM.match(s)
        if m:
            return cls.from_hex(m.group(1), int(m.group(2)))
        words = s.replace(",", " ").split()
        if len(words) > 1 or (words and words[0] in ("90", "150")):
            rules = {"90": 0, "150": 1}
            try:
                return cls.from_bits([rules[w] for w in words])
            except KeyError as exc:
                raise ValueError(f"unknown rule word {exc.args[0]!r}") from None
        if s and set(s) <= {"0", "1"}:
            return cls.from_bits([int(c) for c in s])
        raise ValueError(f"cannot parse cell vector {text!r}")

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.length - 1 - i)) & 1 for i in range(self.length))

    def __len__(self) -> int:
        return self.length

    def cell(self, k: int) -> int:
        """Value of cell ``k`` (1-based)."""
        if not 1 <= k <= self.length:
            raise IndexError(f"cell {k} outside 1..{self.length}")
        return (self.value >> (self.length - k)) & 1

    def reversed(self):
        return type(self).from_bits(self.bits[::-1])

    def weight(self) -> int:
        return self.value.bit_count()

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b")

    def hex(self) -> str:
        return f"{self.value:0{(self.length + 3) // 4}X}@{self.length}"

    def words(self) -> str:
        return " ".join("150" if b else "90" for b in self.bits)


class RuleVector(BitVector):
    """90/150 descriptor d_1..d_len."""


class CaState(BitVector):
    """Cell contents at one instant."""


def rule_hex_codec(text: str, length: int) -> RuleVector:
    return RuleVector.from_hex(text, length)


def _step(v: int, d: int, mask: int) -> int:
    return ((v << 1) & mask) ^ (v >> 1) ^ (v & d)


def ca_step(d: RuleVector, s: CaState) -> CaState:
    if d.length != s.length:
        raise ValueError(f"state has {s.length} cells, automaton has {d.length}")
    return CaState(_step(s.value, d.value, (1 << d.length) - 1), d.length)


def evolve(d: RuleVector, s0: CaState, steps: int) -> list[CaState]:
    """States at times 0 .. steps-1."""
    if d.length != s0.length:
        raise ValueError(f"state has {s0.length} cells, automaton has {d.length}")
    mask = (1 << d.length) - 1
    out, v = [], s0.value
    for _ in range(steps):
        out.append(CaState(v, d.length))
        v = _step(v, d.value, mask)
    return out


def cell_sequence(d: RuleVector, s0: CaState, cell: int, n: int) -> list[int]:
    """Bits seen at ``cell`` (1-based) at times 0 .. n-1."""
    if d.length != s0.length:
        raise ValueError(f"state has {s0.length} cells, automaton has {d.length}")
    if not 1 <= cell <= d.length:
        raise IndexError(f"cell {cell} outside 1..{d.length}")
    shift = d.length - cell
    mask = (1 << d.length) - 1
    out, v = [], s0.value
    for _ in range(n):
        out.append((v >> shift) & 1)
        v = _step(v, d.value, mask)
    return out


def delta_polys(d: RuleVector) -> list[Poly]:
    """Characteristic polynomials Delta_0 .. Delta_len of the prefixes of ``d``."""
    prev, cur = Poly(0), ONE
    out = [cur]
    for dk in d.bits:
        prev, cur = cur, (X + Poly(dk)) * cur + prev
        out.append(cur)
    return out


def ca_char_poly(d: RuleVector) -> Poly:
    return delta_polys(d)[-1]


def _continued_fraction_rules(q: Poly, r: Poly) -> list[int] | None:
    # Read d_L, d_{L-1}, ... off Delta_k = (X + d_k) Delta_{k-1} + Delta_{k-2},
    # starting from Delta_L = q, Delta_{L-1} = r.
    rules = []
    a, b = q, r
    while True:
        quo, rem = divmod(a, b)
        if quo.bits not in (0b10, 0b11):
            return None
        rules.append(quo.bits & 1)
        if b == ONE:
            return rules[::-1] if not rem else None
        if rem.degree != b.degree - 1:
            return None
        a, b = b, rem


def synthesize_ca(q: Poly, max_degree: int = SYNTHESIS_BOUND) -> tuple[RuleVector, RuleVector]:
    """A pair of mutually reversed 90/150 rule vectors with characteristic polynomial ``q``.

    Candidates for Delta_{L-1} are tried from the largest down; each one is
    accepted only if Euclid's algorithm on (q, candidate) yields quotients
    X or X+1 all the way to Delta_0 = 1, which prunes most candidates after
    one or two divisions. The first hit is returned first, its reversal
    second. The result is rechecked with ``ca_char_poly``.
    """
    if not q or q.degree < 1:
        raise ValueError("synthesis needs a polynomial of degree >= 1")
    if not poly_is_irreducible(q):
        raise ValueError(f"{q} is reducible; synthesis needs an irreducible polynomial")
    L = int(q.degree)
    if L > max_degree:
        raise ValueError(f"degree {L} exceeds the synthesis bound {max_degree}")
    if L == 1:
        d = RuleVector(q.bits & 1, 1)
        return d, d
    for cand in range((1 << L) - 1, (1 << (L - 1)) - 1, -1):
        rules = _continued_fraction_rules(q, Poly(cand))
        if rules is not None:
            d = RuleVector.from_bits(rules)
            pair = (d, d.reversed())
            for v in pair:
                if ca_char_poly(v) != q:
                    raise ArithmeticError(f"synthesized {v} does not have polynomial {q}")
            return pair
    raise RuntimeError(f"no 90/150 automaton found for {q}")


def concat_double(d: RuleVector) -> RuleVector:
    """(d_1..d_{L-1}, ~d_L, ~d_L, d_{L-1}..d_1): squares the characteristic polynomial."""
    head = d.bits[:-1]
    flip = 1 - d.bits[-1]
    return RuleVector.from_bits(head + (flip, flip) + head[::-1])


def build_mpca(p_basic: Poly, p: int) -> tuple[RuleVector, RuleVector]:
    """Both synthesized automata for ``p_basic`` doubled ceil(log2 p) times."""
    if p < 1:
        raise ValueError("p must be >= 1")
    doublings = (p - 1).bit_length()
    pair = synthesize_ca(p_basic)
    out = []
    for d in pair:
        for _ in range(doublings):
            d = concat_double(d)
        out.append(d)
    return out[0], out[1]


@dataclass(frozen=True)
class SolutionCoeffs:
    """Coefficients A_0 .. A_{p-1} of a solution sum_i C(n,i) Tr(A_i alpha^n)."""

    ctx: FieldCtx
    a: tuple[FieldElem, ...]

    def __post_init__(self):
        if not self.a:
            raise ValueError("need at least one coefficient")
        if any(x.ctx != self.ctx for x in self.a):
            raise ValueError("coefficients must live in the given field")

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def nonzero_flags(self) -> list[bool]:
        return [bool(x) for x in self.a]


def solution_eval(c: SolutionCoeffs, n: int) -> int:
    bit = 0
    for i, ai in enumerate(c.a):
        if ai and binom_mod2(n, i):
            bit ^= pn_trace_eval(c.ctx, ai, n)
    return bit


def solution_stream(c: SolutionCoeffs, n: int) -> list[int]:
    """solution_eval for times 0 .. n-1, sharing the powers of alpha."""
    if not c.ctx.is_primitive:
        raise ValueError(f"{c.ctx.modulus} is not primitive")
    alpha = c.ctx.alpha
    terms = list(c.a)
    out = []
    for t in range(n):
        bit = 0
        for i, ai in enumerate(terms):
            if ai and binom_mod2(t, i):
                bit ^= ai.trace()
        out.append(bit)
        terms = [ai * alpha for ai in terms]
    return out


def _highest_flag(flags: Sequence[bool]) -> int:
    idx = [i for i, f in enumerate(flags) if f]
    if not idx:
        raise ValueError("all coefficients are zero: the null sequence has no PN period")
    return idx[-1]


def predict_period(nonzero_flags: Sequence[bool], L: int) -> int:
    i_max = _highest_flag(nonzero_flags)
    return max(binom_period(i) for i in range(i_max + 1) if nonzero_flags[i]) * ((1 << L) - 1)


def predict_lc(nonzero_flags: Sequence[bool], L: int) -> int:
    return (_highest_flag(nonzero_flags) + 1) * L


def predict_counts(L: int, p: int) -> tuple[list[int], int]:
    """Distinct nonzero sequences per class i: 2^(iL) / p_i, and their sum."""
    if L < 1 or p < 1:
        raise ValueError("L and p must be >= 1")
    per = [(1 << (i * L)) // binom_period(i) for i in range(p)]
    return per, sum(per)


class StateClass(str, enum.Enum):
    ZERO = "zero"
    DOUBLY_SYMMETRIC = "doubly_symmetric"
    PALINDROMIC = "palindromic"
    REPETITIVE = "repetitive"
    GENERIC = "generic"


_CLASS_ORDER = list(StateClass)


def classify_state(s: BitVector) -> StateClass:
    if s.value == 0:
        return StateClass.ZERO
    bits = s.bits
    pal = bits == bits[::-1]
    half = s.length // 2
    rep = s.length % 2 == 0 and bits[:half] == bits[half:]
    if pal and rep:
        return StateClass.DOUBLY_SYMMETRIC
    if pal:
        return StateClass.PALINDROMIC
    if rep:
        return StateClass.REPETITIVE
    return StateClass.GENERIC


@dataclass(frozen=True)
class CycleSummary:
    """Cycles of one length whose dominant state class is ``state_class``.

    ``representative`` is the smallest state among those cycles and
    ``states_by_class`` counts every state in them by its own class.
    """

    cycle_length: int
    state_class: StateClass
    representative: CaState
    count_of_cycles: int
    states_by_class: dict[str, int] = field(default_factory=dict)

    @property
    def states(self) -> int:
        return self.cycle_length * self.count_of_cycles


def _take(a: np.ndarray, idx: np.ndarray, jobs: int) -> np.ndarray:
    if jobs <= 1 or len(idx) < 1 << 16:
        return a[idx]
    out = np.empty_like(a)
    bounds = np.linspace(0, len(idx), jobs + 1, dtype=np.int64)

    def work(k):
        lo, hi = bounds[k], bounds[k + 1]
        np.take(a, idx[lo:hi], out=out[lo:hi])

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        list(pool.map(work, range(jobs)))
    return out


def _class_codes(states: np.ndarray, n: int) -> np.ndarray:
    rev = np.zeros_like(states)
    for k in range(n):
        rev |= ((states >> k) & 1) << (n - 1 - k)
    pal = rev == states
    if n % 2 == 0:
        h = n // 2
        rep = (states >> h) == (states & ((1 << h) - 1))
    else:
        rep = np.zeros(len(states), dtype=bool)
    codes = np.full(len(states), _CLASS_ORDER.index(StateClass.GENERIC), dtype=np.int8)
    codes[rep] = _CLASS_ORDER.index(StateClass.REPETITIVE)
    codes[pal] = _CLASS_ORDER.index(StateClass.PALINDROMIC)
    codes[pal & rep] = _CLASS_ORDER.index(StateClass.DOUBLY_SYMMETRIC)
    codes[states == 0] = _CLASS_ORDER.index(StateClass.ZERO)
    return codes


@dataclass(frozen=True)
class _CycleTable:
    labels: np.ndarray  # cycle minimum per cyclic state
    cyclic: np.ndarray  # bool mask of states lying on a cycle
    codes: np.ndarray  # class code per state


def _cycle_table(d: RuleVector, bound: int, jobs: int) -> _CycleTable:
    n = d.length
    if n > bound:
        raise ValueError(f"{n} cells exceeds the enumeration bound {bound}")
    size = 1 << n
    states = np.arange(size, dtype=np.uint32)
    nxt = ((states << 1) & np.uint32(size - 1)) ^ (states >> 1) ^ (states & np.uint32(d.value))
    # After n doublings: jump = f^(2^n), labels = min over the next 2^n - 1 states,
    # which covers every cycle since no cycle is longer than 2^n.
    labels = states.copy()
    jump = nxt
    for _ in range(n):
        labels = np.minimum(labels, _take(labels, jump, jobs))
        jump = _take(jump, jump, jobs)
    cyclic = np.zeros(size, dtype=bool)
    cyclic[jump] = True
    return _CycleTable(labels, cyclic, _class_codes(states, n))


def enumerate_cycles(
    d: RuleVector, bound: int = ENUMERATION_BOUND, jobs: int = 1
) -> list[CycleSummary]:
    """Census of the cycles of ``d``, grouped by (length, dominant state class).

    Summaries are ordered by cycle length, then class. States that never
    return (possible when the characteristic polynomial is divisible by X)
    are not on any cycle; see ``transient_states``.
    """
    t = _cycle_table(d, bound, jobs)
    cyc_states = np.nonzero(t.cyclic)[0]
    lab = t.labels[cyc_states]
    codes = t.codes[cyc_states]
    uniq, inverse, lengths = np.unique(lab, return_inverse=True, return_counts=True)
    per_cycle = np.zeros((len(uniq), len(_CLASS_ORDER)), dtype=np.int64)
    np.add.at(per_cycle, (inverse, codes), 1)
    # ties resolve toward the earlier (more structured) class
    dominant = np.argmax(per_cycle, axis=1)

    groups: dict[tuple[int, int], list[int]] = {}
    for ci in range(len(uniq)):
        groups.setdefault((int(lengths[ci]), int(dominant[ci])), []).append(ci)
    out = []
    for (length, code), members in sorted(groups.items()):
        counts = per_cycle[members].sum(axis=0)
        out.append(
            CycleSummary(
                cycle_length=length,
                state_class=_CLASS_ORDER[code],
                representative=CaState(int(uniq[members[0]]), d.length),
                count_of_cycles=len(members),
                states_by_class={
                    _CLASS_ORDER[k].value: int(c) for k, c in enumerate(counts) if c
                },
            )
        )
    return out


def transient_states(d: RuleVector, bound: int = ENUMERATION_BOUND) -> int:
    t = _cycle_table(d, bound, 1)
    return int((~t.cyclic).sum())


def cycle_of(d: RuleVector, s: CaState) -> list[CaState]:
    """The cycle through ``s``; raises if ``s`` is transient."""
    seen: dict[int, int] = {}
    mask = (1 << d.length) - 1
    v = s.value
    path = []
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = _step(v, d.value, mask)
    if seen[v] != 0:
        raise ValueError(f"state {s} is not on a cycle")
    return [CaState(x, d.length) for x in path]


def observability_matrix(d: RuleVector, rows: int, cell: int = 1) -> BitMatrix:
    """Row t is the functional reading ``cell`` at time t from the initial state.

    The transition matrix of a 90/150 CA is symmetric, so the functional for
    time t+1 is one CA step applied to the functional for time t.
    """
    if not 1 <= cell <= d.length:
        raise IndexError(f"cell {cell} outside 1..{d.length}")
    mask = (1 << d.length) - 1
    v = 1 << (d.length - cell)
    out = []
    for _ in range(rows):
        out.append(v)
        v = _step(v, d.value, mask)
    return BitMatrix(tuple(out), d.length)


def embed_sequence(d: RuleVector, prefix: Sequence[int], cell: int = 1) -> CaState:
    """Initial state whose ``cell`` sequence starts with ``prefix``.

    Column j of the observability system is packed bit j, which is also the
    packed bit of the state, so the solution vector is the state value.
    """
    if len(prefix) < d.length:
        raise ValueError(f"prefix of {len(prefix)} bits is shorter than {d.length} cells")
    m = observability_matrix(d, len(prefix), cell)
    try:
        x = solve_linear(m, list(prefix))
    except InconsistentSystemError:
        raise EmbeddingError(
            f"sequence not producible at cell {cell} of this automaton"
        ) from None
    state = CaState(sum(b << j for j, b in enumerate(x)), d.length)
    if cell_sequence(d, state, cell, len(prefix)) != list(prefix):
        raise ArithmeticError("embedding replay mismatch")
    return state


def distinct_sequences(d: RuleVector, cell: int = 1, bound: int = ENUMERATION_BOUND) -> Counter:
    """Number of distinct nonzero ``cell`` sequences (up to shift) per cycle length.

    Each cycle carries one periodic sequence; when the readout is observable
    (always the case at cell 1) distinct cycles carry distinct sequences.
    """
    census = enumerate_cycles(d, bound)
    out: Counter = Counter()
    for s in census:
        if s.state_class is not StateClass.ZERO:
            out[s.cycle_length] += s.count_of_cycles
    return out
