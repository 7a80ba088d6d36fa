"""Linear CA models of shrinking and clock-controlled shrinking generators.

The shrunken sequence of a generator with register lengths L1, L2 has a
minimal polynomial P(X)^p where P is the minimal polynomial of alpha^E,
E = 2^L1 - 1, over the field of SR2. Synthesizing P and doubling the
automaton up to length 2^(L1-1) * L2 yields an automaton whose cell 1 can
replay the keystream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .automata import (
    CaState,
    EmbeddingError,
    RuleVector,
    build_mpca,
    ca_char_poly,
    cell_sequence,
    embed_sequence,
)
from .field import FieldCtx
from .poly import Poly, format_poly, poly_gcd, poly_is_irreducible, poly_power_exponent
from .registers import CcsgConfig, ShrinkConfig, ccsg_generate, shrink
from .sequences import berlekamp_massey, min_period


@dataclass(frozen=True)
class CosetSpec:
    E: int
    L: int
    members: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.members)

    def ordered(self) -> list[int]:
        """Members in doubling order starting from E."""
        out, e = [], self.E
        while e not in out:
            out.append(e)
            e = (2 * e) % ((1 << self.L) - 1)
        return out


def cyclotomic_coset(E: int, L: int) -> CosetSpec:
    n = (1 << L) - 1
    if not 0 < E < n:
        raise ValueError(f"coset leader {E} outside 1..{n - 1}")
    members, e = set(), E
    while e not in members:
        members.add(e)
        e = (2 * e) % n
    return CosetSpec(E, L, frozenset(members))


def coset_char_poly(ctx: FieldCtx, E: int) -> Poly:
    """prod over the coset of E of (X + alpha^e), expanded and brought back to GF(2)."""
    if not ctx.is_primitive:
        raise ValueError(f"{ctx.modulus} is not primitive")
    coset = cyclotomic_coset(E, ctx.L)
    # coefficients by increasing exponent, each a field element
    coeffs = [ctx.one]
    for e in coset.ordered():
        root = ctx.alpha ** e
        shifted = [ctx.zero] + coeffs
        scaled = [c * root for c in coeffs] + [ctx.zero]
        coeffs = [a + b for a, b in zip(shifted, scaled)]
    if any(c.rep not in (0, 1) for c in coeffs):
        raise ArithmeticError("coset polynomial has coefficients outside GF(2)")
    return Poly.from_coeffs([c.rep for c in coeffs])


@dataclass(frozen=True)
class SgPrediction:
    E: int
    period: int
    lc_low: int
    lc_high: int
    p_low: int
    p_high: int


def sg_predicted_props(L1: int, L2: int) -> SgPrediction:
    """Period (2^L2 - 1) 2^(L1-1); LC in (L2 2^(L1-2), L2 2^(L1-1)]; p in (2^(L1-2), 2^(L1-1)]."""
    if L1 < 2 or L2 < 2:
        raise ValueError("both register lengths must be >= 2")
    if math.gcd(L1, L2) != 1:
        raise ValueError(f"register lengths {L1} and {L2} are not coprime")
    return SgPrediction(
        E=(1 << L1) - 1,
        period=((1 << L2) - 1) << (L1 - 1),
        lc_low=L2 << (L1 - 2),
        lc_high=L2 << (L1 - 1),
        p_low=1 << (L1 - 2),
        p_high=1 << (L1 - 1),
    )


def model_shrinking_generator(L1: int, p2: Poly) -> tuple[Poly, RuleVector, RuleVector]:
    ctx = FieldCtx(p2)
    if not ctx.is_primitive:
        raise ValueError(f"{p2} is not primitive")
    if L1 < 1:
        raise ValueError("L1 must be >= 1")
    if math.gcd(L1, ctx.L) != 1:
        raise ValueError(f"register lengths {L1} and {ctx.L} are not coprime")
    # alpha^(2^L1 - 1) only depends on the exponent mod the field order
    E = ((1 << L1) - 1) % ((1 << ctx.L) - 1)
    if E == 0:
        raise ValueError(f"2^{L1} - 1 is a multiple of 2^{ctx.L} - 1; SR1 would never select")
    basic = coset_char_poly(ctx, E)
    d1, d2 = build_mpca(basic, 1 << (L1 - 1))
    return basic, d1, d2


@dataclass
class ModelReport:
    """Outcome of modeling a generator by a pair of linear CA.

    ``predicted`` is empty for CCSGs, whose parameters are only measured.
    ``verdict`` failures are findings, listed in ``diagnostics``.
    """

    basic_poly: Poly
    ca_pair: tuple[RuleVector, RuleVector]
    p_used: int
    rule: RuleVector
    predicted: dict[str, int]
    measured: dict[str, object]
    embedding_state: CaState | None
    verdict: bool
    diagnostics: list[str] = field(default_factory=list)

    def kv(self) -> dict[str, str]:
        m = self.measured
        return {
            "basic_poly": format_poly(self.basic_poly),
            "ca1": str(self.ca_pair[0]),
            "ca2": str(self.ca_pair[1]),
            "p": str(self.p_used),
            "predicted_period": str(self.predicted.get("period", "none")),
            "measured_period": str(m.get("period", "none")),
            "lc": str(m.get("lc", "none")),
            "minimal_poly": format_poly(m["minimal_poly"]) if "minimal_poly" in m else "none",
            "verdict": "true" if self.verdict else "false",
        }

    def to_kv(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in self.kv().items())

    def to_text(self) -> str:
        lines = [
            f"basic polynomial      {format_poly(self.basic_poly)}",
            f"automaton 1           {self.ca_pair[0]}",
            f"automaton 2           {self.ca_pair[1]}",
            f"concatenation p       {self.p_used}",
            f"automaton under test  {self.rule}",
        ]
        if self.predicted:
            pr = self.predicted
            lines.append(f"predicted period      {pr['period']}")
            lines.append(f"predicted lc range    ({pr['lc_low']}, {pr['lc_high']}]")
        m = self.measured
        if "period" in m:
            lines.append(f"measured period       {m['period']}")
        if "lc" in m:
            lines.append(f"measured lc           {m['lc']}")
        if "minimal_poly" in m:
            lines.append(f"minimal polynomial    {format_poly(m['minimal_poly'])}")
        if "exponent" in m:
            lines.append(f"minimal poly exponent {m['exponent']}")
        if self.embedding_state is not None:
            lines.append(f"embedding state       {self.embedding_state} ({self.embedding_state.hex()})")
        lines.extend(f"finding: {msg}" for msg in self.diagnostics)
        lines.append(f"verdict               {'PASS' if self.verdict else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _replay(d: RuleVector, keystream: list[int], span: int, diagnostics: list[str]):
    try:
        state = embed_sequence(d, keystream[: d.length])
    except EmbeddingError as exc:
        diagnostics.append(str(exc))
        return None, False
    replay = cell_sequence(d, state, 1, span)
    if replay != keystream[:span]:
        first = next(i for i, (a, b) in enumerate(zip(replay, keystream)) if a != b)
        diagnostics.append(f"cell-1 replay diverges from the keystream at bit {first}")
        return state, False
    return state, True


def verify_model(cfg: ShrinkConfig, d: RuleVector) -> ModelReport:
    """Check that ``d`` linearizes the shrinking generator ``cfg``."""
    pred = sg_predicted_props(cfg.L1, cfg.L2)
    basic, d1, d2 = model_shrinking_generator(cfg.L1, cfg.sr2.charpoly)
    n = 2 * pred.period + d.length
    keystream = shrink(cfg, n)
    diagnostics: list[str] = []

    lc, minimal = berlekamp_massey(keystream)
    measured: dict[str, object] = {"lc": lc, "minimal_poly": minimal}
    try:
        measured["period"] = min_period(keystream, pred.period)
    except ValueError as exc:
        diagnostics.append(str(exc))
    exponent = poly_power_exponent(minimal, basic)
    if exponent is not None:
        measured["exponent"] = exponent

    ok = True
    if measured.get("period") != pred.period:
        ok = False
        diagnostics.append(f"period {measured.get('period')} differs from predicted {pred.period}")
    if not pred.lc_low < lc <= pred.lc_high:
        ok = False
        diagnostics.append(f"lc {lc} outside ({pred.lc_low}, {pred.lc_high}]")
    if exponent is None:
        ok = False
        diagnostics.append(f"minimal polynomial {minimal} is not a power of {basic}")
    state, replayed = _replay(d, keystream, pred.period, diagnostics)
    ok = ok and replayed

    return ModelReport(
        basic_poly=basic,
        ca_pair=(d1, d2),
        p_used=1 << (cfg.L1 - 1),
        rule=d,
        predicted={"period": pred.period, "lc_low": pred.lc_low, "lc_high": pred.lc_high},
        measured=measured,
        embedding_state=state,
        verdict=ok,
        diagnostics=diagnostics,
    )


class NotPrimePowerError(ValueError):
    """A minimal polynomial is not a power of a single irreducible polynomial."""


def irreducible_power(m: Poly) -> tuple[Poly, int]:
    """Write ``m`` as Q**p with Q irreducible.

    Square roots are peeled off while every exponent is even; the odd part
    R = Q**b is reduced to Q = R / gcd(R, R').
    """
    if not m or m.degree < 1:
        raise NotPrimePowerError(f"{m} has no irreducible factor")
    twos = 0
    while m.is_square() and m.degree > 0:
        m = m.sqrt()
        twos += 1
    deriv = m.derivative()
    g = poly_gcd(m, deriv) if deriv else m
    q = m // g
    if not q or q.degree < 1 or not poly_is_irreducible(q):
        raise NotPrimePowerError(
            f"minimal polynomial = ({m})^{1 << twos}; its square-free part {q} is reducible"
        )
    b = poly_power_exponent(m, q)
    if b is None:
        raise NotPrimePowerError(
            f"minimal polynomial = ({m})^{1 << twos} mixes {q} with other factors"
        )
    return q, b << twos


def model_ccsg(cfg: CcsgConfig) -> tuple[Poly, RuleVector, RuleVector, ModelReport]:
    """Measure the CCSG keystream's minimal polynomial Q^p and build the CA pair for it."""
    L1, L2 = cfg.sr1.length, cfg.sr2.length
    # SR1 period times the most SR2 clocks a step can take, doubled, covers
    # 2 * LC for every P^p with p <= 2^L1.
    n = 2 * (1 << L1) * L2 * 4 + 64
    keystream = ccsg_generate(cfg, n)
    lc, minimal = berlekamp_massey(keystream)
    q, p = irreducible_power(minimal)
    d1, d2 = build_mpca(q, p)
    diagnostics: list[str] = []
    measured: dict[str, object] = {"lc": lc, "minimal_poly": minimal, "exponent": p}
    if ca_char_poly(d1) % minimal:
        diagnostics.append("automaton polynomial is not a multiple of the minimal polynomial")
    state, replayed = _replay(d1, keystream, len(keystream), diagnostics)
    report = ModelReport(
        basic_poly=q,
        ca_pair=(d1, d2),
        p_used=p,
        rule=d1,
        predicted={},
        measured=measured,
        embedding_state=state,
        verdict=replayed and not diagnostics,
        diagnostics=diagnostics,
    )
    return q, d1, d2, report


__all__ = [
    "CosetSpec",
    "ModelReport",
    "NotPrimePowerError",
    "SgPrediction",
    "coset_char_poly",
    "cyclotomic_coset",
    "irreducible_power",
    "model_ccsg",
    "model_shrinking_generator",
    "sg_predicted_props",
    "verify_model",
]
