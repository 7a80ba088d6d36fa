import itertools

import pytest

from mpca.field import FieldCtx
from mpca.poly import parse_poly, primitive_polys
from mpca.registers import (
    CcsgConfig,
    CoprimeLengthError,
    DegenerateGeneratorError,
    Lfsr,
    ShrinkConfig,
    ccsg_generate,
    lfsr_bits,
    pn_trace_eval,
    shrink,
)
from mpca.sequences import berlekamp_massey, min_period, satisfies_recurrence

from oracles import lfsr_run

P1 = parse_poly("x^3+x^2+1")
P2 = parse_poly("x^5+x^4+x^2+x+1")


def ref_sg():
    return ShrinkConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2, [1, 1, 1, 1, 1]))


def test_lfsr_table_column():
    assert lfsr_bits(Lfsr(P1, [1, 1, 0]), 7) == [1, 1, 0, 1, 0, 0, 1]


def test_lfsr_state_sequence():
    r = Lfsr(P1, [1, 1, 0])
    states = []
    for _ in range(7):
        states.append(r.state)
        r.clock()
    assert states == [
        [1, 1, 0], [1, 0, 1], [0, 1, 0], [1, 0, 0], [0, 0, 1], [0, 1, 1], [1, 1, 1],
    ]


def test_lfsr_zero_state():
    assert lfsr_bits(Lfsr(P2, [0] * 5), 5) == [0] * 5


def test_lfsr_matches_recurrence_oracle():
    for p in primitive_polys(5) + primitive_polys(4):
        L = int(p.degree)
        taps = [e for e in p.exponents() if e < L]
        state = [1, 0] + [1] * (L - 2)
        assert lfsr_bits(Lfsr(p, state), 40) == lfsr_run(taps, L, state, 40)


def test_lfsr_period_31():
    assert min_period(lfsr_bits(Lfsr(P2, [1, 0, 0, 1, 0]), 62), 31) == 31


@pytest.mark.parametrize("L", range(2, 7))
def test_de_bruijn_windows(L):
    for p in primitive_polys(L):
        s = lfsr_bits(Lfsr(p, [1] + [0] * (L - 1)), 2 * ((1 << L) - 1))
        T = (1 << L) - 1
        assert min_period(s, T) == T
        windows = [tuple(s[n : n + L]) for n in range(T)]
        assert len(set(windows)) == T and (0,) * L not in windows
        assert berlekamp_massey(s) == (L, p)


def test_trace_zero_coefficient():
    ctx = FieldCtx(P1)
    assert all(pn_trace_eval(ctx, ctx.zero, n) == 0 for n in range(10))


def test_trace_stream_is_shift_of_lfsr():
    ctx = FieldCtx(P1)
    pn = lfsr_bits(Lfsr(P1, [1, 1, 0]), 7)
    stream = [pn_trace_eval(ctx, ctx.one, n) for n in range(7)]
    assert any(stream == pn[k:] + pn[:k] for k in range(7))


@pytest.mark.parametrize("modulus", ["x^3+x^2+1", "x^4+x+1", "x^5+x^2+1", "x^5+x^4+x^2+x+1"])
def test_trace_streams_are_mutual_shifts(modulus):
    ctx = FieldCtx(parse_poly(modulus))
    T = (1 << ctx.L) - 1
    streams = {}
    for a in list(ctx.elements())[1:]:
        s = [pn_trace_eval(ctx, a, n) for n in range(T)]
        assert satisfies_recurrence(s + s[: ctx.L], ctx.modulus)
        streams[a.rep] = s
    base = streams[1]
    shifts = {tuple(base[k:] + base[:k]) for k in range(T)}
    assert all(tuple(s) in shifts for s in streams.values())


def test_trace_needs_primitive():
    ctx = FieldCtx(parse_poly("x^4+x^3+x^2+x+1"))
    with pytest.raises(ValueError):
        pn_trace_eval(ctx, ctx.one, 0)


def test_shrink_reference_period_and_lc():
    s = shrink(ref_sg(), 248)
    assert min_period(s, 124) == 124
    lc, _ = berlekamp_massey(s)
    assert 10 < lc <= 20


def test_shrink_output_accounting():
    cfg = ref_sg()
    a = lfsr_bits(cfg.sr1.copy(), 200)
    b = lfsr_bits(cfg.sr2.copy(), 200)
    expected = [y for x, y in zip(a, b) if x]
    assert shrink(cfg, len(expected)) == expected
    assert len(expected) == sum(a)


def test_shrink_leaves_config_untouched():
    cfg = ref_sg()
    shrink(cfg, 50)
    assert cfg.sr1.state == [1, 1, 0] and cfg.sr2.state == [1] * 5


def test_shrink_errors():
    with pytest.raises(DegenerateGeneratorError):
        shrink(ShrinkConfig(Lfsr(P1, [0, 0, 0]), Lfsr(P2)), 5)
    with pytest.raises(CoprimeLengthError):
        ShrinkConfig(Lfsr(parse_poly("x^2+x+1")), Lfsr(parse_poly("x^4+x+1")))
    with pytest.raises(ValueError):
        ShrinkConfig(Lfsr(P1), Lfsr(parse_poly("x^4+x^3+x^2+x+1")))


def test_ccsg_unit_clocking_without_selection_is_sr2():
    cfg = CcsgConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2), df_stages=[], df_base=1, select=False)
    assert ccsg_generate(cfg, 100) == lfsr_bits(Lfsr(P2), 100)


def test_ccsg_unit_clocking_with_selection_is_shrinking():
    cfg = CcsgConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2), df_stages=[], df_base=1)
    assert ccsg_generate(cfg, 100) == shrink(ref_sg(), 100)


def test_ccsg_decimation_oracle():
    # SR2 position advances by 1 + stage1(SR1) per step; kept where SR1 outputs 1
    cfg = CcsgConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2), df_stages=[1], df_base=1)
    a = lfsr_bits(Lfsr(P1, [1, 1, 0]), 400)
    b = lfsr_bits(Lfsr(P2), 1000)
    pos, expected = 0, []
    for bit in a:
        if bit:
            expected.append(b[pos])
        pos += 1 + bit
    assert ccsg_generate(cfg, len(expected)) == expected


def test_ccsg_reference_minimal_polynomial():
    cfg = CcsgConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2), df_stages=[1], df_base=1)
    lc, q = berlekamp_massey(ccsg_generate(cfg, 512))
    assert lc % 5 == 0
    # X^20+X^16+X^12+X^8+1 = (X^5+X^4+X^3+X^2+1)^4
    assert q == parse_poly("x^5+x^4+x^3+x^2+1") ** 4


def test_ccsg_without_selection_breaks_power_form():
    cfg = CcsgConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2), df_stages=[1], df_base=1, select=False)
    lc, q = berlekamp_massey(ccsg_generate(cfg, 512))
    assert (lc, q) == (35, parse_poly("x^35+x^28+x^21+x^14+1"))


def test_ccsg_validation():
    with pytest.raises(ValueError):
        CcsgConfig(Lfsr(P1), Lfsr(P2), df_stages=[4])
    with pytest.raises(ValueError):
        CcsgConfig(Lfsr(P1), Lfsr(P2), df_stages=[1, 1])
    with pytest.raises(ValueError):
        CcsgConfig(Lfsr(P1), Lfsr(P2), df_base=0)
    with pytest.raises(DegenerateGeneratorError):
        ccsg_generate(CcsgConfig(Lfsr(P1), Lfsr(P2, [0] * 5)), 3)


@pytest.mark.parametrize("L1,L2", [(2, 3), (2, 5), (3, 4), (3, 5), (3, 2)])
def test_shrink_period_formula_desk_scale(L1, L2):
    T = ((1 << L2) - 1) << (L1 - 1)
    for p1, p2 in itertools.product(primitive_polys(L1), primitive_polys(L2)):
        s = shrink(ShrinkConfig(Lfsr(p1), Lfsr(p2)), 2 * T)
        assert min_period(s, T) == T
