import itertools
import math

import pytest

from mpca.automata import RuleVector, ca_char_poly, synthesize_ca
from mpca.field import FieldCtx
from mpca.modeler import (
    NotPrimePowerError,
    coset_char_poly,
    cyclotomic_coset,
    irreducible_power,
    model_ccsg,
    model_shrinking_generator,
    sg_predicted_props,
    verify_model,
)
from mpca.poly import Poly, parse_poly, poly_is_irreducible, poly_power_exponent, primitive_polys
from mpca.registers import CcsgConfig, DegenerateGeneratorError, Lfsr, ShrinkConfig, ccsg_generate, shrink
from mpca.sequences import berlekamp_massey, min_period

from oracles import minimal_poly_bruteforce

P1 = parse_poly("x^3+x^2+1")
P2 = parse_poly("x^5+x^4+x^2+x+1")


def ref_sg():
    return ShrinkConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2, [1, 1, 1, 1, 1]))


def test_coset_examples():
    c = cyclotomic_coset(7, 5)
    assert c.members == {7, 14, 28, 25, 19} and c.ordered() == [7, 14, 28, 25, 19]
    assert cyclotomic_coset(1, 3).members == {1, 2, 4}
    for bad in (0, 31, -3):
        with pytest.raises(ValueError):
            cyclotomic_coset(bad, 5)


def test_coset_char_poly_examples():
    assert coset_char_poly(FieldCtx(P2), 7) == parse_poly("x^5+x^2+1")
    assert coset_char_poly(FieldCtx(P1), 3) == parse_poly("x^3+x+1")
    for p in primitive_polys(4):
        assert coset_char_poly(FieldCtx(p), 1) == p


def test_coset_char_poly_needs_primitive_modulus():
    with pytest.raises(ValueError):
        coset_char_poly(FieldCtx(parse_poly("x^4+x^3+x^2+x+1")), 1)


@pytest.mark.parametrize("L", range(2, 7))
def test_coset_char_poly_is_the_minimal_polynomial(L):
    for modulus in primitive_polys(L):
        ctx = FieldCtx(modulus)
        for E in range(1, (1 << L) - 1):
            q = coset_char_poly(ctx, E)
            assert poly_is_irreducible(q)
            assert q.degree == cyclotomic_coset(E, L).size
            assert q.coeffs() == minimal_poly_bruteforce(E, modulus.bits, L)


def test_predicted_props():
    a = sg_predicted_props(3, 5)
    assert (a.E, a.period, a.lc_low, a.lc_high, a.p_low, a.p_high) == (7, 124, 10, 20, 2, 4)
    b = sg_predicted_props(2, 3)
    assert (b.E, b.period, b.lc_low, b.lc_high, b.p_low, b.p_high) == (3, 14, 3, 6, 1, 2)
    with pytest.raises(ValueError):
        sg_predicted_props(4, 4)
    with pytest.raises(ValueError):
        sg_predicted_props(1, 5)


def test_model_reference():
    basic, d1, d2 = model_shrinking_generator(3, P2)
    assert basic == parse_poly("x^5+x^2+1")
    assert str(d1) == "01110011111111001110"
    assert str(d2) == "11111111100111111111"


def test_model_single_stage_sr1_passes_sr2_through():
    for p2 in primitive_polys(5):
        basic, d1, d2 = model_shrinking_generator(1, p2)
        assert basic == p2
        assert (d1, d2) == synthesize_ca(p2)


@pytest.mark.parametrize("L1,L2", [(2, 3), (2, 5), (3, 2), (3, 4), (3, 5), (4, 3)])
def test_model_shapes(L1, L2):
    for p2 in primitive_polys(L2):
        basic, d1, d2 = model_shrinking_generator(L1, p2)
        p = 1 << (L1 - 1)
        assert d1.length == d2.length == p * L2
        if p == 1:
            assert d2 == d1.reversed()
        else:
            # doubling mirrors the vector, so each one is a palindrome
            assert d1 == d1.reversed() and d2 == d2.reversed()
        assert ca_char_poly(d1) == ca_char_poly(d2) == basic ** p


def test_model_errors():
    with pytest.raises(ValueError):
        model_shrinking_generator(3, parse_poly("x^4+x^3+x^2+x+1"))
    with pytest.raises(ValueError):
        model_shrinking_generator(2, parse_poly("x^4+x+1"))


def test_verify_reference():
    _, d1, _ = model_shrinking_generator(3, P2)
    report = verify_model(ref_sg(), d1)
    assert report.verdict, report.diagnostics
    assert report.measured["period"] == 124
    assert 10 < report.measured["lc"] <= 20
    assert report.kv()["verdict"] == "true"
    assert report.to_text().endswith("verdict               PASS\n")


def test_verify_unrelated_automaton():
    report = verify_model(ref_sg(), RuleVector.parse("8C031@20"))
    assert not report.verdict
    assert report.diagnostics
    assert report.kv()["verdict"] == "false"


def test_verify_small_generator():
    cfg = ShrinkConfig(Lfsr(parse_poly("x^2+x+1")), Lfsr(P1))
    _, d1, _ = model_shrinking_generator(2, P1)
    report = verify_model(cfg, d1)
    assert report.verdict
    assert report.measured["period"] == 14 and 3 < report.measured["lc"] <= 6


def test_report_kv_keys():
    _, d1, _ = model_shrinking_generator(3, P2)
    keys = list(verify_model(ref_sg(), d1).kv())
    assert keys == [
        "basic_poly", "ca1", "ca2", "p", "predicted_period", "measured_period", "lc", "minimal_poly", "verdict",
    ]


DESK = [(L1, L2) for L1 in (2, 3) for L2 in range(2, 6) if math.gcd(L1, L2) == 1]


@pytest.mark.parametrize("L1,L2", DESK)
def test_desk_scale_generators(L1, L2):
    pred = sg_predicted_props(L1, L2)
    for p1, p2 in itertools.product(primitive_polys(L1), primitive_polys(L2)):
        cfg = ShrinkConfig(Lfsr(p1), Lfsr(p2))
        basic, d1, _ = model_shrinking_generator(L1, p2)
        report = verify_model(cfg, d1)
        assert report.verdict, report.diagnostics
        assert report.measured["period"] == pred.period
        p = poly_power_exponent(report.measured["minimal_poly"], basic)
        assert pred.p_low < p <= pred.p_high
        assert min_period(shrink(cfg, 2 * pred.period), pred.period) == pred.period


def test_irreducible_power():
    q = parse_poly("x^5+x^4+x^3+x^2+1")
    for p in (1, 2, 3, 4, 5, 6):
        assert irreducible_power(q ** p) == (q, p)
    with pytest.raises(NotPrimePowerError):
        irreducible_power(parse_poly("x^3+x^2+1") * parse_poly("x^3+x+1"))
    with pytest.raises(NotPrimePowerError):
        irreducible_power(Poly(1))


def test_ccsg_degenerate_case():
    cfg = CcsgConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2), df_stages=[], df_base=1, select=False)
    q, d1, d2, report = model_ccsg(cfg)
    assert q == P2 and report.p_used == 1
    assert (d1, d2) == synthesize_ca(P2)
    assert report.verdict


def test_ccsg_reference():
    cfg = CcsgConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2), df_stages=[1], df_base=1)
    q, d1, _, report = model_ccsg(cfg)
    assert q.degree == 5 and report.p_used <= 4
    assert report.verdict, report.diagnostics
    assert ca_char_poly(d1) == report.measured["minimal_poly"]


def test_ccsg_errors():
    with pytest.raises(DegenerateGeneratorError):
        model_ccsg(CcsgConfig(Lfsr(P1), Lfsr(P2, [0] * 5), df_stages=[1]))
    with pytest.raises(NotPrimePowerError):
        model_ccsg(CcsgConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2), df_stages=[1], df_base=1, select=False))


def test_ccsg_keystream_minimal_polynomial_check():
    cfg = CcsgConfig(Lfsr(P1, [1, 1, 0]), Lfsr(P2), df_stages=[1], df_base=1)
    _, _, _, report = model_ccsg(cfg)
    assert berlekamp_massey(ccsg_generate(cfg, 600))[1] == report.measured["minimal_poly"]
