"""Command-line interface.

Exit status: 0 success, 1 a verification verdict came out false, 2 usage
error, 3 computation error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .automata import (
    CaState,
    RuleVector,
    ca_char_poly,
    concat_double,
    enumerate_cycles,
    synthesize_ca,
    transient_states,
)
from .modeler import model_ccsg, model_shrinking_generator, verify_model
from .poly import Poly, format_poly, parse_poly, primitive_polys
from .registers import CcsgConfig, Lfsr, ShrinkConfig, ccsg_generate, lfsr_bits, parse_state, shrink
from .render import render_ascii, render_figure, render_pgm
from .sequences import berlekamp_massey, format_bits, min_period, parse_bits

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3
DEFAULT_MAX_COUNT = 1 << 26


class UsageError(Exception):
    pass


def _poly_arg(text: str) -> Poly:
    try:
        return parse_poly(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rule_arg(text: str) -> RuleVector:
    try:
        return RuleVector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _state_arg(text: str) -> CaState:
    try:
        return CaState.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bits_arg(text: str) -> list[int]:
    try:
        return parse_state(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _stages_arg(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated stage numbers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def default_p1(L1: int) -> Poly:
    """Largest primitive polynomial of degree L1 (x^3+x^2+1 for L1 = 3)."""
    return primitive_polys(L1)[-1]


def _add_registers(p, *, need_l1: bool = False):
    p.add_argument("--p1", type=_poly_arg, help="SR1 characteristic polynomial")
    p.add_argument("--s1", type=_bits_arg, help="SR1 seed, stage 1 first (default all ones)")
    p.add_argument("--p2", type=_poly_arg, required=True, help="SR2 characteristic polynomial")
    p.add_argument("--s2", type=_bits_arg, help="SR2 seed, stage 1 first (default all ones)")
    if need_l1:
        p.add_argument("--l1", type=_positive, help="SR1 length when --p1 is omitted")


def _add_decimation(p):
    p.add_argument("--df-stages", type=_stages_arg, default=[], help="SR1 stages weighting the decimation, e.g. 1,2")
    p.add_argument("--df-base", type=_positive, default=1, help="constant part of the decimation count")
    p.add_argument(
        "--no-select",
        action="store_true",
        help="emit SR2 at every step instead of only when SR1 outputs 1",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpca",
        description="Model shrinking generators as linear 90/150 cellular automata.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("synth", help="synthesize the two 90/150 CA for an irreducible polynomial")
    p.add_argument("--poly", type=_poly_arg, required=True)

    p = sub.add_parser("concat", help="double a rule vector (squares its polynomial)")
    p.add_argument("--rule", type=_rule_arg, required=True)
    p.add_argument("--times", type=_positive, default=1)

    p = sub.add_parser("charpoly", help="characteristic polynomial of a rule vector")
    p.add_argument("--rule", type=_rule_arg, required=True)

    p = sub.add_parser("model-sg", help="build and verify the CA model of a shrinking generator")
    p.add_argument("--l1", type=_positive, required=True, help="SR1 length")
    p.add_argument("--p2", type=_poly_arg, required=True, help="SR2 characteristic polynomial")
    p.add_argument("--p1", type=_poly_arg, help="SR1 polynomial (default: largest primitive of degree l1)")
    p.add_argument("--s1", type=_bits_arg)
    p.add_argument("--s2", type=_bits_arg)
    p.add_argument("--format", choices=("text", "kv"), default="text")

    p = sub.add_parser("model-ccsg", help="measure a CCSG's minimal polynomial and build its CA model")
    _add_registers(p)
    _add_decimation(p)
    p.add_argument("--format", choices=("text", "kv"), default="text")

    p = sub.add_parser("gen", help="generate a keystream as a 0/1 string")
    p.add_argument("kind", choices=("lfsr", "sg", "ccsg"))
    p.add_argument("--poly", type=_poly_arg, help="LFSR polynomial (lfsr)")
    p.add_argument("--state", type=_bits_arg, help="LFSR seed (lfsr)")
    p.add_argument("--p1", type=_poly_arg)
    p.add_argument("--s1", type=_bits_arg)
    p.add_argument("--p2", type=_poly_arg)
    p.add_argument("--s2", type=_bits_arg)
    _add_decimation(p)
    p.add_argument("--count", type=_nonneg, required=True)
    p.add_argument("--max-count", type=_positive, default=DEFAULT_MAX_COUNT)
    p.add_argument("--out", type=Path, help="write to a file instead of stdout")

    p = sub.add_parser("analyze", help="linear complexity and period of a bit stream")
    p.add_argument("--bits", required=True, help="file of 0/1 characters, or - for stdin")
    p.add_argument("--period-bound", type=_positive, help="known multiple of the period")
    p.add_argument("--format", choices=("text", "kv"), default="text")

    p = sub.add_parser("cycles", help="census of state cycles by length and state class")
    p.add_argument("--rule", type=_rule_arg, required=True)
    p.add_argument("--bound", type=_positive, default=24, help="largest automaton to enumerate")
    p.add_argument("--jobs", type=_positive, default=1, help="worker threads")

    p = sub.add_parser("render", help="space-time diagram of an evolution")
    p.add_argument("--rule", type=_rule_arg, required=True)
    p.add_argument("--state", type=_state_arg, required=True)
    p.add_argument("--steps", type=_positive, required=True)
    p.add_argument("--format", choices=("ascii", "pgm", "png"), default="ascii")
    p.add_argument("--out", type=Path, help="output file (required for png)")
    p.add_argument("--figure", type=Path, help="also save a matplotlib figure here")

    p = sub.add_parser("verify", help="check that a rule vector linearizes a shrinking generator")
    _add_registers(p, need_l1=True)
    p.add_argument("--rule", type=_rule_arg, required=True)
    p.add_argument("--format", choices=("text", "kv"), default="text")

    return parser


def _lfsr(poly: Poly | None, seed, flag: str) -> Lfsr:
    if poly is None:
        raise UsageError(f"missing required flag {flag}")
    try:
        return Lfsr(poly, seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _shrink_cfg(args, L1: int | None = None) -> ShrinkConfig:
    p1 = args.p1
    if p1 is None:
        if L1 is None:
            raise UsageError("missing required flag --p1 (or --l1)")
        p1 = default_p1(L1)
    elif L1 is not None and p1.degree != L1:
        raise UsageError(f"--p1 has degree {int(p1.degree)} but --l1 is {L1}")
    try:
        return ShrinkConfig(_lfsr(p1, args.s1, "--p1"), _lfsr(args.p2, args.s2, "--p2"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _ccsg_cfg(args) -> CcsgConfig:
    try:
        return CcsgConfig(
            _lfsr(args.p1, args.s1, "--p1"),
            _lfsr(args.p2, args.s2, "--p2"),
            df_stages=list(args.df_stages),
            df_base=args.df_base,
            select=not args.no_select,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_bits(source: str) -> list[int]:
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    try:
        return parse_bits(text)
    except ValueError as exc:
        raise UsageError(f"--bits: {exc}") from None


def _emit_report(report, fmt: str, out) -> int:
    out.write(report.to_kv() if fmt == "kv" else report.to_text())
    return EXIT_OK if report.verdict else EXIT_VERDICT


def _cmd_synth(args, out) -> int:
    for d in synthesize_ca(args.poly):
        out.write(f"{d}\n")
    return EXIT_OK


def _cmd_concat(args, out) -> int:
    d = args.rule
    for _ in range(args.times):
        d = concat_double(d)
    out.write(f"{d}\n")
    return EXIT_OK


def _cmd_charpoly(args, out) -> int:
    out.write(f"{format_poly(ca_char_poly(args.rule))}\n")
    return EXIT_OK


def _cmd_model_sg(args, out) -> int:
    cfg = _shrink_cfg(args, args.l1)
    _, d1, _ = model_shrinking_generator(args.l1, args.p2)
    return _emit_report(verify_model(cfg, d1), args.format, out)


def _cmd_model_ccsg(args, out) -> int:
    *_, report = model_ccsg(_ccsg_cfg(args))
    return _emit_report(report, args.format, out)


def _cmd_gen(args, out) -> int:
    if args.count > args.max_count:
        raise UsageError(f"--count {args.count} exceeds --max-count {args.max_count}")
    if args.kind == "lfsr":
        bits = lfsr_bits(_lfsr(args.poly, args.state, "--poly"), args.count)
    elif args.kind == "sg":
        bits = shrink(_shrink_cfg(args), args.count)
    else:
        bits = ccsg_generate(_ccsg_cfg(args), args.count)
    text = format_bits(bits) + "\n"
    if args.out:
        args.out.write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_analyze(args, out) -> int:
    bits = _read_bits(args.bits)
    if not bits:
        raise UsageError("--bits: empty bit stream")
    lc, poly = berlekamp_massey(bits)
    fields = {}
    if args.period_bound:
        fields["period"] = str(min_period(bits, args.period_bound))
    fields["lc"] = str(lc)
    fields["minimal_poly"] = format_poly(poly)
    fields["length"] = str(len(bits))
    if args.format == "kv":
        out.write("".join(f"{k}={v}\n" for k, v in fields.items()))
    else:
        out.write(" ".join(f"{k}={v}" for k, v in fields.items()) + "\n")
    return EXIT_OK


def _cmd_cycles(args, out) -> int:
    d = args.rule
    census = enumerate_cycles(d, bound=args.bound, jobs=args.jobs)
    total = 0
    for s in census:
        by_class = ",".join(f"{k}:{v}" for k, v in s.states_by_class.items())
        out.write(
            f"len={s.cycle_length} class={s.state_class.value} cycles={s.count_of_cycles} "
            f"states={s.states} representative={s.representative.hex()} by_class={by_class}\n"
        )
        total += s.states
    transient = transient_states(d, bound=args.bound) if total != 1 << d.length else 0
    out.write(f"total_states={total + transient} cyclic={total} transient={transient}\n")
    return EXIT_OK


def _cmd_render(args, out) -> int:
    d, s0 = args.rule, args.state
    if d.length != s0.length:
        raise UsageError(f"--state has {s0.length} cells but --rule has {d.length}")
    if args.format == "png":
        if not args.out:
            raise UsageError("missing required flag --out for png output")
        render_figure(d, s0, args.steps, args.out)
    else:
        text = render_ascii(d, s0, args.steps) if args.format == "ascii" else render_pgm(d, s0, args.steps)
        if args.out:
            args.out.write_text(text)
        else:
            out.write(text)
    if args.figure:
        render_figure(d, s0, args.steps, args.figure)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    cfg = _shrink_cfg(args, args.l1)
    return _emit_report(verify_model(cfg, args.rule), args.format, out)


_COMMANDS = {
    "synth": _cmd_synth,
    "concat": _cmd_concat,
    "charpoly": _cmd_charpoly,
    "model-sg": _cmd_model_sg,
    "model-ccsg": _cmd_model_ccsg,
    "gen": _cmd_gen,
    "analyze": _cmd_analyze,
    "cycles": _cmd_cycles,
    "render": _cmd_render,
    "verify": _cmd_verify,
}


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def execute(args: argparse.Namespace, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return _COMMANDS[args.verb](args, out)
    except UsageError as exc:
        err.write(f"mpca {args.verb}: error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        err.write(f"mpca {args.verb}: {type(exc).__name__}: {exc}\n")
        return EXIT_COMPUTE


def main(argv: list[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return execute(args)


if __name__ == "__main__":
    sys.exit(main())
