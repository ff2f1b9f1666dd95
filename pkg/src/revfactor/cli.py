"""Command-line front end.

Automata travel between subcommands as Grail files; counts and reports go
to standard output.  Exit status is 0 on success, 1 for domain errors and
2 for usage, I/O and parse errors.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from .automata import Dfa, trim, word_str
from .avoidance import (
    DEFAULT_MAX_TERMS,
    ENUMERATION_BOUND,
    AvoidanceSpec,
    avoid_check,
    brute_count,
    build_by_intersection,
    build_direct,
)
from .counting import count_sequence, find_recurrence, growth_constant, largest_real_root
from .errors import FormatError, NoRealRootAboveOne, NotConverged, RevFactorError, WitnessInvalid
from .formats import read_grail, write_dot, write_grail, write_report
from .growth import GrowthClass, classify
from .words import aperiodic_word, periodic_witness


def state_report(a: Dfa) -> dict[str, object]:
    try:
        _, live = trim(a)
    except RevFactorError:
        live = 0
    return {"k": a.alphabet_size, "states_total": a.state_count, "states_live": live}


def classify_report(a: Dfa) -> dict[str, object]:
    out = state_report(a)
    report = classify(a)
    out["growth_class"] = report.growth
    if report.growth is GrowthClass.FINITE:
        out["longest_word"] = report.max_word_length
    elif report.growth is GrowthClass.EXPONENTIAL:
        bi = report.birecurrent
        assert bi is not None
        out["witness_kind"] = "birecurrent"
        out["witness"] = f"{bi.state}:{word_str(bi.x0)}:{word_str(bi.x1)}"
    else:
        pw = periodic_witness(a)
        out["witness_kind"] = "periodic"
        out["witness"] = f"{word_str(pw.preperiod)}({word_str(pw.period)})"
    return out


def recurrence_report(
    a: Dfa,
    terms: int,
    max_order: int | None = None,
    precision: int = 30,
    tail_start: int | None = None,
) -> dict[str, object]:
    seq = count_sequence(a, terms - 1)
    if tail_start is None:
        tail_start = min(32, terms // 8)
    rec = find_recurrence(seq, tail_start, max_order=max_order)
    out: dict[str, object] = {
        "k": a.alphabet_size,
        "recurrence_order": rec.order,
        "recurrence_coeffs": list(rec.coeffs),
        "valid_from": rec.valid_from,
    }
    try:
        alpha = largest_real_root(rec, precision, bound=a.alphabet_size, seq=seq)
    except NoRealRootAboveOne:
        return out
    out["alpha"] = alpha
    out["alpha_digits"] = precision
    try:
        c, unc = growth_constant(seq, alpha)
    except NotConverged:
        return out
    out["growth_constant"] = round(c, 12)
    out["growth_constant_uncertainty"] = f"{unc:.3E}"
    return out


def _read(path: str, k: int | None) -> Dfa:
    return read_grail(Path(path).read_text(), k)


def _progress(n: int) -> None:
    print(f"expanded {n} states", file=sys.stderr)


def cmd_build(args: argparse.Namespace) -> int:
    spec = AvoidanceSpec(args.alphabet, args.length)
    if args.method == "direct":
        dfa, raw = build_direct(spec, progress=_progress)
    else:
        dfa, raw = build_by_intersection(spec, max_terms=args.max_terms), None
    text = write_dot(dfa, args.include_dead) if args.format == "dot" else write_grail(dfa, args.include_dead)
    Path(args.out).write_text(text)
    report = state_report(dfa)
    report.update(ell=args.length, method=args.method, states_pre_minimization=raw)
    sys.stdout.write(write_report(report))
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    sys.stdout.write(write_report(classify_report(_read(args.input, args.alphabet))))
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    seq = count_sequence(_read(args.input, args.alphabet), args.upto)
    sys.stdout.write("".join(f"{n} {r}\n" for n, r in enumerate(seq.terms)))
    return 0


def cmd_recurrence(args: argparse.Namespace) -> int:
    a = _read(args.input, args.alphabet)
    report = recurrence_report(a, args.terms, args.max_order, args.precision, args.tail_start)
    sys.stdout.write(write_report(report))
    return 0


def cmd_witness(args: argparse.Namespace) -> int:
    a = _read(args.input, args.alphabet)
    if args.kind == "aperiodic":
        w = aperiodic_word(a, args.length)
        if args.ell is not None and not avoid_check(w, args.ell):
            raise WitnessInvalid("witness fails the avoidance check")
        text = word_str(w)
    else:
        pw = periodic_witness(a)
        text = word_str(pw.prefix(args.length)) if args.length else f"{word_str(pw.preperiod)}({word_str(pw.period)})"
    sys.stdout.write(write_report({"witness_kind": args.kind, "witness": text}))
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    spec = AvoidanceSpec(args.alphabet, args.length)
    for n in range(args.upto + 1):
        print(n, brute_count(spec, n, bound=args.enumeration_bound))
    return 0


def cmd_convert(args: argparse.Namespace) -> int:
    a = _read(args.input, args.alphabet)
    text = write_dot(a, args.include_dead) if args.to == "dot" else write_grail(a, args.include_dead)
    sys.stdout.write(text)
    return 0


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revfactor",
        description="Automata for words avoiding reversed factors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("--in", dest="input", required=True, help="Grail automaton file")
        p.add_argument("--alphabet", type=_positive, help="alphabet size (default: inferred)")

    p = sub.add_parser("build", help="construct the minimal DFA of L(k, ell)")
    p.add_argument("--alphabet", type=_positive, required=True)
    p.add_argument("--length", type=int, required=True, help="ell, shortest forbidden length")
    p.add_argument("--method", choices=("intersect", "direct"), default="direct")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("grail", "dot"), default="grail")
    p.add_argument("--include-dead", action="store_true")
    p.add_argument("--max-terms", type=_positive, default=DEFAULT_MAX_TERMS)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("classify", help="growth class and witness")
    with_input(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("count", help="number of accepted words of each length")
    with_input(p)
    p.add_argument("--upto", type=_nonnegative, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("recurrence", help="minimal recurrence, growth rate and constant")
    with_input(p)
    p.add_argument("--terms", type=_positive, required=True, help="number of terms r(0..N-1)")
    p.add_argument("--max-order", type=_positive)
    p.add_argument("--precision", type=_positive, default=30)
    p.add_argument("--tail-start", type=_nonnegative)
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("witness", help="periodic or aperiodic infinite-word prefix")
    with_input(p)
    p.add_argument("--kind", choices=("aperiodic", "periodic"), required=True)
    p.add_argument("--length", type=_nonnegative, default=0, help="prefix length")
    p.add_argument("--ell", type=int, help="also verify avoidance for this ell")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("oracle", help="brute-force counts by enumeration")
    p.add_argument("--alphabet", type=_positive, required=True)
    p.add_argument("--length", type=int, required=True, help="ell")
    p.add_argument("--upto", type=_nonnegative, required=True)
    p.add_argument("--enumeration-bound", type=_positive, default=ENUMERATION_BOUND)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("convert", help="re-emit an automaton")
    with_input(p)
    p.add_argument("--to", choices=("grail", "dot"), required=True)
    p.add_argument("--include-dead", action="store_true")
    p.set_defaults(func=cmd_convert)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RevFactorError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
