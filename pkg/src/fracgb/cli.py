"""Command-line front end.

Exit status: 0 when every guarantee flag holds, 2 when one fails (a bug by
construction), 3 on input errors.
"""
from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import oracle
from .algebra import DEFAULT_PRIME, LexOrder, check_prime, max_variable_index, parse_polynomial
from .encode import ENUMERATION_CAP_BITS, check_variety_equivalence, encode
from .errors import ContradictionError, FracGBError, ParseError
from .groebner import buchberger, ideal_member, is_consistent, is_groebner, is_reduced
from .instances import KINDS, OXR, generate_satisfiable, parse_instance, serialize_instance
from .pipeline import PipelineError, run_instance
from .solver import STRATEGIES
from .tailor import check_property1, check_property2, check_two_fifths, tailor

EXIT_OK = 0
EXIT_FLAG = 2
EXIT_INPUT = 3


def _rational(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if not 0 <= q <= 1:
        raise argparse.ArgumentTypeError(f"q must lie in [0, 1], got {text}")
    return q


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def parse_system(text: str, prime=None):
    """Read a polynomial system file; returns ``(polys, nvars, prime)``.

    Lines starting with ``c`` are comments, except ``c vars <n> prime <p>``
    which fixes the ring. Without it the ring is sized by the largest ``y<k>``.
    """
    nvars = None
    header_prime = None
    bodies = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            mt = re.match(r"c\s+vars\s+(\d+)\s+prime\s+(\d+)", line)
            if mt:
                nvars, header_prime = int(mt.group(1)), int(mt.group(2))
            continue
        bodies.append((lineno, line))
    if prime is None:
        prime = header_prime or DEFAULT_PRIME
    check_prime(prime)
    if nvars is None:
        nvars = max((max_variable_index(b) for _, b in bodies), default=0)
    polys = [parse_polynomial(b, nvars, prime, line=n) for n, b in bodies]
    return polys, nvars, prime


def cmd_run(args) -> int:
    inst = parse_instance(_read(args.infile))
    if args.kind and inst.kind != args.kind:
        raise ParseError(f"--kind {args.kind} does not match instance kind {inst.kind}")
    q = args.q if args.q is not None else _default_q(inst.kind)
    report = run_instance(inst, q, args.strategy, args.seed, args.prime)
    _write(args.report, report.to_text())
    return EXIT_OK if report.all_flags_ok else EXIT_FLAG


def cmd_gen(args) -> int:
    inst, _ = generate_satisfiable(args.kind, args.literals, args.predicates, args.seed)
    _write(args.out, serialize_instance(inst))
    return EXIT_OK


def cmd_encode(args) -> int:
    inst = parse_instance(_read(args.infile))
    tailored, rec = tailor(inst)
    sys_ = encode(tailored, rec, args.prime)
    _write(args.out, sys_.to_text())
    if args.record:
        _write(args.record, rec.to_text())
    return EXIT_OK


def cmd_gb(args) -> int:
    polys, nvars, _ = parse_system(_read(args.infile), args.prime)
    basis = buchberger(polys, LexOrder.default(nvars))
    _write(args.out, basis.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.infile))
    if inst.num_literals > ENUMERATION_CAP_BITS:
        raise ParseError(f"verify needs at most {ENUMERATION_CAP_BITS} literals")
    lines = []
    ok = True

    def check(name, value):
        nonlocal ok
        ok = ok and bool(value)
        lines.append(f"{name}: {'ok' if value else 'FAIL'}")

    if inst.predicates and not oracle.is_satisfiable(inst):
        frac, _ = oracle.brute_max_fraction(inst)
        sys.stdout.write(f"NotSatisfiable: best fraction {frac.numerator}/{frac.denominator}\n")
        return EXIT_INPUT
    lines.append("satisfiable: ok")
    tailored, rec = tailor(inst)
    check("tailored_satisfiable", oracle.is_satisfiable(tailored))
    check("property1", check_property1(tailored))
    check("property2", check_property2(tailored))
    check("two_fifths", check_two_fifths(tailored))
    system = encode(tailored, rec, args.prime)
    check("variety_equivalence", check_variety_equivalence(system, tailored))
    order = LexOrder.default(system.nvars)
    basis = buchberger(system.polys, order)
    check("groebner_certificate", is_groebner(basis) and is_reduced(basis))
    check("generators_in_ideal", all(ideal_member(f, basis) for f in system.polys))
    check("consistent", is_consistent(basis))
    q = args.q if args.q is not None else _default_q(inst.kind)
    for strategy in STRATEGIES:
        report = run_instance(inst, q, strategy, args.seed, args.prime, check_satisfiable=False)
        check(f"pipeline_{strategy}", report.all_flags_ok)
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FLAG


def _default_q(kind):
    return Fraction(17, 20) if kind == OXR else Fraction(3, 4)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracgb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_in=True):
        if need_in:
            p.add_argument("--in", dest="infile", required=True, help="input file ('-' for stdin)")
        p.add_argument("--prime", type=_prime, default=DEFAULT_PRIME)

    run = sub.add_parser("run", help="run the full reduction pipeline and print a report")
    common(run)
    run.add_argument("--kind", choices=KINDS)
    run.add_argument("--q", type=_rational, default=None, help="rational a/b in [0, 1]")
    run.add_argument("--strategy", choices=STRATEGIES, default="greedy")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--report", default=None, help="report path (default stdout)")
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("gen", help="write a planted satisfiable instance")
    gen.add_argument("--kind", choices=KINDS, required=True)
    gen.add_argument("--literals", type=int, required=True)
    gen.add_argument("--predicates", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_gen)

    enc = sub.add_parser("encode", help="tailor an instance and write its polynomial system")
    common(enc)
    enc.add_argument("--out", default=None)
    enc.add_argument("--record", default=None, help="also write the tailoring record here")
    enc.set_defaults(func=cmd_encode)

    gb = sub.add_parser("gb", help="print the reduced lex Groebner basis of a system file")
    gb.add_argument("--in", dest="infile", required=True)
    gb.add_argument("--prime", type=_prime, default=None)
    gb.add_argument("--out", default=None)
    gb.set_defaults(func=cmd_gb)

    ver = sub.add_parser("verify", help="run the brute-force checks on a small instance")
    common(ver)
    ver.add_argument("--q", type=_rational, default=None)
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except PipelineError as exc:
        sys.stderr.write(f"error: {exc}\n")
        if exc.stage in ("parse", "input", "oracle") or isinstance(exc.cause, ContradictionError):
            return EXIT_INPUT
        return EXIT_FLAG
    except (FracGBError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
