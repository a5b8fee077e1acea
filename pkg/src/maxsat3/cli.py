"""Command-line interface: ``maxsat3 <command> ...``.

Exit codes: 0 success (a NO decision included), 2 input/parse error,
3 formula not 3-satisfiable where required, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Optional, Sequence, TextIO

from . import __version__
from .autarky import decompose, is_expanding
from .cnf import Formula, assignment_to_literals, evaluate, flip_normalize, is_fat, literals_to_assignment, partition
from .derand import derandomize_biased, expanding_bound, full_bound, hard_assignment_n1, hard_assignment_n2
from .dimacs import formula_summary, read_dimacs_file, to_report, write_dimacs, write_report
from .errors import CnfError, DimacsSyntaxError, NotThreeSatisfiableError, ResourceLimitError
from .generate import GenSpec, Shape, gen
from .kernel import DEFAULT_VARIABLE_CAP, AeInstance, solve_ae
from .tsat import find_violation, require_three_satisfiable

EXIT_OK, EXIT_INPUT, EXIT_NOT_3SAT, EXIT_RESOURCE = 0, 2, 3, 4


def verify(f: Formula, a, claimed: int) -> bool:
    return evaluate(f, a) == claimed


def read_assignment_file(path: str) -> dict[int, bool]:
    with open(path, encoding="utf-8") as fh:
        tokens = [t for t in fh.read().split() if t != "v"]
    try:
        return literals_to_assignment(int(t) for t in tokens)
    except ValueError as exc:
        raise DimacsSyntaxError(f"bad assignment file: {exc}") from None


def _lits(xs) -> str:
    return " ".join(map(str, xs)) or "(none)"


def cmd_check(args, out: TextIO) -> int:
    f = read_dimacs_file(args.file)
    v = find_violation(f, args.t)
    if args.json:
        out.write(json.dumps({"report_version": 1, "type": "check", "t": args.t,
                              "satisfiable": v is None,
                              "violation": to_report(v) if v else None}, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"{args.t}-satisfiable: {'yes' if v is None else 'no'}\n")
    if v is not None:
        clauses = "  ".join("{" + ", ".join(map(str, c.literals)) + "}" for c in v.clauses)
        out.write(f"violation ({v.kind.value}): {clauses}\n")
    return EXIT_OK


def cmd_partition(args, out: TextIO) -> int:
    f = read_dimacs_file(args.file)
    require_three_satisfiable(f)
    fn, flips = flip_normalize(f)
    p = partition(fn)
    if args.json:
        out.write(write_report(p, flipped=sorted(flips.flipped), fat=is_fat(p)))
        return EXIT_OK
    out.write(f"flipped: {_lits(sorted(flips.flipped))}\n")
    for name, part in (("F1", p.f1), ("F2", p.f2), ("Fs", p.f_soft)):
        out.write(f"{name}: {len(part)} clauses, weight {part.total_weight}\n")
    out.write(f"V1: {_lits(sorted(p.v1))}\nV2: {_lits(sorted(p.v2))}\nVs: {_lits(sorted(p.v_soft))}\n")
    out.write(f"n1={p.n1} n2={p.n2} fat={'yes' if is_fat(p) else 'no'}\n")
    return EXIT_OK


def cmd_decompose(args, out: TextIO) -> int:
    f = read_dimacs_file(args.file)
    aut, residual = decompose(f)
    expanding = is_expanding(residual)
    if args.json:
        doc = {"report_version": 1, "type": "decomposition", "autarky": to_report(aut),
               "residual": formula_summary(residual), "residual_expanding": expanding,
               "residual_formula": write_dimacs(residual)}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"autarky U: {_lits(sorted(aut.u))}\n")
    out.write(f"beta: {_lits(assignment_to_literals(aut.beta))}\n")
    out.write(f"w(F_U): {aut.f_u.total_weight}\n")
    out.write(f"residual: {len(residual)} clauses, weight {residual.total_weight}, "
              f"{len(residual.variables)} variables, expanding={'yes' if expanding else 'no'}\n")
    out.write(write_dimacs(residual))
    return EXIT_OK


def cmd_bound(args, out: TextIO) -> int:
    f = read_dimacs_file(args.file)
    if args.mode in ("auto", "full"):
        cert = full_bound(f)
    elif args.mode == "expanding":
        cert = expanding_bound(f)
    else:
        require_three_satisfiable(f)
        fn, flips = flip_normalize(f)
        construct = {"yannakakis": derandomize_biased, "hard-n1": hard_assignment_n1,
                     "hard-n2": hard_assignment_n2}[args.mode]
        inner = construct(fn)
        cert = dataclasses.replace(inner, assignment=flips.apply_assignment(inner.assignment))
    if args.json:
        out.write(write_report(cert))
        return EXIT_OK
    out.write(f"kind: {cert.kind.value}\nvalue: {cert.value}\n")
    out.write(f"guarantee: {cert.guarantee} ({cert.scale} * {cert.value} = {cert.scale * cert.value} >= {cert.rhs})\n")
    out.write(f"assignment: {_lits(assignment_to_literals(cert.assignment))}\n")
    if cert.autarky is not None:
        out.write(f"autarky U: {_lits(sorted(cert.autarky.u))} (w(F_U)={cert.autarky.f_u.total_weight})\n")
    return EXIT_OK


def cmd_solve_ae(args, out: TextIO) -> int:
    f = read_dimacs_file(args.file)
    dec = solve_ae(AeInstance(f, args.k), variable_cap=args.cap)
    if args.json:
        out.write(write_report(dec))
        return EXIT_OK
    out.write(f"{dec.label.upper()}\n")
    out.write(f"method: {dec.method.value}\n")
    kern = dec.kernel
    out.write(f"kernel: {len(kern.residual.variables)} variables, weight {kern.residual.total_weight}, "
              f"k'={kern.k_prime}, threshold={kern.threshold_numerator}\n")
    if dec.witness is not None:
        out.write(f"witness: {_lits(assignment_to_literals(dec.witness))}\n")
    return EXIT_OK


def cmd_gen(args, out: TextIO) -> int:
    spec = GenSpec(args.vars, args.clauses, args.max_weight, args.max_len, args.seed, Shape(args.shape))
    out.write(write_dimacs(gen(spec)))
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    f = read_dimacs_file(args.file)
    a = read_assignment_file(args.assignment)
    value = evaluate(f, a)
    ok = value == args.claimed
    if args.json:
        out.write(json.dumps({"report_version": 1, "type": "verify", "claimed": args.claimed,
                              "value": value, "verified": ok}, indent=2, sort_keys=True) + "\n")
    else:
        out.write(f"{'verified' if ok else 'mismatch'}: value {value}, claimed {args.claimed}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxsat3", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report schema")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="t-satisfiability with a violation witness")
    p.add_argument("file")
    p.add_argument("--t", type=int, choices=(1, 2, 3), default=3)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("partition", parents=[common], help="unit/hard/soft partition")
    p.add_argument("file")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("decompose", parents=[common], help="matching autarky and expanding residual")
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("bound", parents=[common], help="certified lower-bound assignment")
    p.add_argument("file")
    p.add_argument("--mode", default="auto",
                   choices=("auto", "full", "expanding", "yannakakis", "hard-n1", "hard-n2"))
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("solve-ae", parents=[common], help="decide sat >= 2/3 w + k")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_VARIABLE_CAP, help="brute-force variable cap")
    p.set_defaults(func=cmd_solve_ae)

    p = sub.add_parser("gen", help="write a seeded random WCNF instance to stdout")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--clauses", type=int, required=True)
    p.add_argument("--max-weight", type=int, default=1)
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shape", choices=[s.value for s in Shape], default=Shape.GENERAL_3SAT.value)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="check an assignment's satisfied weight")
    p.add_argument("file")
    p.add_argument("--assignment", required=True)
    p.add_argument("--claimed", type=int, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: TextIO = sys.stdout) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except NotThreeSatisfiableError as exc:
        print(f"error: formula is not 3-satisfiable: {exc}", file=sys.stderr)
        return EXIT_NOT_3SAT
    except ResourceLimitError as exc:
        print(f"error: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (OSError, ValueError, CnfError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
