"""DIMACS CNF/WCNF reading and writing, plus JSON result reports.

Accepted input::

    c comment
    p cnf <n> <m>           every clause weight 1
    p wcnf <n> <m>          each clause line starts with its weight
    [<weight>] lit lit ... 0

One clause per line.  The WCNF ``top`` field is not supported.  Output is
always ``p wcnf`` with clauses in canonical order, so writing is a fixed
point of parse-then-write.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import singledispatch
from typing import Any, Union

from .autarky import Autarky
from .cnf import MAX_WEIGHT, Clause, Formula, Partition, assignment_to_literals
from .derand import BoundCertificate
from .errors import (
    DimacsSyntaxError,
    EmptyClauseError,
    HeaderMismatchError,
    NonPositiveWeightError,
    TautologyError,
    WeightOverflowError,
)
from .kernel import AeDecision, Kernel
from .tsat import Violation

REPORT_VERSION = 1


_INT = re.compile(r"-?[0-9]{1,100}")


def _int(token: str, lineno: int) -> int:
    if not _INT.fullmatch(token):
        raise DimacsSyntaxError(f"expected an integer, got {token[:20]!r}", lineno)
    return int(token)


def parse_dimacs(text: Union[bytes, str]) -> Formula:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DimacsSyntaxError(f"input is not UTF-8 ({exc.reason})", 1) from None

    header = None
    weighted = False
    n_vars = n_clauses = 0
    clauses: list[Clause] = []
    total = 0
    lineno = 0
    for lineno, line in enumerate(text.split("\n"), start=1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("c"):
            continue
        if tokens[0] == "p":
            if header is not None:
                raise DimacsSyntaxError("second problem line", lineno)
            if len(tokens) < 4 or tokens[1] not in ("cnf", "wcnf"):
                raise DimacsSyntaxError("problem line must be 'p cnf <n> <m>' or 'p wcnf <n> <m>'", lineno)
            if len(tokens) > 4:
                if tokens[1] == "wcnf" and len(tokens) == 5:
                    raise DimacsSyntaxError("WCNF 'top' (hard clause) field is not supported", lineno)
                raise DimacsSyntaxError("trailing tokens on problem line", lineno)
            n_vars, n_clauses = _int(tokens[2], lineno), _int(tokens[3], lineno)
            if n_vars < 0 or n_clauses < 0:
                raise DimacsSyntaxError("negative count on problem line", lineno)
            header = tokens[1]
            weighted = header == "wcnf"
            continue
        if header is None:
            raise DimacsSyntaxError("clause before problem line", lineno)

        values = [_int(t, lineno) for t in tokens]
        if values[-1] != 0:
            raise DimacsSyntaxError("clause line must end with 0", lineno)
        values.pop()
        weight = 1
        if weighted:
            if not values:
                raise DimacsSyntaxError("missing clause weight", lineno)
            weight = values.pop(0)
            if weight < 1:
                raise NonPositiveWeightError(f"line {lineno}: clause weight must be >= 1, got {weight}")
            if weight > MAX_WEIGHT:
                raise WeightOverflowError(f"line {lineno}: weight exceeds 63 bits")
        if 0 in values:
            raise DimacsSyntaxError("0 inside a clause", lineno)
        if not values:
            raise EmptyClauseError(f"line {lineno}: empty clause")
        lits = set(values)
        for lit in lits:
            if abs(lit) > n_vars:
                raise HeaderMismatchError(f"literal {lit} exceeds declared variable count {n_vars}", lineno)
            if -lit in lits:
                raise TautologyError(f"line {lineno}: clause contains {abs(lit)} and -{abs(lit)}")
        total += weight
        if total > MAX_WEIGHT:
            raise WeightOverflowError(f"line {lineno}: total weight exceeds 63 bits")
        clauses.append(Clause.of(lits, weight))
    if header is None:
        raise DimacsSyntaxError("missing problem line", max(lineno, 1))
    if len(clauses) != n_clauses:
        raise HeaderMismatchError(
            f"problem line declares {n_clauses} clauses, found {len(clauses)}", max(lineno, 1)
        )
    return Formula(clauses)


def write_dimacs(f: Formula) -> str:
    n = max(f.variables, default=0)
    lines = [f"p wcnf {n} {len(f)}"]
    lines += [" ".join(map(str, (c.weight, *c.literals, 0))) for c in f]
    return "\n".join(lines) + "\n"


def read_dimacs_file(path: str) -> Formula:
    with open(path, "rb") as fh:
        return parse_dimacs(fh.read())


# -- reports --------------------------------------------------------------------

def rational(q: Fraction) -> dict[str, int]:
    return {"num": q.numerator, "den": q.denominator}


def formula_summary(f: Formula) -> dict[str, Any]:
    return {"variables": len(f.variables), "clauses": len(f), "total_weight": f.total_weight}


@singledispatch
def to_report(result: Any) -> dict[str, Any]:
    raise TypeError(f"no report schema for {type(result).__name__}")


@to_report.register
def _(aut: Autarky) -> dict[str, Any]:
    return {
        "vars": sorted(aut.u),
        "assignment": assignment_to_literals(aut.beta),
        "touched_weight": aut.f_u.total_weight,
    }


@to_report.register
def _(cert: BoundCertificate) -> dict[str, Any]:
    out = {
        "type": "bound",
        "guarantee_kind": cert.kind.value,
        "value": cert.value,
        "guarantee": rational(cert.guarantee),
        "inequality": {"scale": cert.scale, "scaled_value": cert.scale * cert.value, "rhs": cert.rhs},
        "holds": cert.holds,
        "assignment": assignment_to_literals(cert.assignment),
    }
    if cert.autarky is not None:
        out["autarky"] = to_report(cert.autarky)
    if cert.residual is not None:
        out["residual"] = formula_summary(cert.residual)
    return out


@to_report.register
def _(kern: Kernel) -> dict[str, Any]:
    return {
        "residual": formula_summary(kern.residual),
        "residual_variables": sorted(kern.residual.variables),
        "k_prime": kern.k_prime,
        "threshold_numerator": kern.threshold_numerator,
        "autarky": to_report(kern.autarky),
    }


@to_report.register
def _(dec: AeDecision) -> dict[str, Any]:
    return {
        "type": "ae-decision",
        "decision": dec.label,
        "k": dec.instance.k,
        "method": dec.method.value,
        "witness": assignment_to_literals(dec.witness) if dec.witness is not None else None,
        "kernel": to_report(dec.kernel),
    }


@to_report.register
def _(p: Partition) -> dict[str, Any]:
    return {
        "type": "partition",
        "f1": formula_summary(p.f1),
        "f2": formula_summary(p.f2),
        "f_soft": formula_summary(p.f_soft),
        "v1": sorted(p.v1),
        "v2": sorted(p.v2),
        "v_soft": sorted(p.v_soft),
        "n1": p.n1,
        "n2": p.n2,
    }


@to_report.register
def _(v: Violation) -> dict[str, Any]:
    return {
        "kind": v.kind.value,
        "clauses": [{"literals": list(c.literals), "weight": c.weight} for c in v.clauses],
    }


def write_report(result: Any, **extra: Any) -> str:
    """JSON report; rationals as {num, den}, assignments as signed literals."""
    doc = {"report_version": REPORT_VERSION, **to_report(result), **extra}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
