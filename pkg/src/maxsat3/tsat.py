"""t-satisfiability for t <= 3.

A formula is 3-satisfiable exactly when it contains none of the forbidden
patterns (l and m are literals over distinct variables, any polarity)::

    {l}, {-l}                       conflicting-units
    {l}, {m}, {-l, -m}              unit-unit-pair-clause
    {l}, {-l, m}, {-l, -m}          unit-two-pair-clauses

The pattern check only needs hash lookups over unit and binary clauses.
:func:`triple_satisfiable` is the brute-force oracle used to validate it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional

from .cnf import Clause, Formula
from .errors import NotThreeSatisfiableError


class ViolationKind(str, enum.Enum):
    CONFLICTING_UNITS = "conflicting-units"
    UNIT_UNIT_PAIR_CLAUSE = "unit-unit-pair-clause"
    UNIT_TWO_PAIR_CLAUSES = "unit-two-pair-clauses"
    EMPTY_CLAUSE = "empty-clause"  # unreachable: Clause rejects empty literal sets


@dataclass(frozen=True)
class Violation:
    clauses: tuple[Clause, ...]
    kind: ViolationKind


def _consistent(lits: tuple[int, ...]) -> bool:
    seen = set(lits)
    return not any(-l in seen for l in lits)


def jointly_satisfiable(*clauses: Clause) -> bool:
    """True iff one assignment satisfies every given clause.

    Scans every choice of one literal per clause for a conflict-free pick.
    """
    return any(_consistent(pick) for pick in itertools.product(*(c.literals for c in clauses)))


def triple_satisfiable(c1: Clause, c2: Clause, c3: Clause) -> bool:
    return jointly_satisfiable(c1, c2, c3)


def find_violation(f: Formula, t: int = 3) -> Optional[Violation]:
    if t not in (1, 2, 3):
        raise ValueError(f"t must be 1, 2 or 3, got {t}")
    if t == 1:
        return None

    units = {c.literals[0]: c for c in f if c.is_unit}
    for lit in sorted(units, key=abs):
        if lit > 0 and -lit in units:
            return Violation((units[lit], units[-lit]), ViolationKind.CONFLICTING_UNITS)
    if t == 2:
        return None

    binaries = {c.literals: c for c in f if len(c) == 2}

    def binary(a: int, b: int) -> Optional[Clause]:
        return binaries.get((a, b) if abs(a) < abs(b) else (b, a))

    for (a, b), c in binaries.items():
        if -a in units and -b in units:
            return Violation((units[-a], units[-b], c), ViolationKind.UNIT_UNIT_PAIR_CLAUSE)
        # c = {shared, other}; its partner is {shared, -other}, both killed by {-shared}
        for shared, other in ((a, b), (b, a)):
            if -shared in units and other > 0:
                partner = binary(shared, -other)
                if partner is not None:
                    return Violation(
                        (units[-shared], c, partner), ViolationKind.UNIT_TWO_PAIR_CLAUSES
                    )
    return None


def is_t_satisfiable(f: Formula, t: int) -> bool:
    return find_violation(f, t) is None


def brute_force_t_satisfiable(f: Formula, t: int) -> bool:
    """Check every subset of at most ``t`` clauses directly (oracle; O(m^t))."""
    clauses = f.clauses
    for size in range(1, t + 1):
        for group in itertools.combinations(clauses, size):
            if not jointly_satisfiable(*group):
                return False
    return True


def require_three_satisfiable(f: Formula) -> None:
    v = find_violation(f, 3)
    if v is not None:
        shown = ", ".join(str(list(c.literals)) for c in v.clauses)
        raise NotThreeSatisfiableError(f"{v.kind.value}: {shown}")
