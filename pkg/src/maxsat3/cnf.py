"""Weighted CNF formulas.

Literals are DIMACS-style signed integers: ``v`` is the variable ``v`` and
``-v`` its negation.  A :class:`Formula` is an immutable set of weighted
clauses in which identical literal sets are merged by adding their weights.
Truth assignments are plain ``dict[int, bool]`` mappings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ConflictingUnitsError,
    EmptyClauseError,
    IncompleteAssignmentError,
    NonPositiveWeightError,
    NotNormalizedError,
    NotSubformulaError,
    TautologyError,
    WeightOverflowError,
)

MAX_WEIGHT = 2**63 - 1

Assignment = Mapping[int, bool]
RawClause = tuple[Sequence[int], int]


def literal_key(lit: int) -> tuple[int, bool]:
    return abs(lit), lit < 0


def clause_key(literals: Sequence[int]) -> tuple[tuple[int, bool], ...]:
    """Sort key for canonical clause order (ascending by sorted literal tuple)."""
    return tuple(literal_key(lit) for lit in literals)


def _canonical_literals(literals: Iterable[int]) -> tuple[int, ...]:
    lits = set()
    for lit in literals:
        if isinstance(lit, bool) or not isinstance(lit, int) or lit == 0:
            raise ValueError(f"literal must be a non-zero integer, got {lit!r}")
        lits.add(lit)
    if not lits:
        raise EmptyClauseError("clause has no literals")
    for lit in lits:
        if -lit in lits:
            raise TautologyError(f"clause contains both {abs(lit)} and -{abs(lit)}")
    return tuple(sorted(lits, key=literal_key))


@dataclass(frozen=True)
class Clause:
    """A weighted clause with its literals in canonical (ascending variable) order."""

    literals: tuple[int, ...]
    weight: int = 1

    @classmethod
    def of(cls, literals: Iterable[int], weight: int = 1) -> "Clause":
        if isinstance(weight, bool) or not isinstance(weight, int):
            raise TypeError(f"weight must be an int, got {weight!r}")
        if weight < 1:
            raise NonPositiveWeightError(f"clause weight must be >= 1, got {weight}")
        if weight > MAX_WEIGHT:
            raise WeightOverflowError(f"clause weight {weight} exceeds 63 bits")
        return cls(_canonical_literals(literals), weight)

    def __len__(self) -> int:
        return len(self.literals)

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(abs(lit) for lit in self.literals)

    @property
    def is_unit(self) -> bool:
        return len(self.literals) == 1

    def satisfied_by(self, assignment: Assignment) -> bool:
        return any(assignment[abs(lit)] == (lit > 0) for lit in self.literals)


class Formula:
    """Immutable weighted clause set.

    Build instances with :func:`build_formula` (from raw literal lists) or
    directly from already-valid :class:`Clause` objects; duplicate literal
    sets are merged either way.
    """

    __slots__ = ("_weights", "_clauses", "_variables", "_total")

    def __init__(self, clauses: Iterable[Clause] = ()):
        weights: dict[tuple[int, ...], int] = {}
        total = 0
        for clause in clauses:
            merged = weights.get(clause.literals, 0) + clause.weight
            total += clause.weight
            if merged > MAX_WEIGHT or total > MAX_WEIGHT:
                raise WeightOverflowError("total clause weight exceeds 63 bits")
            weights[clause.literals] = merged
        order = sorted(weights, key=clause_key)
        self._weights = {lits: weights[lits] for lits in order}
        self._clauses = tuple(Clause(lits, w) for lits, w in self._weights.items())
        self._variables = frozenset(abs(lit) for lits in order for lit in lits)
        self._total = total

    @property
    def clauses(self) -> tuple[Clause, ...]:
        return self._clauses

    @property
    def variables(self) -> frozenset[int]:
        return self._variables

    @property
    def total_weight(self) -> int:
        return self._total

    def weight_of(self, literals: Iterable[int]) -> int:
        """Weight of the clause with exactly these literals (0 if absent)."""
        return self._weights.get(tuple(sorted(set(literals), key=literal_key)), 0)

    def __contains__(self, literals: object) -> bool:
        if isinstance(literals, Clause):
            return self._weights.get(literals.literals) == literals.weight
        return self.weight_of(literals) > 0  # type: ignore[arg-type]

    def __iter__(self) -> Iterator[Clause]:
        return iter(self._clauses)

    def __len__(self) -> int:
        return len(self._clauses)

    def __bool__(self) -> bool:
        return bool(self._clauses)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Formula):
            return NotImplemented
        return self._weights == other._weights

    def __hash__(self) -> int:
        return hash(tuple(self._weights.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{list(c.literals)}:{c.weight}" for c in self._clauses)
        return f"Formula({{{body}}})"

    def to_raw(self) -> list[RawClause]:
        return [(list(c.literals), c.weight) for c in self._clauses]


EMPTY = Formula()


def build_formula(raw: Iterable[RawClause]) -> Formula:
    """Validate ``(literals, weight)`` pairs and merge duplicates."""
    return Formula(Clause.of(lits, weight) for lits, weight in raw)


@dataclass(frozen=True)
class FlipMap:
    """Set of variables whose polarity is switched everywhere."""

    flipped: frozenset[int] = frozenset()

    def lit(self, lit: int) -> int:
        return -lit if abs(lit) in self.flipped else lit

    def apply(self, f: Formula) -> Formula:
        if not self.flipped:
            return f
        return Formula(
            Clause(tuple(sorted((self.lit(l) for l in c.literals), key=literal_key)), c.weight)
            for c in f
        )

    def apply_assignment(self, a: Assignment) -> dict[int, bool]:
        return {v: (not val) if v in self.flipped else val for v, val in a.items()}


def flip_normalize(f: Formula) -> tuple[Formula, FlipMap]:
    """Switch polarity of every variable with a negative unit clause.

    Afterwards all unit clauses are positive.  Satisfied weight is preserved
    under the matching assignment transform ``FlipMap.apply_assignment``.
    """
    units = {c.literals[0] for c in f if c.is_unit}
    for lit in units:
        if -lit in units:
            raise ConflictingUnitsError(f"both {{{abs(lit)}}} and {{-{abs(lit)}}} are present")
    flips = FlipMap(frozenset(-lit for lit in units if lit < 0))
    return flips.apply(f), flips


@dataclass(frozen=True)
class Partition:
    """Unit / hard-binary / soft split of a normalized formula.

    ``f2`` holds the clauses {-x, y} and {-x, -y} with x a unit variable and
    y not; ``v2`` are the non-unit variables of ``f2``.
    """

    f1: Formula
    f2: Formula
    f_soft: Formula
    v1: frozenset[int]
    v2: frozenset[int]
    v_soft: frozenset[int]

    @property
    def f_hard(self) -> Formula:
        return Formula(self.f1.clauses + self.f2.clauses)

    @property
    def n1(self) -> int:
        return len(self.v1)

    @property
    def n2(self) -> int:
        return len(self.v2)


def is_hard_binary(c: Clause, v1: frozenset[int]) -> bool:
    if len(c) != 2:
        return False
    a, b = c.literals
    for x, y in ((a, b), (b, a)):
        if x < 0 and -x in v1 and abs(y) not in v1:
            return True
    return False


def partition(f: Formula) -> Partition:
    f1, f2, soft = [], [], []
    for c in f:
        if c.is_unit:
            if c.literals[0] < 0:
                raise NotNormalizedError(f"negative unit clause {{{c.literals[0]}}}")
            f1.append(c)
    v1 = frozenset(c.literals[0] for c in f1)
    for c in f:
        if c.is_unit:
            continue
        (f2 if is_hard_binary(c, v1) else soft).append(c)
    v2 = frozenset(abs(l) for c in f2 for l in c.literals) - v1
    return Partition(
        f1=Formula(f1),
        f2=Formula(f2),
        f_soft=Formula(soft),
        v1=v1,
        v2=v2,
        v_soft=f.variables - v1 - v2,
    )


def is_fat(p: Partition) -> bool:
    return 133 * p.f_soft.total_weight >= 18 * (p.n1 + p.n2)


def evaluate(f: Formula, a: Assignment) -> int:
    """Total weight of clauses of ``f`` satisfied by ``a``."""
    missing = [v for v in f.variables if v not in a]
    if missing:
        raise IncompleteAssignmentError(f"assignment misses variables {sorted(missing)}")
    return sum(c.weight for c in f if c.satisfied_by(a))


def subformula_touching(f: Formula, xs: Iterable[int]) -> Formula:
    xs = frozenset(xs)
    if not xs:
        return EMPTY
    return Formula(c for c in f if any(abs(l) in xs for l in c.literals))


def remove_clauses(f: Formula, sub: Formula) -> Formula:
    for c in sub:
        if c not in f:
            raise NotSubformulaError(f"clause {list(c.literals)} (weight {c.weight}) not in formula")
    if not sub:
        return f
    return Formula(c for c in f if c.literals not in sub._weights)


def assignment_to_literals(a: Assignment) -> list[int]:
    """Signed-literal form of an assignment, ascending by variable."""
    return [v if a[v] else -v for v in sorted(a)]


def literals_to_assignment(lits: Iterable[int]) -> dict[int, bool]:
    out: dict[int, bool] = {}
    for lit in lits:
        if lit == 0:
            continue
        v = abs(lit)
        if v in out and out[v] != (lit > 0):
            raise ValueError(f"variable {v} assigned both ways")
        out[v] = lit > 0
    return out
