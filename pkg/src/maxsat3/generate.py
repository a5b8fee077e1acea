"""Seeded random instance generators.

All randomness comes from :class:`random.Random` (MT19937) seeded with
``GenSpec.seed``, so a (shape, parameters, seed) tuple reproduces the same
formula on any CPython.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from .autarky import is_expanding
from .cnf import Clause, Formula, partition
from .errors import GenerationExhaustedError
from .tsat import is_t_satisfiable

RETRIES_PER_CLAUSE = 10_000
EXPANDING_ATTEMPTS = 1_000


class Shape(str, enum.Enum):
    GENERAL_3SAT = "general-3sat"
    HARD = "hard"
    EXPANDING_3SAT = "expanding-3sat"


@dataclass(frozen=True)
class GenSpec:
    n_vars: int
    n_clauses: int
    max_weight: int = 1
    max_clause_len: int = 3
    seed: int = 0
    shape: Shape = Shape.GENERAL_3SAT

    def __post_init__(self) -> None:
        if self.n_clauses > 0 and self.n_vars < 1:
            raise ValueError("n_vars must be >= 1 for a non-empty formula")
        if self.max_clause_len < 1 or self.max_weight < 1:
            raise ValueError("max_clause_len and max_weight must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def random_clause(rng: random.Random, n_vars: int, max_len: int, max_weight: int) -> Clause:
    size = rng.randint(1, min(max_len, n_vars))
    vs = rng.sample(range(1, n_vars + 1), size)
    return Clause.of([v if rng.random() < 0.5 else -v for v in vs], rng.randint(1, max_weight))


def random_formula(rng: random.Random, n_vars: int, n_clauses: int, max_len: int = 3, max_weight: int = 1) -> Formula:
    """Unconstrained random formula (may violate 3-satisfiability)."""
    return Formula(random_clause(rng, n_vars, max_len, max_weight) for _ in range(n_clauses))


def _grow(rng: random.Random, n_clauses: int, draw) -> Formula:
    clauses: list[Clause] = []
    for _ in range(n_clauses):
        for _ in range(RETRIES_PER_CLAUSE):
            c = draw(rng, clauses)
            if is_t_satisfiable(Formula(clauses + [c]), 3):
                clauses.append(c)
                break
        else:
            raise GenerationExhaustedError(
                f"no 3-satisfiable extension found after {RETRIES_PER_CLAUSE} draws"
            )
    return Formula(clauses)


def _general(rng: random.Random, spec: GenSpec) -> Formula:
    return _grow(
        rng, spec.n_clauses,
        lambda r, _: random_clause(r, spec.n_vars, spec.max_clause_len, spec.max_weight),
    )


def _hard(rng: random.Random, spec: GenSpec) -> Formula:
    vs = list(range(1, spec.n_vars + 1))
    rng.shuffle(vs)
    n1 = rng.randint(1, max(1, spec.n_vars - 1))
    units, others = vs[:n1], vs[n1:]

    def draw(r: random.Random, clauses: list[Clause]) -> Clause:
        weight = r.randint(1, spec.max_weight)
        have = sorted(c.literals[0] for c in clauses if c.is_unit)
        if not have or not others or r.random() < 1 / 3:
            return Clause.of([r.choice(units)], weight)
        y = r.choice(others)
        return Clause.of([-r.choice(have), y if r.random() < 0.5 else -y], weight)

    f = _grow(rng, spec.n_clauses, draw)
    assert not partition(f).f_soft, "hard generator emitted a soft clause"
    return f


def gen(spec: GenSpec) -> Formula:
    rng = random.Random(spec.seed)
    shape = Shape(spec.shape)
    if spec.n_clauses == 0:
        return Formula()
    if shape is Shape.GENERAL_3SAT:
        return _general(rng, spec)
    if shape is Shape.HARD:
        return _hard(rng, spec)
    for _ in range(EXPANDING_ATTEMPTS):
        f = _general(rng, spec)
        if is_expanding(f):
            return f
    raise GenerationExhaustedError(f"no expanding formula in {EXPANDING_ATTEMPTS} attempts")
