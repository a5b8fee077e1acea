import itertools
import random

import pytest

from maxsat3.cnf import build_formula, evaluate
from maxsat3.generate import GenSpec, Shape, gen

# {x1}, {x2}, {-x1, y}, {-x2, -y} with y = 3
FOUR_CLAUSE = [([1], 1), ([2], 1), ([-1, 3], 1), ([-2, -3], 1)]
# {a, b}, {c}x2
AB_C = [([1, 2], 1), ([3], 2)]


@pytest.fixture
def four_clause():
    return build_formula(FOUR_CLAUSE)


@pytest.fixture
def ab_c():
    return build_formula(AB_C)


def all_assignments(variables):
    vs = sorted(variables)
    for bits in itertools.product((False, True), repeat=len(vs)):
        yield dict(zip(vs, bits))


def optimum(f):
    """Plain-Python exhaustive maximum, independent of kernel.brute_force_max."""
    return max((evaluate(f, a) for a in all_assignments(f.variables)), default=0)


def corpus_spec(i, shape, max_vars=10, max_clauses=20, max_weight=5):
    r = random.Random(i)
    return GenSpec(
        n_vars=r.randint(1, max_vars),
        n_clauses=r.randint(0, max_clauses),
        max_weight=r.randint(1, max_weight),
        max_clause_len=r.randint(1, 4),
        seed=i,
        shape=shape,
    )


def corpus(shape, size, offset=0):
    return [gen(corpus_spec(offset + i, shape)) for i in range(size)]


# filled by test_acceptance.py and echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
