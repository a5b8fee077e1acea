import random

import pytest

from maxsat3.cnf import Clause, Formula, build_formula
from maxsat3.generate import random_formula
from maxsat3.tsat import (
    ViolationKind,
    brute_force_t_satisfiable,
    find_violation,
    is_t_satisfiable,
    jointly_satisfiable,
    triple_satisfiable,
)

C = Clause.of


@pytest.mark.parametrize(
    "c1, c2, c3, expected",
    [
        (C([1]), C([2]), C([-1, -2]), False),
        (C([1]), C([-1, 2]), C([-1, -2]), False),
        (C([1]), C([1]), C([1]), True),
        (C([-1]), C([2]), C([1, -2]), False),
        (C([1]), C([2]), C([-1, -2, 3]), True),
        (C([1, 2]), C([-1, 2]), C([-2, 1]), True),
    ],
)
def test_triple_satisfiable(c1, c2, c3, expected):
    assert triple_satisfiable(c1, c2, c3) is expected


def test_pair_check():
    assert not jointly_satisfiable(C([1]), C([-1]))
    assert jointly_satisfiable(C([1, 2]), C([-1]))


class TestPatterns:
    def test_conflicting_units(self):
        f = build_formula([([1], 1), ([-1], 1)])
        assert not is_t_satisfiable(f, 2)
        assert is_t_satisfiable(f, 1)
        v = find_violation(f, 2)
        assert v.kind is ViolationKind.CONFLICTING_UNITS
        assert not jointly_satisfiable(*v.clauses)

    def test_unit_two_pair(self):
        f = build_formula([([1], 1), ([-1, 2], 1), ([-1, -2], 1)])
        assert is_t_satisfiable(f, 2)
        assert not is_t_satisfiable(f, 3)
        assert find_violation(f, 3).kind is ViolationKind.UNIT_TWO_PAIR_CLAUSES

    def test_unit_unit_pair(self):
        f = build_formula([([1], 1), ([2], 1), ([-1, -2], 1)])
        v = find_violation(f, 3)
        assert v.kind is ViolationKind.UNIT_UNIT_PAIR_CLAUSE
        assert not triple_satisfiable(*v.clauses)

    @pytest.mark.parametrize(
        "raw",
        [
            [([-1], 1), ([-2], 1), ([1, 2], 1)],
            [([-1], 1), ([2], 1), ([1, -2], 1)],
            [([-1], 1), ([1, 2], 1), ([1, -2], 1)],
            [([4], 1), ([-4, 7], 1), ([-4, -7], 1)],
            [([-7], 1), ([-4, 7], 1), ([4, 7], 1)],
        ],
    )
    def test_sign_variants(self, raw):
        f = build_formula(raw)
        assert not is_t_satisfiable(f, 3)
        assert not brute_force_t_satisfiable(f, 3)

    def test_three_literal_clauses_only(self):
        rng = random.Random(3)
        for _ in range(50):
            f = random_formula(rng, 5, 8, max_len=3)
            f = Formula(c for c in f if len(c) == 3)
            assert is_t_satisfiable(f, 3)
            assert brute_force_t_satisfiable(f, 3)

    def test_satisfiable_has_no_violation(self, four_clause):
        assert find_violation(four_clause, 3) is None


def test_oracle_agreement_small():
    rng = random.Random(11)
    disagreements = []
    for _ in range(400):
        f = random_formula(rng, rng.randint(1, 4), rng.randint(0, 8), max_len=3)
        for t in (2, 3):
            if is_t_satisfiable(f, t) != brute_force_t_satisfiable(f, t):
                disagreements.append((t, f))
        assert is_t_satisfiable(f, 3) <= is_t_satisfiable(f, 2) <= is_t_satisfiable(f, 1)
        v = find_violation(f, 3)
        if v is not None:
            assert not jointly_satisfiable(*v.clauses)
    assert not disagreements


def test_bad_t():
    with pytest.raises(ValueError):
        is_t_satisfiable(Formula(), 4)
