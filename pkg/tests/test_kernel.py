import random

import pytest

from conftest import corpus, optimum
from maxsat3.cnf import Formula, build_formula, evaluate
from maxsat3.errors import NotThreeSatisfiableError, TooManyVariablesError
from maxsat3.generate import Shape, random_formula
from maxsat3.kernel import AeInstance, Method, brute_force_max, decide_by_brute_force, kernelize, solve_ae


class TestBruteForce:
    def test_four_clause(self, four_clause):
        a, value = brute_force_max(four_clause)
        assert value == 3 and evaluate(four_clause, a) == 3

    def test_unit(self):
        assert brute_force_max(build_formula([([1], 3)])) == ({1: True}, 3)

    def test_empty(self):
        assert brute_force_max(Formula()) == ({}, 0)

    def test_first_maximizer(self):
        # index 0 (all false) already satisfies everything
        assert brute_force_max(build_formula([([-1, 2], 1)])) == ({1: False, 2: False}, 1)

    def test_cap(self, four_clause):
        with pytest.raises(TooManyVariablesError):
            brute_force_max(four_clause, variable_cap=2)

    def test_matches_plain_enumeration(self):
        rng = random.Random(1)
        for _ in range(60):
            f = random_formula(rng, rng.randint(1, 9), rng.randint(0, 12), max_len=3, max_weight=7)
            assert brute_force_max(f)[1] == optimum(f)

    def test_chunked(self):
        # 18 variables spans several enumeration chunks
        f = build_formula([([v], v) for v in range(1, 19)] + [([-18, -17], 100)])
        a, value = brute_force_max(f)
        assert value == sum(range(1, 19)) - 17 + 100
        assert a[17] is False and a[18] is True


class TestKernelize:
    def test_expanding(self, four_clause):
        kern = kernelize(four_clause, 1)
        assert kern.residual == four_clause and kern.k_prime == 1 and kern.threshold_numerator == 3

    def test_ab_c(self, ab_c):
        kern = kernelize(ab_c, 1)
        assert kern.residual == build_formula([([3], 2)])
        assert kern.autarky.f_u.total_weight == 1
        assert kern.k_prime == 1 and kern.threshold_numerator == 2

    def test_nonpositive_threshold(self, ab_c):
        kern = kernelize(ab_c, 0)
        assert kern.threshold_numerator == -1 and kern.k_prime == 0

    def test_rejects_non_3sat(self):
        with pytest.raises(NotThreeSatisfiableError):
            kernelize(build_formula([([1], 1), ([-1], 1)]), 0)
        with pytest.raises(NotThreeSatisfiableError):
            AeInstance(build_formula([([1], 1), ([-1], 1)]), 0)


class TestSolve:
    def test_four_clause_no(self, four_clause):
        dec = solve_ae(AeInstance(four_clause, 1))
        assert not dec.answer and dec.witness is None and dec.method is Method.BRUTE_FORCED

    def test_four_clause_yes(self, four_clause):
        dec = solve_ae(AeInstance(four_clause, 0))
        assert dec.answer and evaluate(four_clause, dec.witness) == 3

    def test_ab_c(self, ab_c):
        dec = solve_ae(AeInstance(ab_c, 1))
        assert dec.answer and evaluate(ab_c, dec.witness) == 3
        assert 3 * 3 >= 2 * 3 + 3

    def test_negative_k(self, four_clause):
        dec = solve_ae(AeInstance(four_clause, -4))
        assert dec.answer and dec.method is Method.SHORTCUT_NONPOSITIVE_THRESHOLD

    def test_bound_shortcut(self):
        f = build_formula([([v], 1) for v in range(1, 7)])
        dec = solve_ae(AeInstance(f, 2))
        assert dec.answer and dec.method is Method.GUARANTEED_BY_BOUND

    def test_cap_exceeded(self):
        # expanding, fully satisfiable: 3 * 40 - 2 * 40 = 40 < 3 * 20, so enumeration is needed
        f = build_formula([([v, v + 1], 2) for v in range(1, 40, 2)])
        with pytest.raises(TooManyVariablesError):
            solve_ae(AeInstance(f, 20), variable_cap=5)

    def test_agrees_with_brute_force(self):
        for f in corpus(Shape.GENERAL_3SAT, 80, offset=1300):
            for k in range(6):
                dec = solve_ae(AeInstance(f, k))
                assert dec.answer == decide_by_brute_force(f, k)
                kern = dec.kernel
                assert kern.k_prime <= k
                assert dec.answer == kern.accepts(brute_force_max(kern.residual)[1])
