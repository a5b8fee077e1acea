"""Deterministic assignments meeting the 3-satisfiable MaxSat lower bounds.

Every construction here is the method of conditional expectations: an
objective is written as an exact expectation over a product distribution,
variables are fixed one at a time in ascending order to whichever value
keeps that expectation highest (ties go to TRUE), and the final assignment
is therefore at least the starting expectation.  All arithmetic is exact.

The certified bounds, with w the total weight::

    yannakakis-soft   27 * value >= 18 * w + w(soft)
    hard-n2            9 * value >=  6 * w + 2 * n2
    hard-n1            6 * value >=  4 * w + n1
    hard-best         21 * value >= 14 * w + 2 * (n1 + n2)
    expanding        453 * value >= 302 * w + 2 * |V|
    composed         453 * value >= 302 * w + 151 * w(F_U) + 2 * |V(residual)|
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .autarky import Autarky, compose, decompose, is_expanding
from .cnf import Assignment, Clause, Formula, Partition, evaluate, flip_normalize, is_fat, partition
from .errors import (
    CertificateError,
    DistributionTooLargeError,
    NotExpandingError,
    NotHardError,
    NotThreeSatisfiableError,
)
from .tsat import require_three_satisfiable

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)
TWO_THIRDS = Fraction(2, 3)

DEFAULT_SUPPORT_CAP = 10**6

BiasProfile = Mapping[int, Fraction]
# law of a non-negative integer random variable: value -> probability
WeightDistribution = dict[int, Fraction]


class GuaranteeKind(str, enum.Enum):
    YANNAKAKIS_SOFT = "yannakakis-soft"
    HARD_N2 = "hard-n2"
    HARD_N1 = "hard-n1"
    HARD_BEST = "hard-best"
    EXPANDING = "expanding"
    COMPOSED = "composed"


@dataclass(frozen=True)
class BoundCertificate:
    """An assignment together with the exact bound it provably meets.

    The bound is ``scale * value >= rhs``; ``guarantee`` is ``rhs / scale``.
    ``trace`` is the sequence of conditional expectations seen while fixing
    variables (first entry: the unconditioned expectation).
    """

    assignment: Mapping[int, bool]
    value: int
    kind: GuaranteeKind
    scale: int
    rhs: int
    trace: tuple[Fraction, ...] = ()
    autarky: Optional[Autarky] = None
    residual: Optional[Formula] = None

    @property
    def guarantee(self) -> Fraction:
        return Fraction(self.rhs, self.scale)

    @property
    def holds(self) -> bool:
        return self.scale * self.value >= self.rhs


def _certify(
    f: Formula,
    assignment: Mapping[int, bool],
    kind: GuaranteeKind,
    scale: int,
    rhs: int,
    trace: Sequence[Fraction] = (),
    **extra,
) -> BoundCertificate:
    cert = BoundCertificate(dict(assignment), evaluate(f, assignment), kind, scale, rhs, tuple(trace), **extra)
    if not cert.holds:
        raise CertificateError(
            f"{kind.value}: {scale} * {cert.value} < {rhs}; the construction is broken"
        )
    return cert


# -- distributions -----------------------------------------------------------

def point_mass(value: int = 0) -> WeightDistribution:
    return {value: ONE}


def weighted_bernoulli_sum(
    terms: Iterable[tuple[int, Fraction]], cap: int = DEFAULT_SUPPORT_CAP
) -> WeightDistribution:
    """Law of ``sum(w * B(p))`` over independent Bernoulli ``B(p)``."""
    dist: WeightDistribution = {0: ONE}
    for w, p in terms:
        if p == 0:
            continue
        if p == 1:
            dist = {s + w: q for s, q in dist.items()}
            continue
        nxt: dict[int, Fraction] = defaultdict(Fraction)
        for s, q in dist.items():
            nxt[s] += q * (1 - p)
            nxt[s + w] += q * p
        if len(nxt) > cap:
            raise DistributionTooLargeError(f"support size {len(nxt)} exceeds cap {cap}")
        dist = dict(nxt)
    return dist


def mean(d: WeightDistribution) -> Fraction:
    return sum((v * p for v, p in d.items()), ZERO)


def conditional_max_expectation(
    dplus: WeightDistribution, dminus: WeightDistribution, cap: int = DEFAULT_SUPPORT_CAP
) -> Fraction:
    """E[max(P, M)] for independent P ~ dplus and M ~ dminus."""
    if len(dplus) * len(dminus) > cap:
        raise DistributionTooLargeError(
            f"support product {len(dplus)} x {len(dminus)} exceeds cap {cap}"
        )
    # sweep M's support in ascending order against sorted values of P
    ms = sorted(dminus.items())
    tail_mass = [ZERO] * (len(ms) + 1)  # sum of m * P(M=m) over ms[i:]
    for i in range(len(ms) - 1, -1, -1):
        tail_mass[i] = tail_mass[i + 1] + ms[i][0] * ms[i][1]
    total = ZERO
    below = ZERO  # P(M <= u)
    i = 0
    for u, pu in sorted(dplus.items()):
        while i < len(ms) and ms[i][0] <= u:
            below += ms[i][1]
            i += 1
        total += pu * (u * below + tail_mass[i])
    return total


# -- plain biased derandomization ----------------------------------------------

def clause_sat_probability(c: Clause, bias: BiasProfile, fixed: Assignment = {}) -> Fraction:
    p_false = ONE
    for lit in c.literals:
        v = abs(lit)
        if v in fixed:
            if fixed[v] == (lit > 0):
                return ONE
            continue
        p_true = bias[v]
        p_false *= (1 - p_true) if lit > 0 else p_true
    return 1 - p_false


def fix_by_conditional_expectation(
    f: Formula,
    bias: BiasProfile,
    order: Iterable[int],
    fixed: Optional[Assignment] = None,
) -> tuple[dict[int, bool], tuple[Fraction, ...]]:
    """Fix ``order`` one variable at a time to maximise E[sat(f)]."""
    assignment = dict(fixed or {})
    occurs: dict[int, list[Clause]] = defaultdict(list)
    for c in f:
        for lit in c.literals:
            occurs[abs(lit)].append(c)
    expectation = sum((c.weight * clause_sat_probability(c, bias, assignment) for c in f), ZERO)
    trace = [expectation]
    for v in order:
        touched = occurs.get(v, [])
        before = sum((c.weight * clause_sat_probability(c, bias, assignment) for c in touched), ZERO)
        after = {}
        for value in (True, False):
            assignment[v] = value
            after[value] = sum(
                (c.weight * clause_sat_probability(c, bias, assignment) for c in touched), ZERO
            )
        choice = after[True] >= after[False]
        assignment[v] = choice
        expectation += after[choice] - before
        trace.append(expectation)
    return assignment, tuple(trace)


def _unit_bias(f: Formula, p: Partition) -> dict[int, Fraction]:
    return {v: TWO_THIRDS if v in p.v1 else HALF for v in f.variables}


def derandomize_biased(f: Formula, p: Optional[Partition] = None) -> BoundCertificate:
    """Unit variables true w.p. 2/3, others 1/2, then derandomized."""
    require_three_satisfiable(f)
    p = p or partition(f)
    assignment, trace = fix_by_conditional_expectation(f, _unit_bias(f, p), sorted(f.variables))
    return _certify(
        f, assignment, GuaranteeKind.YANNAKAKIS_SOFT, 27,
        18 * f.total_weight + p.f_soft.total_weight, trace,
    )


# -- hard formulas -------------------------------------------------------------

@dataclass
class _HardIndex:
    """Adjacency of a hard formula: units on V1, binaries {-x, +/-y}."""

    units: dict[int, int]
    # x -> [(y, y_positive, weight)]
    by_x: dict[int, list[tuple[int, bool, int]]] = field(default_factory=lambda: defaultdict(list))
    # y -> [(x, y_positive, weight)]
    by_y: dict[int, list[tuple[int, bool, int]]] = field(default_factory=lambda: defaultdict(list))


def _hard_index(fh: Formula, p: Optional[Partition]) -> tuple[Partition, _HardIndex]:
    require_three_satisfiable(fh)
    p = p if p is not None else partition(fh)
    if p.f_soft:
        raise NotHardError(f"formula has {len(p.f_soft)} soft clause(s)")
    if p.f_hard != fh:
        raise NotHardError("partition does not describe this formula")
    idx = _HardIndex(units={c.literals[0]: c.weight for c in p.f1})
    for c in p.f2:
        a, b = c.literals
        x, ylit = (-a, b) if -a in p.v1 and a < 0 and abs(b) not in p.v1 else (-b, a)
        y = abs(ylit)
        idx.by_x[x].append((y, ylit > 0, c.weight))
        idx.by_y[y].append((x, ylit > 0, c.weight))
    # each x may meet y through at most one clause; otherwise the two weight
    # sums below would not be independent
    for y, terms in idx.by_y.items():
        xs = [x for x, _, _ in terms]
        if len(xs) != len(set(xs)):
            raise NotThreeSatisfiableError(f"variable {y} occurs with both signs next to one unit variable")
    return p, idx


def _prob(v: int, assignment: Mapping[int, bool], p: Fraction) -> Fraction:
    if v in assignment:
        return ONE if assignment[v] else ZERO
    return p


def hard_assignment_n2(
    fh: Formula, p: Optional[Partition] = None, cap: int = DEFAULT_SUPPORT_CAP
) -> BoundCertificate:
    """Derandomize the unit variables, then set each y by majority weight.

    Objective for a partial assignment alpha of V1 (others true w.p. 2/3):
    E[sat(F1)] + E[sat(F2)] + sum_y E[max(Y+_y, Y-_y)], where Y+_y (Y-_y)
    is the weight of clauses {-x, y} ({-x, -y}) left open by alpha.
    """
    p, idx = _hard_index(fh, p)
    alpha: dict[int, bool] = {}

    def y_term(y: int) -> Fraction:
        plus = [(w, _prob(x, alpha, TWO_THIRDS)) for x, pos, w in idx.by_y[y] if pos]
        minus = [(w, _prob(x, alpha, TWO_THIRDS)) for x, pos, w in idx.by_y[y] if not pos]
        return conditional_max_expectation(
            weighted_bernoulli_sum(plus, cap), weighted_bernoulli_sum(minus, cap), cap
        )

    def x_term(x: int) -> Fraction:
        pt = _prob(x, alpha, TWO_THIRDS)
        return idx.units.get(x, 0) * pt + sum(w for _, _, w in idx.by_x[x]) * (1 - pt)

    y_terms = {y: y_term(y) for y in sorted(p.v2)}
    expectation = sum((x_term(x) for x in p.v1), ZERO) + sum(y_terms.values(), ZERO)
    trace = [expectation]
    for x in sorted(p.v1):
        ys = sorted({y for y, _, _ in idx.by_x[x]})
        before = x_term(x) + sum((y_terms[y] for y in ys), ZERO)
        options = {}
        for value in (True, False):
            alpha[x] = value
            options[value] = (x_term(x), {y: y_term(y) for y in ys})
        choice = sum(options[True][1].values(), options[True][0]) >= sum(
            options[False][1].values(), options[False][0]
        )
        alpha[x] = choice
        x_new, ys_new = options[choice]
        y_terms.update(ys_new)
        expectation += x_new + sum(ys_new.values(), ZERO) - before
        trace.append(expectation)

    assignment = dict(alpha)
    for y in sorted(p.v2):
        open_plus = sum(w for x, pos, w in idx.by_y[y] if pos and alpha[x])
        open_minus = sum(w for x, pos, w in idx.by_y[y] if not pos and alpha[x])
        assignment[y] = open_plus - open_minus >= 0
    cert = _certify(fh, assignment, GuaranteeKind.HARD_N2, 9, 6 * fh.total_weight + 2 * p.n2, trace)
    if cert.value != expectation:
        raise CertificateError("final conditional expectation differs from achieved weight")
    return cert


def hard_assignment_n1(
    fh: Formula, p: Optional[Partition] = None, cap: int = DEFAULT_SUPPORT_CAP
) -> BoundCertificate:
    """Derandomize the binary-only variables, then set each x by comparison.

    Objective for a partial assignment beta of V2 (others true w.p. 1/2):
    E[sat_beta(F2)] + sum_x E[max(w({x}), Z_x)], where Z_x is the weight of
    clauses on -x left open by beta.
    """
    p, idx = _hard_index(fh, p)
    beta: dict[int, bool] = {}

    def p_open(y: int, positive: bool) -> Fraction:
        # clause {-x, y} stays open when y is false, {-x, -y} when y is true
        pt = _prob(y, beta, HALF)
        return (1 - pt) if positive else pt

    def x_term(x: int) -> Fraction:
        z = weighted_bernoulli_sum(((w, p_open(y, pos)) for y, pos, w in idx.by_x[x]), cap)
        return conditional_max_expectation(point_mass(idx.units[x]), z, cap)

    def y_term(y: int) -> Fraction:
        return sum((w * (1 - p_open(y, pos)) for _, pos, w in idx.by_y[y]), ZERO)

    x_terms = {x: x_term(x) for x in sorted(p.v1)}
    expectation = sum(x_terms.values(), ZERO) + sum((y_term(y) for y in p.v2), ZERO)
    trace = [expectation]
    for y in sorted(p.v2):
        xs = sorted({x for x, _, _ in idx.by_y[y]})
        before = y_term(y) + sum((x_terms[x] for x in xs), ZERO)
        options = {}
        for value in (True, False):
            beta[y] = value
            options[value] = (y_term(y), {x: x_term(x) for x in xs})
        choice = sum(options[True][1].values(), options[True][0]) >= sum(
            options[False][1].values(), options[False][0]
        )
        beta[y] = choice
        y_new, xs_new = options[choice]
        x_terms.update(xs_new)
        expectation += y_new + sum(xs_new.values(), ZERO) - before
        trace.append(expectation)

    assignment = dict(beta)
    for x in sorted(p.v1):
        z = sum(w for y, pos, w in idx.by_x[x] if beta[y] != pos)
        assignment[x] = idx.units[x] >= z
    cert = _certify(fh, assignment, GuaranteeKind.HARD_N1, 6, 4 * fh.total_weight + p.n1, trace)
    if cert.value != expectation:
        raise CertificateError("final conditional expectation differs from achieved weight")
    return cert


def hard_best(fh: Formula, p: Optional[Partition] = None, cap: int = DEFAULT_SUPPORT_CAP) -> BoundCertificate:
    """Better of the two hard constructions (ties keep the n2 variant)."""
    c2 = hard_assignment_n2(fh, p, cap)
    c1 = hard_assignment_n1(fh, p, cap)
    best = c1 if c1.value > c2.value else c2
    p = p if p is not None else partition(fh)
    return _certify(
        fh, best.assignment, GuaranteeKind.HARD_BEST, 21,
        14 * fh.total_weight + 2 * (p.n1 + p.n2), best.trace,
    )


# -- expanding and general formulas --------------------------------------------

def expanding_bound(f: Formula, cap: int = DEFAULT_SUPPORT_CAP) -> BoundCertificate:
    """Assignment with 453 * value >= 302 * w(f) + 2 * |V(f)| for expanding ``f``.

    Negative units are flipped internally; the returned assignment is in the
    coordinates of ``f``.
    """
    require_three_satisfiable(f)
    if not is_expanding(f):
        raise NotExpandingError("some variable set touches less clause weight than its size")
    fn, flips = flip_normalize(f)
    p = partition(fn)

    fat = derandomize_biased(fn, p)
    hard = hard_best(p.f_hard, cap=cap)
    soft_bias = {v: HALF for v in p.v_soft}
    lean_assignment, _ = fix_by_conditional_expectation(
        fn, soft_bias, sorted(p.v_soft), fixed=hard.assignment
    )
    lean_value = evaluate(fn, lean_assignment)

    if lean_value > fat.value or (lean_value == fat.value and not is_fat(p)):
        assignment, trace = lean_assignment, hard.trace
    else:
        assignment, trace = fat.assignment, fat.trace
    return _certify(
        f, flips.apply_assignment(assignment), GuaranteeKind.EXPANDING, 453,
        302 * f.total_weight + 2 * len(f.variables), trace,
    )


def full_bound(f: Formula, cap: int = DEFAULT_SUPPORT_CAP) -> BoundCertificate:
    """Matching-autarky decomposition plus the expanding bound on the residual."""
    require_three_satisfiable(f)
    aut, residual = decompose(f)
    inner = expanding_bound(residual, cap)
    tau, _ = compose(aut, inner.assignment, f)
    return _certify(
        f, tau, GuaranteeKind.COMPOSED, 453,
        302 * f.total_weight + 151 * aut.f_u.total_weight + 2 * len(residual.variables),
        inner.trace, autarky=aut, residual=residual,
    )
