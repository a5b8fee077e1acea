"""Above-guarantee decision for 3-satisfiable MaxSat and its linear kernel.

Question: is there an assignment with 3 * sat(F) >= 2 * w(F) + 3k?

After removing a matching autarky U, sat(F) = w(F_U) + sat(F'), so the
question is equivalent to 3 * sat(F') - 2 * w(F') >= 3k - w(F_U) on the
expanding residual F'.  The expanding bound answers YES whenever F' has
many variables; otherwise F' is small and is solved by enumeration.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .autarky import Autarky, compose, decompose
from .cnf import Formula
from .derand import DEFAULT_SUPPORT_CAP, BoundCertificate, expanding_bound
from .errors import CertificateError, TooManyVariablesError
from .tsat import require_three_satisfiable

DEFAULT_VARIABLE_CAP = 30
_CHUNK_BITS = 16


def brute_force_max(f: Formula, variable_cap: int = DEFAULT_VARIABLE_CAP) -> tuple[dict[int, bool], int]:
    """Exact optimum by enumerating all assignments.

    Assignment number ``i`` sets the ``j``-th smallest variable TRUE iff bit
    ``j`` of ``i`` is set; the lowest-numbered maximizer is returned.
    """
    vs = sorted(f.variables)
    n = len(vs)
    if n > variable_cap:
        raise TooManyVariablesError(f"{n} variables exceed the brute-force cap of {variable_cap}")
    if not f:
        return {}, 0
    bit = {v: j for j, v in enumerate(vs)}
    pos = np.array([sum(1 << bit[l] for l in c.literals if l > 0) for c in f], dtype=np.int64)
    neg = np.array([sum(1 << bit[-l] for l in c.literals if l < 0) for c in f], dtype=np.int64)
    weights = np.array([c.weight for c in f], dtype=np.int64)

    best_value, best_index = -1, 0
    chunk = 1 << min(n, _CHUNK_BITS)
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, start + chunk, dtype=np.int64)
        total = np.zeros(chunk, dtype=np.int64)
        for pm, nm, w in zip(pos, neg, weights):
            sat = ((idx & pm) != 0) | ((~idx & nm) != 0)
            total += np.where(sat, w, 0)
        i = int(np.argmax(total))
        if int(total[i]) > best_value:
            best_value, best_index = int(total[i]), start + i
    assignment = {v: bool(best_index >> bit[v] & 1) for v in vs}
    return assignment, best_value


@dataclass(frozen=True)
class AeInstance:
    formula: Formula
    k: int

    def __post_init__(self) -> None:
        require_three_satisfiable(self.formula)


@dataclass(frozen=True)
class Kernel:
    residual: Formula
    k_prime: int
    threshold_numerator: int
    autarky: Autarky

    def accepts(self, residual_value: int) -> bool:
        return 3 * residual_value - 2 * self.residual.total_weight >= self.threshold_numerator


class Method(str, enum.Enum):
    GUARANTEED_BY_BOUND = "guaranteed-by-bound"
    BRUTE_FORCED = "brute-forced"
    SHORTCUT_NONPOSITIVE_THRESHOLD = "shortcut-nonpositive-threshold"


@dataclass(frozen=True)
class AeDecision:
    answer: bool
    witness: Optional[Mapping[int, bool]]
    kernel: Kernel
    method: Method
    instance: AeInstance

    @property
    def label(self) -> str:
        return "yes" if self.answer else "no"


def kernelize(f: Formula, k: int) -> Kernel:
    require_three_satisfiable(f)
    aut, residual = decompose(f)
    threshold = 3 * k - aut.f_u.total_weight
    k_prime = -(-threshold // 3)
    return Kernel(residual, k_prime, threshold, aut)


def solve_ae(
    inst: AeInstance,
    variable_cap: int = DEFAULT_VARIABLE_CAP,
    support_cap: int = DEFAULT_SUPPORT_CAP,
) -> AeDecision:
    f = inst.formula
    kern = kernelize(f, inst.k)

    def decided(answer: bool, residual_assignment, method: Method) -> AeDecision:
        witness = None
        if answer:
            witness, value = compose(kern.autarky, residual_assignment, f)
            if 3 * value < 2 * f.total_weight + 3 * inst.k:
                raise CertificateError(f"witness value {value} misses the threshold for k={inst.k}")
        return AeDecision(answer, witness, kern, method, inst)

    cert: BoundCertificate = expanding_bound(kern.residual, support_cap)
    if kern.threshold_numerator <= 0:
        return decided(True, cert.assignment, Method.SHORTCUT_NONPOSITIVE_THRESHOLD)
    if kern.accepts(cert.value):
        return decided(True, cert.assignment, Method.GUARANTEED_BY_BOUND)
    assignment, optimum = brute_force_max(kern.residual, variable_cap)
    return decided(kern.accepts(optimum), assignment, Method.BRUTE_FORCED)


def decide_by_brute_force(f: Formula, k: int, variable_cap: int = DEFAULT_VARIABLE_CAP) -> bool:
    """Direct answer to 3 * sat(f) >= 2 * w(f) + 3k (oracle)."""
    _, optimum = brute_force_max(f, variable_cap)
    return 3 * optimum >= 2 * f.total_weight + 3 * k
