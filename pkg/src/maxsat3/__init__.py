"""Lower bounds and an above-guarantee kernel for 3-satisfiable weighted MaxSat."""

from .autarky import Autarky, compose, decompose, extract_autarky, is_expanding, maximum_matching, build_incidence
from .cnf import Clause, FlipMap, Formula, Partition, build_formula, evaluate, flip_normalize, is_fat, partition
from .derand import (
    BoundCertificate,
    GuaranteeKind,
    derandomize_biased,
    expanding_bound,
    full_bound,
    hard_assignment_n1,
    hard_assignment_n2,
    hard_best,
)
from .dimacs import parse_dimacs, write_dimacs, write_report
from .kernel import AeDecision, AeInstance, Kernel, brute_force_max, kernelize, solve_ae
from .tsat import find_violation, is_t_satisfiable, triple_satisfiable

__version__ = "0.1.0"
