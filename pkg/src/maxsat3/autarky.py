"""Matching autarkies and the expanding property.

The variable/clause incidence graph gives every clause a capacity equal to
its weight, capped at the number of variables (no matching can use more
copies than that).  A maximum matching then splits the formula into an
autarky, found by alternating search from the unmatched variables, and an
expanding residual in which every variable is matched.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from .cnf import EMPTY, Assignment, Clause, Formula, evaluate, remove_clauses, subformula_touching
from .errors import CertificateError, DomainOverlapError, NotMaximumError


@dataclass(frozen=True)
class IncidenceGraph:
    variables: tuple[int, ...]
    clauses: tuple[Clause, ...]
    capacity: tuple[int, ...]
    adjacency: Mapping[int, tuple[int, ...]]  # variable -> clause indices, ascending

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(v, ci) for v in self.variables for ci in self.adjacency[v]]


def build_incidence(f: Formula) -> IncidenceGraph:
    n = len(f.variables)
    clauses = f.clauses
    adjacency: dict[int, list[int]] = {v: [] for v in sorted(f.variables)}
    for ci, c in enumerate(clauses):
        for lit in c.literals:
            adjacency[abs(lit)].append(ci)
    return IncidenceGraph(
        variables=tuple(adjacency),
        clauses=clauses,
        capacity=tuple(min(c.weight, n) for c in clauses),
        adjacency={v: tuple(cs) for v, cs in adjacency.items()},
    )


@dataclass(frozen=True)
class Matching:
    graph: IncidenceGraph
    mate: Mapping[int, int]  # variable -> clause index

    def __len__(self) -> int:
        return len(self.mate)

    @property
    def pairs(self) -> set[tuple[int, int]]:
        return set(self.mate.items())

    def load(self) -> list[int]:
        counts = [0] * len(self.graph.clauses)
        for ci in self.mate.values():
            counts[ci] += 1
        return counts

    def unmatched(self) -> list[int]:
        return [v for v in self.graph.variables if v not in self.mate]


def maximum_matching(g: IncidenceGraph) -> Matching:
    """Hopcroft-Karp with clause capacities (each clause has ``capacity`` slots)."""
    mate: dict[int, Optional[int]] = {v: None for v in g.variables}
    holders: list[list[int]] = [[] for _ in g.clauses]
    cap = g.capacity
    adj = g.adjacency

    def layer() -> Optional[dict[int, int]]:
        dist = {v: 0 for v in g.variables if mate[v] is None}
        queue = deque(dist)
        reachable_free = False
        while queue:
            v = queue.popleft()
            for ci in adj[v]:
                if mate[v] == ci:
                    continue
                if len(holders[ci]) < cap[ci]:
                    reachable_free = True
                    continue
                for u in holders[ci]:
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        queue.append(u)
        return dist if reachable_free else None

    def moves(v: int) -> Iterator[tuple[int, Optional[int]]]:
        for ci in adj[v]:
            if mate[v] == ci:
                continue
            if len(holders[ci]) < cap[ci]:
                yield ci, None
            else:
                for u in tuple(holders[ci]):
                    yield ci, u

    def augment(start: int, dist: dict[int, Optional[int]]) -> bool:
        path = [start]
        chosen: list[int] = []
        stack = [moves(start)]
        while stack:
            v = path[-1]
            for ci, u in stack[-1]:
                if u is None:
                    chosen.append(ci)
                    for w, cj in reversed(list(zip(path, chosen))):
                        old = mate[w]
                        if old is not None:
                            holders[old].remove(w)
                        mate[w] = cj
                        holders[cj].append(w)
                    return True
                if dist.get(u) == dist[v] + 1:
                    chosen.append(ci)
                    path.append(u)
                    stack.append(moves(u))
                    break
            else:
                dist[v] = None  # dead end for the rest of this phase
                stack.pop()
                path.pop()
                if chosen:
                    chosen.pop()
        return False

    while True:
        dist = layer()
        if dist is None:
            break
        for v in g.variables:
            if mate[v] is None:
                augment(v, dist)  # type: ignore[arg-type]

    return Matching(g, {v: ci for v, ci in mate.items() if ci is not None})


@dataclass(frozen=True)
class Autarky:
    """Partial assignment ``beta`` on ``u`` satisfying every clause of ``f_u``."""

    u: frozenset[int] = frozenset()
    beta: Mapping[int, bool] = field(default_factory=dict)
    f_u: Formula = EMPTY

    def is_valid(self) -> bool:
        return all(
            any(abs(l) in self.beta and self.beta[abs(l)] == (l > 0) for l in c.literals)
            for c in self.f_u
        )


def extract_autarky(f: Formula, m: Matching) -> Autarky:
    g = m.graph
    holders: list[list[int]] = [[] for _ in g.clauses]
    for v, ci in m.mate.items():
        holders[ci].append(v)

    start = m.unmatched()
    reached = set(start)
    seen_clauses: set[int] = set()
    queue = deque(start)
    while queue:
        v = queue.popleft()
        for ci in g.adjacency[v]:
            if m.mate.get(v) == ci or ci in seen_clauses:
                continue
            seen_clauses.add(ci)
            if len(holders[ci]) < g.capacity[ci]:
                raise NotMaximumError(f"augmenting path ends at clause {list(g.clauses[ci].literals)}")
            for u in holders[ci]:
                if u not in reached:
                    reached.add(u)
                    queue.append(u)

    beta: dict[int, bool] = {}
    for v in sorted(reached):
        ci = m.mate.get(v)
        if ci is None:
            beta[v] = False
        else:
            lit = next(l for l in g.clauses[ci].literals if abs(l) == v)
            beta[v] = lit > 0
    aut = Autarky(frozenset(reached), beta, subformula_touching(f, reached))
    if not aut.is_valid():
        raise CertificateError("extracted partial assignment is not an autarky")
    return aut


def decompose(f: Formula) -> tuple[Autarky, Formula]:
    """Matching autarky of ``f`` and the expanding residual ``f`` minus ``F_U``."""
    aut = extract_autarky(f, maximum_matching(build_incidence(f)))
    return aut, remove_clauses(f, aut.f_u)


def is_expanding(f: Formula) -> bool:
    """Hall's condition: every variable set X touches clause weight >= |X|."""
    return len(maximum_matching(build_incidence(f))) == len(f.variables)


def is_expanding_bruteforce(f: Formula) -> bool:
    """Exhaustive subset check of the expanding condition (oracle; 2^|V|)."""
    vs = sorted(f.variables)
    index = {v: i for i, v in enumerate(vs)}
    masks = [(sum(1 << index[abs(l)] for l in c.literals), c.weight) for c in f]
    for x in range(1, 1 << len(vs)):
        touched = sum(w for mask, w in masks if mask & x)
        if touched < bin(x).count("1"):
            return False
    return True


def compose(aut: Autarky, gamma: Assignment, f: Formula) -> tuple[dict[int, bool], int]:
    """Combine the autarky with ``gamma`` on the remaining variables."""
    overlap = aut.u & set(gamma)
    if overlap:
        raise DomainOverlapError(f"gamma assigns autarky variables {sorted(overlap)}")
    tau = dict(aut.beta)
    tau.update(gamma)
    return tau, evaluate(f, tau)
