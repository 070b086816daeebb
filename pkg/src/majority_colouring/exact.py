"""Exact decision procedures for small digraphs.

Backtracking for ``(k, beta)``-majority colourings and list colourings, an
exhaustive enumerator used as an independent oracle, and the fractional
majority colouring LP over maximal stable sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .colouring import HALF, Colouring
from .digraph import Digraph
from .lp import check_certificate, solve_covering_lp
from .prob import as_fraction
from .stable import enumerate_stable_sets

DEFAULT_BUDGET = 10**7
YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass
class ExactResult:
    """``status`` is ``"yes"`` (with a witness), ``"no"`` (search exhausted) or
    ``"unknown"`` (node budget hit)."""
    status: str
    colouring: Colouring | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == YES


def search_order(g: Digraph) -> list[int]:
    """Vertices by decreasing out-degree, index ascending on ties."""
    return sorted(range(g.n), key=lambda v: (-g.out_degree(v), v))


def _backtrack(g: Digraph, beta: Fraction, candidates, budget: int,
               symmetric_k: int | None = None) -> ExactResult:
    """Shared search engine.

    ``candidates(v)`` lists the colours allowed at ``v``.  When
    ``symmetric_k`` is set all colours are interchangeable, and a vertex may
    open at most one new colour beyond those used so far.

    A coloured vertex ``w`` is rejected as soon as ``den * matches(w) >
    num * d_w``; uncoloured out-neighbours can only add matches.
    """
    num, den = beta.numerator, beta.denominator
    n = g.n
    adj, radj = g.out_adj, g.in_adj
    cap = [num * len(a) for a in adj]
    order = search_order(g)
    col: list = [None] * n
    matches = [0] * n
    nodes = 0

    def assign(v, c) -> bool:
        own = 0
        for u in adj[v]:
            if col[u] == c:
                own += 1
        if den * own > cap[v]:
            return False
        ok = True
        for w in radj[v]:
            if col[w] == c and den * (matches[w] + 1) > cap[w]:
                ok = False
                break
        if not ok:
            return False
        col[v] = c
        matches[v] = own
        for w in radj[v]:
            if col[w] == c:
                matches[w] += 1
        return True

    def unassign(v) -> None:
        c = col[v]
        for w in radj[v]:
            if col[w] == c:
                matches[w] -= 1
        col[v] = None
        matches[v] = 0

    def rec(i: int, used: int) -> bool | None:
        nonlocal nodes
        if i == n:
            return True
        v = order[i]
        if symmetric_k is not None:
            options = range(min(symmetric_k, used + 1))
        else:
            options = candidates(v)
        for c in options:
            nodes += 1
            if nodes > budget:
                return None
            if not assign(v, c):
                continue
            res = rec(i + 1, max(used, c + 1) if symmetric_k is not None else used)
            if res is None or res:
                if res is None:
                    unassign(v)
                return res
            unassign(v)
        return False

    res = rec(0, 0)
    if res is None:
        return ExactResult(UNKNOWN, None, nodes)
    if not res:
        return ExactResult(NO, None, nodes)
    k = symmetric_k if symmetric_k is not None else max(col, default=0) + 1
    return ExactResult(YES, Colouring(tuple(col), max(k, 1)), nodes)


def exists_beta_colouring(g: Digraph, k: int, beta=HALF, budget: int = DEFAULT_BUDGET) -> ExactResult:
    """Decide whether ``g`` has a ``k``-colouring where every vertex has at most
    ``beta d_v`` out-neighbours of its own colour."""
    if k < 1:
        raise ValueError("k must be at least 1")
    beta = as_fraction(beta)
    return _backtrack(g, beta, None, budget, symmetric_k=k)


@dataclass
class MinColoursResult:
    status: str
    k: int | None = None
    colouring: Colouring | None = None
    nodes: int = 0


def min_majority_colours(g: Digraph, k_max: int = 4, beta=HALF,
                         budget: int = DEFAULT_BUDGET) -> MinColoursResult:
    """Smallest ``k <= k_max`` admitting a ``beta``-majority ``k``-colouring."""
    beta = as_fraction(beta)
    nodes = 0
    for k in range(1, k_max + 1):
        res = exists_beta_colouring(g, k, beta, budget)
        nodes += res.nodes
        if res.status == UNKNOWN:
            return MinColoursResult(UNKNOWN, None, None, nodes)
        if res.found:
            return MinColoursResult(YES, k, res.colouring, nodes)
    if beta == HALF and k_max >= 4:
        raise AssertionError("no majority 4-colouring found; every digraph has one")
    return MinColoursResult(NO, None, None, nodes)


@dataclass
class ListAssignment:
    lists: list[tuple[int, ...]]

    def __post_init__(self):
        self.lists = [tuple(sorted(set(int(c) for c in L))) for L in self.lists]
        for v, L in enumerate(self.lists):
            if not L:
                raise ValueError(f"empty list at vertex {v}")
            if L[0] < 0:
                raise ValueError(f"negative colour in list at vertex {v}")

    @classmethod
    def uniform(cls, n: int, colours: Sequence[int]) -> "ListAssignment":
        return cls([tuple(colours)] * n)


def choosability_check(g: Digraph, lists: ListAssignment | Sequence[Sequence[int]], beta=HALF,
                       budget: int = DEFAULT_BUDGET) -> ExactResult:
    """Look for a ``beta``-majority colouring with ``colour(v)`` drawn from ``lists[v]``."""
    if not isinstance(lists, ListAssignment):
        lists = ListAssignment(list(lists))
    if len(lists.lists) != g.n:
        raise ValueError("one list per vertex required")
    beta = as_fraction(beta)
    L = lists.lists
    return _backtrack(g, beta, lambda v: L[v], budget)


def brute_force_all_colourings(g: Digraph, k: int, beta=HALF, max_n: int = 8,
                               cap: int = 10**7) -> list[tuple[int, ...]]:
    """Every ``beta``-majority ``k``-colouring, by plain enumeration of all ``k^n``."""
    beta = as_fraction(beta)
    if g.n > max_n or k**g.n > cap:
        raise ValueError(f"{k}^{g.n} assignments exceed the enumeration cap")
    num, den = beta.numerator, beta.denominator
    adj = g.out_adj
    found = []
    for colours in product(range(k), repeat=g.n):
        if all(den * sum(colours[u] == colours[v] for u in adj[v]) <= num * len(adj[v])
               for v in range(g.n)):
            found.append(colours)
    return found


# -- fractional relaxation ------------------------------------------------------------

@dataclass
class FractionalSolution:
    sets: list[frozenset[int]]
    weights: dict[frozenset[int], Fraction]
    objective: Fraction
    dual: list[Fraction] = field(default_factory=list)

    def coverage(self, v: int) -> Fraction:
        return sum((x for T, x in self.weights.items() if v in T), Fraction(0))

    def to_dict(self) -> dict:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"
        return {
            "objective": frac(self.objective),
            "weights": [{"set": sorted(T), "weight": frac(x)}
                        for T, x in sorted(self.weights.items(), key=lambda kv: sorted(kv[0]))],
            "vertex_duals": [frac(y) for y in self.dual],
        }


MAX_FRACTIONAL_N = 16


def fractional_majority_number(g: Digraph, max_n: int = MAX_FRACTIONAL_N, beta=HALF) -> FractionalSolution:
    """Minimum total weight on stable sets covering every vertex at least once.

    Only maximal stable sets are used; every stable set sits inside one, so
    the optimum is unchanged.
    """
    if g.n > max_n:
        raise ValueError(f"n={g.n} exceeds the fractional cap {max_n}")
    if g.n == 0:
        return FractionalSolution([], {}, Fraction(0), [])
    sets = enumerate_stable_sets(g, beta, max_n=max_n)
    A = [[int(v in T) for T in sets] for v in range(g.n)]
    b = [1] * g.n
    c = [1] * len(sets)
    sol = solve_covering_lp(A, b, c)
    if not check_certificate(A, b, c, sol):
        raise ArithmeticError("LP optimality certificate failed")
    weights = {T: x for T, x in zip(sets, sol.x) if x}
    return FractionalSolution(sets, weights, sol.value, sol.y)
