"""Stable sets: vertex sets ``T`` where each member has at most ``beta d_v``
out-neighbours inside ``T``.

Includes the sample-and-delete extraction (sample ``S`` with probability ``p``,
drop the members ``B`` that see too much of ``S``) and exhaustive enumeration of
maximal stable sets for small digraphs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .digraph import Digraph
from .prob import (THIRD_ALPHA, THIRD_BETA, THIRD_P, as_fraction, delta_threshold,
                   third_tail_ok)
from .rng import make_rng

MAX_ENUM_N = 20


@dataclass(frozen=True)
class StableSetParams:
    alpha: Fraction
    p: Fraction
    beta: Fraction
    delta_required: int = field(init=False)

    def __post_init__(self):
        a, p, b = as_fraction(self.alpha), as_fraction(self.p), as_fraction(self.beta)
        if not 0 < a < p < b < 1:
            raise ValueError(f"need 0 < alpha < p < beta < 1, got {a}, {p}, {b}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "delta_required", delta_threshold(a, p, b))

    def target(self, n: int) -> int:
        """``ceil(alpha n)``."""
        return math.ceil(self.alpha * n)


THIRD_PARAMS_ARGS = (THIRD_ALPHA, THIRD_P, THIRD_BETA)


def third_params() -> StableSetParams:
    return StableSetParams(*THIRD_PARAMS_ARGS)


def half_params(eps) -> StableSetParams:
    """``alpha = 1/2 - eps``, ``p = 1/2 - eps/2``, ``beta = 1/2``."""
    eps = as_fraction(eps)
    return StableSetParams(Fraction(1, 2) - eps, Fraction(1, 2) - eps / 2, Fraction(1, 2))


def one_over_k_params(k: int, eps) -> StableSetParams:
    """``alpha = 1/k - eps``, ``p = 1/k - eps/2``, ``beta = 1/k``."""
    eps = as_fraction(eps)
    inv = Fraction(1, k)
    return StableSetParams(inv - eps, inv - eps / 2, inv)


@dataclass
class StableSetResult:
    T: list[int]
    S: list[int]
    B: list[int]
    tries_used: int
    success: bool


@dataclass
class StableCheck:
    valid: bool
    violations: list[int]

    def __bool__(self) -> bool:
        return self.valid


def _members(g: Digraph, T: Iterable[int]) -> np.ndarray:
    mask = np.zeros(g.n, dtype=bool)
    for v in T:
        v = int(v)
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
        mask[v] = True
    return mask


def _inside_counts(g: Digraph, mask: np.ndarray) -> np.ndarray:
    return np.bincount(g.tails[mask[g.indices]], minlength=g.n)


def _too_many(counts, degrees, beta: Fraction) -> np.ndarray:
    return beta.denominator * counts > beta.numerator * degrees


def verify_stable(g: Digraph, T: Iterable[int], beta=Fraction(1, 2)) -> StableCheck:
    beta = as_fraction(beta)
    mask = _members(g, T)
    bad = mask & _too_many(_inside_counts(g, mask), g.out_degrees, beta)
    viol = np.flatnonzero(bad).tolist()
    return StableCheck(not viol, viol)


def random_stable_set(g: Digraph, params: StableSetParams, max_tries: int = 50,
                      seed: int = 0) -> StableSetResult:
    """Sample-and-delete until ``|T| >= ceil(alpha n)`` or tries run out.

    On failure the largest ``T`` seen is returned with ``success=False``.
    """
    target = params.target(g.n)
    p = float(params.p)
    best = StableSetResult([], [], [], 0, False)
    for t in range(max_tries):
        S = make_rng(seed, "stable-set", t).random(g.n) < p
        B = S & _too_many(_inside_counts(g, S), g.out_degrees, params.beta)
        T = S & ~B
        size = int(T.sum())
        if t == 0 or size > len(best.T):
            best = StableSetResult(np.flatnonzero(T).tolist(), np.flatnonzero(S).tolist(),
                                   np.flatnonzero(B).tolist(), t + 1, False)
        if size >= target:
            best.tries_used = t + 1
            best.success = True
            return best
    best.tries_used = max_tries
    return best


def stable_third_hypothesis(g: Digraph) -> bool:
    """True when ``delta >= 22`` and every out-degree passes its tail certificate."""
    if g.min_out_degree < 22:
        return False
    return all(third_tail_ok(d) for d in set(g.out_degrees.tolist()))


def stable_third(g: Digraph, max_tries: int = 50, seed: int = 0) -> StableSetResult:
    """Look for a stable set on a third of the vertices (``alpha=1/3, p=19/50, beta=1/2``)."""
    if not stable_third_hypothesis(g):
        warnings.warn(f"minimum out-degree {g.min_out_degree} is below 22; "
                      "a stable third is not guaranteed", RuntimeWarning, stacklevel=2)
    return random_stable_set(g, third_params(), max_tries, seed)


def enumerate_stable_sets(g: Digraph, beta=Fraction(1, 2), max_n: int = MAX_ENUM_N) -> list[frozenset[int]]:
    """All maximal stable sets, in order of their sorted vertex tuples.

    Depth-first over subsets with increasing vertices; stability is closed
    under taking subsets, so an unstable prefix prunes its subtree, and a
    subtree whose full extension is stable collapses to that extension.
    """
    beta = as_fraction(beta)
    n = g.n
    if n > max_n:
        raise ValueError(f"n={n} exceeds the enumeration cap {max_n}")
    num, den = beta.numerator, beta.denominator
    out_mask = [sum(1 << w for w in nbrs) for nbrs in g.out_adj]
    cap = [num * len(nbrs) for nbrs in g.out_adj]

    def stable(mask: int) -> bool:
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            if den * bin(out_mask[v] & mask).count("1") > cap[v]:
                return False
            m ^= low
        return True

    def maximal(mask: int) -> bool:
        return all(mask >> v & 1 or not stable(mask | 1 << v) for v in range(n))

    found: list[int] = []

    def dfs(mask: int, nxt: int) -> None:
        rest = ((1 << n) - 1) & ~((1 << nxt) - 1)
        full = mask | rest
        if stable(full):
            if maximal(full):
                found.append(full)
            return
        extended = False
        for v in range(nxt, n):
            cand = mask | 1 << v
            if stable(cand):
                extended = True
                dfs(cand, v + 1)
        if not extended and maximal(mask):
            found.append(mask)

    dfs(0, 0)
    sets = {m for m in found}
    result = [frozenset(v for v in range(n) if m >> v & 1) for m in sets]
    result.sort(key=lambda s: sorted(s))
    return result


def serialize_stable_set(n: int, T: Iterable[int]) -> str:
    T = sorted(int(v) for v in T)
    return "\n".join([f"stableset {n} {len(T)}", *map(str, T)]) + "\n"


def parse_stable_set(text: str) -> tuple[int, list[int]]:
    toks = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not toks or len(toks[0]) != 3 or toks[0][0] != "stableset":
        raise ValueError("expected header 'stableset <n> <size>'")
    n, size = int(toks[0][1]), int(toks[0][2])
    T = [int(t[0]) for t in toks[1:]]
    if len(T) != size:
        raise ValueError(f"header declares {size} vertices, found {len(T)}")
    if any(not 0 <= v < n for v in T) or len(set(T)) != len(T):
        raise ValueError("vertex out of range or repeated")
    return n, sorted(T)
