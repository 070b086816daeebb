"""Digraph families used by the experiments and tests.

All random generators are deterministic in ``(arguments, seed)``.
"""

from itertools import combinations
from math import comb

import numpy as np

from .digraph import Digraph, UndirectedGraph
from .rng import make_rng

BLOWUP_CAP = 10**6


def gen_cycle_power(n: int, k: int) -> Digraph:
    """Circulant digraph with arcs ``i -> i+1, ..., i+k`` taken mod ``n``."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"power k={k} must satisfy 1 <= k <= n-1 (n={n})")
    tails = np.repeat(np.arange(n, dtype=np.int64), k)
    steps = np.tile(np.arange(1, k + 1, dtype=np.int64), n)
    return Digraph.from_arrays(n, tails, (tails + steps) % n)


def gen_directed_cycle(n: int) -> Digraph:
    return gen_cycle_power(n, 1)


def gen_random_digraph(n: int, arc_prob: float, seed: int) -> Digraph:
    """Each ordered pair ``(u, v)``, ``u != v``, is an arc with probability ``arc_prob``."""
    if not 0.0 <= arc_prob <= 1.0:
        raise ValueError("arc_prob must lie in [0, 1]")
    rng = make_rng(seed, "random-digraph")
    mask = rng.random((n, n)) < arc_prob
    np.fill_diagonal(mask, False)
    tails, heads = np.nonzero(mask)
    return Digraph.from_arrays(n, tails, heads)


def gen_random_out_regular(n: int, d: int, seed: int) -> Digraph:
    """Every vertex gets ``d`` distinct out-neighbours, uniformly without replacement."""
    if not 0 <= d <= n - 1:
        raise ValueError(f"out-degree d={d} must satisfy 0 <= d <= n-1 (n={n})")
    rng = make_rng(seed, "out-regular")
    heads = np.empty(n * d, dtype=np.int64)
    for v in range(n):
        pick = rng.choice(n - 1, size=d, replace=False)
        pick[pick >= v] += 1
        heads[v * d:(v + 1) * d] = pick
    tails = np.repeat(np.arange(n, dtype=np.int64), d)
    return Digraph.from_arrays(n, tails, heads)


def gen_tournament(n: int, seed: int) -> Digraph:
    """Orient every pair of ``K_n`` uniformly at random."""
    if n < 1:
        raise ValueError("a tournament needs at least one vertex")
    rng = make_rng(seed, "tournament")
    us, vs = np.triu_indices(n, k=1)
    flip = rng.random(us.size) < 0.5
    return Digraph.from_arrays(n, np.where(flip, vs, us), np.where(flip, us, vs))


def all_tournaments(n: int):
    """Yield every labelled tournament on ``n`` vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        arcs = [(u, v) if mask >> i & 1 == 0 else (v, u) for i, (u, v) in enumerate(pairs)]
        yield Digraph(n, arcs)


def gen_random_strongly_connected(n: int, arc_prob: float, seed: int) -> Digraph:
    """A random Hamiltonian cycle plus independent extra arcs."""
    if n < 2:
        raise ValueError("need at least two vertices")
    rng = make_rng(seed, "strongly-connected")
    perm = rng.permutation(n)
    mask = rng.random((n, n)) < arc_prob
    mask[perm, np.roll(perm, -1)] = True
    np.fill_diagonal(mask, False)
    tails, heads = np.nonzero(mask)
    return Digraph.from_arrays(n, tails, heads)


def gen_random_graph(n: int, edge_prob: float, seed: int) -> UndirectedGraph:
    """Erdos-Renyi G(n, p)."""
    rng = make_rng(seed, "random-graph")
    us, vs = np.triu_indices(n, k=1)
    keep = rng.random(us.size) < edge_prob
    return UndirectedGraph(n, zip(us[keep].tolist(), vs[keep].tolist()))


def gen_subset_blowup(base: Digraph, delta: int, cap: int = BLOWUP_CAP) -> Digraph:
    """Add one vertex per ``delta``-subset ``S`` of ``V(base)`` with out-neighbourhood ``S``.

    Subsets are taken in lexicographic order, so the vertex ``base.n + i`` points
    at the ``i``-th subset.  In any ``k``-colouring with ``base.n >= k*delta`` some
    new vertex sees only one colour among its out-neighbours.
    """
    if not 0 <= delta <= base.n:
        raise ValueError(f"subset size {delta} exceeds base order {base.n}")
    count = comb(base.n, delta)
    if count > cap:
        raise ValueError(f"C({base.n}, {delta}) = {count} exceeds cap {cap}")
    tails = [base.tails]
    heads = [base.indices]
    if count and delta:
        subsets = np.array(list(combinations(range(base.n), delta)), dtype=np.int64)
        new = base.n + np.arange(count, dtype=np.int64)
        tails.append(np.repeat(new, delta))
        heads.append(subsets.reshape(-1))
    return Digraph.from_arrays(base.n + count, np.concatenate(tails), np.concatenate(heads))
