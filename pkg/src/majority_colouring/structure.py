"""Structural utilities: orderings, acyclic arc splits, SCCs, underlying graphs."""

from __future__ import annotations

from typing import Sequence

from .digraph import Digraph, UndirectedGraph

Arc = tuple[int, int]


def check_ordering(order: Sequence[int], n: int) -> list[int]:
    order = [int(v) for v in order]
    if len(order) != n or sorted(order) != list(range(n)):
        raise ValueError("vertex ordering must be a permutation of 0..n-1")
    return order


def acyclic_bipartition(g: Digraph, order: Sequence[int] | None = None) -> tuple[list[Arc], list[Arc]]:
    """Split the arcs into those pointing forward and backward in ``order``.

    Both parts are acyclic: along either part the position in ``order`` is
    strictly monotone.
    """
    order = list(range(g.n)) if order is None else check_ordering(order, g.n)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    forward: list[Arc] = []
    backward: list[Arc] = []
    for u, v in g.arcs():
        (forward if pos[u] < pos[v] else backward).append((u, v))
    return forward, backward


def is_acyclic(n: int, arcs) -> bool:
    """Kahn's algorithm on an explicit arc list."""
    out: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        u = stack.pop()
        seen += 1
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    return seen == n


def strong_components(g: Digraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative.

    Components come out in reverse topological order of the condensation
    (sink components first); each component is sorted.
    """
    adj = g.out_adj
    index = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(g.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = adj[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def is_strongly_connected(g: Digraph) -> bool:
    return g.n > 0 and len(strong_components(g)) == 1


def underlying_undirected(g: Digraph) -> UndirectedGraph:
    """Forget orientations; a digon becomes a single edge."""
    return UndirectedGraph(g.n, g.arcs())
