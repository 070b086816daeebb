"""Majority colourings: the verifier and every constructive colouring routine.

A colouring is a ``beta``-majority colouring when each vertex ``v`` has at most
``beta * d_v`` out-neighbours of its own colour.  All comparisons are done in
integers as ``den * matches <= num * d_v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .digraph import Digraph, UndirectedGraph
from .prob import as_fraction
from .rng import make_rng
from .structure import check_ordering, strong_components, underlying_undirected

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Colouring:
    colours: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(int(c) for c in self.colours))
        if self.k < 1 and self.colours:
            raise ValueError("a colouring of a non-empty digraph needs k >= 1")
        for v, c in enumerate(self.colours):
            if not 0 <= c < self.k:
                raise ValueError(f"vertex {v} has colour {c} outside [0, {self.k})")

    @classmethod
    def of(cls, colours: Sequence[int], k: int | None = None) -> "Colouring":
        colours = [int(c) for c in colours]
        if k is None:
            k = max(colours, default=-1) + 1 or 1
        return cls(tuple(colours), k)

    @property
    def n(self) -> int:
        return len(self.colours)

    def __len__(self) -> int:
        return len(self.colours)

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def as_array(self) -> np.ndarray:
        return np.array(self.colours, dtype=np.int64)

    def used(self) -> int:
        """Number of distinct colours actually used."""
        return len(set(self.colours))

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colours):
            out.setdefault(c, []).append(v)
        return out


@dataclass(frozen=True)
class MajoritySpec:
    k_colours: int
    beta: Fraction = HALF

    def __post_init__(self):
        beta = as_fraction(self.beta)
        if not 0 < beta <= 1:
            raise ValueError(f"beta must lie in (0, 1], got {beta}")
        if self.k_colours < 1:
            raise ValueError("k_colours must be at least 1")
        object.__setattr__(self, "beta", beta)


@dataclass
class VerificationReport:
    valid: bool
    same_colour_count: tuple[int, ...]
    violations: list[int]
    out_degrees: tuple[int, ...]
    colours_in_range: bool = True

    def violation_details(self) -> list[tuple[int, int, int]]:
        """``(vertex, matches, out_degree)`` for each violated vertex."""
        return [(v, self.same_colour_count[v], self.out_degrees[v]) for v in self.violations]

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "colours_in_range": self.colours_in_range,
            "violations": [
                {"vertex": v, "matches": x, "out_degree": d}
                for v, x, d in self.violation_details()
            ],
        }


def exceeds(counts: np.ndarray, degrees: np.ndarray, beta: Fraction) -> np.ndarray:
    """Elementwise ``den * counts > num * degrees`` without overflow."""
    num, den = beta.numerator, beta.denominator
    if max(num, den) < 2**31:
        return den * counts.astype(np.int64) > num * degrees.astype(np.int64)
    return np.array([den * int(x) > num * int(d) for x, d in zip(counts, degrees)], dtype=bool)


def same_colour_counts(g: Digraph, colours) -> np.ndarray:
    """``X(v, colour(v))`` for every vertex."""
    col = np.asarray(colours, dtype=np.int64)
    same = col[g.tails] == col[g.indices]
    return np.bincount(g.tails[same], minlength=g.n)


def colour_count_matrix(g: Digraph, colours, k: int) -> np.ndarray:
    """``X[v, c]`` = number of out-neighbours of ``v`` with colour ``c``."""
    col = np.asarray(colours, dtype=np.int64)
    flat = np.bincount(g.tails * k + col[g.indices], minlength=g.n * k)
    return flat.reshape(g.n, k)


def verify_majority(g: Digraph, c, spec: MajoritySpec | None = None) -> VerificationReport:
    spec = spec or MajoritySpec(k_colours=4)
    colours = c.colours if isinstance(c, Colouring) else tuple(int(x) for x in c)
    if len(colours) != g.n:
        raise ValueError(f"colouring has {len(colours)} entries, digraph has {g.n} vertices")
    in_range = all(0 <= x < spec.k_colours for x in colours)
    counts = same_colour_counts(g, colours) if g.n else np.zeros(0, dtype=np.int64)
    bad = exceeds(counts, g.out_degrees, spec.beta)
    violations = np.flatnonzero(bad).tolist()
    return VerificationReport(
        valid=in_range and not violations,
        same_colour_count=tuple(counts.tolist()),
        violations=violations,
        out_degrees=tuple(g.out_degrees.tolist()),
        colours_in_range=in_range,
    )


def is_majority(g: Digraph, c, k: int, beta=HALF) -> bool:
    return verify_majority(g, c, MajoritySpec(k, beta)).valid


# -- acyclic-split constructions ---------------------------------------------

def greedy_pass(g: Digraph, order: Sequence[int] | None = None, k: int = 2,
                direction: str = "forward") -> Colouring:
    """Colour vertices one at a time along ``order`` (or its reverse).

    Each vertex takes the colour that occurs least often among its already
    coloured out-neighbours, lowest index on ties, so at most ``1/k`` of those
    out-neighbours share its colour.
    """
    if k < 2:
        raise ValueError("greedy_pass needs k >= 2")
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward'")
    order = list(range(g.n)) if order is None else check_ordering(order, g.n)
    if direction == "backward":
        order.reverse()
    adj = g.out_adj
    col = [-1] * g.n
    for v in order:
        counts = [0] * k
        for u in adj[v]:
            cu = col[u]
            if cu >= 0:
                counts[cu] += 1
        col[v] = counts.index(min(counts))
    return Colouring(tuple(col), k)


def majority_product_colouring(g: Digraph, k: int = 2, order: Sequence[int] | None = None) -> Colouring:
    """Pair a forward and a backward greedy pass into a ``k*k``-colouring.

    Two vertices share a pair-colour only if they agree in both passes, so
    every vertex has at most ``d_v / k`` out-neighbours of its colour.  With
    ``k = 2`` this is a majority 4-colouring of any digraph.
    """
    fwd = greedy_pass(g, order, k, "forward")
    bwd = greedy_pass(g, order, k, "backward")
    return Colouring(tuple(a * k + b for a, b in zip(fwd.colours, bwd.colours)), k * k)


# -- undirected balancing --------------------------------------------------------

def balanced_violations(u: UndirectedGraph, colours: Sequence[int], k: int) -> list[int]:
    return [v for v in range(u.n)
            if k * sum(colours[w] == colours[v] for w in u.adj[v]) > u.deg(v)]


def lovasz_balanced_colouring(u: UndirectedGraph, k: int, init: Colouring | Sequence[int] | None = None,
                              seed: int = 0, trace: list[int] | None = None) -> Colouring:
    """Local search that moves a vertex whenever more than ``deg/k`` neighbours match it.

    The moved vertex goes to its least-represented colour, which drops the
    number of monochromatic edges.  If ``trace`` is given it receives the
    monochromatic edge count before the first move and after every move.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = u.n
    if init is None:
        col = make_rng(seed, "lovasz").integers(0, k, n).tolist()
    else:
        col = [int(x) for x in (init.colours if isinstance(init, Colouring) else init)]
        if len(col) != n or any(not 0 <= x < k for x in col):
            raise ValueError("initial colouring does not fit the graph and k")
    adj = u.adj
    cnt = [[0] * k for _ in range(n)]
    for v in range(n):
        row = cnt[v]
        for w in adj[v]:
            row[col[w]] += 1
    mono = sum(cnt[v][col[v]] for v in range(n)) // 2
    if trace is not None:
        trace.append(mono)
    queue = deque(range(n))
    queued = [True] * n
    while queue:
        v = queue.popleft()
        queued[v] = False
        row = cnt[v]
        old = col[v]
        if k * row[old] <= len(adj[v]):
            continue
        new = row.index(min(row))
        gain = row[old] - row[new]
        assert gain > 0
        col[v] = new
        mono -= gain
        if trace is not None:
            trace.append(mono)
        for w in adj[v]:
            cnt[w][old] -= 1
            cnt[w][new] += 1
            if col[w] == new and not queued[w]:
                queued[w] = True
                queue.append(w)
    return Colouring(tuple(col), k)


def eulerian_colouring(g: Digraph, k: int = 4, seed: int = 0) -> Colouring:
    """Balanced colouring of the underlying graph of an Eulerian digraph.

    ``k = 4`` gives a majority colouring; ``k = 3`` keeps the same-coloured
    in-or-out neighbours of each vertex to at most ``2/3`` of its out-degree.
    """
    if k not in (3, 4):
        raise ValueError("k must be 3 or 4")
    if not g.is_eulerian():
        raise ValueError("digraph is not Eulerian (in-degree != out-degree somewhere)")
    return lovasz_balanced_colouring(underlying_undirected(g), k, seed=seed)


# -- Seymour -----------------------------------------------------------------------

def differs_from_some_out_neighbour(g: Digraph, colours: Sequence[int]) -> list[int]:
    """Non-sink vertices whose out-neighbours all share their colour."""
    return [v for v, nbrs in enumerate(g.out_adj)
            if nbrs and all(colours[w] == colours[v] for w in nbrs)]


def _other(c: int) -> int:
    return 1 if c == 0 else 0


def seymour_3colouring(g: Digraph) -> Colouring:
    """At most 3 colours; every non-sink vertex differs from some out-neighbour."""
    adj, radj = g.out_adj, g.in_adj
    col = [-1] * g.n
    comp_of = [0] * g.n
    comps = strong_components(g)
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    for i, comp in enumerate(comps):
        if len(comp) == 1:
            v = comp[0]
            col[v] = _other(col[adj[v][0]]) if adj[v] else 0
            continue
        # walk inside the component until a vertex repeats
        inside = lambda w: comp_of[w] == i  # noqa: E731
        pos: dict[int, int] = {}
        walk = []
        v = comp[0]
        while v not in pos:
            pos[v] = len(walk)
            walk.append(v)
            v = next(w for w in adj[v] if inside(w))
        cycle = walk[pos[v]:]
        for j, w in enumerate(cycle):
            col[w] = j % 2
        if len(cycle) % 2:
            col[cycle[-1]] = 2
        frontier = deque(cycle)
        while frontier:
            v = frontier.popleft()
            for w in radj[v]:
                if inside(w) and col[w] == -1:
                    col[w] = _other(col[v])
                    frontier.append(w)
    return Colouring(tuple(col), 3) if g.n else Colouring((), 1)


# -- randomized ----------------------------------------------------------------------

@dataclass
class RetryResult:
    success: bool
    colouring: Colouring | None
    tries: int
    report: VerificationReport | None


def random_3colouring_retry(g: Digraph, max_tries: int = 100, seed: int = 0,
                            k: int = 3, beta=HALF) -> RetryResult:
    """Sample uniform ``k``-colourings until one is a ``beta``-majority colouring."""
    if max_tries < 1:
        raise ValueError("max_tries must be at least 1")
    spec = MajoritySpec(k, beta)
    report = None
    colouring = None
    for t in range(max_tries):
        colours = make_rng(seed, "random-colouring", t).integers(0, k, g.n)
        colouring = Colouring(tuple(colours.tolist()), k)
        report = verify_majority(g, colouring, spec)
        if report.valid:
            return RetryResult(True, colouring, t + 1, report)
    return RetryResult(False, colouring, max_tries, report)


@dataclass
class ResampleLog:
    rounds: int = 0
    resampled_vertices: int = 0
    success: bool = False
    delta: int = 0
    last: Colouring | None = field(default=None, repr=False)

    def weight(self, d: int) -> Fraction:
        """LLL weight ``t_v = d_v / delta`` for an out-degree ``d``."""
        return Fraction(d, self.delta)


def lll_resample_3colouring(g: Digraph, max_rounds: int = 100_000, seed: int = 0,
                            init: Colouring | Sequence[int] | None = None,
                            events: str = "own") -> tuple[Colouring | None, ResampleLog]:
    """Moser-Tardos resampling for 3-colourings.

    A bad event ``A(v, c)`` holds when more than half the out-neighbours of
    ``v`` have colour ``c``.  With ``events="own"`` only ``c = colour(v)``
    counts, so success means a majority colouring; ``events="all"`` uses every
    colour, the stronger property.  The lexicographically smallest bad event
    is fixed by redrawing the colours of all out-neighbours of ``v``.
    """
    if events not in ("own", "all"):
        raise ValueError("events must be 'own' or 'all'")
    k = 3
    n = g.n
    rng = make_rng(seed, "lll-resample")
    if init is None:
        col = rng.integers(0, k, n)
    else:
        col = np.array(init.colours if isinstance(init, Colouring) else init, dtype=np.int64)
        if col.size != n or (n and (col.min() < 0 or col.max() >= k)):
            raise ValueError("initial colouring does not fit the digraph")
    log = ResampleLog(delta=g.min_out_degree)
    deg = g.out_degrees
    X = colour_count_matrix(g, col, k)
    in_ptr, in_idx = g._in_csr

    def bad_at(vs):
        if events == "all":
            return (2 * X[vs] > deg[vs, None]).any(axis=1)
        return 2 * X[vs, col[vs]] > deg[vs]

    bad = bad_at(np.arange(n))
    while True:
        hits = np.flatnonzero(bad)
        if hits.size == 0:
            log.success = True
            break
        if log.rounds >= max_rounds:
            break
        v = int(hits[0])
        nbrs = g.out_neighbours(v)
        old = col[nbrs]
        new = rng.integers(0, k, nbrs.size)
        log.rounds += 1
        log.resampled_vertices += int(nbrs.size)
        moved = old != new
        if not moved.any():
            continue
        us, a, b = nbrs[moved], old[moved], new[moved]
        col[us] = b
        lens = in_ptr[us + 1] - in_ptr[us]
        starts = np.repeat(in_ptr[us], lens)
        offs = np.arange(lens.sum()) - np.repeat(np.cumsum(lens) - lens, lens)
        ws = in_idx[starts + offs]
        np.add.at(X, (ws, np.repeat(a, lens)), -1)
        np.add.at(X, (ws, np.repeat(b, lens)), 1)
        touched = np.unique(np.concatenate([ws, us]))
        bad[touched] = bad_at(touched)
    final = Colouring(tuple(col.tolist()), k) if n else Colouring((), k)
    log.last = final
    return (final if log.success else None), log


# -- file format -----------------------------------------------------------------------

def serialize_colouring(c: Colouring) -> str:
    lines = [f"colouring {c.n} {c.k}"]
    lines.extend(f"{v} {x}" for v, x in enumerate(c.colours))
    return "\n".join(lines) + "\n"


def parse_colouring(text: str) -> Colouring:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 3 or rows[0][0] != "colouring":
        raise ValueError("expected header 'colouring <n> <k>'")
    try:
        n, k = int(rows[0][1]), int(rows[0][2])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError:
        raise ValueError("malformed colouring line") from None
    if len(pairs) != n:
        raise ValueError(f"header declares {n} vertices, found {len(pairs)} lines")
    colours = [-1] * n
    for v, x in pairs:
        if not 0 <= v < n or colours[v] != -1:
            raise ValueError(f"bad or repeated vertex {v}")
        colours[v] = x
    return Colouring(tuple(colours), k)
