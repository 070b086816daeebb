"""Simple digraphs on vertices ``0..n-1`` and their text format.

Arcs are held in compressed sparse row form: the out-neighbours of ``v`` are
``indices[indptr[v]:indptr[v + 1]]``, sorted ascending.  The object is
immutable once built; derived views (in-adjacency, Python lists) are computed
lazily and cached.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator

import numpy as np


class DigraphError(ValueError):
    """Raised for arcs that break the simple-digraph invariants."""


class DigraphFormatError(DigraphError):
    """Raised by :func:`parse_digraph`; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Digraph:
    """A loopless digraph without parallel arcs (digons are allowed)."""

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        arcs = list(arcs)
        if arcs:
            tails, heads = np.array(arcs, dtype=np.int64).reshape(-1, 2).T
        else:
            tails = heads = np.zeros(0, dtype=np.int64)
        self._build(n, tails, heads)

    @classmethod
    def from_arrays(cls, n: int, tails, heads) -> "Digraph":
        g = cls.__new__(cls)
        g._build(n, np.asarray(tails, dtype=np.int64), np.asarray(heads, dtype=np.int64))
        return g

    @classmethod
    def from_out_lists(cls, out_lists: list[Iterable[int]]) -> "Digraph":
        n = len(out_lists)
        tails, heads = [], []
        for u, nbrs in enumerate(out_lists):
            for v in nbrs:
                tails.append(u)
                heads.append(v)
        return cls.from_arrays(n, tails, heads)

    def _build(self, n: int, tails: np.ndarray, heads: np.ndarray) -> None:
        if n < 0:
            raise DigraphError("vertex count must be non-negative")
        if tails.shape != heads.shape:
            raise DigraphError("tail and head arrays differ in length")
        if tails.size:
            bad = (tails < 0) | (tails >= n) | (heads < 0) | (heads >= n)
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                raise DigraphError(f"arc {int(tails[i])}->{int(heads[i])} out of range for n={n}")
            loops = tails == heads
            if loops.any():
                v = int(tails[np.flatnonzero(loops)[0]])
                raise DigraphError(f"self-loop at vertex {v}")
            order = np.lexsort((heads, tails))
            tails, heads = tails[order], heads[order]
            dup = (tails[1:] == tails[:-1]) & (heads[1:] == heads[:-1])
            if dup.any():
                i = int(np.flatnonzero(dup)[0])
                raise DigraphError(f"duplicate arc {int(tails[i])}->{int(heads[i])}")
        counts = np.bincount(tails, minlength=n) if n else np.zeros(0, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        self.n = int(n)
        self.indptr = _frozen(indptr)
        self.indices = _frozen(np.ascontiguousarray(heads))
        self.tails = _frozen(np.ascontiguousarray(tails))

    # -- sizes and degrees -------------------------------------------------

    @property
    def m(self) -> int:
        return int(self.indices.size)

    @cached_property
    def out_degrees(self) -> np.ndarray:
        return _frozen(np.diff(self.indptr))

    @cached_property
    def in_degrees(self) -> np.ndarray:
        return _frozen(np.bincount(self.indices, minlength=self.n))

    @property
    def min_out_degree(self) -> int:
        """delta(G); zero for the empty digraph."""
        return int(self.out_degrees.min()) if self.n else 0

    @property
    def max_in_degree(self) -> int:
        return int(self.in_degrees.max()) if self.n else 0

    def out_degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def in_degree(self, v: int) -> int:
        return int(self.in_degrees[v])

    # -- adjacency ---------------------------------------------------------

    def out_neighbours(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def out_adj(self) -> list[list[int]]:
        idx = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [idx[ptr[v]:ptr[v + 1]] for v in range(self.n)]

    @cached_property
    def _in_csr(self) -> tuple[np.ndarray, np.ndarray]:
        order = np.lexsort((self.tails, self.indices))
        in_ptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.in_degrees, out=in_ptr[1:])
        return _frozen(in_ptr), _frozen(self.tails[order])

    def in_neighbours(self, v: int) -> np.ndarray:
        ptr, idx = self._in_csr
        return idx[ptr[v]:ptr[v + 1]]

    @cached_property
    def in_adj(self) -> list[list[int]]:
        ptr, idx = self._in_csr
        idx_l, ptr_l = idx.tolist(), ptr.tolist()
        return [idx_l[ptr_l[v]:ptr_l[v + 1]] for v in range(self.n)]

    def has_arc(self, u: int, v: int) -> bool:
        nbrs = self.out_neighbours(u)
        i = int(np.searchsorted(nbrs, v))
        return i < nbrs.size and int(nbrs[i]) == v

    def arcs(self) -> Iterator[tuple[int, int]]:
        """Arcs in (tail, head) lexicographic order."""
        return zip(self.tails.tolist(), self.indices.tolist())

    def is_eulerian(self) -> bool:
        """In-degree equals out-degree at every vertex."""
        return bool(np.array_equal(self.in_degrees, self.out_degrees))

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        """Induced subdigraph, relabelled by the sorted order of ``vertices``."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        arcs = [(pos[u], pos[v]) for u, v in self.arcs() if u in pos and v in pos]
        return Digraph(len(keep), arcs)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


class UndirectedGraph:
    """Loopless simple graph with sorted adjacency lists."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj: list[list[int]] = [sorted(s) for s in adj]

    def deg(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, m={self.m})"


# -- text format -------------------------------------------------------------

def serialize_digraph(g: Digraph) -> str:
    lines = [f"digraph {g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.arcs())
    return "\n".join(lines) + "\n"


def _int_field(tok: str, lineno: int, what: str) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise DigraphFormatError(f"{what} is not an integer: {tok!r}", lineno) from None
    if value < 0:
        raise DigraphFormatError(f"{what} must be non-negative", lineno)
    return value


def parse_digraph(text: str) -> Digraph:
    """Parse ``digraph <n> <m>`` followed by ``m`` lines ``<u> <v>``.

    Blank lines and lines starting with ``#`` are skipped.
    """
    header = None
    n = m = 0
    seen: set[tuple[int, int]] = set()
    arcs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if header is None:
            if len(toks) != 3 or toks[0] != "digraph":
                raise DigraphFormatError("expected header 'digraph <n> <m>'", lineno)
            n = _int_field(toks[1], lineno, "vertex count")
            m = _int_field(toks[2], lineno, "arc count")
            header = lineno
            continue
        if len(toks) != 2:
            raise DigraphFormatError("expected '<u> <v>'", lineno)
        u = _int_field(toks[0], lineno, "tail")
        v = _int_field(toks[1], lineno, "head")
        if u >= n or v >= n:
            raise DigraphFormatError(f"vertex index out of range (n={n})", lineno)
        if u == v:
            raise DigraphFormatError(f"self-loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise DigraphFormatError(f"duplicate arc {u}->{v}", lineno)
        if len(arcs) == m:
            raise DigraphFormatError(f"more than the declared {m} arcs", lineno)
        seen.add((u, v))
        arcs.append((u, v))
    if header is None:
        raise DigraphFormatError("missing header 'digraph <n> <m>'")
    if len(arcs) != m:
        raise DigraphFormatError(f"header declares {m} arcs, found {len(arcs)}")
    return Digraph(n, arcs)


def read_digraph(path) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_digraph(fh.read())


def write_digraph(g: Digraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_digraph(g))
