"""Exact rational simplex for covering LPs.

Solves ``min c.x  s.t.  A x >= b, x >= 0`` with ``c >= 0`` by the dual simplex
method on Fractions.  Starting from the slack basis is dual feasible because
``c >= 0``, so no phase one is needed.  Leaving and entering variables follow
Bland's smallest-index rule, which rules out cycling.

The returned dual vector ``y`` certifies optimality: ``y >= 0``,
``A^T y <= c`` and ``b.y == c.x``; :func:`check_certificate` re-verifies this.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class LPError(ArithmeticError):
    pass


class Infeasible(LPError):
    pass


@dataclass
class LPSolution:
    x: list[Fraction]
    y: list[Fraction]
    value: Fraction
    pivots: int


def solve_covering_lp(A: Sequence[Sequence], b: Sequence, c: Sequence,
                      max_pivots: int = 100_000) -> LPSolution:
    m = len(A)
    N = len(c)
    c = [Fraction(v) for v in c]
    if any(v < 0 for v in c):
        raise ValueError("dual simplex start needs c >= 0")
    if any(len(row) != N for row in A) or len(b) != m:
        raise ValueError("dimension mismatch")
    width = N + m
    # row i:  -A_i x + s_i = -b_i
    T = [[-Fraction(v) for v in A[i]] + [Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    rhs = [-Fraction(v) for v in b]
    red = c + [Fraction(0)] * m
    basis = [N + i for i in range(m)]
    pivots = 0
    while True:
        rows = [i for i in range(m) if rhs[i] < 0]
        if not rows:
            break
        r = min(rows, key=lambda i: basis[i])
        row = T[r]
        best = None
        for j in range(width):
            a = row[j]
            if a < 0:
                ratio = red[j] / -a
                if best is None or ratio < best[0]:
                    best = (ratio, j)
        if best is None:
            raise Infeasible("covering LP is infeasible")
        if pivots >= max_pivots:
            raise LPError("pivot limit reached")
        j = best[1]
        piv = row[j]
        row = [v / piv for v in row]
        T[r] = row
        rhs[r] /= piv
        for i in range(m):
            if i != r:
                f = T[i][j]
                if f:
                    Ti = T[i]
                    T[i] = [Ti[t] - f * row[t] for t in range(width)]
                    rhs[i] -= f * rhs[r]
        f = red[j]
        if f:
            red = [red[t] - f * row[t] for t in range(width)]
        basis[r] = j
        pivots += 1
    x = [Fraction(0)] * N
    for i, var in enumerate(basis):
        if var < N:
            x[var] = rhs[i]
    y = [red[N + i] for i in range(m)]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPSolution(x, y, value, pivots)


def check_certificate(A, b, c, sol: LPSolution) -> bool:
    """Primal feasibility, dual feasibility and equal objectives, all exact."""
    m, N = len(A), len(c)
    if any(v < 0 for v in sol.x) or any(v < 0 for v in sol.y):
        return False
    for i in range(m):
        if sum(Fraction(A[i][j]) * sol.x[j] for j in range(N)) < b[i]:
            return False
    for j in range(N):
        if sum(Fraction(A[i][j]) * sol.y[i] for i in range(m)) > c[j]:
            return False
    primal = sum(Fraction(c[j]) * sol.x[j] for j in range(N))
    dual = sum(Fraction(b[i]) * sol.y[i] for i in range(m))
    return primal == dual == sol.value
