"""Exact binomial tails and the closed-form tail bounds used by the colouring and
stable-set arguments.

Exact quantities are ``Fraction``s built from big integers.  Closed-form bounds
are floats, except :func:`delta_threshold`, whose ceiling is certified with
interval arithmetic.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath
from mpmath import iv

MAX_TAIL_TRIALS = 10**4

# one-third stable set parameters: alpha = 1/3, p = 0.38, beta = 1/2
THIRD_ALPHA = Fraction(1, 3)
THIRD_P = Fraction(19, 50)
THIRD_BETA = Fraction(1, 2)
THIRD_BOUND = (THIRD_P - THIRD_ALPHA) / THIRD_P   # 7/57
TAIL_TABLE_RANGE = range(22, 129)

LLL_MIN_DELTA = 1200


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, ``"p/q"`` strings and floats to a Fraction.

    Floats are read through their shortest decimal repr, so ``0.38`` becomes
    ``19/50`` rather than its binary expansion.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not fractions")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def binomial_tail(d: int, p, threshold) -> Fraction:
    """``P(X > threshold)`` for ``X ~ Bin(d, p)``, exactly.

    The sum runs over ``k = floor(threshold) + 1, ..., d``.
    """
    p = as_fraction(p)
    threshold = as_fraction(threshold)
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if d < 0:
        raise ValueError("d must be non-negative")
    if d > MAX_TAIL_TRIALS:
        raise ValueError(f"d={d} exceeds the exact-arithmetic cap {MAX_TAIL_TRIALS}")
    start = max(math.floor(threshold) + 1, 0)
    if start > d:
        return Fraction(0)
    a, b = p.numerator, p.denominator
    q = b - a
    num = sum(comb(d, k) * a**k * q**(d - k) for k in range(start, d + 1))
    return Fraction(num, b**d)


def concentration_bound(d: int, t: float, c: float = 1.0) -> float:
    """``exp(-t^2 / (2 c^2 d))`` for a function of ``d`` independent trials,
    each able to move it by at most ``c``."""
    if d < 1 or t < 0 or c <= 0:
        raise ValueError("need d >= 1, t >= 0, c > 0")
    return math.exp(-t * t / (2 * c * c * d))


def chernoff_bound(d: int, p, beta) -> float:
    """Upper bound ``exp(-(beta - p)^2 d / (beta + p))`` on ``P(Bin(d, p) > beta d)``."""
    p, beta = float(p), float(beta)
    if not 0 < p < beta <= 1:
        raise ValueError(f"need 0 < p < beta <= 1, got p={p}, beta={beta}")
    if d < 0:
        raise ValueError("d must be non-negative")
    return math.exp(-(beta - p) ** 2 * d / (beta + p))


def _check_order(alpha: Fraction, p: Fraction, beta: Fraction) -> None:
    if not 0 < alpha < p < beta < 1:
        raise ValueError(f"need 0 < alpha < p < beta < 1, got {alpha}, {p}, {beta}")


def _iv(x: Fraction):
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def delta_threshold(alpha, p, beta, max_prec: int = 4096) -> int:
    """``ceil((beta + p) * log(p / (p - alpha)) / (beta - p)^2)``.

    The expression is enclosed in an interval; precision doubles until both
    endpoints have the same ceiling.
    """
    alpha, p, beta = as_fraction(alpha), as_fraction(p), as_fraction(beta)
    _check_order(alpha, p, beta)
    saved = iv.prec
    prec = 64
    try:
        while prec <= max_prec:
            iv.prec = prec
            x = (_iv(beta) + _iv(p)) * iv.log(_iv(p) / (_iv(p) - _iv(alpha))) / (_iv(beta) - _iv(p)) ** 2
            lo, hi = int(mpmath.ceil(x.a)), int(mpmath.ceil(x.b))
            if lo == hi:
                return lo
            prec *= 2
    finally:
        iv.prec = saved
    raise ArithmeticError("could not certify the ceiling")


def stable_half_degree(eps: float) -> float:
    """Out-degree that guarantees a stable set of ``(1/2 - eps) n`` vertices."""
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    return 2 / eps**2 * (2 - eps) * math.log((1 - eps) / eps)


def stable_k_degree(k: int, eps: float) -> float:
    """Out-degree that guarantees a set of ``(1/k - eps) n`` vertices with at most
    ``1/k`` of each member's out-neighbours inside."""
    if k < 2 or not 0 < eps < 1 / k:
        raise ValueError("need k >= 2 and 0 < eps < 1/k")
    return 2 / eps**2 * (4 / k - eps) * math.log(2 / (eps * k) - 1)


def random_colouring_failure_bound(n: int, delta: int) -> float:
    """``3 n exp(-delta/72)``: expected number of bad events in a uniform 3-colouring."""
    return 3 * n * math.exp(-delta / 72)


def log_threshold_degree(n: int) -> float:
    """``72 log(3n)``; minimum out-degree above this guarantees a majority 3-colouring."""
    return 72 * math.log(3 * n)


# -- LLL ----------------------------------------------------------------------------

@dataclass
class LLLReport:
    delta: int
    max_in: int
    p_lll: float
    in_degree_bound: float
    weights: dict[int, Fraction] = field(repr=False)
    delta_ok: bool = False
    p_ok: bool = False
    condition_a_ok: bool = False
    condition_b_ok: bool = False

    @property
    def satisfied(self) -> bool:
        return self.delta_ok and self.p_ok and self.condition_a_ok and self.condition_b_ok

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "max_in_degree": self.max_in,
            "p": self.p_lll,
            "in_degree_bound": self.in_degree_bound,
            "delta_ok": self.delta_ok,
            "condition_a_ok": self.condition_a_ok,
            "condition_b_ok": self.condition_b_ok,
            "satisfied": self.satisfied,
        }


def lll_in_degree_bound(delta: int) -> float:
    """``exp(delta/72) / (12 delta)``; ``inf`` once it overflows a double."""
    try:
        return math.exp(delta / 72) / (12 * delta)
    except OverflowError:
        return math.inf


def lll_hypothesis_check(g) -> LLLReport:
    """Check the weighted local lemma conditions for uniform 3-colourings of ``g``.

    Condition (a) is ``exp(-d_v/72) <= p^{t_v}`` with ``p = exp(-delta/72)`` and
    ``t_v = d_v/delta``; it is compared in log space with exact rationals.
    Condition (b) reduces to the maximum in-degree bound.
    """
    delta = g.min_out_degree
    if delta < 1:
        raise ValueError("minimum out-degree must be at least 1")
    degrees = sorted(set(g.out_degrees.tolist()))
    weights = {d: Fraction(d, delta) for d in degrees}
    log_p = Fraction(-delta, 72)
    cond_a = all(Fraction(-d, 72) <= log_p * weights[d] for d in degrees)
    max_in = g.max_in_degree
    # compare max_in <= exp(delta/72)/(12 delta) as logs to avoid overflow
    cond_b = max_in == 0 or math.log(max_in) <= delta / 72 - math.log(12 * delta)
    p_lll = math.exp(-delta / 72)
    return LLLReport(
        delta=delta,
        max_in=max_in,
        p_lll=p_lll,
        in_degree_bound=lll_in_degree_bound(delta),
        weights=weights,
        delta_ok=delta >= LLL_MIN_DELTA,
        p_ok=p_lll <= 0.25,
        condition_a_ok=cond_a,
        condition_b_ok=cond_b,
    )


# -- stable-third tail table -----------------------------------------------------------

@dataclass(frozen=True)
class TailRow:
    d: int
    tail: Fraction
    bound: Fraction

    @property
    def passed(self) -> bool:
        return self.tail <= self.bound


def indset_tail_verification(degrees=TAIL_TABLE_RANGE) -> list[TailRow]:
    """Exact ``P(Bin(d, 19/50) > d/2)`` against ``7/57`` for each ``d`` in 22..128."""
    return [TailRow(d, binomial_tail(d, THIRD_P, Fraction(d, 2)), THIRD_BOUND) for d in degrees]


def third_tail_ok(d: int) -> bool:
    """Per-degree certificate: exact tail up to 128, Chernoff from 129 on."""
    if d <= 128:
        return binomial_tail(d, THIRD_P, Fraction(d, 2)) <= THIRD_BOUND
    return chernoff_bound(d, THIRD_P, THIRD_BETA) <= float(THIRD_BOUND)


def tail_table_csv(rows: list[TailRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "tail_num", "tail_den", "bound_num", "bound_den", "pass"])
    for r in rows:
        w.writerow([r.d, r.tail.numerator, r.tail.denominator,
                    r.bound.numerator, r.bound.denominator, str(r.passed).lower()])
    return buf.getvalue()
