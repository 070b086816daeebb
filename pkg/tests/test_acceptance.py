"""Acceptance suite.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.  Run with ``python3 -m pytest tests/test_acceptance.py -v``.
"""

import math
import time
from fractions import Fraction

import pytest

from majority_colouring.colouring import (MajoritySpec, balanced_violations, colour_count_matrix,
                                          differs_from_some_out_neighbour, lll_resample_3colouring,
                                          lovasz_balanced_colouring, majority_product_colouring,
                                          random_3colouring_retry, seymour_3colouring,
                                          verify_majority, Colouring)
from majority_colouring.digraph import Digraph
from majority_colouring.exact import (NO, YES, brute_force_all_colourings, exists_beta_colouring,
                                      fractional_majority_number, min_majority_colours)
from majority_colouring.generators import (all_tournaments, gen_cycle_power, gen_directed_cycle,
                                           gen_random_digraph, gen_random_graph,
                                           gen_random_out_regular, gen_random_strongly_connected,
                                           gen_subset_blowup, gen_tournament)
from majority_colouring.prob import (THIRD_BOUND, chernoff_bound, delta_threshold,
                                     indset_tail_verification, lll_hypothesis_check)
from majority_colouring.rng import make_rng
from majority_colouring.stable import stable_third, verify_stable

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def property_corpus():
    """500 seeded random digraphs plus a few instances of every generator family."""
    rng = make_rng(2024, "acceptance-corpus")
    probs = (0.05, 0.2, 0.5)
    out = []
    for i in range(500):
        n = int(rng.integers(1, 201))
        out.append(gen_random_digraph(n, probs[i % 3], seed=i))
    for s in range(5):
        out.append(gen_random_out_regular(150, 10 + 5 * s, seed=s))
        out.append(gen_tournament(40 + 10 * s, seed=s))
        out.append(gen_random_strongly_connected(100, 0.05, seed=s))
        out.append(gen_subset_blowup(gen_random_out_regular(8, 2, seed=s), 2))
    out += [gen_cycle_power(n, k) for n in (11, 50, 101) for k in (1, 3, 7)]
    out += [gen_directed_cycle(n) for n in range(2, 12)]
    out.append(Digraph(0))
    out.append(Digraph(5))
    return out


@pytest.fixture(scope="module")
def corpus():
    return property_corpus()


@pytest.mark.criterion(1, "product colouring, 4 colours at beta=1/2")
def test_criterion_01_product_k2(corpus):
    start = time.perf_counter()
    spec = MajoritySpec(4, HALF)
    for g in corpus:
        c = majority_product_colouring(g, 2)
        rep = verify_majority(g, c, spec)
        assert rep.valid and rep.violations == [], g
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(2, "product colouring, 9 colours at beta=1/3")
def test_criterion_02_product_k3(corpus):
    for g in corpus:
        c = majority_product_colouring(g, 3)
        assert c.used() <= 9 and max(c.colours, default=0) < 9
        matches = colour_count_matrix(g, c.colours, 9)[range(g.n), list(c.colours)] if g.n else []
        for v in range(g.n):
            assert matches[v] <= g.out_degree(v) // 3
        assert verify_majority(g, c, MajoritySpec(9, THIRD)).valid


@pytest.mark.criterion(3, "exact lower bounds on cycles and cycle_power(11,3)")
def test_criterion_03_exact_lower_bounds():
    start = time.perf_counter()
    for n, expected in ((4, 2), (5, 3), (6, 2), (7, 3), (9, 3)):
        res = min_majority_colours(gen_directed_cycle(n))
        assert res.status == YES and res.k == expected, n
    g = gen_cycle_power(11, 3)
    assert exists_beta_colouring(g, 2, HALF).status == NO
    assert brute_force_all_colourings(g, 2, HALF, max_n=11) == []
    res = exists_beta_colouring(g, 3, HALF)
    assert res.status == YES and verify_majority(g, res.colouring, MajoritySpec(3)).valid
    assert time.perf_counter() - start < 5


@pytest.mark.criterion(4, "majority 2-colourability is not hereditary")
def test_criterion_04_non_hereditary():
    a, b, c, d = range(4)
    g = Digraph(4, [(a, b), (b, c), (c, a), (c, d)])
    res = exists_beta_colouring(g, 2, HALF)
    assert res.status == YES and verify_majority(g, res.colouring, MajoritySpec(2)).valid
    assert exists_beta_colouring(g.induced([a, b, c]), 2, HALF).status == NO


@pytest.mark.criterion(5, "degree threshold for the one-third stable set is 129")
def test_criterion_05_delta_129():
    assert delta_threshold(THIRD, Fraction(19, 50), HALF) == 129


@pytest.mark.criterion(6, "exact tail table d in [22,128] and Chernoff at 129")
def test_criterion_06_tail_table():
    start = time.perf_counter()
    rows = indset_tail_verification()
    assert len(rows) == 107 and [r.d for r in rows] == list(range(22, 129))
    assert all(r.passed and r.tail <= Fraction(7, 57) for r in rows)
    assert chernoff_bound(129, 0.38, 0.5) <= float(THIRD_BOUND)
    assert time.perf_counter() - start < 2


@pytest.mark.criterion(7, "stable_third on 100 out-regular digraphs (300, 22)")
def test_criterion_07_stable_third():
    start = time.perf_counter()
    for s in range(100):
        g = gen_random_out_regular(300, 22, seed=s)
        res = stable_third(g, max_tries=50, seed=s)
        assert res.success and res.tries_used <= 50, s
        assert len(res.T) >= 100 and verify_stable(g, res.T, HALF)
    assert time.perf_counter() - start < 30


@pytest.mark.criterion(8, "random 3-colouring retry on 20 out-regular digraphs (1000, 600)")
def test_criterion_08_random_retry():
    start = time.perf_counter()
    wins = 0
    for s in range(20):
        g = gen_random_out_regular(1000, 600, seed=s)
        res = random_3colouring_retry(g, max_tries=5, seed=s)
        if res.success:
            assert verify_majority(g, res.colouring, MajoritySpec(3)).valid
            wins += 1
    assert 600 > 72 * math.log(3000)
    assert wins >= 19
    assert time.perf_counter() - start < 60


@pytest.mark.criterion(9, "fractional values 3, 5/2 and 1")
def test_criterion_09_fractional():
    for g, value in ((gen_directed_cycle(3), 3), (gen_directed_cycle(5), Fraction(5, 2)),
                     (Digraph(1), 1), (Digraph(6), 1)):
        sol = fractional_majority_number(g)
        assert isinstance(sol.objective, Fraction) and sol.objective == value
        value = Fraction(value)
        assert sol.to_dict()["objective"] == f"{value.numerator}/{value.denominator}"


@pytest.mark.criterion(10, "backtracking agrees with brute force on small digraphs")
def test_criterion_10_oracle_equivalence():
    start = time.perf_counter()
    small = [t for n in range(1, 5) for t in all_tournaments(n)]
    rng = make_rng(7, "oracle-corpus")
    for i in range(200):
        n = int(rng.integers(1, 6))
        small.append(gen_random_digraph(n, float(rng.uniform(0.1, 0.9)), seed=i))
    for g in small:
        for k in (1, 2, 3):
            for beta in (HALF, THIRD):
                res = exists_beta_colouring(g, k, beta)
                assert res.status in (YES, NO)
                assert (res.status == YES) == bool(brute_force_all_colourings(g, k, beta)), (g, k, beta)
    assert time.perf_counter() - start < 30


@pytest.mark.criterion(11, "balanced local search on 100 random graphs")
def test_criterion_11_lovasz():
    rng = make_rng(11, "lovasz-corpus")
    for i in range(100):
        n = int(rng.integers(1, 101))
        u = gen_random_graph(n, float(rng.uniform(0.02, 0.6)), seed=i)
        for k in (2, 3, 4):
            trace: list = []
            c = lovasz_balanced_colouring(u, k, seed=i, trace=trace)
            assert balanced_violations(u, c.colours, k) == []
            assert all(a > b for a, b in zip(trace, trace[1:]))


def _check_seymour(g):
    c = seymour_3colouring(g)
    assert c.used() <= 3 and max(c.colours, default=0) < 3
    assert differs_from_some_out_neighbour(g, c.colours) == []
    return c


@pytest.mark.criterion(12, "Seymour 3-colouring on strong digraphs and cycle powers")
def test_criterion_12_seymour():
    for s in range(100):
        _check_seymour(gen_random_strongly_connected(60, 0.05, seed=s))
    for n in range(2, 51):
        for k in range(1, n):
            _check_seymour(gen_cycle_power(n, k))
    for n in range(2, 51, 2):
        assert _check_seymour(gen_directed_cycle(n)).used() == 2


@pytest.mark.criterion(13, "colour classes of product colourings are stable")
def test_criterion_13_classes_stable(corpus):
    for g in corpus:
        for k, beta in ((2, HALF), (3, THIRD)):
            c = majority_product_colouring(g, k)
            assert verify_majority(g, c, MajoritySpec(k * k, beta)).valid
            for cls in c.classes().values():
                assert verify_stable(g, cls, HALF)


@pytest.mark.criterion(14, "local lemma regime on cycle_power(5001, 1200)")
def test_criterion_14_lll():
    g = gen_cycle_power(5001, 1200)
    rep = lll_hypothesis_check(g)
    assert rep.delta == 1200 and rep.max_in == 1200
    assert rep.in_degree_bound == pytest.approx(math.exp(50 / 3) / 14400)
    assert rep.satisfied
    spec = MajoritySpec(3)
    c, log = lll_resample_3colouring(g, max_rounds=100_000, seed=0)
    assert log.success and verify_majority(g, c, spec).valid
    # from an all-equal start the resampler has to do real work
    c, log = lll_resample_3colouring(g, max_rounds=100_000, seed=1, init=Colouring((0,) * g.n, 3))
    assert log.success and log.rounds > 0 and verify_majority(g, c, spec).valid
