from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import digraphs
from majority_colouring.colouring import (Colouring, MajoritySpec, balanced_violations,
                                          colour_count_matrix, differs_from_some_out_neighbour,
                                          eulerian_colouring, greedy_pass, lll_resample_3colouring,
                                          lovasz_balanced_colouring, majority_product_colouring,
                                          parse_colouring, random_3colouring_retry,
                                          seymour_3colouring, serialize_colouring, verify_majority)
from majority_colouring.digraph import Digraph, UndirectedGraph
from majority_colouring.generators import (gen_cycle_power, gen_directed_cycle, gen_random_digraph,
                                           gen_random_graph)
from majority_colouring.structure import underlying_undirected

HALF = Fraction(1, 2)
NONHEREDITARY_G = Digraph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])   # a->b, b->c, c->a, c->d


def same_count(g, colours, v):
    return sum(colours[u] == colours[v] for u in g.out_adj[v])


# -- verifier --------------------------------------------------------------------------

def test_verify_single_vertex():
    assert verify_majority(Digraph(1), Colouring((0,), 1), MajoritySpec(1)).valid


def test_verify_triangle_violation():
    rep = verify_majority(gen_directed_cycle(3), Colouring.of([1, 1, 2]), MajoritySpec(3))
    assert not rep.valid
    assert rep.violations == [0]
    assert rep.violation_details() == [(0, 1, 1)]


def test_verify_non_hereditary_example_two_colouring():
    # a, c -> colour 1 ; b, d -> colour 2  (shifted to 0-based colour indices)
    rep = verify_majority(NONHEREDITARY_G, Colouring.of([0, 1, 0, 1]), MajoritySpec(2))
    assert rep.valid and rep.violations == []


def test_verify_odd_degree_rounding():
    # d_v = 3 allows exactly one match
    g = Digraph(4, [(0, 1), (0, 2), (0, 3)])
    assert verify_majority(g, [0, 0, 1, 1], MajoritySpec(2)).valid
    assert not verify_majority(g, [0, 0, 0, 1], MajoritySpec(2)).valid


def test_verify_length_mismatch():
    with pytest.raises(ValueError):
        verify_majority(gen_directed_cycle(3), [0, 1], MajoritySpec(2))


def test_verify_flags_colours_out_of_range():
    rep = verify_majority(gen_directed_cycle(4), [0, 1, 0, 5], MajoritySpec(2))
    assert not rep.valid and not rep.colours_in_range and rep.violations == []


def test_majority_spec_reduces_beta():
    spec = MajoritySpec(3, "2/4")
    assert spec.beta == Fraction(1, 2)
    with pytest.raises(ValueError):
        MajoritySpec(3, Fraction(3, 2))


def test_colouring_rejects_out_of_range():
    with pytest.raises(ValueError):
        Colouring((0, 3), 3)


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=7), st.data())
def test_verify_matches_definition(g, data):
    colours = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n))
    beta = data.draw(st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1)]))
    rep = verify_majority(g, colours, MajoritySpec(3, beta))
    expect = [v for v in range(g.n)
              if beta.denominator * same_count(g, colours, v) > beta.numerator * g.out_degree(v)]
    assert rep.violations == expect
    assert rep.valid == (not expect)


# -- greedy and product ----------------------------------------------------------------

def test_greedy_triangle_forward():
    assert greedy_pass(gen_directed_cycle(3), k=2).colours == (0, 0, 1)


def test_greedy_empty_graph():
    assert greedy_pass(Digraph(5), [4, 2, 0, 1, 3], k=3).colours == (0,) * 5


def test_greedy_reverse_topological_order_is_majority():
    g = Digraph(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (0, 4)])
    c = greedy_pass(g, [4, 3, 2, 1, 0], k=2)
    assert verify_majority(g, c, MajoritySpec(2)).valid


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=9), st.data(), st.integers(2, 4), st.sampled_from(["forward", "backward"]))
def test_greedy_prefix_guarantee(g, data, k, direction):
    order = data.draw(st.permutations(range(g.n)))
    c = greedy_pass(g, order, k, direction).colours
    seq = order if direction == "forward" else order[::-1]
    pos = {v: i for i, v in enumerate(seq)}
    for v in range(g.n):
        done = [u for u in g.out_adj[v] if pos[u] < pos[v]]
        matches = sum(c[u] == c[v] for u in done)
        assert k * matches <= len(done)


def test_product_triangle():
    c = majority_product_colouring(gen_directed_cycle(3), 2)
    assert c.k == 4 and c.colours == (0, 1, 2) and c.used() == 3
    assert verify_majority(gen_directed_cycle(3), c, MajoritySpec(4)).valid


def test_product_acyclic_backward_pass_alone():
    g = Digraph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    assert verify_majority(g, greedy_pass(g, k=2, direction="backward"), MajoritySpec(2)).valid
    assert verify_majority(g, majority_product_colouring(g, 2), MajoritySpec(4)).valid


def test_product_cycle_power_k3():
    g = gen_cycle_power(11, 3)
    c = majority_product_colouring(g, 3)
    assert c.k == 9 and c.used() <= 9
    assert all(same_count(g, c.colours, v) <= 1 for v in range(g.n))


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=10), st.integers(2, 4))
def test_product_guarantee(g, k):
    c = majority_product_colouring(g, k)
    assert verify_majority(g, c, MajoritySpec(k * k, Fraction(1, k))).valid


# -- Lovasz / Eulerian ------------------------------------------------------------------

def cycle_graph(n):
    return UndirectedGraph(n, [(i, (i + 1) % n) for i in range(n)])


def test_lovasz_five_cycle():
    c = lovasz_balanced_colouring(cycle_graph(5), 2, seed=3)
    u = cycle_graph(5)
    assert all(sum(c[w] == c[v] for w in u.adj[v]) <= 1 for v in range(5))


def test_lovasz_edgeless_k1():
    c = lovasz_balanced_colouring(UndirectedGraph(4), 1)
    assert c.colours == (0, 0, 0, 0)


def test_lovasz_k4_complete_from_monochromatic():
    k4 = UndirectedGraph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    trace = []
    c = lovasz_balanced_colouring(k4, 2, init=[0, 0, 0, 0], trace=trace)
    assert sorted(len(cls) for cls in c.classes().values()) == [2, 2]
    assert balanced_violations(k4, c.colours, 2) == []
    assert trace[0] == 6 and trace[-1] == 2
    assert all(a > b for a, b in zip(trace, trace[1:]))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 30), st.floats(0, 1), st.integers(1, 5), st.integers(0, 2**32))
def test_lovasz_property(n, p, k, seed):
    u = gen_random_graph(n, p, seed)
    trace = []
    c = lovasz_balanced_colouring(u, k, seed=seed, trace=trace)
    assert balanced_violations(u, c.colours, k) == []
    assert all(a > b for a, b in zip(trace, trace[1:]))
    mono = sum(c[a] == c[b] for a, b in u.edges())
    assert trace[-1] == mono


def test_eulerian_k4_is_majority():
    g = gen_cycle_power(9, 2)
    c = eulerian_colouring(g, 4)
    assert verify_majority(g, c, MajoritySpec(4)).valid


def test_eulerian_k3_in_out_bound():
    g = gen_cycle_power(9, 2)
    c = eulerian_colouring(g, 3, seed=1)
    u = underlying_undirected(g)
    for v in range(g.n):
        same = sum(c[w] == c[v] for w in u.adj[v])
        assert 3 * same <= 2 * g.out_degree(v)


def test_eulerian_four_cycle():
    g = gen_directed_cycle(4)
    assert verify_majority(g, eulerian_colouring(g, 4), MajoritySpec(4)).valid


def test_eulerian_rejects_non_eulerian():
    with pytest.raises(ValueError, match="Eulerian"):
        eulerian_colouring(Digraph(2, [(0, 1)]), 4)
    with pytest.raises(ValueError):
        eulerian_colouring(gen_directed_cycle(3), 2)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(3, 16) for k in range(1, n)])
def test_eulerian_cycle_powers(n, k):
    g = gen_cycle_power(n, k)
    assert verify_majority(g, eulerian_colouring(g, 4, seed=n), MajoritySpec(4)).valid


# -- Seymour ------------------------------------------------------------------------------

def test_seymour_sink():
    assert seymour_3colouring(Digraph(1)).colours == (0,)


def test_seymour_triangle_three_colours():
    c = seymour_3colouring(gen_directed_cycle(3))
    assert sorted(c.colours) == [0, 1, 2]


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_seymour_even_cycles_two_colours(n):
    c = seymour_3colouring(gen_directed_cycle(n))
    assert c.used() == 2


@settings(max_examples=100, deadline=None)
@given(digraphs(max_n=10))
def test_seymour_property(g):
    c = seymour_3colouring(g)
    assert c.used() <= 3
    assert differs_from_some_out_neighbour(g, c.colours) == []


# -- random retry ----------------------------------------------------------------------

def test_retry_edgeless_one_try():
    res = random_3colouring_retry(Digraph(10), max_tries=1, seed=0)
    assert res.success and res.tries == 1


def test_retry_triangle_success_rate():
    # oracle: enumerate all 27 colourings of C3; the good ones are the proper ones
    good = [c for c in product(range(3), repeat=3)
            if verify_majority(gen_directed_cycle(3), c, MajoritySpec(3)).valid]
    assert len(good) == 6            # probability 6/27 = 2/9
    g = gen_directed_cycle(3)
    first_try = sum(random_3colouring_retry(g, 1, seed).success for seed in range(3000))
    assert abs(first_try / 3000 - 2 / 9) < 0.03
    res = random_3colouring_retry(g, 200, seed=11)
    assert res.success and len(set(res.colouring.colours)) == 3


def test_retry_failure_is_a_result():
    res = random_3colouring_retry(gen_directed_cycle(3), max_tries=1, seed=0, k=2)
    assert not res.success and res.tries == 1 and not res.report.valid


def test_retry_deterministic():
    g = gen_random_digraph(40, 0.3, 1)
    a = random_3colouring_retry(g, 50, seed=5)
    b = random_3colouring_retry(g, 50, seed=5)
    assert a.colouring == b.colouring and a.tries == b.tries


# -- LLL resampling --------------------------------------------------------------------------

def test_lll_edgeless():
    c, log = lll_resample_3colouring(Digraph(7), seed=1)
    assert c is not None and log.rounds == 0 and log.success


def test_lll_triangle_from_monochromatic():
    c, log = lll_resample_3colouring(gen_directed_cycle(3), init=[1, 1, 1], seed=2)
    assert log.rounds >= 1 and log.success
    assert len(set(c.colours)) == 3


@pytest.mark.parametrize("n,k", [(13, 2), (20, 4), (31, 6), (50, 8)])
def test_lll_cycle_powers(n, k):
    g = gen_cycle_power(n, k)
    for seed in range(5):
        c, log = lll_resample_3colouring(g, max_rounds=10_000, seed=seed)
        assert log.success
        assert verify_majority(g, c, MajoritySpec(3)).valid


def test_lll_all_events_mode():
    g = gen_cycle_power(41, 8)
    c, log = lll_resample_3colouring(g, max_rounds=50_000, seed=3, init=[0] * 41, events="all")
    assert log.success and log.rounds > 0
    X = colour_count_matrix(g, c.colours, 3)
    assert (2 * X <= 8).all()


def test_lll_budget_exhausted():
    # out-degree-1 vertices can never satisfy the all-colours events
    c, log = lll_resample_3colouring(gen_directed_cycle(3), max_rounds=5, seed=0, events="all")
    assert c is None and not log.success and log.rounds == 5
    assert log.last is not None


def test_lll_incremental_counts_match_recount():
    g = gen_random_digraph(60, 0.15, 8)
    c, log = lll_resample_3colouring(g, max_rounds=20_000, seed=4, init=[0] * 60)
    final = log.last
    assert verify_majority(g, final, MajoritySpec(3)).valid == log.success
    assert log.weight(g.min_out_degree) == 1


@settings(max_examples=40, deadline=None)
@given(digraphs(max_n=9), st.integers(0, 1000))
def test_lll_success_implies_verified(g, seed):
    c, log = lll_resample_3colouring(g, max_rounds=300, seed=seed)
    if log.success:
        assert verify_majority(g, c, MajoritySpec(3)).valid
    again = lll_resample_3colouring(g, max_rounds=300, seed=seed)[1]
    assert (again.rounds, again.success, again.last) == (log.rounds, log.success, log.last)


# -- file format ------------------------------------------------------------------------

def test_colouring_roundtrip():
    c = Colouring((0, 3, 2, 1), 4)
    assert parse_colouring(serialize_colouring(c)) == c


@pytest.mark.parametrize("text", ["colouring 2 2\n0 0\n", "colour 1 1\n0 0", "colouring 2 2\n0 0\n0 1",
                                  "colouring 1 2\n0 5"])
def test_colouring_parse_errors(text):
    with pytest.raises(ValueError):
        parse_colouring(text)
