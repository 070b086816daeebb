"""Majority colourings of digraphs.

A majority colouring gives every vertex a colour shared by at most half of its
out-neighbours.  This package builds such colourings (product of greedy passes,
balanced local search, random sampling, resampling), checks them exactly, finds
stable sets, and decides small instances exactly.
"""

from .colouring import (Colouring, MajoritySpec, VerificationReport, eulerian_colouring,
                        greedy_pass, lll_resample_3colouring, lovasz_balanced_colouring,
                        majority_product_colouring, random_3colouring_retry,
                        seymour_3colouring, verify_majority)
from .digraph import Digraph, UndirectedGraph, parse_digraph, serialize_digraph
from .exact import (brute_force_all_colourings, choosability_check, exists_beta_colouring,
                    fractional_majority_number, min_majority_colours)
from .generators import (gen_cycle_power, gen_random_digraph, gen_random_out_regular,
                         gen_subset_blowup, gen_tournament)
from .prob import (binomial_tail, chernoff_bound, concentration_bound, delta_threshold,
                   indset_tail_verification, lll_hypothesis_check)
from .stable import (StableSetParams, enumerate_stable_sets, random_stable_set, stable_third,
                     verify_stable)
from .structure import acyclic_bipartition, strong_components, underlying_undirected

__version__ = "0.1.0"
