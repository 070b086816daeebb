"""Batch experiments over seeded digraph families.

Trial ``i`` uses the seed ``derive_seed(master_seed, i)``, so a run is fully
determined by its config; results come back in trial order whatever the
worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial

from .colouring import (MajoritySpec, differs_from_some_out_neighbour, eulerian_colouring,
                        lll_resample_3colouring, majority_product_colouring,
                        random_3colouring_retry, seymour_3colouring, verify_majority)
from .digraph import Digraph
from .exact import fractional_majority_number, min_majority_colours
from .generators import (gen_cycle_power, gen_random_digraph, gen_random_out_regular,
                         gen_random_strongly_connected, gen_subset_blowup, gen_tournament)
from .rng import derive_seed
from .stable import stable_third, verify_stable

FAMILIES = ("random", "out-regular", "tournament", "cycle-power", "blowup", "strong")
ALGORITHMS = ("product", "random-retry", "lll", "seymour", "eulerian", "exact-min",
              "fractional", "stable-third")

RECORD_FIELDS = ("trial", "seed", "n", "m", "delta", "max_in", "success", "colours",
                 "steps", "violations", "value")


@dataclass(frozen=True)
class ExperimentConfig:
    family: str
    algorithm: str
    trials: int = 1
    master_seed: int = 0
    n: int = 10
    p: float = 0.2
    d: int = 3
    power: int = 1
    k: int = 2
    max_tries: int = 100
    max_rounds: int = 100_000
    budget: int = 10**7
    jobs: int = 1
    timings: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


def make_instance(cfg: ExperimentConfig, seed: int) -> Digraph:
    if cfg.family == "random":
        return gen_random_digraph(cfg.n, cfg.p, seed)
    if cfg.family == "out-regular":
        return gen_random_out_regular(cfg.n, cfg.d, seed)
    if cfg.family == "tournament":
        return gen_tournament(cfg.n, seed)
    if cfg.family == "cycle-power":
        return gen_cycle_power(cfg.n, cfg.power)
    if cfg.family == "blowup":
        return gen_subset_blowup(gen_random_out_regular(cfg.n, cfg.d, seed), cfg.d)
    return gen_random_strongly_connected(cfg.n, cfg.p, seed)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _solve(cfg: ExperimentConfig, g: Digraph, seed: int) -> dict:
    out = {"success": False, "colours": None, "steps": None, "violations": None, "value": None}
    a = cfg.algorithm
    if a == "product":
        c = majority_product_colouring(g, cfg.k)
        rep = verify_majority(g, c, MajoritySpec(cfg.k * cfg.k, Fraction(1, cfg.k)))
        out.update(success=rep.valid, colours=c.used(), violations=len(rep.violations))
    elif a == "random-retry":
        res = random_3colouring_retry(g, cfg.max_tries, seed)
        out.update(success=res.success, colours=res.colouring.used() if res.colouring else 0,
                   steps=res.tries, violations=len(res.report.violations) if res.report else 0)
    elif a == "lll":
        c, log = lll_resample_3colouring(g, cfg.max_rounds, seed)
        rep = verify_majority(g, log.last, MajoritySpec(3))
        out.update(success=log.success and rep.valid, colours=log.last.used(),
                   steps=log.rounds, violations=len(rep.violations))
    elif a == "seymour":
        c = seymour_3colouring(g)
        bad = differs_from_some_out_neighbour(g, c.colours)
        out.update(success=not bad and c.used() <= 3, colours=c.used(), violations=len(bad))
    elif a == "eulerian":
        c = eulerian_colouring(g, 4, seed)
        rep = verify_majority(g, c, MajoritySpec(4))
        out.update(success=rep.valid, colours=c.used(), violations=len(rep.violations))
    elif a == "exact-min":
        res = min_majority_colours(g, 4, budget=cfg.budget)
        out.update(success=res.status == "yes", colours=res.k, steps=res.nodes)
    elif a == "fractional":
        sol = fractional_majority_number(g)
        out.update(success=True, value=_frac(sol.objective))
    elif a == "stable-third":
        res = stable_third(g, cfg.max_tries, seed)
        ok = res.success and verify_stable(g, res.T).valid
        out.update(success=ok, steps=res.tries_used, value=str(len(res.T)))
    return out


def run_trial(cfg: ExperimentConfig, index: int) -> dict:
    seed = derive_seed(cfg.master_seed, index)
    start = time.perf_counter()
    g = make_instance(cfg, seed)
    rec = {"trial": index, "seed": seed, "n": g.n, "m": g.m,
           "delta": g.min_out_degree, "max_in": g.max_in_degree}
    try:
        rec.update(_solve(cfg, g, seed))
    except (ValueError, ArithmeticError) as exc:
        rec.update(success=False, colours=None, steps=None, violations=None,
                   value=f"error: {exc}")
    if cfg.timings:
        rec["wall_time"] = round(time.perf_counter() - start, 6)
    return rec


@dataclass
class ExperimentSummary:
    trials: int
    successes: int
    success_rate: float
    max_colours: int | None
    max_fractional: str | None = None
    config: dict = field(default_factory=dict)


def summarize(cfg: ExperimentConfig, records: list[dict]) -> ExperimentSummary:
    ok = sum(bool(r["success"]) for r in records)
    colours = [r["colours"] for r in records if r["colours"] is not None]
    fracs = [Fraction(r["value"]) for r in records
             if cfg.algorithm == "fractional" and r["value"] and "/" in r["value"]]
    return ExperimentSummary(
        trials=len(records),
        successes=ok,
        success_rate=ok / len(records),
        max_colours=max(colours) if colours else None,
        max_fractional=_frac(max(fracs)) if fracs else None,
        config={k: v for k, v in asdict(cfg).items() if k != "jobs"},
    )


def run_experiment(cfg: ExperimentConfig) -> tuple[list[dict], ExperimentSummary]:
    work = partial(run_trial, cfg)
    if cfg.jobs == 1:
        records = [work(i) for i in range(cfg.trials)]
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(work, range(cfg.trials)))
    return records, summarize(cfg, records)
