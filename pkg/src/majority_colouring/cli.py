"""``majority-color`` command line.

Exit codes: 0 ok, 1 invalid input, 2 verification failed or answer is NO,
3 budget or tries exhausted (answer unknown).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from fractions import Fraction

from . import colouring as col
from . import exact, experiment, generators, prob, stable
from .digraph import DigraphError, parse_digraph, serialize_digraph
from .structure import underlying_undirected

EXIT_OK, EXIT_INPUT, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _frac_arg(text: str) -> Fraction:
    try:
        return prob.as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from None


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_digraph(path):
    try:
        return parse_digraph(_read(path))
    except DigraphError as exc:
        raise CliError(f"invalid digraph: {exc}") from None


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- subcommands -----------------------------------------------------------------------

def cmd_gen(args) -> int:
    f = args.family
    try:
        if f == "random":
            g = generators.gen_random_digraph(args.n, args.p, args.seed)
        elif f == "out-regular":
            g = generators.gen_random_out_regular(args.n, args.d, args.seed)
        elif f == "tournament":
            g = generators.gen_tournament(args.n, args.seed)
        elif f == "cycle-power":
            g = generators.gen_cycle_power(args.n, args.power)
        elif f == "strong":
            g = generators.gen_random_strongly_connected(args.n, args.p, args.seed)
        else:
            base = _load_digraph(args.input) if args.input else \
                generators.gen_random_out_regular(args.n, args.d, args.seed)
            g = generators.gen_subset_blowup(base, args.d)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    _write(args.output, serialize_digraph(g))
    return EXIT_OK


def cmd_colour(args) -> int:
    g = _load_digraph(args.input)
    algo = args.algorithm
    extra: dict = {"algorithm": algo}
    try:
        if algo == "product":
            k = args.k or 2
            c = col.majority_product_colouring(g, k)
            spec = col.MajoritySpec(k * k, Fraction(1, k))
        elif algo == "eulerian":
            k = args.k or 4
            c = col.eulerian_colouring(g, k, args.seed)
            spec = col.MajoritySpec(4) if k == 4 else None
        elif algo == "seymour":
            c = col.seymour_3colouring(g)
            spec = None
        elif algo == "random-retry":
            res = col.random_3colouring_retry(g, args.tries, args.seed)
            extra["tries"] = res.tries
            if not res.success:
                _write(args.report, _dump_json({**extra, "success": False,
                                                "last_report": res.report.to_dict()}))
                return EXIT_UNKNOWN
            c, spec = res.colouring, col.MajoritySpec(3)
        else:
            c, log = col.lll_resample_3colouring(g, args.rounds, args.seed)
            extra.update(rounds=log.rounds, resampled_vertices=log.resampled_vertices)
            if c is None:
                _write(args.report, _dump_json({**extra, "success": False}))
                return EXIT_UNKNOWN
            spec = col.MajoritySpec(3)
    except ValueError as exc:
        raise CliError(str(exc)) from None

    # re-verify before anything is written
    if spec is not None:
        rep = col.verify_majority(g, c, spec)
        payload = {**extra, **rep.to_dict(), "k": spec.k_colours, "beta": str(spec.beta)}
        ok = rep.valid
    elif algo == "seymour":
        bad = col.differs_from_some_out_neighbour(g, c.colours)
        ok = not bad and c.used() <= 3
        payload = {**extra, "valid": ok, "violations": bad}
    else:
        u = underlying_undirected(g)
        bad = col.balanced_violations(u, c.colours, 3)
        ok = not bad
        payload = {**extra, "valid": ok, "violations": bad, "beta_in_out": "2/3"}
    payload["colours_used"] = c.used()
    if not ok:
        _write(args.report, _dump_json({**payload, "success": False}))
        return EXIT_NO
    if args.output:
        _write(args.output, col.serialize_colouring(c))
    else:
        payload["colours"] = list(c.colours)
    _write(args.report, _dump_json({**payload, "success": True}))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_digraph(args.input)
    try:
        c = col.parse_colouring(_read(args.colouring))
        spec = col.MajoritySpec(args.k or c.k, args.beta)
        rep = col.verify_majority(g, c, spec)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["vertex", "matches", "out_degree"])
        w.writerows(rep.violation_details())
        _write(args.output, buf.getvalue())
    else:
        _write(args.output, _dump_json(rep.to_dict()))
    return EXIT_OK if rep.valid else EXIT_NO


def _parse_lists(text: str, n: int) -> exact.ListAssignment:
    lists: list = [None] * n
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        v, *cs = (int(t) for t in line.split())
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range")
        lists[v] = cs
    if any(L is None for L in lists):
        raise ValueError("every vertex needs a list")
    return exact.ListAssignment(lists)


def _fractional_payload(g, beta) -> dict:
    return exact.fractional_majority_number(g, beta=beta).to_dict()


def cmd_exact(args) -> int:
    g = _load_digraph(args.input)
    as_json = args.format == "json"
    try:
        if args.fractional:
            _write(args.output, _dump_json(_fractional_payload(g, args.beta)))
            return EXIT_OK
        if args.min_colours:
            res = exact.min_majority_colours(g, args.k_max, args.beta, args.budget)
            if res.status == exact.UNKNOWN:
                _write(args.output, _dump_json({"status": "unknown"}) if as_json else "unknown\n")
                return EXIT_UNKNOWN
            if res.status == exact.NO:
                _write(args.output, _dump_json({"status": "no", "k_max": args.k_max})
                       if as_json else f"none <= {args.k_max}\n")
                return EXIT_NO
            out = {"status": "yes", "min_colours": res.k, "colouring": list(res.colouring.colours)}
            _write(args.output, _dump_json(out) if as_json else f"{res.k}\n")
            return EXIT_OK
        if args.choosable:
            if not args.lists:
                raise CliError("--choosable needs --lists PATH")
            res = exact.choosability_check(g, _parse_lists(_read(args.lists), g.n), args.beta, args.budget)
        else:
            res = exact.exists_beta_colouring(g, args.k or 2, args.beta, args.budget)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    out = {"status": res.status, "nodes": res.nodes}
    if res.colouring is not None:
        out["colouring"] = list(res.colouring.colours)
    _write(args.output, _dump_json(out) if as_json else f"{res.status}\n")
    return {exact.YES: EXIT_OK, exact.NO: EXIT_NO}.get(res.status, EXIT_UNKNOWN)


def cmd_fractional(args) -> int:
    g = _load_digraph(args.input)
    try:
        _write(args.output, _dump_json(_fractional_payload(g, args.beta)))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    return EXIT_OK


def cmd_stable(args) -> int:
    g = _load_digraph(args.input)
    try:
        if args.mode == "enumerate":
            sets = stable.enumerate_stable_sets(g, args.beta)
            _write(args.output, _dump_json({"maximal_stable_sets": [sorted(s) for s in sets]}))
            return EXIT_OK
        if args.mode == "third":
            res = stable.stable_third(g, args.tries, args.seed)
            beta = Fraction(1, 2)
        else:
            params = stable.StableSetParams(args.alpha, args.p, args.beta)
            res = stable.random_stable_set(g, params, args.tries, args.seed)
            beta = params.beta
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if not stable.verify_stable(g, res.T, beta).valid:
        raise CliError("internal error: extracted set is not stable", EXIT_NO)
    _write(args.output, stable.serialize_stable_set(g.n, res.T))
    return EXIT_OK if res.success else EXIT_UNKNOWN


def cmd_tails(args) -> int:
    rows = prob.indset_tail_verification()
    _write(args.output, prob.tail_table_csv(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_NO


def cmd_experiment(args) -> int:
    try:
        cfg = experiment.ExperimentConfig(
            family=args.family, algorithm=args.algorithm, trials=args.trials,
            master_seed=args.seed, n=args.n, p=args.p, d=args.d, power=args.power,
            k=args.k or 2, max_tries=args.tries, max_rounds=args.rounds,
            budget=args.budget, jobs=args.jobs, timings=args.timings)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    records, summary = experiment.run_experiment(cfg)
    if args.format == "csv":
        fields = list(experiment.RECORD_FIELDS) + (["wall_time"] if cfg.timings else [])
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(records)
        _write(args.output, buf.getvalue())
    else:
        _write(args.output, _dump_json({"records": records, "summary": asdict(summary)}))
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write(_dump_json(asdict(summary)))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input digraph file ('-' for stdin)")
    common.add_argument("--output", help="output file (default stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--k", type=int, default=None)
    common.add_argument("--beta", type=_frac_arg, default=Fraction(1, 2))
    common.add_argument("--budget", type=int, default=exact.DEFAULT_BUDGET)
    common.add_argument("--trials", type=int, default=1)
    common.add_argument("--jobs", type=int, default=1)

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", choices=experiment.FAMILIES, default="random")
    fam.add_argument("--n", type=int, default=10)
    fam.add_argument("--p", type=float, default=0.2, help="arc probability")
    fam.add_argument("--d", type=int, default=3, help="out-degree / subset size")
    fam.add_argument("--power", type=int, default=1, help="cycle-power exponent")

    parser = argparse.ArgumentParser(prog="majority-color", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("gen", parents=[common, fam], help="write a digraph file").set_defaults(func=cmd_gen)

    p = sub.add_parser("colour", aliases=["color"], parents=[common], help="colour a digraph")
    p.add_argument("--algorithm", choices=("product", "eulerian", "seymour", "random-retry", "lll"),
                   default="product")
    p.add_argument("--tries", type=int, default=100)
    p.add_argument("--rounds", type=int, default=100_000)
    p.add_argument("--report", help="report file (default stdout)")
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("verify", parents=[common], help="check a colouring")
    p.add_argument("--colouring", "--coloring", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact", parents=[common], help="exact solvers")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--min-colours", "--min-colors", action="store_true")
    mode.add_argument("--exists", action="store_true")
    mode.add_argument("--choosable", action="store_true")
    mode.add_argument("--fractional", action="store_true")
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--lists", help="list file: lines '<v> <c1> <c2> ...'")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("stable", parents=[common], help="stable sets")
    p.add_argument("--mode", choices=("third", "random", "enumerate"), default="third")
    p.add_argument("--alpha", type=_frac_arg, default=Fraction(1, 3))
    p.add_argument("--p", type=_frac_arg, default=Fraction(19, 50))
    p.add_argument("--tries", type=int, default=50)
    p.set_defaults(func=cmd_stable)

    sub.add_parser("fractional", parents=[common], help="fractional majority colouring LP") \
        .set_defaults(func=cmd_fractional)
    sub.add_parser("tails", parents=[common], help="exact tail table for the stable-third bound") \
        .set_defaults(func=cmd_tails)

    p = sub.add_parser("experiment", parents=[common, fam], help="batch experiments")
    p.add_argument("--algorithm", choices=experiment.ALGORITHMS, default="product")
    p.add_argument("--tries", type=int, default=100)
    p.add_argument("--rounds", type=int, default=100_000)
    p.add_argument("--timings", action="store_true", help="add wall times (breaks byte-identity)")
    p.add_argument("--summary", help="also write the aggregate summary here")
    p.set_defaults(func=cmd_experiment)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        if getattr(args, "format", None) == "json":
            sys.stderr.write(json.dumps({"error": str(exc), "exit_code": exc.code}) + "\n")
        else:
            sys.stderr.write(f"majority-color: {exc}\n")
        return exc.code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
