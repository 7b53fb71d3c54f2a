"""Command line interface.

Subcommands: enumerate, sample, abort-rate, asymptote, identities,
typicality, order-experiment, report. Output is JSON on stdout (JSON lines
for per-trial sample output, CSV for profile tables with --csv). Exit codes:
0 success, 1 invalid arguments, 2 refused as infeasible, 3 internal error.
Randomized subcommands echo their effective seed; re-running with that seed
reproduces the output byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import traceback

from . import InfeasibleError, __version__
from .asymptotics import bound_report, optimal_profile, small_rank_counts
from .cache import RunCache
from .decomposition import CliqueDecomposition, random_order_experiment
from .enumerator import count_all
from .graph import DenseGraph, is_typical
from .removal import RemovalConfig, estimate_abort_rate, sample_gamma_c, trial_configs
from .seeds import RNG_DESCRIPTION


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1 instead of argparse's 2
        raise UsageError(message)


def _dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _dumps_line(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _fresh_seed() -> int:
    return int.from_bytes(os.urandom(4), "big")


def _load_json_file(path: str) -> dict:
    with open(path) as handle:
        return json.load(handle)


def build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="cliquedec",
        description="Clique decompositions of K_n: exact counts, removal-process "
        "sampling, and bound formulas.",
    )
    parser.add_argument("--version", action="version", version=f"cliquedec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="exactly count decompositions of K_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=11, help="profile size cutoff L")
    p.add_argument("--by-profile", action="store_true", help="include per-profile counts")
    p.add_argument("--force", action="store_true", help="override the feasibility cap")
    p.add_argument("--threads", type=int, default=1, help="worker processes")
    p.add_argument("--csv", action="store_true", help="emit the profile table as CSV")
    p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("sample", help="run the 4-then-3 clique removal sampler")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, default=0.4, help="triangle-phase truncation exponent")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--out", type=str, default=None, help="write JSON lines here")
    p.add_argument("--no-decomposition", action="store_true", help="omit clique lists")
    p.add_argument("--checkpoint-every", type=int, default=50)
    p.add_argument("--sets-per-size", type=int, default=200)

    p = sub.add_parser("abort-rate", help="abort statistics over repeated sampler runs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, default=0.4)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--checkpoint-every", type=int, default=50)

    p = sub.add_parser("asymptote", help="variational optimum and bound report")
    p.add_argument("--n", type=float, required=True, help="real scale, e.g. 1e6")
    p.add_argument("--cutoff", type=int, default=11)
    p.add_argument("--c", type=float, default=0.4)

    p = sub.add_parser("identities", help="exact rank-1/rank-2 matroid counts")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("typicality", help="typicality check of a graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph-file", type=str, help='JSON {"n": ..., "edges": [[u,v], ...]}')
    src.add_argument("--decomposition-file", type=str, help="decomposition JSON")
    p.add_argument(
        "--drop-prefix",
        type=int,
        default=0,
        help="with a decomposition: probe K_n minus its first m cliques (canonical order)",
    )
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    p.add_argument("--samples", type=int, default=200, help="sets per size in sampled mode")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("order-experiment", help="random-ordering quasirandomness trials")
    p.add_argument("--decomposition-file", type=str, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--checkpoints", type=int, default=20)
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--sets-per-size", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("report", help="bound report plus exact small-n totals")
    p.add_argument("--n", type=float, default=1e6)
    p.add_argument("--cutoff", type=int, default=11)
    p.add_argument("--c", type=float, default=0.4)
    p.add_argument("--max-exact", type=int, default=5)
    p.add_argument("--force", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-cache", action="store_true")

    return parser


def _cmd_enumerate(args) -> int:
    include_profiles = args.by_profile or args.csv
    params = {"n": args.n, "cutoff": args.cutoff, "by_profile": include_profiles}
    cache = RunCache()
    payload = None
    if not args.no_cache:
        record = cache.lookup("enumerate", params)
        if record is not None:
            print("[cache] hit", file=sys.stderr)
            payload = record.result
    if payload is None:
        result = count_all(args.n, args.cutoff, force=args.force, workers=args.threads)
        payload = {"command": "enumerate", **result.as_dict(include_profiles=include_profiles)}
        if not args.no_cache:
            cache.store("enumerate", params, payload)
    if args.csv:
        writer = csv.writer(sys.stdout)
        sizes = [f"s{k}" for k in range(2, args.cutoff + 1)]
        writer.writerow(["n", *sizes, "E", "count"])
        for row in payload["profiles"]:
            writer.writerow([payload["n"], *row["s"], row["E"], row["count"]])
    else:
        print(_dumps(payload))
    return 0


def _cmd_sample(args) -> int:
    master = args.seed if args.seed is not None else _fresh_seed()
    base = RemovalConfig(
        n=args.n,
        c=args.c,
        seed=master,
        checkpoint_every=args.checkpoint_every,
        typicality_sets_per_size=args.sets_per_size,
    )
    lines = []
    aborted = 0
    for trial, cfg in enumerate(trial_configs(base, args.trials)):
        result = sample_gamma_c(cfg)
        aborted += result.aborted
        lines.append(
            _dumps_line(
                {
                    "command": "sample-trial",
                    "n": args.n,
                    "c": args.c,
                    "trial": trial,
                    "master_seed": master,
                    "rng": RNG_DESCRIPTION,
                    **result.as_dict(include_decomposition=not args.no_decomposition),
                }
            )
        )
    if args.out:
        with open(args.out, "w") as handle:
            handle.write("\n".join(lines) + "\n")
        print(
            _dumps(
                {
                    "command": "sample",
                    "n": args.n,
                    "c": args.c,
                    "seed": master,
                    "rng": RNG_DESCRIPTION,
                    "trials": args.trials,
                    "aborted": aborted,
                    "out": args.out,
                }
            )
        )
    else:
        for line in lines:
            print(line)
    return 0


def _cmd_abort_rate(args) -> int:
    master = args.seed if args.seed is not None else _fresh_seed()
    cfg = RemovalConfig(
        n=args.n, c=args.c, seed=master, checkpoint_every=args.checkpoint_every
    )
    report = estimate_abort_rate(cfg, args.trials)
    print(
        _dumps(
            {
                "command": "abort-rate",
                "n": args.n,
                "c": args.c,
                "seed": master,
                "rng": RNG_DESCRIPTION,
                **report.as_dict(),
            }
        )
    )
    return 0


def _cmd_asymptote(args) -> int:
    profile = optimal_profile(args.n, args.cutoff)
    report = bound_report(args.n, args.cutoff, args.c)
    print(
        _dumps(
            {
                "command": "asymptote",
                "optimal_profile": profile.as_dict(),
                "bound_report": report.as_dict(),
            }
        )
    )
    return 0


def _cmd_identities(args) -> int:
    counts = small_rank_counts(args.n)
    print(_dumps({"command": "identities", "n": args.n, **counts.as_dict()}))
    return 0


def _cmd_typicality(args) -> int:
    if args.graph_file:
        raw = _load_json_file(args.graph_file)
        graph = DenseGraph.from_edges(int(raw["n"]), [tuple(e) for e in raw["edges"]])
        source = "graph"
    else:
        decomposition = CliqueDecomposition.from_json_dict(
            _load_json_file(args.decomposition_file)
        )
        graph = DenseGraph.complete(decomposition.n)
        for clique in decomposition.cliques[: args.drop_prefix]:
            graph.remove_clique_edges(clique)
        source = "decomposition"
    seed = args.seed
    if seed is None and args.mode != "exhaustive":
        seed = _fresh_seed()
    report = is_typical(
        graph, args.epsilon, args.h, mode=args.mode, k_samples=args.samples, seed=seed
    )
    print(
        _dumps(
            {
                "command": "typicality",
                "source": source,
                "n": graph.n,
                "m": graph.m,
                "mode": args.mode,
                "seed": seed,
                "rng": RNG_DESCRIPTION,
                "report": report.as_dict(),
            }
        )
    )
    return 0


def _cmd_order_experiment(args) -> int:
    decomposition = CliqueDecomposition.from_json_dict(
        _load_json_file(args.decomposition_file)
    )
    seed = args.seed if args.seed is not None else _fresh_seed()
    report = random_order_experiment(
        decomposition,
        trials=args.trials,
        checkpoints=args.checkpoints,
        h=args.h,
        sets_per_size=args.sets_per_size,
        seed=seed,
    )
    print(
        _dumps(
            {
                "command": "order-experiment",
                "n": decomposition.n,
                "checkpoints": args.checkpoints,
                "h": args.h,
                "sets_per_size": args.sets_per_size,
                "seed": seed,
                "rng": RNG_DESCRIPTION,
                **report.as_dict(),
            }
        )
    )
    return 0


def _cmd_report(args) -> int:
    params = {
        "n": args.n,
        "cutoff": args.cutoff,
        "c": args.c,
        "max_exact": args.max_exact,
    }
    cache = RunCache()
    payload = None
    if not args.no_cache:
        record = cache.lookup("report", params)
        if record is not None:
            print("[cache] hit", file=sys.stderr)
            payload = record.result
    if payload is None:
        exact = []
        for k in range(1, args.max_exact + 1):
            result = count_all(k, args.cutoff, force=args.force, workers=args.threads)
            exact.append({"n": k, "total": str(result.total)})
        payload = {
            "command": "report",
            "bound_report": bound_report(args.n, args.cutoff, args.c).as_dict(),
            "exact_counts": exact,
        }
        if not args.no_cache:
            cache.store("report", params, payload)
    print(_dumps(payload))
    return 0


_HANDLERS = {
    "enumerate": _cmd_enumerate,
    "sample": _cmd_sample,
    "abort-rate": _cmd_abort_rate,
    "asymptote": _cmd_asymptote,
    "identities": _cmd_identities,
    "typicality": _cmd_typicality,
    "order-experiment": _cmd_order_experiment,
    "report": _cmd_report,
}


def dispatch(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _HANDLERS[args.command](args)


def main(argv=None) -> int:
    try:
        return dispatch(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except InfeasibleError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse --help / --version
        code = exc.code
        return int(code) if isinstance(code, int) else 0
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())
