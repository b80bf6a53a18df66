"""Command-line interface.

Exit codes: 0 on success, 2 for invalid arguments or input, 1 when a run
fails (I/O, rejection sampling gave up).  Diagnostics, including the seed
in effect, go to stderr; data goes to files or stdout.
"""

import argparse
import json
import logging
import secrets
import sys
from pathlib import Path

import numpy as np

from ._io import atomic_open
from .components import components
from .configuration import erase, load_edges, pair_half_edges, sample_simple, save_edges
from .degrees import (
    load_sequence,
    parse_distribution,
    sample_iid_sequence,
    save_sequence,
)
from .errors import ConfigError, SequenceFormatError
from .experiments import ExperimentConfig, run_experiment, write_results
from .exploration import explore
from .models import TREATMENTS, parse_model, realized_stats

__all__ = ["main", "parse_config", "write_config", "CONFIG_KEYS"]

logger = logging.getLogger("subcrit")

# config file key -> (ExperimentConfig field, parser)
CONFIG_KEYS = {
    "model": ("model", str),
    "n": ("n_values", lambda s: tuple(int(float(x)) for x in s.split(",") if x.strip())),
    "replicates": ("replicates", int),
    "seed": ("seed", int),
    "gamma": ("gamma", float),
    "epsilon": ("epsilon", float),
    "J": ("top_j", int),
    "treatment": ("treatment", str),
    "workers": ("workers", int),
    "output": ("output", str),
    "format": ("format", str),
}


def parse_config(path):
    """Read an experiment config made of ``key = value`` lines.

    Blank lines and ``#`` comments are ignored; missing keys take the
    :class:`ExperimentConfig` defaults.  ``n`` is a comma-separated list.
    """
    path = Path(path)
    values = {}
    unknown = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise SequenceFormatError(f"expected 'key = value', got {raw!r}", lineno, path)
        if key not in CONFIG_KEYS:
            unknown.append(key)
            continue
        name, conv = CONFIG_KEYS[key]
        try:
            values[name] = conv(value)
        except ValueError:
            raise SequenceFormatError(f"bad value for {key}: {value!r}", lineno, path) from None
    if unknown:
        raise ConfigError(f"{path}: unknown config keys: {', '.join(unknown)}")
    return ExperimentConfig(**values)


def write_config(config, path):
    """Write ``config`` in the format read by :func:`parse_config`."""
    lines = []
    for key, (name, _) in CONFIG_KEYS.items():
        value = getattr(config, name)
        if value is None:
            continue
        if name == "n_values":
            value = ",".join(str(n) for n in value)
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{key} = {value}")
    with atomic_open(path, newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _seed(args):
    seed = args.seed if args.seed is not None else secrets.randbits(64)
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _emit(payload, out):
    text = json.dumps(payload, indent=1, allow_nan=False) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with atomic_open(out, newline="\n") as fh:
            fh.write(text)


def cmd_gen_degrees(args):
    rng = np.random.default_rng(_seed(args))
    dist = parse_distribution(args.dist)
    seq = sample_iid_sequence(dist, args.n, args.parity, rng)
    if args.out is None:
        sys.stdout.write("".join(f"{d}\n" for d in seq.degrees.tolist()))
    else:
        save_sequence(seq, args.out)
    return 0


def cmd_gen_graph(args):
    rng = np.random.default_rng(_seed(args))
    if (args.degrees is None) == (args.model is None):
        raise ConfigError("give exactly one of --degrees or --model")
    if args.degrees is not None:
        seq = load_sequence(args.degrees)
        if args.treatment == "simple":
            g, tries = sample_simple(seq, rng, max_tries=args.max_tries)
            print(f"tries: {tries}", file=sys.stderr)
        else:
            g = pair_half_edges(seq, rng)
            if args.treatment == "erase":
                g = erase(g)
    else:
        if args.n is None:
            raise ConfigError("--model needs --n")
        g = parse_model(args.model, args.treatment).sample(args.n, rng)
    print(f"n: {g.n}", file=sys.stderr)
    save_edges(g, args.out)
    return 0


def _load_graph(args):
    return load_edges(args.graph, n=args.n)


def cmd_analyze(args):
    _seed(args)
    g = _load_graph(args)
    if g.n == 0:
        raise ConfigError("graph has no vertices; pass --n")
    stats = realized_stats(g)
    summary = components(g).to_json()
    if args.top is not None:
        summary["sizes"] = summary["sizes"][: args.top]
        summary["edge_counts"] = summary["edge_counts"][: args.top]
    _emit(
        {
            "n": g.n,
            "edges": g.m,
            "mu": stats.mu,
            "nu": stats.nu,
            "delta": stats.delta,
            "components": summary,
        },
        args.out,
    )
    return 0


def cmd_explore(args):
    _seed(args)
    g = _load_graph(args)
    root = args.root
    if root is None:
        root = int(np.argmax(g.degree_array))
    trace = explore(g, root, args.policy, generations=(args.J, args.K))
    payload = trace.to_json()
    payload["frontier"] = trace.generations.frontier.tolist()
    _emit(payload, args.out)
    return 0


def cmd_experiment(args):
    overrides = {}
    for flag, name in (
        ("model", "model"),
        ("n", "n_values"),
        ("replicates", "replicates"),
        ("gamma", "gamma"),
        ("epsilon", "epsilon"),
        ("J", "top_j"),
        ("treatment", "treatment"),
        ("workers", "workers"),
        ("out", "output"),
        ("format", "format"),
        ("seed", "seed"),
    ):
        value = getattr(args, flag)
        if value is not None:
            overrides[name] = value
    base = parse_config(args.config).to_dict() if args.config else {}
    base.update(overrides)
    config = ExperimentConfig(**base)
    if not config.gamma > 3:
        raise ConfigError(f"experiment requires gamma > 3 for the subcritical law, got {config.gamma}")
    if config.seed is None:
        config = ExperimentConfig(**{**config.to_dict(), "seed": secrets.randbits(64)})
    print(f"seed: {config.seed}", file=sys.stderr)
    result = run_experiment(config)
    if config.output is None:
        sys.stdout.write(json.dumps(result.to_json(), indent=1, allow_nan=False) + "\n")
    else:
        for p in write_results(result, config.output, config.format):
            print(f"wrote {p}", file=sys.stderr)
    for agg in result.aggregates:
        print(
            f"n={agg.n}: median R={agg.ratio.median}, KS={agg.ks_frechet}, "
            f"bad={agg.bad_frequency}, distinct={agg.distinct_frequency}",
            file=sys.stderr,
        )
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="unsigned 64-bit seed (default: fresh entropy, echoed)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="subcrit",
        description="Simulate subcritical random graphs with power-law degrees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-degrees", parents=[common], help="sample an i.i.d. degree sequence")
    p.add_argument("--dist", required=True, help='e.g. "zeta:gamma=4" or "pmf:0=0.5,1=0.3,2=0.2"')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--parity", choices=("require_even", "allow_any"), default="require_even")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen_degrees)

    p = sub.add_parser("gen-graph", parents=[common], help="sample a graph to an edge-list CSV")
    p.add_argument("--degrees", help="degree sequence file for the configuration model")
    p.add_argument("--model", help='model spec, e.g. "nsw:zeta:gamma=4"')
    p.add_argument("--n", type=int)
    p.add_argument("--treatment", choices=TREATMENTS, default="keep")
    p.add_argument("--max-tries", type=int, default=1000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_graph)

    p = sub.add_parser("analyze", parents=[common], help="component and degree statistics of an edge list")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, help="vertex count (default: largest endpoint + 1)")
    p.add_argument("--top", type=int, help="only report the largest TOP components")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("explore", parents=[common], help="run the half-edge exploration from a root")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--root", type=int, help="default: a vertex of maximum degree")
    p.add_argument("--policy", choices=("fifo", "lifo"), default="fifo")
    p.add_argument("--J", type=int, default=5)
    p.add_argument("--K", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("experiment", parents=[common], help="Monte Carlo check of the largest-component law")
    p.add_argument("--config", help="key = value config file; flags override it")
    p.add_argument("--model")
    p.add_argument("--n", type=lambda s: CONFIG_KEYS["n"][1](s), help="comma-separated vertex counts")
    p.add_argument("--replicates", type=int)
    p.add_argument("--gamma", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--J", type=int)
    p.add_argument("--treatment", choices=TREATMENTS)
    p.add_argument("--workers", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.seed is not None and not 0 <= args.seed < 2**64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
