"""Monte Carlo harness for the largest-component law and the maximum degree.

For every vertex count ``n`` and replicate ``r`` a graph is drawn from the
configured model with its own random stream, derived from
``(master seed, n, r)`` through :class:`numpy.random.SeedSequence`.  Each
replicate yields a :class:`ReplicateRecord`; per-``n`` aggregates are a pure
function of the set of records.
"""

import csv
import json
import logging
import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from ._io import atomic_open
from .components import (
    components,
    count_bad_components,
    fat_vertices,
    in_distinct_components,
)
from .degrees import top_vertices
from .errors import ConfigError, SubcritError
from .models import FrechetLaw, TREATMENTS, parse_model

__all__ = [
    "ExperimentConfig",
    "ReplicateRecord",
    "Spread",
    "Aggregate",
    "ExperimentResult",
    "ReplicateError",
    "replicate_seed",
    "run_replicate",
    "run_experiment",
    "aggregate",
    "ks_statistic",
    "write_results",
    "read_results",
    "read_records_csv",
    "CSV_COLUMNS",
]

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "n",
    "replicate",
    "seed",
    "c1_size",
    "c1_edges",
    "c2_size",
    "delta",
    "delta2",
    "mu_n",
    "nu_n",
    "ratio",
    "residual",
    "norm_delta",
    "bad_components",
    "topJ_distinct",
)


class ReplicateError(SubcritError, RuntimeError):
    """A replicate failed; ``n`` and ``replicate`` identify it."""

    def __init__(self, n, replicate, cause):
        self.n = n
        self.replicate = replicate
        super().__init__(f"replicate {replicate} at n={n} failed: {type(cause).__name__}: {cause}")


@dataclass(frozen=True)
class ExperimentConfig:
    model: str = "nsw:zeta:gamma=4"
    n_values: tuple = (10**4, 10**5, 10**6)
    replicates: int = 50
    seed: int = None
    gamma: float = 4.0
    epsilon: float = 0.5
    top_j: int = 3
    treatment: str = "keep"
    workers: int = None
    output: str = None
    format: str = "csv"

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if self.replicates < 1:
            raise ConfigError(f"replicates must be at least 1, got {self.replicates}")
        if not self.n_values or min(self.n_values) < 1:
            raise ConfigError("every n must be at least 1")
        if self.top_j < 1:
            raise ConfigError("J must be at least 1")
        if not self.epsilon > 0:
            raise ConfigError("epsilon must be positive")
        if not self.gamma > 1:
            raise ConfigError("gamma must exceed 1")
        if self.treatment not in TREATMENTS:
            raise ConfigError(f"treatment must be one of {TREATMENTS}")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if self.workers is not None and self.workers < 1:
            raise ConfigError("workers must be at least 1")

    def to_dict(self):
        d = asdict(self)
        d["n_values"] = list(self.n_values)
        return d


@dataclass(frozen=True)
class ReplicateRecord:
    """Observables of one sampled graph.

    ``sizes``, ``edges`` and ``degrees`` hold the top-J component sizes,
    their edge counts and the top-J vertex degrees.  ``nu_n`` and the derived
    ratios are None when undefined (no edges, or ``nu_n == 1``).
    """

    n: int
    replicate: int
    seed: int
    sizes: list
    edges: list
    degrees: list
    mu_n: float
    nu_n: float
    ratio: float
    residual: float
    norm_delta: float
    bad_components: int
    topJ_distinct: bool

    @property
    def c1_size(self):
        return self.sizes[0]

    @property
    def delta(self):
        return self.degrees[0]

    def csv_row(self):
        return {
            "n": self.n,
            "replicate": self.replicate,
            "seed": self.seed,
            "c1_size": self.sizes[0],
            "c1_edges": self.edges[0],
            "c2_size": self.sizes[1] if len(self.sizes) > 1 else 0,
            "delta": self.degrees[0],
            "delta2": self.degrees[1] if len(self.degrees) > 1 else 0,
            "mu_n": self.mu_n,
            "nu_n": self.nu_n,
            "ratio": self.ratio,
            "residual": self.residual,
            "norm_delta": self.norm_delta,
            "bad_components": self.bad_components,
            "topJ_distinct": int(self.topJ_distinct),
        }


def largest_component_ratio(c1, delta, nu_n):
    """``|C1| (1 - nu) / Delta``."""
    if nu_n is None or delta == 0:
        return None
    return c1 * (1.0 - nu_n) / delta


def largest_component_residual(c1, delta, nu_n, n, gamma):
    """``(|C1| - Delta / (1 - nu)) / n^(1/(gamma-1))``."""
    if nu_n is None or nu_n == 1.0:
        return None
    return (c1 - delta / (1.0 - nu_n)) / n ** (1.0 / (gamma - 1.0))


def replicate_seed(master, n, replicate):
    """64-bit seed of replicate ``replicate`` at size ``n``."""
    ss = np.random.SeedSequence(entropy=int(master), spawn_key=(int(n), int(replicate)))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _record(g, n, replicate, seed, config, a1):
    summary = components(g)
    seq = g.degree_sequence()
    s1, s2 = seq._sums
    nu_n = s2 / s1 if s1 else None
    j = min(config.top_j, seq.n)
    top = top_vertices(seq, j)
    degrees = [int(d) for d in seq.degrees[top]]
    k = min(config.top_j, summary.count)
    sizes = [int(x) for x in summary.sizes[:k]]
    edges = [int(x) for x in summary.edge_counts[:k]]
    delta = degrees[0]
    norm_delta = None
    if a1:
        norm_delta = delta / (a1 * n) ** (1.0 / (config.gamma - 1.0))
    fat = fat_vertices(seq, config.epsilon, config.gamma)
    return ReplicateRecord(
        n=n,
        replicate=replicate,
        seed=seed,
        sizes=sizes,
        edges=edges,
        degrees=degrees,
        mu_n=s1 / seq.n,
        nu_n=nu_n,
        ratio=largest_component_ratio(sizes[0], delta, nu_n),
        residual=largest_component_residual(sizes[0], delta, nu_n, n, config.gamma),
        norm_delta=norm_delta,
        bad_components=count_bad_components(summary, fat),
        topJ_distinct=bool(in_distinct_components(summary, top)),
    )


def run_replicate(config, n, replicate, model=None):
    """Sample and measure one graph."""
    if model is None:
        model = parse_model(config.model, config.treatment)
    seed = replicate_seed(config.seed, n, replicate)
    try:
        g = model.sample(n, np.random.default_rng(seed))
        return _record(g, n, replicate, seed, config, model.tail_constant)
    except Exception as exc:
        raise ReplicateError(n, replicate, exc) from exc


def _run_batch(config, tasks):
    model = parse_model(config.model, config.treatment)
    return [run_replicate(config, n, r, model) for n, r in tasks]


def _worker_count(config):
    if config.workers is not None:
        return config.workers
    env = os.environ.get("SUBCRIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"SUBCRIT_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


# -- aggregation --------------------------------------------------------------


@dataclass(frozen=True)
class Spread:
    mean: float
    median: float
    q05: float
    q25: float
    q75: float
    q95: float

    @property
    def iqr(self):
        return None if self.q75 is None else self.q75 - self.q25

    @classmethod
    def of(cls, values):
        x = np.array([v for v in values if v is not None], dtype=float)
        if x.size == 0:
            return cls(None, None, None, None, None, None)
        q = np.quantile(x, [0.5, 0.05, 0.25, 0.75, 0.95])
        return cls(float(x.mean()), *(float(v) for v in q))


@dataclass(frozen=True)
class Aggregate:
    """Per-``n`` summary of the replicate records."""

    n: int
    replicates: int
    ratio: Spread
    residual: Spread
    ks_frechet: float
    bad_frequency: float
    distinct_frequency: float
    mean_excess_normalized: float
    max_c1_normalized: float
    mean_nu: float

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["ratio"] = Spread(**d["ratio"])
        d["residual"] = Spread(**d["residual"])
        return cls(**d)


def ks_statistic(samples, cdf):
    """Kolmogorov-Smirnov distance between the empirical CDF of ``samples`` and ``cdf``.

    Both one-sided gaps are checked at every order statistic.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    m = x.size
    if m == 0:
        raise ValueError("KS statistic needs at least one sample")
    try:
        f = np.asarray(cdf(x), dtype=float)
    except (TypeError, ValueError):
        f = None  # cdf accepts scalars only
    if f is None or f.shape != x.shape:
        f = np.array([cdf(float(v)) for v in x], dtype=float)
    i = np.arange(1, m + 1)
    d_plus = np.max(i / m - f)
    d_minus = np.max(f - (i - 1) / m)
    return float(min(1.0, max(d_plus, d_minus, 0.0)))


def aggregate(records, gamma):
    """Fold records into one :class:`Aggregate` per ``n``, in increasing ``n``."""
    records = sorted(records, key=lambda r: (r.n, r.replicate))
    by_n = {}
    for rec in records:
        by_n.setdefault(rec.n, []).append(rec)
    out = []
    for n, recs in by_n.items():
        scale = n ** (1.0 / (gamma - 1.0))
        norm = [r.norm_delta for r in recs if r.norm_delta is not None]
        ks = ks_statistic(norm, FrechetLaw(gamma).cdf) if norm else None
        nus = [r.nu_n for r in recs if r.nu_n is not None]
        out.append(
            Aggregate(
                n=n,
                replicates=len(recs),
                ratio=Spread.of(r.ratio for r in recs),
                residual=Spread.of(r.residual for r in recs),
                ks_frechet=ks,
                bad_frequency=sum(r.bad_components > 0 for r in recs) / len(recs),
                distinct_frequency=sum(r.topJ_distinct for r in recs) / len(recs),
                mean_excess_normalized=float(
                    np.mean([(r.edges[0] - r.sizes[0]) / scale for r in recs])
                ),
                max_c1_normalized=max(r.sizes[0] for r in recs) / scale,
                mean_nu=float(np.mean(nus)) if nus else None,
            )
        )
    return out


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    records: list = field(default_factory=list)
    aggregates: list = field(default_factory=list)

    def aggregate_for(self, n):
        for agg in self.aggregates:
            if agg.n == n:
                return agg
        raise KeyError(n)

    def records_for(self, n):
        return [r for r in self.records if r.n == n]

    def to_json(self):
        return {
            "config": self.config.to_dict(),
            "aggregates": [asdict(a) for a in self.aggregates],
            "records": [asdict(r) for r in self.records],
        }

    @classmethod
    def from_json(cls, data):
        cfg = dict(data["config"])
        return cls(
            config=ExperimentConfig(**cfg),
            records=[ReplicateRecord(**r) for r in data["records"]],
            aggregates=[Aggregate.from_dict(a) for a in data["aggregates"]],
        )


def run_experiment(config):
    """Run every replicate of ``config`` and aggregate.

    A config without a seed gets one from OS entropy; the seed actually used
    is stored in the returned ``result.config``.
    """
    if config.seed is None:
        config = _with(config, seed=int(np.random.SeedSequence().generate_state(1, np.uint64)[0]))
    if config.gamma <= 3:
        warnings.warn(
            f"gamma={config.gamma} <= 3: the largest-component law is not expected to hold",
            stacklevel=2,
        )
    model = parse_model(config.model, config.treatment)
    a1 = model.tail_constant
    if a1 is not None and getattr(model, "dist", None) is not None:
        if not math.isclose(model.dist.gamma, config.gamma):
            warnings.warn("model gamma differs from config gamma used for normalization", stacklevel=2)

    tasks = [(n, r) for n in config.n_values for r in range(config.replicates)]
    workers = min(_worker_count(config), len(tasks))
    if workers <= 1:
        records = []
        for n in config.n_values:
            logger.info("n=%d: %d replicates", n, config.replicates)
            records.extend(run_replicate(config, n, r, model) for r in range(config.replicates))
    else:
        chunks = [tasks[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_run_batch, [config] * workers, chunks)
            records = [rec for part in parts for rec in part]
    records.sort(key=lambda r: (r.n, r.replicate))
    return ExperimentResult(config, records, aggregate(records, config.gamma))


def _with(config, **changes):
    d = config.to_dict()
    d.update(changes)
    return ExperimentConfig(**d)


# -- persistence --------------------------------------------------------------


def _csv_value(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_results(result, path, format="json"):
    """Write ``result`` to ``path``.

    ``json`` writes the whole structure to one file.  ``csv`` writes one row
    per replicate (columns :data:`CSV_COLUMNS`) and the config and aggregates
    to ``<stem>.aggregate.json`` next to it.
    """
    path = Path(path)
    if format == "json":
        with atomic_open(path, newline="\n") as fh:
            json.dump(result.to_json(), fh, indent=1, allow_nan=False)
            fh.write("\n")
        return [path]
    if format != "csv":
        raise ValueError(f"unknown format {format!r}")
    with atomic_open(path, newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in result.records:
            row = rec.csv_row()
            writer.writerow([_csv_value(row[c]) for c in CSV_COLUMNS])
    agg_path = aggregate_path(path)
    payload = {
        "config": result.config.to_dict(),
        "aggregates": [asdict(a) for a in result.aggregates],
    }
    with atomic_open(agg_path, newline="\n") as fh:
        json.dump(payload, fh, indent=1, allow_nan=False)
        fh.write("\n")
    return [path, agg_path]


def aggregate_path(path):
    path = Path(path)
    return path.with_name(path.stem + ".aggregate.json")


def read_results(path):
    """Load a result written with ``format="json"``."""
    with open(path, encoding="utf-8") as fh:
        return ExperimentResult.from_json(json.load(fh))


_INT_COLUMNS = {"n", "replicate", "seed", "c1_size", "c1_edges", "c2_size", "delta", "delta2", "bad_components", "topJ_distinct"}


def read_records_csv(path):
    """Rows of a records CSV as dicts with typed values (None for empty cells)."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        for raw in reader:
            row = {}
            for k, v in raw.items():
                if v == "":
                    row[k] = None
                elif k in _INT_COLUMNS:
                    row[k] = int(v)
                else:
                    row[k] = float(v)
            rows.append(row)
    return rows


