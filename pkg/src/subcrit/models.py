"""Random graph families built on top of the configuration model.

* NSW: i.i.d. degrees conditioned on an even sum, then a uniform pairing.
* Rank-1 inhomogeneous graphs: given vertex weights ``W_i``, each pair
  ``{i, j}`` is an edge independently with probability ``p(W_i W_j)``.

Also the Frechet law for the normalized maximum degree and the realized
degree statistics of any sampled graph.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .configuration import MultiGraph, erase, pair_half_edges, sample_simple
from .degrees import (
    DegreeDistribution,
    _parse_params,
    parse_distribution,
    sample_iid_sequence,
)
from .errors import DistributionError, SequenceFormatError

__all__ = [
    "FrechetLaw",
    "frechet_cdf",
    "frechet_quantile",
    "RealizedStats",
    "realized_stats",
    "Rank1Params",
    "edge_probability",
    "pareto_weights",
    "pareto_scale",
    "rank1_sample",
    "nsw_sample",
    "NSWModel",
    "Rank1Model",
    "parse_model",
    "load_weights",
]

RANK1_VARIANTS = ("bdm", "chung_lu", "plain")
TREATMENTS = ("keep", "erase", "simple")
SKIP_THRESHOLD = 2048


# -- Frechet law --------------------------------------------------------------


@dataclass(frozen=True)
class FrechetLaw:
    """``P(Z <= x) = exp(-(x / scale)^(1 - gamma))`` for ``x > 0``."""

    gamma: float
    scale: float = 1.0

    def __post_init__(self):
        if not self.gamma > 1:
            raise ValueError(f"Frechet law needs gamma > 1, got {self.gamma}")
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")

    @classmethod
    def for_tail(cls, gamma, a1):
        """Limit law of ``Delta_n / n^(1/(gamma-1))`` when ``P(D >= k) ~ a1 k^(1-gamma)``."""
        return cls(gamma, a1 ** (1.0 / (gamma - 1.0)))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            z = np.where(x > 0, np.exp(-((np.maximum(x, 0) / self.scale) ** (1.0 - self.gamma))), 0.0)
        return z if z.ndim else float(z)

    def quantile(self, q):
        q = np.asarray(q, dtype=float)
        if ((q <= 0) | (q >= 1)).any():
            raise ValueError("quantile level must lie in (0, 1)")
        x = self.scale * (-np.log(q)) ** (1.0 / (1.0 - self.gamma))
        return x if x.ndim else float(x)


def frechet_cdf(law, x):
    return law.cdf(x)


def frechet_quantile(law, q):
    return law.quantile(q)


# -- realized statistics ------------------------------------------------------


@dataclass(frozen=True)
class RealizedStats:
    mu: float
    nu: float  # None when every degree is zero
    delta: int

    def __iter__(self):
        return iter((self.mu, self.nu, self.delta))


def realized_stats(g):
    """Average degree, offspring mean and maximum degree of a realized graph."""
    if g.n < 1:
        raise ValueError("graph has no vertices")
    seq = g.degree_sequence()
    s1, s2 = seq._sums
    return RealizedStats(
        mu=s1 / seq.n,
        nu=(s2 / s1) if s1 else None,
        delta=seq.max_degree,
    )


# -- rank-1 inhomogeneous graphs --------------------------------------------


@dataclass(frozen=True, eq=False)
class Rank1Params:
    """Vertex weights and the edge-probability variant.

    ``bdm``: ``W_i W_j / (n + W_i W_j)``; ``plain``: ``min(W_i W_j / n, 1)``;
    ``chung_lu``: ``min(W_i W_j / sum_k W_k, 1)``.
    """

    weights: np.ndarray = field(repr=False)
    variant: str = "bdm"

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        if self.variant not in RANK1_VARIANTS:
            raise DistributionError(f"unknown rank-1 variant {self.variant!r}")
        if w.size == 0 or not np.isfinite(w).all() or (w < 0).any():
            raise DistributionError("weights must be finite and nonnegative")
        if self.variant == "chung_lu" and not w.sum() > 0:
            raise DistributionError("chung_lu needs a positive total weight")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def normalizer(self):
        """The ``n`` in ``W_i W_j / n`` (``sum W`` for Chung-Lu)."""
        if self.variant == "chung_lu":
            return float(self.weights.sum())
        return float(self.weights.size)


def edge_probability(product, normalizer, variant):
    """Edge probability as a function of ``W_i W_j``; increasing in the product."""
    product = np.asarray(product, dtype=float)
    if variant == "bdm":
        return product / (normalizer + product)
    return np.minimum(product / normalizer, 1.0)


def pareto_scale(gamma, nu):
    """``x0`` with ``E W^2 = nu`` when ``P(W >= x) = min(1, (x / x0)^(1 - gamma))``."""
    if not gamma > 3:
        raise DistributionError("E W^2 is finite only for gamma > 3")
    return math.sqrt(nu * (gamma - 3.0) / (gamma - 1.0))


def pareto_weights(n, gamma, nu, rng):
    """``n`` i.i.d. Pareto weights with tail exponent ``gamma - 1`` and ``E W^2 = nu``."""
    u = 1.0 - rng.random(n)
    return pareto_scale(gamma, nu) * u ** (-1.0 / (gamma - 1.0))


def _rank1_pairs(params, rng):
    """Independent Bernoulli trial for every pair ``i < j``, in row-major order."""
    w = params.weights
    n = w.size
    iu, ju = np.triu_indices(n, k=1)
    p = edge_probability(w[iu] * w[ju], params.normalizer(), params.variant)
    hit = rng.random(iu.size) < p
    return np.column_stack([iu[hit], ju[hit]])


def _rank1_skip(params, rng):
    """Geometric skipping over pairs sorted by decreasing weight.

    With weights sorted in decreasing order, ``p(W_u W_v)`` is non-increasing
    in ``v > u``.  For each ``u`` the current probability ``p`` bounds all
    later ones; candidate ``v`` are reached by geometric jumps with success
    ``p`` and kept with probability ``p_uv / p``.  Each pair ends up included
    independently with probability exactly ``p_uv``.
    """
    w_orig = params.weights
    n = w_orig.size
    order = np.argsort(-w_orig, kind="stable")
    w = w_orig[order].tolist()
    norm = params.normalizer()
    bdm = params.variant == "bdm"
    random = rng.random
    log, log1p = math.log, math.log1p

    def prob(x):
        return x / (norm + x) if bdm else min(x / norm, 1.0)

    us = []
    vs = []
    for u in range(n - 1):
        wu = w[u]
        if wu == 0.0:
            break
        v = u + 1
        p = prob(wu * w[v])
        while v < n and p > 0.0:
            if p < 1.0:
                # geometric number of failures before the next candidate
                v += int(log(1.0 - random()) / log1p(-p))
            if v >= n:
                break
            q = prob(wu * w[v])
            if random() < q / p:
                us.append(u)
                vs.append(v)
            p = q
            v += 1
    edges = np.column_stack([np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)])
    return order[edges] if edges.size else edges


def rank1_sample(params, rng=None, method="auto"):
    """Simple graph with independent edges under the rank-1 probabilities.

    Parameters
    ----------
    params : Rank1Params
    rng : numpy.random.Generator or int, optional
    method : {"auto", "pairs", "skip"}
        ``pairs`` tests every pair and costs O(n^2); ``skip`` jumps over
        pairs geometrically and costs O(n + m).  ``auto`` uses ``pairs``
        below 2048 vertices.
    """
    rng = np.random.default_rng(rng)
    n = params.weights.size
    if method == "auto":
        method = "pairs" if n < SKIP_THRESHOLD else "skip"
    if method == "pairs":
        edges = _rank1_pairs(params, rng)
    elif method == "skip":
        edges = _rank1_skip(params, rng)
    else:
        raise ValueError(f"unknown method {method!r}")
    return MultiGraph.from_edges(n, edges)


# -- NSW model ----------------------------------------------------------------


def nsw_sample(dist, n, rng=None, treatment="keep", max_tries=1000):
    """I.i.d. degrees conditioned on an even sum, paired uniformly.

    ``treatment`` is ``"keep"`` (the multigraph), ``"erase"`` (drop loops and
    merge parallel edges) or ``"simple"`` (redraw the pairing until simple).
    """
    if treatment not in TREATMENTS:
        raise ValueError(f"unknown treatment {treatment!r}")
    rng = np.random.default_rng(rng)
    seq = sample_iid_sequence(dist, n, "require_even", rng)
    if treatment == "simple":
        g, _ = sample_simple(seq, rng, max_tries=max_tries)
        return g
    g = pair_half_edges(seq, rng)
    return erase(g) if treatment == "erase" else g


@dataclass(frozen=True)
class NSWModel:
    dist: DegreeDistribution
    treatment: str = "keep"

    @property
    def tail_constant(self):
        return self.dist.tail_constant

    def sample(self, n, rng):
        return nsw_sample(self.dist, n, rng, self.treatment)

    def spec(self):
        return "nsw:" + self.dist.spec()


@dataclass(frozen=True)
class Rank1Model:
    """Rank-1 graph with Pareto weights drawn afresh per sample, or fixed weights."""

    variant: str
    gamma: float = None
    nu: float = None
    weights: tuple = None

    @property
    def tail_constant(self):
        return None

    def sample(self, n, rng):
        if self.weights is not None:
            if len(self.weights) != n:
                raise DistributionError(f"weight file has {len(self.weights)} weights, not n={n}")
            w = np.asarray(self.weights)
        else:
            w = pareto_weights(n, self.gamma, self.nu, rng)
        return rank1_sample(Rank1Params(w, self.variant), rng)

    def spec(self):
        if self.weights is not None:
            return f"rank1:{self.variant}:weights[{len(self.weights)}]"
        return f"rank1:{self.variant}:pareto:gamma={self.gamma!r},nu={self.nu!r}"


def parse_model(spec, treatment="keep"):
    """Parse a model spec string.

    ``"nsw:<distribution>"`` (for instance ``"nsw:zeta:gamma=4"``),
    ``"rank1:<variant>:pareto:gamma=4,nu=0.5"`` or
    ``"rank1:<variant>:file=<weights path>"``.
    """
    kind, _, rest = spec.strip().partition(":")
    if kind == "nsw":
        return NSWModel(parse_distribution(rest), treatment)
    if kind == "rank1":
        variant, _, rest = rest.partition(":")
        if variant not in RANK1_VARIANTS:
            raise DistributionError(f"unknown rank-1 variant {variant!r} in {spec!r}")
        law, _, params = rest.partition(":")
        if law.startswith("file="):
            return Rank1Model(variant, weights=tuple(load_weights(law[5:]).tolist()))
        if law == "pareto":
            p = _parse_params(params)
            if set(p) != {"gamma", "nu"}:
                raise DistributionError(f"pareto takes gamma=...,nu=..., got {spec!r}")
            try:
                gamma, nu = float(p["gamma"]), float(p["nu"])
            except ValueError as exc:
                raise DistributionError(f"bad number in {spec!r}") from exc
            pareto_scale(gamma, nu)
            if not nu > 0:
                raise DistributionError("nu must be positive")
            return Rank1Model(variant, gamma=gamma, nu=nu)
        raise DistributionError(f"unknown weight law {law!r} in {spec!r}")
    raise DistributionError(f"unknown model kind {kind!r} in {spec!r}")


def load_weights(path):
    """Read one nonnegative decimal per line."""
    path = Path(path)
    values = []
    lines = path.read_text(encoding="utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, line in enumerate(lines, start=1):
        try:
            x = float(line)
        except ValueError:
            raise SequenceFormatError(f"not a number: {line!r}", lineno, path) from None
        if not math.isfinite(x) or x < 0:
            raise SequenceFormatError(f"weight must be finite and nonnegative: {line!r}", lineno, path)
        values.append(x)
    if not values:
        raise SequenceFormatError("no weights in file", None, path)
    return np.asarray(values)
