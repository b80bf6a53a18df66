"""The configuration model: uniform matchings of half-edges.

Vertex ``i`` carries ``d_i`` half-edges, numbered vertex by vertex.  A
uniformly random perfect matching of all half-edges (a *configuration*)
gives a multigraph with exactly the prescribed degrees; conditioning that
multigraph on having no loops and no parallel edges gives a uniform simple
graph with the same degrees.
"""

import csv
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from ._io import atomic_open
from .errors import OddDegreeSumError, SequenceFormatError, TriesExhaustedError

__all__ = [
    "MultiGraph",
    "Configuration",
    "pair_configuration",
    "pair_half_edges",
    "is_simple",
    "sample_simple",
    "estimate_simple_probability",
    "erase",
    "load_edges",
    "save_edges",
]

DEFAULT_MAX_TRIES = 1000


def _canonical(edges):
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    edges = np.sort(edges, axis=1)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order]


@dataclass(frozen=True, eq=False)
class MultiGraph:
    """Undirected multigraph on vertices ``0 .. n-1``.

    ``edges`` is an ``(m, 2)`` integer array with ``u <= v`` in every row and
    rows sorted lexicographically; a loop at ``v`` is the row ``(v, v)``.
    Construct through :meth:`from_edges` to get the canonical form.
    """

    n: int
    edges: np.ndarray = field(repr=False)

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if edges.size and (edges.min() < 0 or edges.max() >= self.n):
            raise ValueError(f"edge endpoint outside [0, {self.n})")
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n, edges):
        return cls(int(n), _canonical(edges))

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self):
        return f"MultiGraph(n={self.n}, m={self.m})"

    @property
    def m(self):
        return self.edges.shape[0]

    @cached_property
    def degree_array(self):
        """Degrees with loops counted twice (read-only array)."""
        deg = np.bincount(self.edges.ravel(), minlength=self.n).astype(np.int64)
        deg.setflags(write=False)
        return deg

    def degree_sequence(self):
        from .degrees import DegreeSequence

        return DegreeSequence(self.degree_array)

    @cached_property
    def half_edge_index(self):
        """CSR index of half-edges by vertex.

        Half-edge ``2e`` is the first endpoint of edge ``e`` and ``2e + 1`` the
        second, so the partner of ``h`` is ``h ^ 1``.  Returns
        ``(indptr, half_edges)``: the half-edges at ``v`` are
        ``half_edges[indptr[v]:indptr[v + 1]]``.
        """
        owners = self.edges.ravel()
        order = np.argsort(owners, kind="stable")
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(owners, minlength=self.n), out=indptr[1:])
        return indptr, order


@dataclass(frozen=True, eq=False)
class Configuration:
    """A perfect matching of half-edges.

    ``half_edge_owner[h]`` is the vertex of half-edge ``h``; ``matching`` is a
    fixed-point-free involution on half-edge ids.
    """

    half_edge_owner: np.ndarray
    matching: np.ndarray

    def pairs(self):
        """Matched pairs ``(h, matching[h])`` with ``h < matching[h]``."""
        h = np.flatnonzero(np.arange(self.matching.size) < self.matching)
        return np.column_stack([h, self.matching[h]])

    def to_multigraph(self, n):
        p = self.pairs()
        return MultiGraph.from_edges(n, self.half_edge_owner[p])


def _check_even(seq):
    if not seq.is_even:
        raise OddDegreeSumError(f"degree sum {seq.total} is odd; half-edges cannot be paired")


def _shuffled_half_edges(seq, rng):
    owner = np.repeat(np.arange(seq.n, dtype=np.int64), seq.degrees)
    return owner, rng.permutation(owner.size)


def pair_configuration(seq, rng=None):
    """Uniform random configuration for ``seq``.

    A uniform shuffle of the half-edge ids, paired in consecutive slots,
    is uniform over all ``(2m - 1)!!`` perfect matchings.
    """
    _check_even(seq)
    rng = np.random.default_rng(rng)
    owner, perm = _shuffled_half_edges(seq, rng)
    matching = np.empty_like(perm)
    matching[perm[0::2]] = perm[1::2]
    matching[perm[1::2]] = perm[0::2]
    return Configuration(half_edge_owner=owner, matching=matching)


def pair_half_edges(seq, rng=None):
    """Multigraph ``G*`` from a uniform random configuration of ``seq``."""
    _check_even(seq)
    rng = np.random.default_rng(rng)
    owner, perm = _shuffled_half_edges(seq, rng)
    ends = owner[perm].reshape(-1, 2)
    return MultiGraph.from_edges(seq.n, ends)


def is_simple(g):
    e = g.edges
    if e.shape[0] == 0:
        return True
    if (e[:, 0] == e[:, 1]).any():
        return False
    # canonical edges are sorted, so repeats are adjacent
    return not (e[1:] == e[:-1]).all(axis=1).any()


def sample_simple(seq, rng=None, max_tries=DEFAULT_MAX_TRIES):
    """Uniform simple graph with degrees ``seq``, by rejection.

    Returns
    -------
    graph : MultiGraph
    tries : int
        Number of pairings drawn, the accepted one included.

    Raises
    ------
    OddDegreeSumError
    TriesExhaustedError
        If none of ``max_tries`` pairings was simple.
    """
    _check_even(seq)
    if max_tries < 1:
        raise ValueError("max_tries must be positive")
    rng = np.random.default_rng(rng)
    for tries in range(1, max_tries + 1):
        g = pair_half_edges(seq, rng)
        if is_simple(g):
            return g, tries
    raise TriesExhaustedError(f"no simple graph in {max_tries} pairings", max_tries)


def estimate_simple_probability(seq, reps, rng=None, chunk_half_edges=2**22):
    """Monte Carlo estimate of ``P(G* is simple)`` with its binomial standard error.

    Pairings are drawn in batches (one shuffled row per replicate), which is
    much faster than calling :func:`pair_half_edges` in a loop for short
    sequences.
    """
    _check_even(seq)
    if reps < 1:
        raise ValueError("reps must be positive")
    rng = np.random.default_rng(rng)
    total = seq.total
    if total == 0:
        return 1.0, 0.0
    owner = np.repeat(np.arange(seq.n, dtype=np.int64), seq.degrees)
    batch = max(1, chunk_half_edges // total)
    simple = 0
    done = 0
    while done < reps:
        rows = min(batch, reps - done)
        perm = rng.permuted(np.tile(np.arange(total), (rows, 1)), axis=1)
        ends = owner[perm].reshape(rows, -1, 2)
        u = ends.min(axis=2)
        v = ends.max(axis=2)
        loops = (u == v).any(axis=1)
        codes = np.sort(u * seq.n + v, axis=1)
        repeats = (codes[:, 1:] == codes[:, :-1]).any(axis=1)
        simple += int((~loops & ~repeats).sum())
        done += rows
    p = simple / reps
    return p, float(np.sqrt(p * (1.0 - p) / reps))


def erase(g):
    """Drop loops and merge parallel edges; the vertex set is kept."""
    e = g.edges
    e = e[e[:, 0] != e[:, 1]]
    if e.shape[0]:
        keep = np.ones(e.shape[0], dtype=bool)
        keep[1:] = (e[1:] != e[:-1]).any(axis=1)
        e = e[keep]
    return MultiGraph(g.n, e)


def save_edges(g, path):
    """Write the canonical edge list as CSV with header ``u,v``."""
    with atomic_open(path, newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["u", "v"])
        writer.writerows(g.edges.tolist())


def load_edges(path, n=None):
    """Read an edge-list CSV; ``n`` defaults to one more than the largest endpoint."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["u", "v"]:
            raise SequenceFormatError("expected header 'u,v'", 1, path)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                u, v = (int(x) for x in row)
            except ValueError:
                raise SequenceFormatError(f"bad edge row {row!r}", lineno, path) from None
            if u < 0 or v < 0:
                raise SequenceFormatError(f"negative vertex in {row!r}", lineno, path)
            rows.append((u, v))
    top = max((max(r) for r in rows), default=-1) + 1
    if n is None:
        n = top
    elif n < top:
        raise SequenceFormatError(f"vertex {top - 1} does not fit n={n}", None, path)
    return MultiGraph.from_edges(n, rows)
