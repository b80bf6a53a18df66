"""Connected components of a multigraph and the fat-vertex diagnostics."""

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

__all__ = [
    "ComponentSummary",
    "components",
    "excess",
    "fat_threshold",
    "fat_vertices",
    "count_bad_components",
    "in_distinct_components",
]


@dataclass(frozen=True, eq=False)
class ComponentSummary:
    """Component structure of a multigraph.

    Components are numbered by decreasing vertex count; equal sizes are
    ordered by their smallest vertex.  ``edge_counts[c]`` counts a loop as
    one edge.
    """

    n: int
    comp_of: np.ndarray = field(repr=False)
    sizes: np.ndarray = field(repr=False)
    edge_counts: np.ndarray = field(repr=False)

    @property
    def count(self):
        return self.sizes.size

    def to_json(self):
        return {
            "sizes": self.sizes.tolist(),
            "edge_counts": self.edge_counts.tolist(),
            "n": self.n,
        }

    def members(self, c):
        return np.flatnonzero(self.comp_of == c)


def components(g):
    """Label the connected components of ``g``."""
    n = g.n
    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return ComponentSummary(0, empty, empty, empty)
    e = g.edges
    adj = coo_matrix((np.ones(e.shape[0], dtype=np.int8), (e[:, 0], e[:, 1])), shape=(n, n))
    ncomp, labels = connected_components(adj, directed=False)
    labels = labels.astype(np.int64)
    sizes = np.bincount(labels, minlength=ncomp)
    # first occurrence of a label is its smallest vertex
    _, first = np.unique(labels, return_index=True)
    order = np.lexsort((first, -sizes))
    rank = np.empty(ncomp, dtype=np.int64)
    rank[order] = np.arange(ncomp)
    comp_of = rank[labels]
    edge_counts = np.bincount(comp_of[e[:, 0]], minlength=ncomp).astype(np.int64)
    out = ComponentSummary(n, comp_of, sizes[order].astype(np.int64), edge_counts)
    for arr in (out.comp_of, out.sizes, out.edge_counts):
        arr.setflags(write=False)
    return out


def excess(summary, j):
    """Edges minus vertices of the ``j``-th largest component (``j`` from 1)."""
    if not 1 <= j <= summary.count:
        raise ValueError(f"j must lie in [1, {summary.count}], got {j}")
    return int(summary.edge_counts[j - 1]) - int(summary.sizes[j - 1])


def fat_threshold(n, epsilon, gamma):
    return epsilon * n ** (1.0 / (gamma - 1.0))


def fat_vertices(seq, epsilon, gamma):
    """Vertices with degree at least ``epsilon * n^(1/(gamma-1))``."""
    threshold = fat_threshold(seq.n, epsilon, gamma)
    return frozenset(np.flatnonzero(seq.degrees >= threshold).tolist())


def count_bad_components(summary, fat):
    """Number of components holding two or more of the vertices in ``fat``."""
    fat = np.fromiter(fat, dtype=np.int64)
    if fat.size < 2:
        return 0
    per_comp = np.bincount(summary.comp_of[fat])
    return int((per_comp >= 2).sum())


def in_distinct_components(summary, vertices):
    """Whether all ``vertices`` lie in pairwise different components."""
    comps = summary.comp_of[np.asarray(vertices, dtype=np.int64)]
    return np.unique(comps).size == comps.size
