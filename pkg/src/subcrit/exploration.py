"""Half-edge exploration of a single component.

Starting from a root, all its half-edges are *active*.  Each step takes an
active half-edge, follows it to its partner and consumes both.  If the
partner's vertex is new, its remaining half-edges become active (``xi`` of
them); otherwise the partner was itself active and the step removes two
active half-edges without adding any.  The walk stops when nothing is
active, after exactly as many steps as the component has edges.

``s[i]`` is the true number of active half-edges after ``i`` steps.
"""

from collections import deque
from dataclasses import dataclass, field

import numpy as np

__all__ = ["ExplorationTrace", "Generations", "explore", "bfs_generations"]


@dataclass(frozen=True)
class Generations:
    """Breadth-first layer statistics around a root.

    ``counts[j-1, k-1]`` is the number of vertices at distance ``j`` with
    degree ``k``; ``frontier[j]`` is the number of active half-edges once
    every half-edge at distance below ``j`` has been processed.
    """

    counts: np.ndarray
    frontier: np.ndarray


@dataclass(frozen=True)
class ExplorationTrace:
    root: int
    s: list
    xi: list
    tau: int
    visited: frozenset
    back_edge_steps: list = field(default_factory=list, repr=False)
    generations: Generations = None

    def to_json(self):
        gens = None
        if self.generations is not None:
            gens = self.generations.counts.tolist()
        return {
            "root": self.root,
            "tau": self.tau,
            "s": list(self.s),
            "visited_count": len(self.visited),
            "generations": gens,
        }


def _walk(g, root, policy, on_pop=None):
    """Core exploration loop shared by :func:`explore` and :func:`bfs_generations`.

    Yields nothing; returns ``(s, xi, back_steps, visited, depth)``.  ``on_pop``
    is called as ``on_pop(depth_of_half_edge, active_before_pop)`` for every
    half-edge taken.
    """
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} outside [0, {g.n})")
    if policy not in ("fifo", "lifo"):
        raise ValueError(f"unknown policy {policy!r}")
    indptr, by_vertex = g.half_edge_index
    owner = g.edges.ravel()

    consumed = set()
    depth = {root: 0}
    queue = deque(int(h) for h in by_vertex[indptr[root]:indptr[root + 1]])
    active = len(queue)
    take = queue.popleft if policy == "fifo" else queue.pop
    s = [active]
    xi = []
    back_steps = []
    while active:
        x = take()
        if x in consumed:
            continue  # removed earlier as the partner of another half-edge
        if on_pop is not None:
            on_pop(depth[int(owner[x])], active)
        y = x ^ 1
        consumed.add(x)
        consumed.add(y)
        v = int(owner[y])
        if v in depth:
            # the partner was active: both ends leave the active set
            active -= 2
            xi.append(0)
            back_steps.append(len(xi))
        else:
            depth[v] = depth[int(owner[x])] + 1
            fresh = [int(h) for h in by_vertex[indptr[v]:indptr[v + 1]] if h != y]
            queue.extend(fresh)
            active += len(fresh) - 1
            xi.append(len(fresh))
        s.append(active)
    return s, xi, back_steps, depth


def explore(g, root, policy="fifo", generations=None):
    """Explore the component of ``root``.

    Parameters
    ----------
    g : MultiGraph
    root : int
    policy : {"fifo", "lifo"}
        Which active half-edge to take next.  FIFO is breadth-first.
    generations : tuple of (J, K), optional
        Also attach :func:`bfs_generations` output.
    """
    s, xi, back_steps, depth = _walk(g, root, policy)
    gens = bfs_generations(g, root, *generations) if generations else None
    return ExplorationTrace(
        root=int(root),
        s=s,
        xi=xi,
        tau=len(xi),
        visited=frozenset(depth),
        back_edge_steps=back_steps,
        generations=gens,
    )


def bfs_generations(g, root, J, K):
    """Vertex counts by (distance, degree) and frontier sizes up to distance ``J``.

    Returns
    -------
    Generations
        ``counts`` has shape ``(J, K)``, ``frontier`` has length ``J + 1``.
    """
    if J < 1 or K < 1:
        raise ValueError("J and K must be positive")
    frontier = np.zeros(J + 1, dtype=np.int64)
    state = {"layer": -1}

    def on_pop(layer, active):
        # active half-edges at depth d lead to distance d + 1; the first pop
        # from a deeper layer means every shallower half-edge is processed
        while state["layer"] < layer:
            state["layer"] += 1
            if state["layer"] <= J:
                frontier[state["layer"]] = active

    _, _, _, depth = _walk(g, root, "fifo", on_pop)
    deg = g.degree_array
    counts = np.zeros((J, K), dtype=np.int64)
    for v, d in depth.items():
        k = int(deg[v])
        if 1 <= d <= J and 1 <= k <= K:
            counts[d - 1, k - 1] += 1
    return Generations(counts=counts, frontier=frontier)
