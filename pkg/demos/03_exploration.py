"""Exploring one component half-edge by half-edge.

The active count S_i starts at the root degree, changes by xi - 1 on a tree
step and by -2 when a step closes a cycle, and first hits zero after as many
steps as the component has edges.
"""

import numpy as np

from subcrit import bfs_generations, components, explore, nsw_sample, zeta_distribution

rng = np.random.default_rng(3)
g = nsw_sample(zeta_distribution(4.0), 20000, rng)
root = int(np.argmax(g.degree_array))
trace = explore(g, root)
summary = components(g)
c = summary.comp_of[root]
print(f"root degree {g.degree_array[root]}, component size {summary.sizes[c]}, edges {summary.edge_counts[c]}")
print(f"tau = {trace.tau}, cycle-closing steps at {trace.back_edge_steps}")
print(f"first steps of S: {trace.s[:15]}")

gen = bfs_generations(g, root, J=3, K=6)
print("vertices by distance (rows) and degree 1..6 (columns):")
print(gen.counts)
print(f"frontier sizes: {gen.frontier.tolist()}")
