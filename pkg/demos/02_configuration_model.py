"""Uniform pairing of half-edges and the chance of a simple graph.

For the small sequence (2, 1, 1) there are three pairings; exactly one of
them puts a loop on the degree-2 vertex, so P(simple) = 2/3.
"""

import numpy as np

from subcrit import DegreeSequence, erase, estimate_simple_probability, pair_half_edges, sample_simple

rng = np.random.default_rng(2)
seq = DegreeSequence([2, 1, 1])
p, se = estimate_simple_probability(seq, 100000, rng)
print(f"P(simple) for (2,1,1): {p:.4f} +- {se:.4f} (exact 2/3)")

g, tries = sample_simple(seq, rng)
print(f"simple sample after {tries} tries: edges {g.edges.tolist()}")

seq = DegreeSequence([3, 3, 2, 2, 1, 1])
g = pair_half_edges(seq, rng)
print(f"multigraph on {seq.degrees.tolist()}: {g.edges.tolist()}")
print(f"erased: {erase(g).edges.tolist()}")
