"""Rank-1 inhomogeneous graphs with Pareto weights.

Each pair {i, j} is an edge with probability W_i W_j / (n + W_i W_j).  With
E W^2 = 0.5 the realized offspring mean nu(G_n) is close to 0.5 and the
largest component again follows Delta / (1 - nu).
"""

import numpy as np

from subcrit import Rank1Params, components, pareto_weights, rank1_sample, realized_stats

rng = np.random.default_rng(6)
for n in (10**4, 10**5):
    w = pareto_weights(n, 4.0, 0.5, rng)
    g = rank1_sample(Rank1Params(w, "bdm"), rng)
    stats = realized_stats(g)
    c1 = int(components(g).sizes[0])
    print(
        f"n={n}: edges={g.m} nu={stats.nu:.3f} Delta={stats.delta} |C1|={c1} "
        f"R={c1 * (1 - stats.nu) / stats.delta:.3f}"
    )
