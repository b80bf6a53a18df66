"""Power-law degree sequences and their offspring mean.

Draws i.i.d. zeta(gamma) degrees conditioned on an even sum and compares
the realized mu_n and nu_n with the limits zeta(gamma-1)/zeta(gamma) and
(zeta(gamma-2) - zeta(gamma-1)) / zeta(gamma-1).  For gamma > 3 the offspring
mean stays below one: the graph is subcritical.
"""

import numpy as np

from subcrit import mu, nu, sample_iid_sequence, top_degrees, zeta_distribution

rng = np.random.default_rng(1)
for gamma in (3.5, 4.0, 5.0):
    dist = zeta_distribution(gamma)
    print(f"gamma={gamma}: mean={dist.mean():.4f} nu_inf={dist.offspring_mean():.4f}")
    for n in (10**3, 10**5, 10**6):
        seq = sample_iid_sequence(dist, n, rng=rng)
        print(f"  n={n:>7}: mu_n={mu(seq):.4f} nu_n={nu(seq):.4f} top degrees={top_degrees(seq, 3)}")

# The largest degree grows like n^(1/(gamma-1)); the top few are well separated.
