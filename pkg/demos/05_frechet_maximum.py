"""The normalized maximum degree and its Frechet limit.

With P(D >= k) ~ a1 k^(1-gamma), Delta_n / (a1 n)^(1/(gamma-1)) converges to
the law exp(-x^(1-gamma)).  Compare a few empirical quantiles with the limit.
"""

import numpy as np

from subcrit import FrechetLaw, ExperimentConfig, ks_statistic, run_experiment

gamma = 4.0
law = FrechetLaw(gamma)
result = run_experiment(ExperimentConfig(n_values=(10**4, 10**5), replicates=100, seed=5))
for n in (10**4, 10**5):
    z = np.array([r.norm_delta for r in result.records_for(n)])
    qs = np.quantile(z, [0.25, 0.5, 0.75])
    print(f"n={n}: KS={ks_statistic(z, law.cdf):.3f}")
    print(f"  empirical quartiles {np.round(qs, 3)}, limit {np.round(law.quantile([0.25, 0.5, 0.75]), 3)}")
