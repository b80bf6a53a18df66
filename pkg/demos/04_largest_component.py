"""The largest component is about Delta / (1 - nu).

In the subcritical regime the biggest component is grown by the vertex of
maximum degree: each of its Delta half-edges leads to a subcritical tree of
expected size 1 / (1 - nu).  The ratio R = |C1| (1 - nu_n) / Delta_n
concentrates around one as n grows.
"""

from subcrit import ExperimentConfig, run_experiment

config = ExperimentConfig(n_values=(10**3, 10**4, 10**5), replicates=40, seed=4)
result = run_experiment(config)
for agg in result.aggregates:
    r = agg.ratio
    print(
        f"n={agg.n:>6}: median R={r.median:.3f} IQR={r.iqr:.3f} "
        f"bad={agg.bad_frequency:.2f} top-3 distinct={agg.distinct_frequency:.2f}"
    )
