"""Random graphs with power-law degrees in the subcritical regime."""

from .components import (
    ComponentSummary,
    components,
    count_bad_components,
    excess,
    fat_vertices,
)
from .configuration import (
    Configuration,
    MultiGraph,
    erase,
    estimate_simple_probability,
    is_simple,
    pair_configuration,
    pair_half_edges,
    sample_simple,
)
from .degrees import (
    DegreeDistribution,
    DegreeSequence,
    finite_distribution,
    mu,
    nu,
    parse_distribution,
    sample_iid_sequence,
    size_biased,
    tail_constant,
    top_degrees,
    zeta_distribution,
)
from .experiments import ExperimentConfig, ks_statistic, run_experiment
from .exploration import bfs_generations, explore
from .models import (
    FrechetLaw,
    Rank1Params,
    nsw_sample,
    pareto_weights,
    parse_model,
    rank1_sample,
    realized_stats,
)

__version__ = "0.1.0"
