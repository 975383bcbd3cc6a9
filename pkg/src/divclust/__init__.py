"""Diversity-aware clustering: k facilities meeting group lower bounds at low k-median/means/supplier cost."""

from .coreset import WeightedClients, build_coreset
from .drivers import reduce_fair_to_pm, solve_div_clustering, solve_fair
from .errors import (
    CapExceeded,
    DivClustError,
    Infeasible,
    MetricViolation,
    SchemaError,
)
from .instance import (
    DiversityInstance,
    PartitionInstance,
    Solution,
    characteristic_vector,
    check_div_r_sat,
    check_fair,
    check_partition_feasible,
)
from .io import load_instance, save_instance
from .kmedian_pm import solve_kmedian_pm
from .ksupplier_pm import solve_ksupplier_pm
from .metric import DistanceMatrix, ball, cost, radius_grid
from .oracle import brute_force_div, brute_force_pm
from .patterns import build_partition, enumerate_feasible_patterns, materialize

__version__ = "0.1.0"
