from .identity import IdentityReport, IdentityRow, verify_descent_identity
from .normality import ks_to_normal, ks_trend
from .permutation import (
    Permutation,
    descents,
    sorted_descent_statistic,
    stack_sort,
    stack_sort_single_pass,
)
from .sampling import exact_distribution, mc_distribution, series_distribution
from .table import DistTable
