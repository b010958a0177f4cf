from .base import (Functional, apply_discrete, knapsack_expectation_bound,
                   EXPECTATION, QUANTILE)
from .sampling import (expectation_bound_sampled, quantile_bound_sampled,
                       apply_sampled)
