from .base import (CausalQuery, ConditionalModel, natural_effect_queries,
                   nde_queries, nie_queries)
from .algorithm import (bound_no_mediators, bound_with_mediators,
                        compute_bounds, node_bounds, DEFAULT_K)
from .aggregate import (bound_average, average_bounds, bound_difference,
                        difference_bounds)
from sharpsens.result import BoundsResult
