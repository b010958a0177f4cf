from .base import (RatioBounds, WeightedEntry, ExplicitEntry, SensitivitySpec,
                   ratio_bounds, weighted_ratio_bounds, is_sharp,
                   sharpness_condition_weighted, entry_from_dict,
                   DEGENERATE_TOLERANCE)
from .weight import (WeightFn, ZeroWeight, PropensityWeight, ConstantWeight,
                     TableWeight, weight_from_dict)
