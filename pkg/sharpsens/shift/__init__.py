from sharpsens.checks import UPPER, LOWER
from .base import (shift_factors, shift_probs, shift_discrete, shift_cdf,
                   ShiftedCdf)
