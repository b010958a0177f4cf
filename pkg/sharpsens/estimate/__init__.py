from .base import FitConfig, CovariateBinner
from .pmf import ConditionalPmf, fit_conditional_pmf
from .outcome import OutcomeSampler, fit_outcome_sampler, silverman_bandwidth
from .propensity import PropensityModel, fit_propensity
from .model import fit_conditional_model
