from .scm import (ScmConfig, sample_dataset, write_csv, read_csv,
                  outcome_mean, PRESETS, PRESET_MEDIATORS, DEFAULT_TREATMENTS,
                  MEDIATOR_COLUMNS, CONFOUNDER_COLUMNS, SETTINGS)
from .oracle import oracle_effect, oracle_gamma, oracle_gamma_curve
