from .config import CONFIG_SCHEMA, RunConfig, config_hash, schema_document
from .commands import (run_bound, run_bootstrap, run_sweep, run_simulate,
                       run_oracle, run_validate, run_command)
