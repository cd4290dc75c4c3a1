from .commands import CommandError, cmd_calibrate, cmd_predict, cmd_simulate, cmd_verify
from .datasets import DatasetError, load_dataset
from .outputs import (
    read_metadata,
    read_population_csv,
    write_bands_csv,
    write_draws_csv,
    write_metadata,
    write_population_csv,
    write_trace_csv,
    write_trajectory_csv,
)
from .runconfig import ConfigError, RunConfig, load_config, resolve_config

__all__ = [
    "CommandError",
    "ConfigError",
    "DatasetError",
    "RunConfig",
    "cmd_calibrate",
    "cmd_predict",
    "cmd_simulate",
    "cmd_verify",
    "load_config",
    "load_dataset",
    "read_metadata",
    "read_population_csv",
    "resolve_config",
    "write_bands_csv",
    "write_draws_csv",
    "write_metadata",
    "write_population_csv",
    "write_trace_csv",
    "write_trajectory_csv",
]
