"""Configuration files, experiment runners and the command-line interface."""

from .config import ScenarioConfig, default_config, load_config, parse_config
from .runners import (
    run_closely_table,
    run_report,
    run_validation,
    run_widely_curves,
)

__all__ = ["ScenarioConfig", "default_config", "load_config", "parse_config",
           "run_closely_table", "run_widely_curves", "run_validation", "run_report"]
