"""Bench configurations, presets, runner and CLI."""
from .analysis import AnalysisError, centroid, fringe_spacing, mirror_correlation, visibility
from .config import ConfigError, ExperimentConfig, load_config, parse_config, render_config
from .io import read_profile_csv, write_intensity_pgm, write_profile_csv
from .presets import PRESETS, preset_config
from .runner import ExperimentError, ExperimentResult, run_experiment, write_result

__all__ = [
    "AnalysisError",
    "centroid",
    "fringe_spacing",
    "mirror_correlation",
    "visibility",
    "ConfigError",
    "ExperimentConfig",
    "load_config",
    "parse_config",
    "render_config",
    "read_profile_csv",
    "write_intensity_pgm",
    "write_profile_csv",
    "PRESETS",
    "preset_config",
    "ExperimentError",
    "ExperimentResult",
    "run_experiment",
    "write_result",
]
