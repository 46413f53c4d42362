"""Differentially private release of event logs for process mining."""

from privlog._core import (
    ConfigError,
    IoError,
    ParseError,
    UnreleasableError,
    ValidationError,
    anonymize_file,
    anonymize_text,
    dafsa_dot,
    epsilon_from_advantage,
    epsilon_oversampling,
    evaluate_files,
    evaluate_text,
    inspect_text,
    worst_case_prior,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "IoError",
    "ParseError",
    "UnreleasableError",
    "ValidationError",
    "anonymize_file",
    "anonymize_text",
    "dafsa_dot",
    "epsilon_from_advantage",
    "epsilon_oversampling",
    "evaluate_files",
    "evaluate_text",
    "inspect_text",
    "worst_case_prior",
]
