"""Experiment harness: configuration, CSV output, experiments and self-test."""

from .config import DEFAULT_METHODS, OBJECT_METHODS, ExperimentConfig
from .csvio import Table, dumps, read_table, write_table
from .experiments import (
    run_coherence_exp,
    run_eigenphase_exp,
    run_fidelity_exp,
    run_moments,
    run_ppt_exp,
    run_sample,
)
from .selftest import run_selftest

__all__ = [
    "DEFAULT_METHODS",
    "OBJECT_METHODS",
    "ExperimentConfig",
    "Table",
    "dumps",
    "read_table",
    "write_table",
    "run_sample",
    "run_moments",
    "run_fidelity_exp",
    "run_eigenphase_exp",
    "run_ppt_exp",
    "run_coherence_exp",
    "run_selftest",
]
