"""Additive self-similar approximants for strong-coupling extrapolation."""

from ._selfsim import (
    ResultRow,
    RunResult,
    SelfsimError,
    benchmark_names,
    compare,
    oscillator_coeffs_exact,
    partition_coeffs,
    partition_exact,
    reference_tables_version,
    reproduce,
    run_config,
    solve_additive,
)

__all__ = [
    "ResultRow",
    "RunResult",
    "SelfsimError",
    "benchmark_names",
    "compare",
    "oscillator_coeffs_exact",
    "partition_coeffs",
    "partition_exact",
    "reference_tables_version",
    "reproduce",
    "run_config",
    "solve_additive",
]
