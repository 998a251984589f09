"""VSO and SAHC optimizers, benchmark suites and published-result checks."""

from ._vso import (
    DEFAULT_SEED,
    ConfigError,
    RunError,
    RunResult,
    SahcConfig,
    UnknownBenchmark,
    VsoConfig,
    benchmark_info,
    benchmarks,
    evaluate,
    run_benchmark,
    run_sahc,
    run_suite,
    run_vso,
)

__all__ = [
    "DEFAULT_SEED",
    "ConfigError",
    "RunError",
    "RunResult",
    "SahcConfig",
    "UnknownBenchmark",
    "VsoConfig",
    "benchmark_info",
    "benchmarks",
    "evaluate",
    "run_benchmark",
    "run_sahc",
    "run_suite",
    "run_vso",
]
