"""Downlink JSCC resource allocation: scenario generation, optimal and
baseline allocators, and Monte Carlo sweeps."""

from ._core import (  # noqa: F401
    AllocationResult,
    Backend,
    PsnrModel,
    Scenario,
    SweepSpec,
    SystemConfig,
    User,
    UserAllocation,
    brute_force_p1,
    default_config,
    fixed_cr,
    generate_scenario,
    hungarian_greedy,
    load_model_file,
    load_scenario_file,
    random_pairing,
    run_sweep,
    save_scenario_file,
    solve_capacity,
    sweep_to_csv,
    synthetic_default_model,
    uniform_power,
)

__all__ = [
    "AllocationResult",
    "Backend",
    "PsnrModel",
    "Scenario",
    "SweepSpec",
    "SystemConfig",
    "User",
    "UserAllocation",
    "brute_force_p1",
    "default_config",
    "fixed_cr",
    "generate_scenario",
    "hungarian_greedy",
    "load_model_file",
    "load_scenario_file",
    "random_pairing",
    "run_sweep",
    "save_scenario_file",
    "solve_capacity",
    "sweep_to_csv",
    "synthetic_default_model",
    "uniform_power",
]

__version__ = "0.1.0"
