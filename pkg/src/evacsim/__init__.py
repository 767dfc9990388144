"""Grid-based evacuation simulator with analytical and fire-code checks."""

from .analytical import (
    PmInputs,
    VanBogaertParams,
    dimensionless_density,
    pm_emergency_velocity,
    pm_walking_velocity,
    van_bogaert_tmax,
)
from .engine import RunResult, SimState, run, seed_occupants, step
from .firecode import check_compliance, independent_exit_count, pu_to_meters, required_pu
from .world import ExitLayout, ExitSpec, GridWorld, PatchState, build_grid, compute_distance_field, resolve_slot

__version__ = "0.1.0"

__all__ = [
    "ExitLayout", "ExitSpec", "GridWorld", "PatchState", "PmInputs", "RunResult", "SimState",
    "VanBogaertParams", "build_grid", "check_compliance", "compute_distance_field",
    "dimensionless_density", "independent_exit_count", "pm_emergency_velocity",
    "pm_walking_velocity", "pu_to_meters", "required_pu", "resolve_slot", "run",
    "seed_occupants", "step", "van_bogaert_tmax",
]
