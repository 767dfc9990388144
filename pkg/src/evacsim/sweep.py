"""Multi-scenario, multi-seed experiment sweeps written as CSV.

CSV dialect: comma separated, one header row, '.' decimals, LF line ends.
Columns, in order::

    scenario_name, n_exits, total_width_pu, seed, evac_time_ticks,
    mean_over_seeds, capacity_lower_bound, travel_lower_bound,
    van_bogaert_tmax, status

Each scenario contributes one row per seed (``status`` is ``ok`` or
``timeout``) followed by one aggregate row (``status`` = ``mean``) whose
``mean_over_seeds`` is the mean over completed runs, with three decimals.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .analytical import VanBogaertParams, van_bogaert_tmax
from .engine import RunResult, capacity_lower_bound, run
from .scenario import ScenarioConfig

COLUMNS = (
    "scenario_name", "n_exits", "total_width_pu", "seed", "evac_time_ticks",
    "mean_over_seeds", "capacity_lower_bound", "travel_lower_bound",
    "van_bogaert_tmax", "status",
)


@dataclass(frozen=True)
class SweepResultRow:
    scenario_name: str
    n_exits: int
    total_width_pu: int
    seed: Optional[int]
    evac_time_ticks: Optional[int]
    mean_over_seeds: Optional[float]
    capacity_lower_bound: int
    travel_lower_bound: Optional[int]
    van_bogaert_tmax: float
    status: str

    def cells(self) -> list[str]:
        def fmt(v):
            return "" if v is None else str(v)
        mean = "" if self.mean_over_seeds is None else f"{self.mean_over_seeds:.3f}"
        return [
            self.scenario_name, str(self.n_exits), str(self.total_width_pu), fmt(self.seed),
            fmt(self.evac_time_ticks), mean, str(self.capacity_lower_bound),
            fmt(self.travel_lower_bound), repr(self.van_bogaert_tmax), self.status,
        ]


def run_scenario_seed(cfg: ScenarioConfig, seed: int) -> RunResult:
    return run(cfg.world(), cfg.occupants, seed, cfg.max_ticks)


def _job(args: tuple[ScenarioConfig, int]) -> RunResult:
    return run_scenario_seed(*args)


def sweep_rows(scenarios: list[ScenarioConfig], jobs: int = 1,
               tmax_params: VanBogaertParams = VanBogaertParams()) -> list[SweepResultRow]:
    tasks = [(cfg, seed) for cfg in scenarios for seed in cfg.run_seeds()]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_job, tasks))
    else:
        results = [_job(t) for t in tasks]

    tmax = van_bogaert_tmax(tmax_params)
    rows: list[SweepResultRow] = []
    it = iter(results)
    for cfg in scenarios:
        layout = cfg.layout
        cap = capacity_lower_bound(cfg.occupants, layout.total_width_pu)
        done = []
        for seed in cfg.run_seeds():
            res = next(it)
            status = "timeout" if res.timed_out else "ok"
            if not res.timed_out:
                done.append(res.evac_time_ticks)
            rows.append(SweepResultRow(
                cfg.name, layout.n_open, layout.total_width_pu, seed, res.evac_time_ticks,
                None, cap, res.travel_lower_bound, tmax, status,
            ))
        mean = sum(done) / len(done) if done else None
        rows.append(SweepResultRow(
            cfg.name, layout.n_open, layout.total_width_pu, None, None,
            mean, cap, None, tmax, "mean",
        ))
    return rows


def rows_to_csv(rows: list[SweepResultRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in rows:
        writer.writerow(r.cells())
    return buf.getvalue()


def run_sweep(scenarios: list[ScenarioConfig], out_path: Optional[str | Path] = None,
              jobs: int = 1) -> str:
    """Run every (scenario, seed) pair and return the CSV text, also writing it if asked."""
    text = rows_to_csv(sweep_rows(scenarios, jobs))
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def read_means(path: str | Path) -> dict[str, float]:
    """Aggregate means by scenario name from a sweep CSV."""
    with open(path, newline="", encoding="utf-8") as fh:
        return {
            row["scenario_name"]: float(row["mean_over_seeds"])
            for row in csv.DictReader(fh)
            if row["status"] == "mean" and row["mean_over_seeds"]
        }
