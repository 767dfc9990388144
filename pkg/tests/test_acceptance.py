"""Exit criteria.  Each test appends one PASS/FAIL line to the run summary."""

import dataclasses
import itertools
import random
import time

import pytest

from evacsim.analytical import (
    PmInputs,
    VanBogaertParams,
    dimensionless_density,
    pm_emergency_velocity,
    pm_walking_velocity,
    van_bogaert_tmax,
)
from evacsim.engine import capacity_lower_bound, run
from evacsim.firecode import check_compliance, pu_to_meters, required_pu
from evacsim.scenario import load_scenarios, table1_dir
from evacsim.sweep import rows_to_csv, run_sweep, sweep_rows
from evacsim.world import ExitLayout, PatchState, WorldError, build_grid

import oracle
from conftest import ACCEPTANCE_LINES, random_world

# Table I "runs (seconds to exit)", rows 1..8
PAPER_RUNS = [
    (1261, 1273, 1258), (670, 666, 656), (364, 366, 368), (358, 340, 356),
    (202, 190, 197), (187, 179, 183), (156, 170, 158), (136, 143, 142),
]
PAPER_MEANS = [sum(r) / 3 for r in PAPER_RUNS]
BAND = 0.35


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def table1():
    scenarios = load_scenarios([table1_dir()])
    t0 = time.perf_counter()
    rows = sweep_rows(scenarios)
    elapsed = time.perf_counter() - t0
    means = [r.mean_over_seeds for r in rows if r.status == "mean"]
    return scenarios, rows, means, elapsed


def test_1_analytical_exactness():
    tmax = van_bogaert_tmax(VanBogaertParams())
    da = dimensionless_density(PmInputs(1000, 0.125, 3025))
    v = pm_walking_velocity(da)
    ve = pm_emergency_velocity(v, da)
    ok = (tmax == 243.0 and abs(da - 0.041322) <= 1e-6
          and abs(v - 0.81246) <= 1e-4 and abs(ve - 1.19848) <= 1e-4)
    record(1, "analytical exactness", ok,
           f"T_max={tmax!r} Da={da:.7f} V={v:.6f} V_VE={ve:.6f}")


def test_2_fire_code_anchors():
    anchors = (required_pu(1000) == 10 and pu_to_meters(10) == 6.0
               and pu_to_meters(1) == 0.9 and pu_to_meters(2) == 1.4)
    row6 = load_scenarios([table1_dir() / "row6.toml"])[0]
    rep = check_compliance(row6.occupants, row6.layout)
    record(2, "fire-code anchors", anchors and rep.compliant,
           f"PU/metre anchors {'ok' if anchors else 'WRONG'}; 5 exits x 2 PU at room centroid: "
           f"{rep.independent_count} independent of {rep.requirement.required_exits} required, "
           f"compliant={rep.compliant} {rep.violations}")


def test_3_table1_band(table1):
    _, _, means, elapsed = table1
    misses = [
        f"row{i + 1} {m:.1f} vs {p:.1f} ({m / p:.2f}x)"
        for i, (m, p) in enumerate(zip(means, PAPER_MEANS))
        if abs(m - p) > BAND * p
    ]
    ratios = " ".join(f"{m / p:.2f}" for m, p in zip(means, PAPER_MEANS))
    record(3, "Table I +-35% band", not misses and elapsed < 60,
           f"ratios {ratios}; sweep {elapsed:.1f}s; outside band: {misses or 'none'}")


def test_4_table1_ordering(table1):
    _, _, means, _ = table1
    # distinct total widths 1, 2, 4, 8, 10, 12, 16; the 4-PU group uses row 3 (2 PU exits)
    chain = [means[0], means[1], means[2], means[4], means[5], means[6], means[7]]
    ok = all(a > b for a, b in zip(chain, chain[1:]))
    record(4, "Table I ordering by total width", ok, " > ".join(f"{m:.1f}" for m in chain))


def test_5_more_exits_same_width(table1):
    scenarios = {s.name: s for s in table1[0]}
    means = {}
    for name in ("table1-row3", "table1-row4"):
        cfg = dataclasses.replace(scenarios[name], repetitions=10)
        rows = sweep_rows([cfg])
        means[name] = rows[-1].mean_over_seeds
    four, two = means["table1-row4"], means["table1-row3"]
    record(5, "4x1 PU faster than 2x2 PU", four < two,
           f"mean(4 exits x 1 PU)={four:.1f} vs mean(2 exits x 2 PU)={two:.1f} over 10 seeds")


def test_6_fire_code_layout_beats_van_bogaert(table1):
    _, _, means, _ = table1
    tmax = van_bogaert_tmax(VanBogaertParams())
    record(6, "5x2 PU mean below Van Bogaert T_max", means[5] < tmax,
           f"{means[5]:.1f} s < {tmax} s")


def _check_run(world, n, seed):
    total = world.layout.total_width_pu
    prev = {}
    ok = True

    def on_tick(state):
        nonlocal ok
        pos = state.positions()
        cells = list(pos.values())
        ok &= len(cells) == len(set(cells))
        ok &= state.n_live + state.evacuated == n
        ok &= all(world.state(*c) is PatchState.INSIDE for c in cells)
        for aid in pos:
            d = state.distance_of(aid)
            ok &= d <= prev.get(aid, d)
            prev[aid] = d

    res = run(world, n, seed, on_tick=on_tick)
    curve_ok = all(0 <= b - a <= total for a, b in zip(res.evac_curve, res.evac_curve[1:]))
    bounds_ok = (res.evac_time_ticks >= capacity_lower_bound(n, total)
                 and res.evac_time_ticks >= res.travel_lower_bound)
    return ok and curve_ok and bounds_ok and not res.timed_out


def test_7_hard_bounds(table1):
    rnd = random.Random(777)
    failures = 0
    for i in range(1000):
        world = random_world(rnd, 20)
        n = rnd.randint(0, min(200, world.count(PatchState.INSIDE)))
        failures += not _check_run(world, n, i)
    _, rows, _, _ = table1
    row1_min = min(r.evac_time_ticks for r in rows
                   if r.scenario_name == "table1-row1" and r.status == "ok")
    record(7, "hard bounds and invariants", failures == 0 and row1_min >= 1000,
           f"{failures} of 1000 random runs violated a bound/invariant; "
           f"1 exit x 1 PU, N=1000 fastest run {row1_min} s")


def test_8_oracle_equivalence():
    checked = mismatches = 0
    seen = set()
    for w, h in itertools.product(range(3, 8), repeat=2):
        for slot, width_pu in itertools.product(range(1, 9), range(1, 4)):
            try:
                world = build_grid(w, h, ExitLayout.from_pairs([(slot, width_pu)]))
            except WorldError:
                continue
            key = (w, h, tuple(world.exit_cells[slot]))
            if key in seen:
                continue
            seen.add(key)
            for n in range(0, min(5, world.count(PatchState.INSIDE)) + 1):
                for seed in range(3):
                    res = run(world, n, seed)
                    checked += 1
                    if (res.evac_time_ticks, res.per_exit_throughput) != oracle.simulate(world, n, seed):
                        mismatches += 1
    record(8, "oracle equivalence on grids <= 7x7", mismatches == 0,
           f"{checked} runs over {len(seen)} single-exit rooms, {mismatches} mismatches")


def test_9_sweep_determinism(table1):
    scenarios, rows, _, _ = table1
    first = rows_to_csv(rows)
    second = run_sweep(scenarios, jobs=2)
    record(9, "byte-identical sweep CSV", first == second,
           f"{len(first.encode())} bytes, {len(rows)} rows, serial vs 2-process rerun")
