"""Exit sizing by Passage Units (PU) and the 45 degree exit-independence test."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .world import DEFAULT_SIZE, ExitLayout, build_grid, compute_distance_field, resolve_slot

OCCUPANTS_PER_PU = 100
INDEPENDENCE_DEG = 45.0

Point = tuple[float, float]


class DegenerateVantage(ValueError):
    pass


@dataclass(frozen=True)
class ExitBands:
    """Required number of independent exits as a banded occupancy table.

    ``bands`` holds ``(max_occupants, exits)`` rows in ascending order; above
    the last row one more exit is required per started ``step`` occupants.
    """

    bands: tuple[tuple[int, int], ...] = ((50, 1), (500, 2), (800, 3), (1000, 5))
    step: int = 500

    def required(self, occupants: int) -> int:
        if occupants <= 0:
            return 0
        for limit, exits in self.bands:
            if occupants <= limit:
                return exits
        top, exits = self.bands[-1]
        return exits + -(-(occupants - top) // self.step)


DEFAULT_BANDS = ExitBands()


@dataclass(frozen=True)
class PuRequirement:
    occupants: int
    required_pu: int
    required_exits: int


@dataclass
class ComplianceReport:
    requirement: PuRequirement
    provided_pu: int
    provided_exits: int
    independent_count: int
    vantage: Point
    pair_angles: list[tuple[int, int, float]]
    exit_meters: dict[int, float]
    compliant: bool
    violations: list[str] = field(default_factory=list)
    max_travel_m: Optional[float] = None

    @property
    def independent_pairs(self) -> list[tuple[int, int, float]]:
        return [p for p in self.pair_angles if p[2] >= INDEPENDENCE_DEG]

    @property
    def required_meters(self) -> float:
        return pu_to_meters(self.requirement.required_pu)

    @property
    def provided_meters(self) -> float:
        return pu_to_meters(self.provided_pu)


def required_pu(occupants: int) -> int:
    if occupants < 0:
        raise ValueError("occupants must be >= 0")
    return -(-occupants // OCCUPANTS_PER_PU)


def pu_to_meters(n_pu: int) -> float:
    """Legal clear width of ``n_pu`` passage units: 0.9 m, 1.4 m, then n x 0.6 m."""
    if n_pu < 0:
        raise ValueError("PU count must be >= 0")
    if n_pu == 0:
        return 0.0
    if n_pu == 1:
        return 0.9
    if n_pu == 2:
        return 1.4
    return round(n_pu * 0.6, 10)


def requirement(occupants: int, bands: ExitBands = DEFAULT_BANDS) -> PuRequirement:
    return PuRequirement(occupants, required_pu(occupants), bands.required(occupants))


def subtended_angle(a: Point, b: Point, vantage: Point) -> float:
    ux, uy = a[0] - vantage[0], a[1] - vantage[1]
    vx, vy = b[0] - vantage[0], b[1] - vantage[1]
    if (ux == 0 and uy == 0) or (vx == 0 and vy == 0):
        raise DegenerateVantage(f"vantage {vantage} coincides with an exit")
    return math.degrees(math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy))


def exit_midpoints(layout: ExitLayout, width: int = DEFAULT_SIZE,
                   height: int = DEFAULT_SIZE) -> dict[int, Point]:
    out = {}
    for e in layout.open_exits:
        cs = resolve_slot(e.slot, e.width_pu, width, height)
        out[e.slot] = (sum(x for x, _ in cs) / len(cs), sum(y for _, y in cs) / len(cs))
    return out


def room_centroid(width: int = DEFAULT_SIZE, height: int = DEFAULT_SIZE) -> Point:
    return ((width - 1) / 2, (height - 1) / 2)


def pair_angles(layout: ExitLayout, vantage: Optional[Point] = None,
                width: int = DEFAULT_SIZE, height: int = DEFAULT_SIZE) -> list[tuple[int, int, float]]:
    vantage = vantage or room_centroid(width, height)
    mids = exit_midpoints(layout, width, height)
    return [
        (s, t, subtended_angle(mids[s], mids[t], vantage))
        for s, t in itertools.combinations(sorted(mids), 2)
    ]


def _largest_independent(slots: Sequence[int], ok: set[tuple[int, int]]) -> int:
    for k in range(len(slots), 0, -1):
        for combo in itertools.combinations(slots, k):
            if all(p in ok for p in itertools.combinations(combo, 2)):
                return k
    return 0


def independent_exit_count(layout: ExitLayout, vantage: Optional[Point] = None,
                           width: int = DEFAULT_SIZE, height: int = DEFAULT_SIZE) -> int:
    """Size of the largest set of open exits that are pairwise >= 45 degrees apart."""
    angles = pair_angles(layout, vantage, width, height)
    ok = {(s, t) for s, t, a in angles if a >= INDEPENDENCE_DEG}
    return _largest_independent(sorted(e.slot for e in layout.open_exits), ok)


def check_compliance(occupants: int, layout: ExitLayout, vantage: Optional[Point] = None,
                     width: int = DEFAULT_SIZE, height: int = DEFAULT_SIZE,
                     bands: ExitBands = DEFAULT_BANDS) -> ComplianceReport:
    vantage = vantage or room_centroid(width, height)
    req = requirement(occupants, bands)
    angles = pair_angles(layout, vantage, width, height)
    ok = {(s, t) for s, t, a in angles if a >= INDEPENDENCE_DEG}
    independent = _largest_independent(sorted(e.slot for e in layout.open_exits), ok)
    provided = layout.total_width_pu

    violations = []
    if provided < req.required_pu:
        violations.append(
            f"insufficient exit width: {provided} PU provided, {req.required_pu} PU required"
        )
    if independent < req.required_exits:
        violations.append(
            f"insufficient independent exits: {independent} provided, {req.required_exits} required"
        )

    max_travel = None
    if layout.total_width_pu:
        world = build_grid(width, height, layout)
        max_travel = float(compute_distance_field(world).max_finite()) * world.cell_size

    return ComplianceReport(
        requirement=req,
        provided_pu=provided,
        provided_exits=layout.n_open,
        independent_count=independent,
        vantage=vantage,
        pair_angles=angles,
        exit_meters={e.slot: pu_to_meters(e.width_pu) for e in layout.open_exits},
        compliant=not violations,
        violations=violations,
        max_travel_m=max_travel,
    )
