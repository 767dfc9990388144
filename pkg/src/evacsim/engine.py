"""Tick-based evacuation of a single room.

One tick is one second and an occupant moves at most one cell per tick.
Every stochastic choice draws from the run's :class:`~evacsim.rng.RandomStream`
in a fixed order, so ``run(world, n, seed)`` is a pure function:

1. placement: ``rng.sample(inside_cells_row_major, n)``; agent ``i`` gets the
   ``i``-th sampled cell;
2. each tick: live agent ids in ascending order are shuffled with
   ``rng.shuffle``; agents then act in that order.  An agent collects the
   free walkable Moore neighbours whose distance is strictly below its own,
   keeps those at the minimum distance, ordered by row-major index, and takes
   ``candidates[rng.below(len)]`` when there are several (no draw for one);
3. an agent stepping onto an exit cell keeps that cell for the rest of the
   tick and is removed when the tick ends.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Callable, Optional

from .rng import RandomStream
from .world import MOORE, Cell, DistanceField, ExitLayout, GridWorld, PatchState, compute_distance_field


class Overcrowded(ValueError):
    pass


@dataclass(frozen=True)
class Agent:
    id: int
    pos: Cell


def seed_occupants(world: GridWorld, n: int, rng: RandomStream) -> list[Agent]:
    inside = world.coords(PatchState.INSIDE)
    if n < 0:
        raise ValueError(f"occupant count must be >= 0, got {n}")
    if n > len(inside):
        raise Overcrowded(f"{n} occupants exceed the {len(inside)} inside cells (1 person per m2)")
    return [Agent(i, c) for i, c in enumerate(rng.sample(inside, n))]


class SimState:
    """Mutable run state.  Positions are kept as flat indices ``y * width + x``."""

    def __init__(self, world: GridWorld, agents: list[Agent], rng: RandomStream,
                 dist_field: Optional[DistanceField] = None):
        self.world = world
        self.field = dist_field or compute_distance_field(world)
        self.rng = rng
        self.tick = 0
        self.evacuated = 0
        self.n_initial = len(agents)
        self.per_exit_counts = {slot: 0 for slot in world.exit_cells}

        w, h = world.width, world.height
        self._w = w
        size = w * h
        self._dist = [self.field.at(i % w, i // w) for i in range(size)]
        self._exit_slot: list[Optional[int]] = [None] * size
        for (x, y), slot in world.slot_of().items():
            self._exit_slot[y * w + x] = slot
        self._down: list[tuple[int, ...]] = [()] * size
        for i, d in enumerate(self._dist):
            if not d:
                continue
            x, y = i % w, i // w
            nbrs = [
                (y + dy) * w + x + dx
                for dx, dy in MOORE
                if 0 <= x + dx < w and 0 <= y + dy < h and self._dist[(y + dy) * w + x + dx] == d - 1
            ]
            self._down[i] = tuple(sorted(nbrs))

        self._occ = [-1] * size
        self._pos: dict[int, int] = {}
        for a in agents:
            idx = a.pos[1] * w + a.pos[0]
            if self._occ[idx] >= 0:
                raise ValueError(f"two agents placed on {a.pos}")
            if self._dist[idx] is None:
                raise ValueError(f"agent {a.id} placed on non-walkable or unreachable cell {a.pos}")
            self._occ[idx] = a.id
            self._pos[a.id] = idx

    @property
    def agents(self) -> list[Agent]:
        w = self._w
        return [Agent(i, (p % w, p // w)) for i, p in sorted(self._pos.items())]

    @property
    def n_live(self) -> int:
        return len(self._pos)

    def positions(self) -> dict[int, Cell]:
        w = self._w
        return {i: (p % w, p // w) for i, p in self._pos.items()}

    def distance_of(self, agent_id: int) -> int:
        return self._dist[self._pos[agent_id]]

    def max_agent_distance(self) -> int:
        return max((self._dist[p] for p in self._pos.values()), default=0)

    def occupied(self) -> set[Cell]:
        return set(self.positions().values())


def step(state: SimState) -> SimState:
    """Advance one simulated second in place and return the state."""
    rng, occ, pos, down = state.rng, state._occ, state._pos, state._down
    exit_slot = state._exit_slot
    order = sorted(pos)
    rng.shuffle(order)
    departing = []
    for aid in order:
        here = pos[aid]
        free = [c for c in down[here] if occ[c] < 0]
        if not free:
            continue
        target = free[0] if len(free) == 1 else free[rng.below(len(free))]
        occ[here] = -1
        occ[target] = aid
        pos[aid] = target
        if exit_slot[target] is not None:
            departing.append(aid)
    for aid in departing:
        cell = pos.pop(aid)
        occ[cell] = -1
        state.per_exit_counts[exit_slot[cell]] += 1
    state.evacuated += len(departing)
    state.tick += 1
    assert len(pos) + state.evacuated == state.n_initial
    return state


def capacity_lower_bound(n: int, total_width_pu: int) -> int:
    return -(-n // total_width_pu) if n else 0


@dataclass(frozen=True)
class RunResult:
    evac_time_ticks: int
    n_occupants: int
    layout: ExitLayout
    seed: int
    per_exit_throughput: dict[int, int]
    evac_curve: list[int]
    travel_lower_bound: int
    timed_out: bool = False

    @property
    def capacity_lower_bound(self) -> int:
        return capacity_lower_bound(self.n_occupants, self.layout.total_width_pu)

    def to_json(self) -> str:
        d = asdict(self)
        d["layout"] = self.layout.pairs()
        return json.dumps(d, sort_keys=True)


def default_max_ticks(n: int, total_width_pu: int, travel: int) -> int:
    return 10 * (capacity_lower_bound(n, total_width_pu) + travel) + 10


def init_state(world: GridWorld, n: int, seed: int) -> SimState:
    rng = RandomStream(seed)
    return SimState(world, seed_occupants(world, n, rng), rng)


def run(
    world: GridWorld,
    n: int,
    seed: int,
    max_ticks: Optional[int] = None,
    on_tick: Optional[Callable[[SimState], None]] = None,
) -> RunResult:
    """Evacuate ``n`` randomly placed occupants; stop when the room is empty.

    Hitting ``max_ticks`` with people still inside returns a result with
    ``timed_out=True``.  ``on_tick`` sees the state after placement and after
    every tick.
    """
    state = init_state(world, n, seed)
    travel = state.max_agent_distance()
    if max_ticks is None:
        max_ticks = default_max_ticks(n, world.layout.total_width_pu, travel)
    curve = [0]
    if on_tick:
        on_tick(state)
    while state.n_live and state.tick < max_ticks:
        step(state)
        curve.append(state.evacuated)
        if on_tick:
            on_tick(state)
    return RunResult(
        evac_time_ticks=state.tick,
        n_occupants=n,
        layout=world.layout,
        seed=seed,
        per_exit_throughput=dict(state.per_exit_counts),
        evac_curve=curve,
        travel_lower_bound=travel,
        timed_out=state.n_live > 0,
    )

