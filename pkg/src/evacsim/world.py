"""Discrete room geometry: patch grid, perimeter exit slots, nearest-exit field.

Coordinates are ``(x, y)`` cell indices with ``x`` growing to the right and
``y`` growing downwards; the top wall is ``y == 0``.  One cell is 1 m x 1 m.

Exit slots are numbered clockwise starting on the top wall: 1-2 top,
3-4 right, 5-6 bottom, 7-8 left.  On every wall the odd slot sits one third
of the way along the clockwise direction of travel and the even slot two
thirds of the way.  See :func:`resolve_slot` for the exact rounding.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

Cell = tuple[int, int]

DEFAULT_SIZE = 55
CELL_SIZE_M = 1.0
N_SLOTS = 8

# Moore neighbourhood, scanned in this order everywhere.
MOORE = ((-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1))


class WorldError(ValueError):
    pass


class InvalidDimensions(WorldError):
    pass


class SlotOutOfRange(WorldError):
    pass


class ExitOverflow(WorldError):
    pass


class OverlappingExits(WorldError):
    pass


class NoOpenExit(WorldError):
    pass


class DisconnectedWorld(WorldError):
    pass


class PatchState(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    WALL = "wall"
    EXIT = "exit"

    @property
    def walkable(self) -> bool:
        return self is PatchState.INSIDE or self is PatchState.EXIT


@dataclass(frozen=True)
class ExitSpec:
    slot: int
    width_pu: int

    def __post_init__(self):
        if not 1 <= self.slot <= N_SLOTS:
            raise SlotOutOfRange(f"exit slot must be in 1..{N_SLOTS}, got {self.slot}")
        if self.width_pu < 0:
            raise ExitOverflow(f"exit width must be >= 0 PU, got {self.width_pu}")

    @property
    def is_open(self) -> bool:
        return self.width_pu > 0


@dataclass(frozen=True)
class ExitLayout:
    exits: tuple[ExitSpec, ...] = ()

    def __post_init__(self):
        slots = [e.slot for e in self.exits]
        if len(set(slots)) != len(slots):
            raise OverlappingExits(f"slot listed twice in layout: {slots}")
        object.__setattr__(self, "exits", tuple(sorted(self.exits, key=lambda e: e.slot)))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "ExitLayout":
        return cls(tuple(ExitSpec(int(s), int(w)) for s, w in pairs))

    @classmethod
    def from_columns(cls, widths: Iterable[int]) -> "ExitLayout":
        """Layout from a Table-I style parameter row: column k is slot k."""
        return cls.from_pairs((k, w) for k, w in enumerate(widths, start=1) if w)

    @property
    def open_exits(self) -> tuple[ExitSpec, ...]:
        return tuple(e for e in self.exits if e.is_open)

    @property
    def total_width_pu(self) -> int:
        return sum(e.width_pu for e in self.exits)

    @property
    def n_open(self) -> int:
        return len(self.open_exits)

    def pairs(self) -> list[tuple[int, int]]:
        return [(e.slot, e.width_pu) for e in self.exits]


def _toward(value: Fraction, target: Fraction) -> int:
    """Round ``value`` to an integer in the direction of ``target``."""
    if value.denominator == 1:
        return int(value)
    lo = value.numerator // value.denominator
    return lo + 1 if target > value else lo


def resolve_slot(slot: int, width_pu: int, width: int, height: int) -> list[Cell]:
    """Perimeter cells of an exit slot, in clockwise order.

    The anchor is ``(L - 1) * k / 3`` cells along the wall in the clockwise
    direction (``L`` = wall length, ``k`` = 1 for odd slots, 2 for even),
    rounded toward the wall midpoint.  The opening covers ``width_pu`` cells
    starting ``(width_pu - 1) // 2`` cells before the anchor.  Corner cells
    are never used.
    """
    if not 1 <= slot <= N_SLOTS:
        raise SlotOutOfRange(f"exit slot must be in 1..{N_SLOTS}, got {slot}")
    if width_pu < 1:
        raise ExitOverflow(f"an open exit needs width >= 1 PU, got {width_pu}")
    wall = (slot - 1) // 2
    length = width if wall in (0, 2) else height
    k = 1 if slot % 2 else 2
    anchor = _toward(Fraction((length - 1) * k, 3), Fraction(length - 1, 2))
    start = anchor - (width_pu - 1) // 2
    stop = start + width_pu - 1
    if start < 1 or stop > length - 2:
        raise ExitOverflow(
            f"slot {slot}: {width_pu} PU does not fit a {length}-cell wall without a corner"
        )
    ts = range(start, stop + 1)
    if wall == 0:
        return [(t, 0) for t in ts]
    if wall == 1:
        return [(width - 1, t) for t in ts]
    if wall == 2:
        return [(width - 1 - t, height - 1) for t in ts]
    return [(0, height - 1 - t) for t in ts]


@dataclass(frozen=True)
class GridWorld:
    width: int
    height: int
    cells: tuple[tuple[PatchState, ...], ...]
    layout: ExitLayout
    exit_cells: dict[int, tuple[Cell, ...]] = field(default_factory=dict)
    cell_size: float = CELL_SIZE_M

    def state(self, x: int, y: int) -> PatchState:
        return self.cells[y][x]

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def count(self, state: PatchState) -> int:
        return sum(row.count(state) for row in self.cells)

    def coords(self, state: PatchState) -> list[Cell]:
        """All cells in ``state``, row-major."""
        return [
            (x, y)
            for y, row in enumerate(self.cells)
            for x, s in enumerate(row)
            if s is state
        ]

    def slot_of(self) -> dict[Cell, int]:
        return {c: slot for slot, cs in self.exit_cells.items() for c in cs}

    @property
    def interior_area(self) -> int:
        return (self.width - 2) * (self.height - 2)

    @property
    def bounding_area(self) -> float:
        return self.width * self.height * self.cell_size**2

    @property
    def centroid(self) -> tuple[float, float]:
        return ((self.width - 1) / 2, (self.height - 1) / 2)


def build_grid(
    width: int = DEFAULT_SIZE,
    height: int = DEFAULT_SIZE,
    layout: Optional[ExitLayout] = None,
    require_exit: bool = True,
) -> GridWorld:
    if width < 3 or height < 3:
        raise InvalidDimensions(f"grid must be at least 3x3, got {width}x{height}")
    layout = layout or ExitLayout()
    if require_exit and layout.total_width_pu == 0:
        raise NoOpenExit("layout has no open exit")

    rows = [
        [
            PatchState.WALL if x in (0, width - 1) or y in (0, height - 1) else PatchState.INSIDE
            for x in range(width)
        ]
        for y in range(height)
    ]
    exit_cells: dict[int, tuple[Cell, ...]] = {}
    owner: dict[Cell, int] = {}
    for spec in layout.open_exits:
        cs = resolve_slot(spec.slot, spec.width_pu, width, height)
        for c in cs:
            if c in owner:
                raise OverlappingExits(f"slots {owner[c]} and {spec.slot} both claim cell {c}")
            owner[c] = spec.slot
            rows[c[1]][c[0]] = PatchState.EXIT
        exit_cells[spec.slot] = tuple(cs)

    world = GridWorld(
        width=width,
        height=height,
        cells=tuple(tuple(r) for r in rows),
        layout=layout,
        exit_cells=exit_cells,
    )
    if exit_cells:
        field_ = compute_distance_field(world)
        stranded = [c for c in world.coords(PatchState.INSIDE) if field_.at(*c) is None]
        if stranded:
            raise DisconnectedWorld(f"{len(stranded)} inside cells cannot reach an exit")
    return world


@dataclass(frozen=True)
class DistanceField:
    """Moore-step distance to the nearest exit cell; ``None`` = unreachable."""

    width: int
    height: int
    dist: tuple[tuple[Optional[int], ...], ...]

    def at(self, x: int, y: int) -> Optional[int]:
        return self.dist[y][x]

    def max_finite(self) -> int:
        return max((d for row in self.dist for d in row if d is not None), default=0)


def compute_distance_field(world: GridWorld) -> DistanceField:
    """Multi-source BFS from every exit cell over walkable cells (unit-cost Moore steps)."""
    sources = world.coords(PatchState.EXIT)
    if not sources:
        raise NoOpenExit("distance field needs at least one exit cell")
    w, h = world.width, world.height
    dist: list[list[Optional[int]]] = [[None] * w for _ in range(h)]
    queue: deque[Cell] = deque()
    for x, y in sources:
        dist[y][x] = 0
        queue.append((x, y))
    while queue:
        x, y = queue.popleft()
        d = dist[y][x] + 1
        for dx, dy in MOORE:
            nx, ny = x + dx, y + dy
            if 0 <= nx < w and 0 <= ny < h and dist[ny][nx] is None and world.cells[ny][nx].walkable:
                dist[ny][nx] = d
                queue.append((nx, ny))
    return DistanceField(w, h, tuple(tuple(r) for r in dist))
