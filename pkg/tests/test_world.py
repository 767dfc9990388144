import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from evacsim.world import (
    MOORE,
    ExitLayout,
    ExitOverflow,
    ExitSpec,
    InvalidDimensions,
    NoOpenExit,
    OverlappingExits,
    PatchState,
    SlotOutOfRange,
    WorldError,
    build_grid,
    compute_distance_field,
    resolve_slot,
)

import oracle
from conftest import random_world

TABLE1_ROW8 = ExitLayout.from_columns([2] * 8)


def test_single_exit_default_grid_counts():
    world = build_grid(55, 55, ExitLayout.from_pairs([(2, 1)]))
    assert world.count(PatchState.EXIT) == 1
    assert world.count(PatchState.INSIDE) == 2809
    assert world.count(PatchState.WALL) + world.count(PatchState.OUTSIDE) == 55 * 55 - 2809 - 1


def test_row8_layout_has_16_exit_cells():
    world = build_grid(55, 55, TABLE1_ROW8)
    assert world.count(PatchState.EXIT) == 16
    assert TABLE1_ROW8.total_width_pu == 16


def test_smallest_room():
    world = build_grid(3, 3, ExitLayout.from_pairs([(1, 1)]))
    assert world.coords(PatchState.INSIDE) == [(1, 1)]
    assert world.coords(PatchState.EXIT) == [(1, 0)]


@pytest.mark.parametrize("slot, width_pu, expected", [
    (1, 1, [(18, 0)]),
    (2, 2, [(36, 0), (37, 0)]),
    (2, 3, [(35, 0), (36, 0), (37, 0)]),
    (3, 1, [(54, 18)]),
    (4, 1, [(54, 36)]),
    (5, 1, [(36, 54)]),
    (6, 1, [(18, 54)]),
    (7, 1, [(0, 36)]),
    (8, 1, [(0, 18)]),
    (5, 2, [(36, 54), (35, 54)]),
])
def test_resolve_slot_hand_evaluated(slot, width_pu, expected):
    assert resolve_slot(slot, width_pu, 55, 55) == expected


def test_resolve_slot_rounds_toward_midpoint():
    # wall of 10 cells: (10-1)/3 = 3 exactly, 2*(10-1)/3 = 6 exactly
    assert resolve_slot(1, 1, 10, 10) == [(3, 0)]
    # wall of 9 cells: 8/3 = 2.67 -> 3, 16/3 = 5.33 -> 5 (midpoint is 4)
    assert resolve_slot(1, 1, 9, 9) == [(3, 0)]
    assert resolve_slot(2, 1, 9, 9) == [(5, 0)]


@pytest.mark.parametrize("slot", [0, 9, -1])
def test_slot_out_of_range(slot):
    with pytest.raises(SlotOutOfRange):
        resolve_slot(slot, 1, 55, 55)


def test_exit_overflow():
    with pytest.raises(ExitOverflow):
        resolve_slot(1, 3, 3, 3)
    with pytest.raises(ExitOverflow):
        build_grid(55, 55, ExitLayout.from_pairs([(1, 40)]))


def test_overlapping_exits():
    with pytest.raises(OverlappingExits):
        build_grid(3, 3, ExitLayout.from_pairs([(1, 1), (2, 1)]))
    with pytest.raises(OverlappingExits):
        ExitLayout((ExitSpec(1, 1), ExitSpec(1, 2)))


def test_invalid_dimensions_and_closed_layout():
    with pytest.raises(InvalidDimensions):
        build_grid(2, 5, ExitLayout.from_pairs([(1, 1)]))
    with pytest.raises(NoOpenExit):
        build_grid(55, 55, ExitLayout.from_pairs([(1, 0)]))
    closed = build_grid(10, 10, ExitLayout(), require_exit=False)
    with pytest.raises(NoOpenExit):
        compute_distance_field(closed)


def test_zero_width_slot_is_closed():
    layout = ExitLayout.from_columns([0, 1, 0, 0, 0, 0, 0, 0])
    assert layout.pairs() == [(2, 1)]
    world = build_grid(55, 55, ExitLayout.from_pairs([(1, 0), (2, 1)]))
    assert list(world.exit_cells) == [2]


def test_distance_field_examples():
    world = build_grid(55, 55, ExitLayout.from_pairs([(1, 1)]))
    f = compute_distance_field(world)
    assert f.at(18, 0) == 0
    assert f.at(17, 1) == 1 and f.at(19, 1) == 1
    assert f.at(0, 0) is None and f.at(5, 0) is None


def _enumerate_shortest(world, start):
    """Length of the shortest simple path to an exit, by listing every simple path."""
    best = None

    def walk(cell, seen):
        nonlocal best
        if world.state(*cell) is PatchState.EXIT:
            best = len(seen) - 1 if best is None else min(best, len(seen) - 1)
            return
        for dx, dy in MOORE:
            nxt = (cell[0] + dx, cell[1] + dy)
            if nxt not in seen and oracle.walkable(world, *nxt):
                walk(nxt, seen + [nxt])

    walk(start, [start])
    return best


def test_three_by_three_distance_by_path_enumeration():
    world = build_grid(3, 3, ExitLayout.from_pairs([(4, 1)]))
    f = compute_distance_field(world)
    assert _enumerate_shortest(world, (1, 1)) == 1
    assert f.at(1, 1) == 1


@pytest.mark.parametrize("w, h, pairs", [(5, 4, [(3, 1)]), (6, 5, [(1, 1), (6, 2)])])
def test_path_enumeration_on_tiny_rooms(w, h, pairs):
    world = build_grid(w, h, ExitLayout.from_pairs(pairs))
    f = compute_distance_field(world)
    for x, y in world.coords(PatchState.INSIDE):
        assert f.at(x, y) == _enumerate_shortest(world, (x, y))


def _check_invariants(world):
    f = compute_distance_field(world)
    total = sum(world.count(s) for s in PatchState)
    assert total == world.width * world.height
    for y in range(world.height):
        for x in range(world.width):
            s, d = world.state(x, y), f.at(x, y)
            if s is PatchState.EXIT:
                assert d == 0
            elif not s.walkable:
                assert d is None
            else:
                assert d is not None and d > 0
                assert any(
                    world.in_bounds(x + dx, y + dy) and f.at(x + dx, y + dy) == d - 1
                    for dx, dy in MOORE
                )
    return f


def test_distance_field_matches_single_source_oracle_small_grids():
    rnd = random.Random(7)
    for _ in range(300):
        world = random_world(rnd, 12)
        f = _check_invariants(world)
        assert [list(r) for r in f.dist] == oracle.distance_table(world)


@settings(max_examples=60, deadline=None)
@given(w=st.integers(3, 12), h=st.integers(3, 12),
       widths=st.lists(st.integers(0, 3), min_size=8, max_size=8))
def test_distance_field_property(w, h, widths):
    try:
        world = build_grid(w, h, ExitLayout.from_columns(widths))
    except WorldError:
        return
    f = _check_invariants(world)
    assert [list(r) for r in f.dist] == oracle.distance_table(world)


@settings(max_examples=200, deadline=None)
@given(slot=st.integers(1, 8), width_pu=st.integers(1, 6),
       w=st.integers(3, 60), h=st.integers(3, 60))
def test_resolved_cells_on_perimeter_not_corner(slot, width_pu, w, h):
    try:
        cells = resolve_slot(slot, width_pu, w, h)
    except ExitOverflow:
        return
    corners = {(0, 0), (w - 1, 0), (0, h - 1), (w - 1, h - 1)}
    assert len(cells) == len(set(cells)) == width_pu
    for x, y in cells:
        assert x in (0, w - 1) or y in (0, h - 1)
        assert (x, y) not in corners
    # contiguous along the wall
    for a, b in itertools.pairwise(cells):
        assert abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


def test_world_areas():
    world = build_grid(55, 55, ExitLayout.from_pairs([(1, 1)]))
    assert world.interior_area == 2809
    assert world.bounding_area == 3025.0
    assert world.centroid == (27.0, 27.0)
