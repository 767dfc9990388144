import random

import pytest

from evacsim.world import ExitLayout, WorldError, build_grid


def random_world(rnd: random.Random, max_side: int, max_width_pu: int = 3, max_exits: int = 8):
    """A valid world with random dimensions and a random open slot layout."""
    while True:
        w, h = rnd.randint(3, max_side), rnd.randint(3, max_side)
        slots = rnd.sample(range(1, 9), rnd.randint(1, max_exits))
        layout = ExitLayout.from_pairs((s, rnd.randint(1, max_width_pu)) for s in slots)
        try:
            return build_grid(w, h, layout)
        except WorldError:
            continue


@pytest.fixture
def rnd():
    return random.Random(20121015)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
