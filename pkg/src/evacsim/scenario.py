"""Scenario files: a small TOML schema describing one room and its runs.

Example::

    name = "row6"            # optional, defaults to the file stem
    grid_width = 55          # optional, default 55
    grid_height = 55         # optional, default 55
    occupants = 1000         # optional, default 1000
    exits = [[1, 2], [3, 2], [4, 2], [5, 2], [7, 2]]   # [slot, width in PU]
    seeds = [11, 12, 13]     # explicit run seeds, or instead:
    master_seed = 0          # derive `repetitions` seeds (default 0 / 5)
    repetitions = 5
    max_ticks = 20000        # optional run cap

Unknown keys are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import tomli
import tomli_w

from .rng import derive_seed
from .world import DEFAULT_SIZE, ExitLayout, GridWorld, WorldError, build_grid

DEFAULT_OCCUPANTS = 1000
DEFAULT_MASTER_SEED = 0
DEFAULT_REPETITIONS = 5

KEYS = ("name", "grid_width", "grid_height", "occupants", "exits", "seeds",
        "master_seed", "repetitions", "max_ticks")


class ScenarioError(Exception):
    pass


class ParseError(ScenarioError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class ValidationError(ScenarioError):
    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    exits: tuple[tuple[int, int], ...]
    grid_width: int = DEFAULT_SIZE
    grid_height: int = DEFAULT_SIZE
    occupants: int = DEFAULT_OCCUPANTS
    seeds: Optional[tuple[int, ...]] = None
    master_seed: Optional[int] = None
    repetitions: Optional[int] = None
    max_ticks: Optional[int] = None

    @property
    def layout(self) -> ExitLayout:
        return ExitLayout.from_pairs(self.exits)

    def world(self) -> GridWorld:
        return build_grid(self.grid_width, self.grid_height, self.layout)

    def run_seeds(self) -> list[int]:
        if self.seeds is not None:
            return list(self.seeds)
        master = DEFAULT_MASTER_SEED if self.master_seed is None else self.master_seed
        reps = DEFAULT_REPETITIONS if self.repetitions is None else self.repetitions
        return [derive_seed(master, self.name, i) for i in range(reps)]

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "name": self.name,
            "grid_width": self.grid_width,
            "grid_height": self.grid_height,
            "occupants": self.occupants,
            "exits": [list(p) for p in self.exits],
        }
        for key in ("seeds", "master_seed", "repetitions", "max_ticks"):
            value = getattr(self, key)
            if value is not None:
                d[key] = list(value) if key == "seeds" else value
        return d


def _int(data: dict, key: str, default: Optional[int], minimum: int = 0) -> Optional[int]:
    value = data.get(key, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(key, f"expected an integer, got {value!r}")
    if value < minimum:
        raise ValidationError(key, f"must be >= {minimum}, got {value}")
    return value


def scenario_from_dict(data: dict[str, Any], default_name: str = "scenario") -> ScenarioConfig:
    unknown = sorted(set(data) - set(KEYS))
    if unknown:
        raise ValidationError(unknown[0], "unknown key")

    name = data.get("name", default_name)
    if not isinstance(name, str) or not name:
        raise ValidationError("name", "expected a non-empty string")
    width = _int(data, "grid_width", DEFAULT_SIZE, 3)
    height = _int(data, "grid_height", DEFAULT_SIZE, 3)
    occupants = _int(data, "occupants", DEFAULT_OCCUPANTS)

    raw_exits = data.get("exits")
    if not isinstance(raw_exits, list) or not raw_exits:
        raise ValidationError("exits", "expected a non-empty list of [slot, width_pu] pairs")
    exits = []
    for item in raw_exits:
        if (not isinstance(item, list) or len(item) != 2
                or any(isinstance(v, bool) or not isinstance(v, int) for v in item)):
            raise ValidationError("exits", f"expected [slot, width_pu] integers, got {item!r}")
        exits.append((item[0], item[1]))
    try:
        layout = ExitLayout.from_pairs(exits)
        world = build_grid(width, height, layout)
    except WorldError as err:
        raise ValidationError("exits", str(err)) from None
    if occupants > world.interior_area:
        raise ValidationError(
            "occupants", f"{occupants} exceeds the {world.interior_area} interior cells"
        )

    seeds = data.get("seeds")
    if seeds is not None:
        if "master_seed" in data or "repetitions" in data:
            raise ValidationError("seeds", "give either seeds or master_seed/repetitions, not both")
        if (not isinstance(seeds, list) or not seeds
                or any(isinstance(s, bool) or not isinstance(s, int) or s < 0 for s in seeds)):
            raise ValidationError("seeds", "expected a non-empty list of non-negative integers")
        seeds = tuple(seeds)

    return ScenarioConfig(
        name=name,
        exits=tuple(exits),
        grid_width=width,
        grid_height=height,
        occupants=occupants,
        seeds=seeds,
        master_seed=_int(data, "master_seed", None),
        repetitions=_int(data, "repetitions", None, 1),
        max_ticks=_int(data, "max_ticks", None, 1),
    )


def parse_scenario_text(text: str, default_name: str = "scenario") -> ScenarioConfig:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as err:
        line = getattr(err, "lineno", None)
        if line is None:
            m = re.search(r"line (\d+)", str(err))
            line = int(m.group(1)) if m else None
        raise ParseError(str(err), line) from None
    return scenario_from_dict(data, default_name)


def parse_scenario(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    return parse_scenario_text(path.read_text(encoding="utf-8"), default_name=path.stem)


def serialize_scenario(cfg: ScenarioConfig) -> str:
    return tomli_w.dumps(cfg.to_dict())


def load_scenarios(paths: list[str | Path]) -> list[ScenarioConfig]:
    """Scenario files and directories (``*.toml``, sorted by name) in the given order."""
    out = []
    for p in map(Path, paths):
        files = sorted(p.glob("*.toml")) if p.is_dir() else [p]
        out.extend(parse_scenario(f) for f in files)
    return out


def table1_dir() -> Path:
    return Path(__file__).parent / "data" / "table1"
