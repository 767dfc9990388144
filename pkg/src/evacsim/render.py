"""Static snapshots of a run as text or binary PPM (P6).

Text: one character per cell, one line per grid row, LF terminated.
PPM colours: outside black, inside and exit openings white, walls grey,
occupants red.
"""

from __future__ import annotations

from .engine import SimState
from .world import PatchState

CHARS = {
    PatchState.WALL: "#",
    PatchState.INSIDE: ".",
    PatchState.EXIT: "E",
    PatchState.OUTSIDE: " ",
}
AGENT_CHAR = "o"

COLORS = {
    PatchState.OUTSIDE: (0, 0, 0),
    PatchState.INSIDE: (255, 255, 255),
    PatchState.EXIT: (255, 255, 255),
    PatchState.WALL: (128, 128, 128),
}
AGENT_COLOR = (200, 0, 0)


def render_text(state: SimState) -> str:
    occupied = state.occupied()
    lines = []
    for y, row in enumerate(state.world.cells):
        lines.append("".join(
            AGENT_CHAR if (x, y) in occupied else CHARS[s] for x, s in enumerate(row)
        ))
    return "\n".join(lines) + "\n"


def render_ppm(state: SimState, scale: int = 1) -> bytes:
    if scale < 1:
        raise ValueError("scale must be >= 1")
    occupied = state.occupied()
    w, h = state.world.width, state.world.height
    body = bytearray()
    for y, row in enumerate(state.world.cells):
        line = bytearray()
        for x, s in enumerate(row):
            line += bytes(AGENT_COLOR if (x, y) in occupied else COLORS[s]) * scale
        body += bytes(line) * scale
    return b"P6\n%d %d\n255\n" % (w * scale, h * scale) + bytes(body)


def render_snapshot(state: SimState, fmt: str = "text", scale: int = 1) -> bytes:
    if fmt == "text":
        return render_text(state).encode("ascii")
    if fmt in ("ppm", "pixmap"):
        return render_ppm(state, scale)
    raise ValueError(f"unknown snapshot format {fmt!r}")
