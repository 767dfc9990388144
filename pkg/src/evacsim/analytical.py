"""Closed-form reference values for evacuation time and walking speed.

Van Bogaert: ``T_max = S * I * Fd * H * R * 300`` seconds.
Predtechenskii & Milinskii: dimensionless density ``Da = N * Ph / A``,
normal walking speed ``V = (112 Da^4 - 380 Da^3 + 434 Da^2 - 217 Da + 57) / 60``
and emergency horizontal speed ``V_E = V * (1.49 - 0.36 Da)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

JAM_DENSITY = 0.92


class AnalyticalError(ValueError):
    pass


class NegativeCoefficient(AnalyticalError):
    pass


class NonPositiveArea(AnalyticalError):
    pass


class NegativeDensity(AnalyticalError):
    pass


@dataclass(frozen=True)
class VanBogaertParams:
    S: float = 3.0  # area
    I: float = 0.75  # compartmentation (none)
    Fd: float = 0.36  # density factor at maximum density
    H: float = 1.0  # single storey
    R: float = 1.0  # ordinary risk

    def __post_init__(self):
        for name in ("S", "I", "Fd", "H", "R"):
            if getattr(self, name) < 0:
                raise NegativeCoefficient(f"Van Bogaert coefficient {name} must be >= 0")


@dataclass(frozen=True)
class PmInputs:
    N: float = 1000
    Ph: float = 0.125
    A: float = 3025.0

    def __post_init__(self):
        if self.N < 0:
            raise AnalyticalError("occupant count must be >= 0")
        if self.Ph <= 0:
            raise AnalyticalError("area per person must be > 0")
        if self.A <= 0:
            raise NonPositiveArea(f"floor area must be > 0, got {self.A}")

    @property
    def jammed(self) -> bool:
        return dimensionless_density(self) > JAM_DENSITY


def van_bogaert_tmax(p: VanBogaertParams = VanBogaertParams()) -> float:
    # Coefficients are decimal table values; multiply them exactly and round once.
    total = Decimal(300)
    for c in (p.S, p.I, p.Fd, p.H, p.R):
        total *= Decimal(repr(float(c)))
    return float(total)


def dimensionless_density(inp: PmInputs) -> float:
    if inp.A <= 0:
        raise NonPositiveArea(f"floor area must be > 0, got {inp.A}")
    return inp.N * inp.Ph / inp.A


def pm_walking_velocity(da: float) -> float:
    if da < 0:
        raise NegativeDensity(f"density must be >= 0, got {da}")
    return ((((112 * da - 380) * da + 434) * da - 217) * da + 57) / 60


def pm_emergency_velocity(v: float, da: float) -> float:
    if da < 0:
        raise NegativeDensity(f"density must be >= 0, got {da}")
    if v < 0:
        raise AnalyticalError(f"velocity must be >= 0, got {v}")
    return v * (1.49 - 0.36 * da)
