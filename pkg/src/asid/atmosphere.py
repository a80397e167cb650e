"""Standard-atmosphere model and the barometric conversions used on board.

Two families of conversions live here and are deliberately kept apart:

* the ISA troposphere closure (``isa_temperature`` / ``isa_pressure`` /
  ``isa_density``), used by the airframe performance math, and
* the altimeter arithmetic of the on-board logger (``mslp_from_station``,
  ``pressure_to_altitude``, ``linear_altitude``), which uses the logger's
  own constants (44330 m, 5.255, 0.12 hPa/m) so that emulated log files
  reproduce the device arithmetic exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

G0 = 9.80665  # m/s^2, standard gravity

TROPOPAUSE_M = 11000.0  # model validity limit


@dataclass(frozen=True)
class AtmosphereModel:
    """Troposphere constants plus the on-board altimeter constants."""

    sea_level_pressure: float = 101325.0   # Pa
    sea_level_temperature: float = 288.15  # K
    lapse_rate: float = 0.0065             # K/m
    gas_constant: float = 287.053          # J/(kg K)
    hypso_scale: float = 44330.0           # m
    hypso_exponent: float = 5.255

    def __post_init__(self) -> None:
        if self.sea_level_pressure <= 0.0:
            raise ValueError("sea_level_pressure must be positive")
        if self.lapse_rate <= 0.0:
            raise ValueError("lapse_rate must be positive")
        if self.hypso_exponent <= 1.0:
            raise ValueError("hypso_exponent must exceed 1")

    @property
    def pressure_exponent(self) -> float:
        """g / (R * L), exponent of the troposphere pressure law."""
        return G0 / (self.gas_constant * self.lapse_rate)


ISA = AtmosphereModel()


@dataclass(frozen=True)
class StationCalibration:
    """Site calibration applied by the logger before any altimetry."""

    elevation: float = 45.0                # m above sea level
    pressure_correction: float = 0.995     # multiplicative sensor correction
    linear_altimeter_slope: float = 0.12   # hPa per metre

    def __post_init__(self) -> None:
        if not 0.9 < self.pressure_correction <= 1.1:
            raise ValueError("pressure_correction must lie in (0.9, 1.1]")
        if self.linear_altimeter_slope <= 0.0:
            raise ValueError("linear_altimeter_slope must be positive")
        if not 0.0 <= self.elevation < ISA.hypso_scale:
            raise ValueError("elevation must lie in [0, 44330) m")


def _check_troposphere(h: float) -> None:
    if not 0.0 <= h <= TROPOPAUSE_M:
        raise ValueError(f"altitude {h!r} m outside troposphere model [0, {TROPOPAUSE_M:.0f}]")


def isa_temperature(h: float, model: AtmosphereModel = ISA) -> float:
    """Air temperature in K at altitude h (m), linear lapse."""
    _check_troposphere(h)
    return model.sea_level_temperature - model.lapse_rate * h


def isa_pressure(h: float, model: AtmosphereModel = ISA) -> float:
    """Static pressure in Pa at altitude h (m): p0 * (T/T0)^(g/(R*L))."""
    _check_troposphere(h)
    t_ratio = isa_temperature(h, model) / model.sea_level_temperature
    return model.sea_level_pressure * t_ratio ** model.pressure_exponent


def isa_density(h: float, model: AtmosphereModel = ISA) -> float:
    """Air density in kg/m^3 at altitude h (m) from the ideal gas law."""
    return isa_pressure(h, model) / (model.gas_constant * isa_temperature(h, model))


def density_ratio(h: float, model: AtmosphereModel = ISA) -> float:
    """rho(h) / rho(0); the thrust de-rating factor with altitude."""
    return isa_density(h, model) / isa_density(0.0, model)


def mslp_from_station(p_raw: float, cal: StationCalibration, model: AtmosphereModel = ISA) -> float:
    """Reduce a raw station pressure (Pa) to mean sea level, in hPa.

    Applies the sensor correction first, then the hypsometric reduction
    with the logger's constants: (p * c) / (1 - elev/44330)^5.255.
    """
    if p_raw <= 0.0:
        raise ValueError("station pressure must be positive")
    reduction = (1.0 - cal.elevation / model.hypso_scale) ** model.hypso_exponent
    return p_raw * cal.pressure_correction / reduction / 100.0


def pressure_to_altitude(p: float, mslp: float, model: AtmosphereModel = ISA) -> float:
    """Hypsometric altitude (m) of pressure p (Pa) against a sea-level reference (hPa)."""
    if p <= 0.0:
        raise ValueError("pressure must be positive")
    return model.hypso_scale * (1.0 - (p / (mslp * 100.0)) ** (1.0 / model.hypso_exponent))


def linear_altitude(p_hpa: float, mslp_hpa: float, cal: StationCalibration) -> float:
    """Linear differential altimeter: (MSLP - p) / slope, both in hPa.

    May be negative when the station pressure exceeds the reference.
    """
    return (mslp_hpa - p_hpa) / cal.linear_altimeter_slope
