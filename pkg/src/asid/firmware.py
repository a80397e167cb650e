"""Cycle-faithful emulation of the on-board weather-station program.

The state machine reproduces the device loop: six buzzer-announced ground
log rows, altitude-interval air logging every 5 m of calibrated altitude,
and file-server activation (with a long buzz) once the interval counter
passes 35 m.  Rows are rendered byte-exactly, including the trailing comma
before CRLF produced by the device's print-call sequence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from . import wxindices
from .atmosphere import StationCalibration, linear_altitude, mslp_from_station

GROUND_LOG = "ground.csv"
AIR_LOG = "air.csv"
PHOTO_MANIFEST = "photos.json"

GROUND_BUZZ_MS = 500
SERVER_BUZZ_MS = 5000


class Phase(enum.Enum):
    GROUND = "ground"
    AIR = "air"
    SERVING = "serving"


@dataclass(frozen=True)
class FirmwareConfig:
    elevation: float = 45.0            # m, site elevation for the MSLP reduction
    pressure_correction: float = 0.995
    interval_step: float = 5.0         # m between air log rows
    interval_start: float = 5.0        # m, first air threshold
    server_threshold: float = 35.0     # m, interval beyond which the server starts
    ground_samples: int = 6
    ground_delay_ms: int = 3000
    air_delay_ms: int = 3000
    rtc_start: datetime = datetime(2021, 6, 1, 10, 15, 0)

    def __post_init__(self) -> None:
        if min(self.interval_step, self.interval_start, self.server_threshold) <= 0.0:
            raise ValueError("interval fields must be positive")
        if self.ground_samples < 1:
            raise ValueError("ground_samples must be at least 1")
        if self.ground_delay_ms < 0 or self.air_delay_ms < 0:
            raise ValueError("delays must be non-negative")

    @property
    def calibration(self) -> StationCalibration:
        return StationCalibration(elevation=self.elevation,
                                  pressure_correction=self.pressure_correction)


@dataclass(frozen=True)
class SensorSample:
    """One processed observation, ready for rendering into a log row."""

    date: str           # DD.MM.YYYY
    time: str           # HH:MM:SS
    temperature: float  # degC
    humidity: float     # %
    heat_index: float   # degC
    pressure_hpa: float  # corrected station pressure
    cal_altitude: float  # m, linear differential altimeter

    def __post_init__(self) -> None:
        if not 0.0 <= self.humidity <= 100.0:
            raise ValueError("humidity must lie in [0, 100] %")
        if self.pressure_hpa <= 0.0:
            raise ValueError("pressure must be positive")


class SdCardImage:
    """In-memory SD card: a name -> bytes mapping with atomic per-call ops."""

    def __init__(self, files: dict[str, bytes] | None = None, *, write_protected: bool = False):
        self.files: dict[str, bytes] = dict(files or {})
        self.write_protected = write_protected

    def append(self, name: str, data: bytes) -> bool:
        if self.write_protected:
            return False
        self.files[name] = self.files.get(name, b"") + data
        return True

    def read(self, name: str) -> bytes | None:
        return self.files.get(name)

    def exists(self, name: str) -> bool:
        return name in self.files

    def remove(self, name: str) -> None:
        self.files.pop(name, None)

    def names(self) -> list[str]:
        return sorted(self.files)

    def to_dir(self, path) -> None:
        directory = Path(path)
        directory.mkdir(parents=True, exist_ok=True)
        for name, data in self.files.items():
            (directory / name).write_bytes(data)

    @classmethod
    def from_dir(cls, path) -> "SdCardImage":
        directory = Path(path)
        files = {p.name: p.read_bytes() for p in sorted(directory.iterdir()) if p.is_file()}
        return cls(files)


@dataclass
class FirmwareState:
    cfg: FirmwareConfig
    phase: Phase
    mslp_hpa: float
    interval: float
    run_flag: bool = False
    listen_flag: bool = False
    ground_count: int = 0
    buzzer_events: list[tuple[int, int]] = field(default_factory=list)  # (clock ms, ms)


def setup(cfg: FirmwareConfig, first_pressure_pa: float) -> FirmwareState:
    """Power-on: reduce the first raw pressure to sea level and arm the logger."""
    mslp = mslp_from_station(first_pressure_pa, cfg.calibration)
    return FirmwareState(cfg=cfg, phase=Phase.GROUND, mslp_hpa=mslp,
                         interval=cfg.interval_start)


def arduino_print_float(value: float, decimals: int) -> str:
    """Fixed-decimal rendering, ties away from zero, as the device prints floats."""
    quantum = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))


def make_sample(cfg: FirmwareConfig, state: FirmwareState, temperature: float,
                humidity: float, pressure_pa: float, clock_ms: int) -> SensorSample:
    """Process raw readings the way the logger does before a row is written."""
    corrected_hpa = pressure_pa * cfg.pressure_correction / 100.0
    stamp = cfg.rtc_start + timedelta(milliseconds=clock_ms)
    return SensorSample(
        date=stamp.strftime("%d.%m.%Y"),
        time=stamp.strftime("%H:%M:%S"),
        temperature=temperature,
        humidity=humidity,
        heat_index=wxindices.heat_index(temperature, humidity),
        pressure_hpa=corrected_hpa,
        cal_altitude=linear_altitude(corrected_hpa, state.mslp_hpa, cfg.calibration),
    )


def format_row(sample: SensorSample) -> bytes:
    """Render one log row byte-exactly: every field comma-terminated, then CRLF."""
    parts = (
        sample.date,
        sample.time,
        arduino_print_float(sample.temperature, 1),
        arduino_print_float(sample.humidity, 1),
        arduino_print_float(sample.heat_index, 1),
        arduino_print_float(sample.pressure_hpa, 2),
        arduino_print_float(sample.cal_altitude, 2),
    )
    return ("".join(p + "," for p in parts) + "\r\n").encode("ascii")


def tick(state: FirmwareState, sample: SensorSample, clock_ms: int,
         sd: SdCardImage) -> tuple[FirmwareState, list[tuple]]:
    """One pass of the device loop.

    Returns the state and an effect list; "wait" effects tell the driver
    how long the device blocks before the next pass.  A failed SD write
    emits "write_failure" and leaves the state unchanged.
    """
    cfg = state.cfg
    effects: list[tuple] = []
    if state.phase is Phase.GROUND:
        effects.append(("buzzer", GROUND_BUZZ_MS))
        state.buzzer_events.append((clock_ms, GROUND_BUZZ_MS))
        if sd.append(GROUND_LOG, format_row(sample)):
            effects.append(("log", GROUND_LOG))
            effects.append(("wait", cfg.ground_delay_ms))
            state.ground_count += 1
            if state.ground_count >= cfg.ground_samples:
                state.run_flag = True
                state.phase = Phase.AIR
        else:
            effects.append(("write_failure", GROUND_LOG))
    elif state.phase is Phase.AIR:
        if sample.cal_altitude > state.interval:
            if sd.append(AIR_LOG, format_row(sample)):
                effects.append(("log", AIR_LOG))
                effects.append(("wait", cfg.air_delay_ms))
                state.interval += cfg.interval_step
            else:
                effects.append(("write_failure", AIR_LOG))
    if state.run_flag and state.interval > cfg.server_threshold and not state.listen_flag:
        effects.append(("server_start",))
        effects.append(("buzzer", SERVER_BUZZ_MS))
        state.buzzer_events.append((clock_ms, SERVER_BUZZ_MS))
        state.listen_flag = True
        state.phase = Phase.SERVING
    return state, effects
