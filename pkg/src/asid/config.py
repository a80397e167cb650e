"""Run configuration: one JSON document drives the whole pipeline.

Sections map 1:1 onto the library dataclasses; unknown keys are rejected
so typos fail loudly.  Every field has a shipped default, so a partial
(or empty) document is a valid configuration.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

from .airframe import AirframeConfig, BatterySpec, MotorSpec, PropSpec, reference_config
from .firmware import FirmwareConfig
from .flightsim import Environment, SensorNoise
from .mission import DEFAULT_HEADINGS, DEFAULT_HOME


class ConfigError(ValueError):
    """A configuration document failed validation."""


@dataclass(frozen=True)
class MissionParams:
    """Inputs for the sounding-profile generator."""

    target_alt: float = 40.0
    start_alt: float = 10.0
    step: float = 10.0
    headings: tuple[float, ...] = DEFAULT_HEADINGS
    capture_dwell: float = 3.0
    home: tuple[float, float] = DEFAULT_HOME


@dataclass(frozen=True)
class RunConfig:
    airframe: AirframeConfig
    environment: Environment
    firmware: FirmwareConfig
    mission: MissionParams


def default_run_config() -> RunConfig:
    """The shipped reference setup: calm standard day, 40 m sounding.

    The logger section uses site elevation 0 so the calibrated altimeter
    reads height above ground; a non-zero elevation offsets every
    calibrated altitude by roughly the site height and fires the logging
    thresholds before take-off.
    """
    return RunConfig(
        airframe=reference_config(),
        environment=Environment(),
        firmware=FirmwareConfig(elevation=0.0),
        mission=MissionParams(),
    )


def _build(cls, section: dict, name: str, converters: dict | None = None):
    if not isinstance(section, dict):
        raise ConfigError(f"section {name!r} must be an object")
    fields = {f.name: f for f in dataclasses.fields(cls)}
    unknown = sorted(set(section) - set(fields))
    if unknown:
        raise ConfigError(f"unknown key(s) in {name!r}: {', '.join(unknown)}")
    kwargs = {}
    for key, value in section.items():
        if converters and key in converters:
            value = converters[key](value)
        kwargs[key] = value
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid {name!r} section: {exc}") from exc


def _parse_airframe(section: dict) -> AirframeConfig:
    defaults = reference_config()
    merged = {
        "motor": defaults.motor, "prop": defaults.prop, "battery": defaults.battery,
        "n_motors": defaults.n_motors, "total_mass": defaults.total_mass,
        "frame_drag_coefficient": defaults.frame_drag_coefficient,
        "body_drag_area": defaults.body_drag_area, "mtbf_hours": defaults.mtbf_hours,
    }
    converters = {
        "motor": lambda v: _build(MotorSpec, v, "airframe.motor"),
        "prop": lambda v: _build(PropSpec, v, "airframe.prop"),
        "battery": lambda v: _build(BatterySpec, v, "airframe.battery"),
    }
    known = set(merged)
    unknown = sorted(set(section) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in 'airframe': {', '.join(unknown)}")
    for key, value in section.items():
        merged[key] = converters[key](value) if key in converters else value
    try:
        return AirframeConfig(**merged)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid 'airframe' section: {exc}") from exc


def from_dict(document: dict) -> RunConfig:
    """Build a RunConfig from a parsed JSON document, applying defaults."""
    if not isinstance(document, dict):
        raise ConfigError("configuration root must be an object")
    known_sections = {"airframe", "environment", "firmware", "mission"}
    unknown = sorted(set(document) - known_sections)
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(unknown)}")
    base = default_run_config()

    airframe = _parse_airframe(document["airframe"]) if "airframe" in document else base.airframe

    env_section = dict(document.get("environment", {}))
    env_defaults = dataclasses.asdict(base.environment)
    env_defaults["sensor_noise"] = base.environment.sensor_noise
    env_conv = {"sensor_noise": lambda v: _build(SensorNoise, v, "environment.sensor_noise")}
    if not isinstance(env_section, dict):
        raise ConfigError("section 'environment' must be an object")
    merged_env = dict(env_defaults)
    unknown = sorted(set(env_section) - set(env_defaults))
    if unknown:
        raise ConfigError(f"unknown key(s) in 'environment': {', '.join(unknown)}")
    for key, value in env_section.items():
        merged_env[key] = env_conv[key](value) if key in env_conv else value
    try:
        environment = Environment(**merged_env)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid 'environment' section: {exc}") from exc

    fw_section = dict(document.get("firmware", {}))
    fw_defaults = {f.name: getattr(base.firmware, f.name)
                   for f in dataclasses.fields(FirmwareConfig)}
    unknown = sorted(set(fw_section) - set(fw_defaults))
    if unknown:
        raise ConfigError(f"unknown key(s) in 'firmware': {', '.join(unknown)}")
    merged_fw = dict(fw_defaults)
    for key, value in fw_section.items():
        if key == "rtc_start":
            try:
                value = datetime.fromisoformat(value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"firmware.rtc_start must be an ISO datetime: {exc}") from exc
        merged_fw[key] = value
    try:
        fw = FirmwareConfig(**merged_fw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid 'firmware' section: {exc}") from exc

    mission_conv = {
        "headings": lambda v: tuple(float(h) for h in v),
        "home": lambda v: (float(v[0]), float(v[1])),
    }
    params = _build(MissionParams, document.get("mission", {}), "mission", mission_conv)

    return RunConfig(airframe=airframe, environment=environment, firmware=fw, mission=params)


def to_dict(cfg: RunConfig) -> dict:
    """Inverse of from_dict, suitable for json.dump."""
    doc = {
        "airframe": dataclasses.asdict(cfg.airframe),
        "environment": dataclasses.asdict(cfg.environment),
        "firmware": dataclasses.asdict(cfg.firmware),
        "mission": dataclasses.asdict(cfg.mission),
    }
    doc["firmware"]["rtc_start"] = cfg.firmware.rtc_start.isoformat()
    doc["mission"]["headings"] = list(cfg.mission.headings)
    doc["mission"]["home"] = list(cfg.mission.home)
    return doc


def load(path) -> RunConfig:
    """Load and validate a JSON configuration file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read configuration file: {exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
    return from_dict(document)
