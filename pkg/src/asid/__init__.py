"""Deterministic drone weather-sounding toolkit.

Subpackages cover airframe performance math (``airframe``), the standard
atmosphere and barometric conversions (``atmosphere``), the autopilot
mission language (``mission``), the vertical flight simulator
(``flightsim``), the on-board logger emulation (``firmware``), the log
sync protocol (``synclink``), weather-index computation (``wxindices``),
report/plot emission (``groundstation``), and the pipeline + CLI glue
(``config``, ``pipeline``, ``cli``).
"""

from . import airframe, atmosphere, config, firmware, flightsim, groundstation, mission, \
    pipeline, synclink, wxindices

__all__ = [
    "airframe",
    "atmosphere",
    "config",
    "firmware",
    "flightsim",
    "groundstation",
    "mission",
    "pipeline",
    "synclink",
    "wxindices",
]

__version__ = "0.1.0"
