"""
Airframe sizing walkthrough
===========================

Sizes a 2 kg quad for high-altitude sounding work: thrust/weight, what the
thinning air does to it, how fast it can outrun wind, and how long the
pack and the motors last.
"""

from asid.airframe import (
    battery_max_load,
    beaufort_to_kmh,
    endurance,
    expected_flights,
    max_progressive_speed,
    prop_thrust,
    reference_config,
    required_static_thrust,
    service_ceiling,
    thrust_at_altitude,
    thrust_to_weight,
    wind_drift,
)
from asid.atmosphere import isa_density

cfg = reference_config()

# Thrust/weight is the headline agility number: 1.0 is a hover at full
# throttle, 2.0 hovers at half throttle.
print(f"thrust/weight at sea level: {thrust_to_weight(cfg):.2f}")

# Air density falls with altitude and the thrust falls with it.  At
# 20,000 ft (6096 m) the ISA troposphere is roughly half as dense.
for h in (0.0, 3000.0, 6096.0):
    print(f"  rho({h:5.0f} m) = {isa_density(h):.3f} kg/m^3, "
          f"1000 g static -> {thrust_at_altitude(1000.0, h):.0f} g")

# The ceiling is where the density-scaled thrust/weight hits 1.
ceiling = service_ceiling(cfg)
print(f"service ceiling: {ceiling:.0f} m ({ceiling / 0.3048:.0f} ft)")

# Inverse sizing: to keep 1.5x weight margin at the design altitude, the
# bench (sea-level) static thrust must be considerably larger.
target = cfg.total_mass * 1.5
needed = required_static_thrust(target, 6096.0)
print(f"static thrust for {target:.0f} g at 6096 m: {needed:.0f} g "
      f"({needed / cfg.n_motors:.0f} g per motor)")

# The propeller model: thrust collapses as the inflow approaches the
# pitch speed, which is what ultimately caps forward speed.
static = prop_thrust(cfg.prop, cfg.prop.max_rpm)
print(f"propeller static thrust: {static:.2f} N per motor")

vmax = max_progressive_speed(cfg)
print(f"max progressive speed: {vmax:.1f} km/h")

# Above that wind speed the drone cannot hold position; it lands downwind.
for bft in (9, 10, 11, 12):
    wind = beaufort_to_kmh(bft)
    print(f"  Bft {bft} ({wind:.0f} km/h): 3-minute flight drifts "
          f"{wind_drift(wind, vmax, 180.0):.0f} m")

# Battery and reliability arithmetic.
print(f"battery max load: {battery_max_load(cfg.battery):.0f} A")
print(f"endurance at 20 A: {endurance(cfg.battery, 20.0):.0f} s")
print(f"expected failure-free flights (10 min each): "
      f"{expected_flights(cfg.mtbf_hours, 10.0)}")
