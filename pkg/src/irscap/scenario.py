"""Scenario configuration: bundled defaults, TOML loading, geometry building.

A scenario file is a TOML document whose sections mirror the network
layout (micro, macro, irs, device, densities, cell, averaging, sweeps).
Every field is optional; omitted fields take the bundled defaults, so an
empty document is a complete scenario. Boundary units are human-facing
(GHz, dB, degrees) and are converted to strict SI here.

Station layout is collinear along the +x axis with the micro station's
ground position at the origin: the panel sits at the micro-to-panel
offset, the macro interferer at its own offset, and swept devices move
along the same axis. The macro interferer transmits on its own fixed
carrier so its received power does not track the micro-link carrier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .association import TierDensities, TwoTierGeometry
from .errors import ConfigError, DomainError
from .linkbudget import IrsPanel, TxNode
from .radio import Carrier, Point3, db_to_linear

MICRO_DENSITY_PER_M2 = 1000.0 / (math.pi * 100.0**2)
MACRO_DENSITY_PER_M2 = MICRO_DENSITY_PER_M2 / 5.0
DEVICE_DENSITY_MAX_FACTOR = 500.0
MICRO_CELL_RADIUS_M = math.sqrt(200.0 / math.pi)   # 200 m^2 micro cell
MACRO_OFFSET_M = math.sqrt(1000.0 / math.pi)       # 1000 m^2 macro cell

DISTANCE_MODES = ("horizontal", "3d")
MODELS = ("conventional", "irs")


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable: device_distance (m) or device_density (per m^2)."""

    variable: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.variable not in ("device_distance", "device_density"):
            raise DomainError(f"SweepSpec.variable must be device_distance or "
                              f"device_density, got {self.variable!r}")
        if not (math.isfinite(self.start) and self.start >= 0):
            raise DomainError(f"SweepSpec.start must be >= 0, got {self.start!r}")
        if not (math.isfinite(self.stop) and self.stop > self.start):
            raise DomainError(f"SweepSpec.stop must exceed start, got {self.stop!r}")
        if self.steps < 2:
            raise DomainError(f"SweepSpec.steps must be >= 2, got {self.steps!r}")

    def values(self) -> list[float]:
        step = (self.stop - self.start) / (self.steps - 1)
        return [self.start + i * step for i in range(self.steps)]


@dataclass(frozen=True)
class Scenario:
    """A fully resolved experiment description in SI units."""

    carriers: tuple[Carrier, ...] = (
        Carrier(30e9), Carrier(55e9), Carrier(90e9), Carrier(120e9))

    micro_height_m: float = 5.0
    micro_power_conventional_w: float = 10.0
    micro_power_irs_w: float = 0.5
    micro_gain_linear: float = db_to_linear(20.0)
    micro_pathloss_exponent: float = 2.5

    macro_height_m: float = 10.0
    macro_power_w: float = 50.0
    macro_gain_linear: float = db_to_linear(20.0)
    macro_pathloss_exponent: float = 4.5
    macro_offset_m: float = MACRO_OFFSET_M
    macro_carrier: Carrier = Carrier(30e9)

    irs_height_m: float = 6.0
    irs_offset_m: float = 5.0
    irs_m_elements: int = 128
    irs_n_elements: int = 128
    irs_reflection_coeff: float = 0.9
    irs_theta_t_rad: float = math.pi / 4.0
    irs_theta_r_rad: float = math.pi / 4.0
    # None means half the active carrier wavelength, recomputed per carrier.
    irs_element_len_m: float | None = None
    irs_element_wid_m: float | None = None

    device_height_m: float = 1.5
    device_gain_linear: float = db_to_linear(15.0)

    densities: TierDensities = field(default_factory=lambda: TierDensities(
        lambda_ma=MACRO_DENSITY_PER_M2,
        lambda_mi=MICRO_DENSITY_PER_M2,
        lambda_u=DEVICE_DENSITY_MAX_FACTOR * MICRO_DENSITY_PER_M2,
    ))

    micro_cell_radius_m: float = MICRO_CELL_RADIUS_M
    distance_mode: str = "horizontal"
    apply_gains_to_conventional: bool = False

    n_radial: int = 64
    n_angular: int = 16

    distance_sweep: SweepSpec = SweepSpec("device_distance", 1.0, 50.0, 100)
    density_sweep: SweepSpec | None = None   # None -> 0 .. 500 * lambda_mi

    def __post_init__(self):
        if not self.carriers:
            raise DomainError("Scenario.carriers must not be empty")
        if self.distance_mode not in DISTANCE_MODES:
            raise DomainError(f"distance_mode must be one of {DISTANCE_MODES}, "
                              f"got {self.distance_mode!r}")
        if self.density_sweep is None:
            object.__setattr__(self, "density_sweep", SweepSpec(
                "device_density", 0.0,
                DEVICE_DENSITY_MAX_FACTOR * self.densities.lambda_mi, 100))

    # -- geometry builders -------------------------------------------------

    def micro_node(self, model: str) -> TxNode:
        if model not in MODELS:
            raise DomainError(f"model must be one of {MODELS}, got {model!r}")
        power = (self.micro_power_conventional_w if model == "conventional"
                 else self.micro_power_irs_w)
        return TxNode(Point3(0.0, 0.0, self.micro_height_m), power,
                      self.micro_gain_linear, self.micro_pathloss_exponent)

    def macro_node(self) -> TxNode:
        return TxNode(Point3(self.macro_offset_m, 0.0, self.macro_height_m),
                      self.macro_power_w, self.macro_gain_linear,
                      self.macro_pathloss_exponent)

    def panel_for(self, carrier: Carrier) -> IrsPanel:
        half = carrier.wavelength_m / 2.0
        return IrsPanel(
            position=Point3(self.irs_offset_m, 0.0, self.irs_height_m),
            m_elements=self.irs_m_elements,
            n_elements=self.irs_n_elements,
            element_len_m=self.irs_element_len_m if self.irs_element_len_m is not None else half,
            element_wid_m=self.irs_element_wid_m if self.irs_element_wid_m is not None else half,
            reflection_coeff=self.irs_reflection_coeff,
            theta_t_rad=self.irs_theta_t_rad,
            theta_r_rad=self.irs_theta_r_rad,
        )

    def geometry(self, model: str, carrier: Carrier) -> TwoTierGeometry:
        return TwoTierGeometry(
            model=model,
            carrier=carrier,
            micro=self.micro_node(model),
            macro=self.macro_node(),
            macro_carrier=self.macro_carrier,
            panel=self.panel_for(carrier) if model == "irs" else None,
            device_gain_linear=self.device_gain_linear,
            device_height_m=self.device_height_m,
            disk_radius_m=self.micro_cell_radius_m,
            densities=self.densities,
            apply_gains_to_conventional=self.apply_gains_to_conventional,
        )


# -- TOML ingestion ---------------------------------------------------------

def _take(section: dict, section_name: str, key: str, expect, default):
    """Pop `key` from a section dict, type-checked; `expect` is a type tuple."""
    if key not in section:
        return default
    value = section.pop(key)
    if expect is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{section_name}.{key}: expected a number, got {value!r}")
        return float(value)
    if expect is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{section_name}.{key}: expected an integer, got {value!r}")
        return value
    if expect is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"{section_name}.{key}: expected a boolean, got {value!r}")
        return value
    if expect is str:
        if not isinstance(value, str):
            raise ConfigError(f"{section_name}.{key}: expected a string, got {value!r}")
        return value
    raise AssertionError(f"unsupported expect {expect!r}")


def _section(data: dict, name: str) -> dict:
    sec = data.pop(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"{name}: expected a section (TOML table)")
    return dict(sec)


def _reject_unknown(section: dict, name: str):
    if section:
        key = sorted(section)[0]
        raise ConfigError(f"unknown field {name}.{key}" if name else f"unknown field {key}")


def scenario_from_mapping(data: dict) -> Scenario:
    """Build a Scenario from parsed TOML data, applying bundled defaults."""
    data = dict(data)
    base = Scenario()

    carriers = base.carriers
    if "carriers_ghz" in data:
        raw = data.pop("carriers_ghz")
        if (not isinstance(raw, list) or not raw
                or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw)):
            raise ConfigError("carriers_ghz: expected a non-empty list of numbers")
        carriers = tuple(Carrier.from_ghz(float(v)) for v in raw)

    micro = _section(data, "micro")
    macro = _section(data, "macro")
    irs = _section(data, "irs")
    device = _section(data, "device")
    densities = _section(data, "densities")
    cell = _section(data, "cell")
    averaging = _section(data, "averaging")
    sweeps = _section(data, "sweeps")
    _reject_unknown(data, "")

    sweep_distance = _section(sweeps, "distance")
    sweep_density = _section(sweeps, "density")
    _reject_unknown(sweeps, "sweeps")

    lambda_mi = _take(densities, "densities", "micro_per_m2", float,
                      base.densities.lambda_mi)
    lambda_ma = _take(densities, "densities", "macro_per_m2", float,
                      base.densities.lambda_ma)
    lambda_u = _take(densities, "densities", "device_max_per_m2", float,
                     base.densities.lambda_u)

    density_sweep = None
    if sweep_density:
        density_sweep = _build_sweep(
            sweep_density, "sweeps.density", "device_density",
            ("start_per_m2", 0.0), ("stop_per_m2", DEVICE_DENSITY_MAX_FACTOR * lambda_mi),
            base.density_sweep.steps)

    kwargs = dict(
        carriers=carriers,
        micro_height_m=_take(micro, "micro", "height_m", float, base.micro_height_m),
        micro_power_conventional_w=_take(micro, "micro", "power_conventional_w", float,
                                         base.micro_power_conventional_w),
        micro_power_irs_w=_take(micro, "micro", "power_irs_w", float, base.micro_power_irs_w),
        micro_gain_linear=db_to_linear(_take(micro, "micro", "gain_db", float, 20.0)),
        micro_pathloss_exponent=_take(micro, "micro", "pathloss_exponent", float,
                                      base.micro_pathloss_exponent),
        macro_height_m=_take(macro, "macro", "height_m", float, base.macro_height_m),
        macro_power_w=_take(macro, "macro", "power_w", float, base.macro_power_w),
        macro_gain_linear=db_to_linear(_take(macro, "macro", "gain_db", float, 20.0)),
        macro_pathloss_exponent=_take(macro, "macro", "pathloss_exponent", float,
                                      base.macro_pathloss_exponent),
        macro_offset_m=_take(macro, "macro", "offset_m", float, base.macro_offset_m),
        macro_carrier=Carrier.from_ghz(_take(macro, "macro", "carrier_ghz", float, 30.0)),
        irs_height_m=_take(irs, "irs", "height_m", float, base.irs_height_m),
        irs_offset_m=_take(irs, "irs", "offset_m", float, base.irs_offset_m),
        irs_m_elements=_take(irs, "irs", "m_elements", int, base.irs_m_elements),
        irs_n_elements=_take(irs, "irs", "n_elements", int, base.irs_n_elements),
        irs_reflection_coeff=_take(irs, "irs", "reflection_coeff", float,
                                   base.irs_reflection_coeff),
        irs_theta_t_rad=math.radians(_take(irs, "irs", "theta_t_deg", float, 45.0)),
        irs_theta_r_rad=math.radians(_take(irs, "irs", "theta_r_deg", float, 45.0)),
        irs_element_len_m=_take(irs, "irs", "element_len_m", float, None),
        irs_element_wid_m=_take(irs, "irs", "element_wid_m", float, None),
        device_height_m=_take(device, "device", "height_m", float, base.device_height_m),
        device_gain_linear=db_to_linear(_take(device, "device", "gain_db", float, 15.0)),
        micro_cell_radius_m=_take(cell, "cell", "micro_radius_m", float,
                                  base.micro_cell_radius_m),
        distance_mode=_take(cell, "cell", "distance_mode", str, base.distance_mode),
        apply_gains_to_conventional=_take(cell, "cell", "apply_gains_to_conventional",
                                          bool, base.apply_gains_to_conventional),
        n_radial=_take(averaging, "averaging", "n_radial", int, base.n_radial),
        n_angular=_take(averaging, "averaging", "n_angular", int, base.n_angular),
        distance_sweep=_build_sweep(
            sweep_distance, "sweeps.distance", "device_distance",
            ("start_m", base.distance_sweep.start), ("stop_m", base.distance_sweep.stop),
            base.distance_sweep.steps),
        density_sweep=density_sweep,
    )

    for sec, name in ((micro, "micro"), (macro, "macro"), (irs, "irs"),
                      (device, "device"), (densities, "densities"), (cell, "cell"),
                      (averaging, "averaging"), (sweep_distance, "sweeps.distance"),
                      (sweep_density, "sweeps.density")):
        _reject_unknown(sec, name)

    try:
        scenario = Scenario(densities=TierDensities(lambda_ma, lambda_mi, lambda_u), **kwargs)
        _validate_buildable(scenario)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    if scenario.n_radial < 1 or scenario.n_angular < 1:
        raise ConfigError("averaging.n_radial and averaging.n_angular must be >= 1")
    return scenario


def _build_sweep(section: dict, name: str, variable: str, start_kv, stop_kv,
                 default_steps: int) -> SweepSpec:
    start = _take(section, name, start_kv[0], float, start_kv[1])
    stop = _take(section, name, stop_kv[0], float, stop_kv[1])
    steps = _take(section, name, "steps", int, default_steps)
    try:
        return SweepSpec(variable, start, stop, steps)
    except DomainError as exc:
        raise ConfigError(f"{name}: {exc}") from exc


def _validate_buildable(scenario: Scenario):
    """Construct every node type once so invariant violations surface as config errors."""
    scenario.micro_node("conventional")
    scenario.micro_node("irs")
    scenario.macro_node()
    for carrier in scenario.carriers:
        scenario.panel_for(carrier)


def load_scenario(path: str) -> Scenario:
    """Parse a TOML scenario file; omitted fields take the bundled defaults."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        data = tomllib.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"scenario file {path} failed to parse: {exc}") from exc
    return scenario_from_mapping(data)


def with_irs_setup(scenario: Scenario, power_w: float | None = None,
                   elements: int | None = None) -> Scenario:
    """Copy of `scenario` with the reflecting-surface power and/or grid replaced."""
    changes = {}
    if power_w is not None:
        changes["micro_power_irs_w"] = power_w
    if elements is not None:
        changes["irs_m_elements"] = elements
        changes["irs_n_elements"] = elements
    return replace(scenario, **changes) if changes else scenario
