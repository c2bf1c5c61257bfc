"""Sweep execution and CSV emission.

Two sweep families:

* distance sweeps move a device away from the micro station along the
  station-to-panel axis and report the per-position association
  probability. The macro interference level is held at its value for a
  device at the cell center, so each curve isolates the micro-link
  distance dependence.
* density sweeps hold the geometry fixed, average association over the
  micro-cell disk once per carrier, and report the affine capacity at
  each device density. The per-row power/association snapshot columns
  are evaluated for a device at the cell center.

CSV output is deterministic: floats are serialized with 17 significant
digits, which round-trips IEEE doubles bit-exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .association import AssociationInputs, association_at, association_probability, \
    cell_capacity, macro_rx_power_at, mean_association, micro_rx_power_at
from .errors import DomainError, GeometryError
from .radio import Carrier
from .scenario import Scenario, SweepSpec

CSV_HEADER = ("model,carrier_hz,x_variable,x_value,p_rx_micro_w,p_rx_macro_w,"
              "assoc_prob,mean_assoc,capacity")


@dataclass(frozen=True)
class SweepRow:
    """One output record; mean_assoc and capacity stay None on distance sweeps."""

    model: str
    carrier_hz: float
    x_variable: str
    x_value: float
    p_rx_micro_w: float
    p_rx_macro_w: float
    assoc_prob: float
    mean_assoc: float | None = None
    capacity: float | None = None


def _sorted_carriers(scenario: Scenario) -> list[Carrier]:
    return sorted(scenario.carriers, key=lambda c: c.frequency_hz)


def ground_offset_for_separation(scenario: Scenario, distance_m: float) -> float:
    """Ground x-offset of a device at the requested separation from the micro BS."""
    if scenario.distance_mode == "horizontal":
        return distance_m
    dz = scenario.micro_height_m - scenario.device_height_m
    if distance_m <= abs(dz):
        raise GeometryError(
            f"3d separation {distance_m} m is not reachable: the station-device "
            f"height gap alone is {abs(dz)} m")
    return math.sqrt(distance_m**2 - dz**2)


def run_association_sweep(scenario: Scenario, spec: SweepSpec, model: str) -> list[SweepRow]:
    """Association probability versus station-device separation, per carrier."""
    if spec.variable != "device_distance":
        raise DomainError(f"association sweep needs a device_distance spec, "
                          f"got {spec.variable!r}")
    rows = []
    for carrier in _sorted_carriers(scenario):
        geom = scenario.geometry(model, carrier)
        center = geom.micro.position
        p_ma = float(macro_rx_power_at(geom, center.x, center.y))
        for i, distance in enumerate(spec.values()):
            try:
                x = center.x + ground_offset_for_separation(scenario, distance)
                p_mi = float(micro_rx_power_at(geom, x, center.y))
            except GeometryError as exc:
                raise GeometryError(
                    f"step {i} (distance {distance} m, carrier "
                    f"{carrier.frequency_hz / 1e9:g} GHz): {exc}") from exc
            assoc = association_probability(
                AssociationInputs(p_ma, p_mi, geom.macro.pathloss_exponent),
                geom.densities)
            rows.append(SweepRow(model, carrier.frequency_hz, "device_distance",
                                 distance, p_mi, p_ma, assoc))
    return rows


def run_capacity_sweep(scenario: Scenario, spec: SweepSpec, model: str) -> list[SweepRow]:
    """Supportable-device count versus device density, per carrier.

    The disk-averaged association is density-independent, so it is
    computed once per carrier and reused across the density axis.
    """
    if spec.variable != "device_density":
        raise DomainError(f"capacity sweep needs a device_density spec, "
                          f"got {spec.variable!r}")
    rows = []
    densities = scenario.densities
    for carrier in _sorted_carriers(scenario):
        geom = scenario.geometry(model, carrier)
        center = geom.micro.position
        try:
            mean_assoc = mean_association(geom, scenario.n_radial, scenario.n_angular)
            p_mi = float(micro_rx_power_at(geom, center.x, center.y))
            p_ma = float(macro_rx_power_at(geom, center.x, center.y))
            assoc = float(association_at(geom, center.x, center.y))
        except GeometryError as exc:
            raise GeometryError(
                f"carrier {carrier.frequency_hz / 1e9:g} GHz: {exc}") from exc
        for lambda_u in spec.values():
            capacity = cell_capacity(replace(densities, lambda_u=lambda_u), mean_assoc)
            rows.append(SweepRow(model, carrier.frequency_hz, "device_density",
                                 lambda_u, p_mi, p_ma, assoc, mean_assoc, capacity))
    return rows


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return f"{value:.17g}"


def write_csv(rows: list[SweepRow], path: str) -> None:
    """Write rows with the fixed header; every float keeps 17 significant digits."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_csv(rows))


def render_csv(rows: list[SweepRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join((
            r.model, _fmt(r.carrier_hz), r.x_variable, _fmt(r.x_value),
            _fmt(r.p_rx_micro_w), _fmt(r.p_rx_macro_w), _fmt(r.assoc_prob),
            _fmt(r.mean_assoc), _fmt(r.capacity),
        )))
    return "\n".join(lines) + "\n"


def read_csv(path: str) -> list[SweepRow]:
    """Parse a file produced by `write_csv` back into rows (bit-exact floats)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise DomainError(f"{path} does not carry the expected sweep header")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 9:
            raise DomainError(f"{path}: malformed row {line!r}")
        rows.append(SweepRow(
            model=parts[0],
            carrier_hz=float(parts[1]),
            x_variable=parts[2],
            x_value=float(parts[3]),
            p_rx_micro_w=float(parts[4]),
            p_rx_macro_w=float(parts[5]),
            assoc_prob=float(parts[6]),
            mean_assoc=float(parts[7]) if parts[7] else None,
            capacity=float(parts[8]) if parts[8] else None,
        ))
    return rows
