"""Two-tier user association and micro-cell capacity.

A device attaches to the micro tier with probability

    (1 + (density_macro / density_micro) * (P_macro / P_micro)^(2 / alpha_macro))^-1

where the P's are received powers and alpha_macro is the macro tier's
attenuation exponent; the exponent uses alpha_macro alone even when the
tiers attenuate differently. The expected number of devices a micro
station serves is affine in device density:

    capacity = 1 + LOAD_FACTOR * density_devices * mean_association / density_micro

Spatial averaging of the association probability runs over device
positions uniform in the micro-cell disk, by a deterministic
radial-angular product quadrature; both tiers' received powers are
re-evaluated at every node position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GeometryError
from .linkbudget import IrsPanel, TxNode, cascade_link_power, direct_link_power
from .radio import Carrier, Point3, distance3

# Per-cell load constant in the affine capacity law.
LOAD_FACTOR = 1.28


@dataclass(frozen=True)
class TierDensities:
    """Station and device densities per square meter."""

    lambda_ma: float
    lambda_mi: float
    lambda_u: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.lambda_ma) and self.lambda_ma > 0):
            raise DomainError(f"TierDensities.lambda_ma must be > 0, got {self.lambda_ma!r}")
        if not (math.isfinite(self.lambda_mi) and self.lambda_mi > 0):
            raise DomainError(f"TierDensities.lambda_mi must be > 0, got {self.lambda_mi!r}")
        if not (math.isfinite(self.lambda_u) and self.lambda_u >= 0):
            raise DomainError(f"TierDensities.lambda_u must be >= 0, got {self.lambda_u!r}")


@dataclass(frozen=True)
class AssociationInputs:
    """Received powers seen by one device, plus the macro attenuation exponent."""

    p_rx_macro_w: float
    p_rx_micro_w: float
    alpha_ma: float

    def __post_init__(self):
        for name in ("p_rx_macro_w", "p_rx_micro_w"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"AssociationInputs.{name} must be finite and > 0, got {v!r}")
        if not (math.isfinite(self.alpha_ma) and self.alpha_ma >= 1):
            raise DomainError(f"AssociationInputs.alpha_ma must be >= 1, got {self.alpha_ma!r}")


@dataclass(frozen=True)
class CapacityResult:
    """Mean association and the resulting expected device count for one setup."""

    mean_assoc: float
    capacity: float
    model: str
    carrier_hz: float
    lambda_u: float

    @classmethod
    def compute(cls, densities: TierDensities, mean_assoc: float, model: str,
                carrier_hz: float) -> "CapacityResult":
        return cls(
            mean_assoc=mean_assoc,
            capacity=cell_capacity(densities, mean_assoc),
            model=model,
            carrier_hz=carrier_hz,
            lambda_u=densities.lambda_u,
        )


def association_probability(inputs: AssociationInputs, densities: TierDensities) -> float:
    """Probability that a device attaches to the micro tier."""
    ratio = inputs.p_rx_macro_w / inputs.p_rx_micro_w
    if not math.isfinite(ratio):
        raise DomainError(f"power ratio is not finite: {ratio!r}")
    return 1.0 / (1.0 + (densities.lambda_ma / densities.lambda_mi)
                  * ratio ** (2.0 / inputs.alpha_ma))


def cell_capacity(densities: TierDensities, mean_assoc: float) -> float:
    """Expected number of devices served by one micro station."""
    if not (0.0 <= mean_assoc <= 1.0):
        raise DomainError(f"mean_assoc must be in [0, 1], got {mean_assoc!r}")
    return 1.0 + LOAD_FACTOR * densities.lambda_u * mean_assoc / densities.lambda_mi


@dataclass(frozen=True)
class TwoTierGeometry:
    """Everything needed to evaluate association at arbitrary device positions.

    The micro node carries the transmit power of the active model
    ("conventional" direct link or "irs" cascaded link). The macro
    interferer keeps its own fixed carrier so its received power does not
    track the swept micro-link carrier.
    """

    model: str
    carrier: Carrier
    micro: TxNode
    macro: TxNode
    macro_carrier: Carrier
    panel: IrsPanel | None
    device_gain_linear: float
    device_height_m: float
    disk_radius_m: float
    densities: TierDensities
    apply_gains_to_conventional: bool = False

    def __post_init__(self):
        if self.model not in ("conventional", "irs"):
            raise DomainError(f"model must be 'conventional' or 'irs', got {self.model!r}")
        if self.model == "irs" and self.panel is None:
            raise DomainError("model 'irs' requires a panel")
        if not (math.isfinite(self.disk_radius_m) and self.disk_radius_m > 0):
            raise DomainError(f"disk_radius_m must be > 0, got {self.disk_radius_m!r}")


def _distance_to(node_pos: Point3, x, y, z: float):
    return np.sqrt((x - node_pos.x) ** 2 + (y - node_pos.y) ** 2 + (z - node_pos.z) ** 2)


def micro_rx_power_at(geom: TwoTierGeometry, x, y):
    """Micro-link received power at device ground coordinates; broadcasts."""
    z = geom.device_height_m
    if geom.model == "conventional":
        r = _distance_to(geom.micro.position, x, y, z)
        if np.any(r <= 0.0):
            raise GeometryError("device coincides with the micro station")
        gains = (geom.micro.gain_linear * geom.device_gain_linear
                 if geom.apply_gains_to_conventional else 1.0)
        return direct_link_power(geom.micro.transmit_power_w, geom.carrier.wavelength_m,
                                 r, geom.micro.pathloss_exponent, gains)
    panel = geom.panel
    d1 = distance3(geom.micro.position, panel.position)
    if d1 <= 0.0:
        raise GeometryError("micro station coincides with the panel")
    d2 = _distance_to(panel.position, x, y, z)
    if np.any(d2 <= 0.0):
        raise GeometryError("device coincides with the panel")
    return cascade_link_power(
        geom.micro.transmit_power_w, geom.carrier.wavelength_m, d1, d2,
        panel.m_elements, panel.n_elements,
        panel.element_len_m, panel.element_wid_m, panel.reflection_coeff,
        geom.micro.gain_linear, geom.device_gain_linear,
        panel.theta_t_rad, panel.theta_r_rad,
    )


def macro_rx_power_at(geom: TwoTierGeometry, x, y):
    """Macro interferer received power at device ground coordinates; broadcasts."""
    r = _distance_to(geom.macro.position, x, y, geom.device_height_m)
    if np.any(r <= 0.0):
        raise GeometryError("device coincides with the macro station")
    gains = (geom.macro.gain_linear * geom.device_gain_linear
             if geom.apply_gains_to_conventional else 1.0)
    return direct_link_power(geom.macro.transmit_power_w, geom.macro_carrier.wavelength_m,
                             r, geom.macro.pathloss_exponent, gains)


def association_at(geom: TwoTierGeometry, x, y):
    """Micro-association probability at device ground coordinates; broadcasts."""
    p_mi = micro_rx_power_at(geom, x, y)
    p_ma = macro_rx_power_at(geom, x, y)
    d = geom.densities
    return 1.0 / (1.0 + (d.lambda_ma / d.lambda_mi)
                  * (p_ma / p_mi) ** (2.0 / geom.macro.pathloss_exponent))


def disk_quadrature(radius_m: float, n_radial: int, n_angular: int):
    """Nodes and weights for a uniform average over a disk.

    Gauss-Legendre in the squared-radius variable (so the rule is exact
    for the uniform area measure) crossed with equally spaced angular
    midpoints. Weights sum to 1.

    Returns (x, y, w) flat arrays of length n_radial * n_angular.
    """
    if n_radial < 1 or n_angular < 1:
        raise DomainError("quadrature needs at least one radial and one angular node")
    gl_nodes, gl_weights = np.polynomial.legendre.leggauss(n_radial)
    u = 0.5 * (gl_nodes + 1.0)           # squared-radius fraction in (0, 1)
    w_r = 0.5 * gl_weights
    r = radius_m * np.sqrt(u)
    phi = 2.0 * np.pi * (np.arange(n_angular) + 0.5) / n_angular
    rr = np.repeat(r, n_angular)
    ww = np.repeat(w_r / n_angular, n_angular)
    pp = np.tile(phi, n_radial)
    return rr * np.cos(pp), rr * np.sin(pp), ww


def mean_association(geom: TwoTierGeometry, n_radial: int = 64, n_angular: int = 16) -> float:
    """Association probability averaged over the micro-cell disk.

    Device positions are uniform over the disk of `geom.disk_radius_m`
    centered on the micro station's ground position; both tiers' powers
    are re-evaluated at every node. Deterministic for fixed inputs.
    """
    x, y, w = disk_quadrature(geom.disk_radius_m, n_radial, n_angular)
    x = x + geom.micro.position.x
    y = y + geom.micro.position.y
    return float(np.sum(w * association_at(geom, x, y)))
