"""Received-power models for the two downlink variants.

Two link types are implemented:

* direct link: transmit power attenuated by a free-space-style law with a
  tunable attenuation exponent,
* cascaded link: base station -> reflecting panel -> device, the far-field
  specular product model of a passive scattering array.

The low-level ``*_link_power`` functions broadcast over numpy arrays of
distances so that sweep and averaging code can evaluate whole position
grids in one call; the node-level operations wrap them for scalar use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GeometryError
from .radio import Carrier, Point3, distance3

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class TxNode:
    """A transmitting station (macro or micro tier)."""

    position: Point3
    transmit_power_w: float
    gain_linear: float
    pathloss_exponent: float

    def __post_init__(self):
        if not (math.isfinite(self.transmit_power_w) and self.transmit_power_w > 0):
            raise DomainError(f"TxNode.transmit_power_w must be > 0, got {self.transmit_power_w!r}")
        if not (math.isfinite(self.gain_linear) and self.gain_linear > 0):
            raise DomainError(f"TxNode.gain_linear must be > 0, got {self.gain_linear!r}")
        if not (math.isfinite(self.pathloss_exponent) and self.pathloss_exponent >= 1):
            raise DomainError(
                f"TxNode.pathloss_exponent must be >= 1, got {self.pathloss_exponent!r}"
            )


@dataclass(frozen=True)
class RxDevice:
    """A receiving device: position plus receive antenna gain."""

    position: Point3
    gain_linear: float

    def __post_init__(self):
        if not (math.isfinite(self.gain_linear) and self.gain_linear > 0):
            raise DomainError(f"RxDevice.gain_linear must be > 0, got {self.gain_linear!r}")


@dataclass(frozen=True)
class IrsPanel:
    """A passive reflecting panel: element grid, element size, reflection.

    Angles are measured from the panel normal; both must stay below 90 deg
    so the incidence/departure cosines are strictly positive (a panel
    cannot be illuminated from behind).
    """

    position: Point3
    m_elements: int
    n_elements: int
    element_len_m: float
    element_wid_m: float
    reflection_coeff: float
    theta_t_rad: float
    theta_r_rad: float

    def __post_init__(self):
        if not (isinstance(self.m_elements, int) and self.m_elements >= 1):
            raise DomainError(f"IrsPanel.m_elements must be an integer >= 1, got {self.m_elements!r}")
        if not (isinstance(self.n_elements, int) and self.n_elements >= 1):
            raise DomainError(f"IrsPanel.n_elements must be an integer >= 1, got {self.n_elements!r}")
        if not (math.isfinite(self.element_len_m) and self.element_len_m > 0):
            raise DomainError(f"IrsPanel.element_len_m must be > 0, got {self.element_len_m!r}")
        if not (math.isfinite(self.element_wid_m) and self.element_wid_m > 0):
            raise DomainError(f"IrsPanel.element_wid_m must be > 0, got {self.element_wid_m!r}")
        if not (0.0 < self.reflection_coeff <= 1.0):
            raise DomainError(
                f"IrsPanel.reflection_coeff must be in (0, 1], got {self.reflection_coeff!r}"
            )
        for name in ("theta_t_rad", "theta_r_rad"):
            v = getattr(self, name)
            if not (0.0 <= v < math.pi / 2.0):
                raise DomainError(f"IrsPanel.{name} must be in [0, pi/2), got {v!r}")


def direct_link_power(transmit_power_w, wavelength_m, distance_m, pathloss_exponent,
                      gain_product=1.0):
    """Direct-link received power; broadcasts over `distance_m`.

    The gain product defaults to 1 because the baseline direct-link model
    carries no antenna gains; pass tx*rx gains explicitly to apply them.
    """
    return (
        transmit_power_w
        * gain_product
        * wavelength_m**2
        / (16.0 * np.pi**2 * distance_m**pathloss_exponent)
    )


def cascade_link_power(transmit_power_w, wavelength_m, d1_m, d2_m, m_elements,
                       n_elements, element_len_m, element_wid_m, reflection_coeff,
                       gain_tx, gain_rx, theta_t_rad, theta_r_rad):
    """Cascaded-link received power via a reflecting panel; broadcasts over `d2_m`."""
    scatter = element_len_m * element_wid_m * FOUR_PI / wavelength_m**2
    numerator = (
        element_len_m * element_wid_m
        * float(m_elements) ** 2 * float(n_elements) ** 2
        * wavelength_m**2
        * reflection_coeff**2
        * scatter * gain_tx * gain_rx
        * math.cos(theta_t_rad) * math.cos(theta_r_rad)
    )
    return numerator / ((d1_m * d2_m) ** 2 * 64.0 * np.pi**3) * transmit_power_w


def conventional_rx_power(tx: TxNode, rx: RxDevice, carrier: Carrier,
                          apply_gains: bool = False) -> float:
    """Received power over the direct station-to-device link, in watts.

    `apply_gains` multiplies in tx and rx antenna gains; the default model
    carries none. Extreme ranges may underflow to 0.0; no floor is applied.
    """
    r = distance3(tx.position, rx.position)
    if r <= 0.0:
        raise GeometryError("transmitter and receiver are coincident (distance 0)")
    gains = tx.gain_linear * rx.gain_linear if apply_gains else 1.0
    return float(direct_link_power(tx.transmit_power_w, carrier.wavelength_m, r,
                                   tx.pathloss_exponent, gains))


def scattering_gain(panel: IrsPanel, carrier: Carrier) -> float:
    """Aperture gain of a single panel element: area * 4 pi / wavelength^2."""
    return panel.element_len_m * panel.element_wid_m * FOUR_PI / carrier.wavelength_m**2


def irs_rx_power(tx: TxNode, panel: IrsPanel, rx: RxDevice, carrier: Carrier) -> float:
    """Received power over the cascaded station -> panel -> device link, in watts."""
    d1 = distance3(tx.position, panel.position)
    d2 = distance3(panel.position, rx.position)
    if d1 <= 0.0:
        raise GeometryError("transmitter and panel are coincident (distance 0)")
    if d2 <= 0.0:
        raise GeometryError("panel and receiver are coincident (distance 0)")
    return float(cascade_link_power(
        tx.transmit_power_w, carrier.wavelength_m, d1, d2,
        panel.m_elements, panel.n_elements,
        panel.element_len_m, panel.element_wid_m, panel.reflection_coeff,
        tx.gain_linear, rx.gain_linear, panel.theta_t_rad, panel.theta_r_rad,
    ))


def half_wavelength_panel(position: Point3, carrier: Carrier, m_elements: int,
                          n_elements: int, reflection_coeff: float,
                          theta_t_rad: float, theta_r_rad: float) -> IrsPanel:
    """Panel whose element length and width default to half the carrier wavelength."""
    half = carrier.wavelength_m / 2.0
    return IrsPanel(position, m_elements, n_elements, half, half,
                    reflection_coeff, theta_t_rad, theta_r_rad)
