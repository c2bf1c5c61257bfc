"""Two-tier mmWave link-budget, user-association and capacity simulator.

Deterministic received-power models for direct and reflecting-panel
assisted downlinks, closed-form two-tier user association with disk
averaging, affine cell capacity, parameter sweeps with CSV emission, and
a seeded Monte Carlo stochastic-geometry oracle that cross-checks the
association formula.
"""

from .association import (
    LOAD_FACTOR,
    AssociationInputs,
    CapacityResult,
    TierDensities,
    TwoTierGeometry,
    association_probability,
    cell_capacity,
    mean_association,
)
from .errors import ConfigError, DomainError, GeometryError, IrscapError
from .linkbudget import (
    IrsPanel,
    RxDevice,
    TxNode,
    conventional_rx_power,
    half_wavelength_panel,
    irs_rx_power,
    scattering_gain,
)
from .oracle import OracleConfig, OracleResult, simulate_association
from .radio import (
    SPEED_OF_LIGHT,
    Carrier,
    Decibel,
    Point3,
    db_to_linear,
    distance3,
    watts_to_dbm,
    wavelength,
)
from .scenario import Scenario, SweepSpec, load_scenario
from .sweep import SweepRow, read_csv, run_association_sweep, run_capacity_sweep, write_csv

__version__ = "0.1.0"

__all__ = [
    "AssociationInputs",
    "CapacityResult",
    "Carrier",
    "ConfigError",
    "Decibel",
    "DomainError",
    "GeometryError",
    "IrsPanel",
    "IrscapError",
    "LOAD_FACTOR",
    "OracleConfig",
    "OracleResult",
    "Point3",
    "RxDevice",
    "SPEED_OF_LIGHT",
    "Scenario",
    "SweepRow",
    "SweepSpec",
    "TierDensities",
    "TwoTierGeometry",
    "TxNode",
    "association_probability",
    "cell_capacity",
    "conventional_rx_power",
    "db_to_linear",
    "distance3",
    "half_wavelength_panel",
    "irs_rx_power",
    "load_scenario",
    "mean_association",
    "read_csv",
    "run_association_sweep",
    "run_capacity_sweep",
    "scattering_gain",
    "simulate_association",
    "watts_to_dbm",
    "wavelength",
    "write_csv",
]
