"""Holding-torque, tension-loss and chain-geometry models for tendon-driven jamming strings."""

from .errors import (
    CalibrationError,
    ConfigError,
    DegenerateFitError,
    DomainError,
    GridTooLargeError,
    IngestionError,
    NoHalvingError,
)
from .tension import AttenuationModel, ChainConfig, Mechanism, TorqueProfile
from .torque_models import BeadParams, CombParams, Material, RadialParams, holding_torque

__version__ = "0.1.0"
