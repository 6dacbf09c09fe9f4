"""Capacity per unit cost of quantum channels."""

from ._core import (
    DensityMatrix,
    DomainError,
    Family,
    GaussianChannel,
    KrausChannel,
    NumericalError,
    PreconditionError,
    ValidationError,
    amplitude_damping_channel,
    bloch_family,
    capacity_cost,
    capacity_per_unit_cost,
    channel_class,
    channel_from_json,
    completely_depolarizing_channel,
    cpuc_gaussian,
    cpuc_gaussian_numeric,
    family_from_json,
    fisher_informations,
    generalized_amplitude_damping_channel,
    holevo_chi,
    identity_channel,
    mixture_family,
    oracle_relative_entropy,
    pie_curve,
    relative_entropy,
    relent_vs_vacuum_output,
    vacuum_output_params,
    validate,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
