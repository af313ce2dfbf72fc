"""Simulation library for the logarithmic nonlinear Schrodinger equation.

The equation i hbar psi_t = -(hbar^2/2m) psi_xx + V psi - b ln(|psi|^2) psi
admits Gaussian-profile solitons (gaussons), an exact hydrodynamic
(Madelung) reformulation, and a plane-wave dispersion law shifted by
b ln(2 pi). This package provides the closed-form soliton algebra, the
hydrodynamic decomposition with residual checks, split-step and
Crank-Nicolson integrators, a set of deterministic verification scenarios,
and a CLI that writes CSV results.
"""

from ._version import __version__
from .config import (
    RunConfig,
    SCENARIO_NAMES,
    parse_config,
    render_config,
    sample_potential,
)
from .core import (
    Grid1D,
    PhysicalParams,
    WaveField,
    clamped_log_density,
    dft_forward,
    dft_inverse,
    energy,
    make_grid,
    moments,
    spectral_derivative,
    total_norm,
)
from .errors import (
    BlowupError,
    BoxTooSmallError,
    ConfigError,
    DomainError,
    IterationError,
    LognlsError,
)
from .evolve import EvolveConfig, crank_nicolson, evolve, pde_residual, split_step
from .gausson import (
    GaussonParams,
    coefficients_from_physics,
    delta_m_density,
    plane_wave,
    sample_gausson,
    solve_omega_for_normalization,
)
from .hydro import (
    HydroFields,
    bohm_potential,
    continuity_residual,
    decompose,
    enthalpy_gradient_mismatch,
    enthalpy_term,
    euler_residual,
    pressure,
)
from .output import format_number, write_outputs
from .scenarios import (
    ScenarioReport,
    Verdict,
    fit_loglog_slope,
    fringe_metrics,
    run_scenario,
    scenario_free_gausson,
    scenario_knife_edge,
    scenario_mass_sweep,
    scenario_plane_wave,
    scenario_superposition,
)

__all__ = [
    "__version__",
    "BlowupError",
    "BoxTooSmallError",
    "ConfigError",
    "DomainError",
    "EvolveConfig",
    "GaussonParams",
    "Grid1D",
    "HydroFields",
    "IterationError",
    "LognlsError",
    "PhysicalParams",
    "RunConfig",
    "SCENARIO_NAMES",
    "ScenarioReport",
    "Verdict",
    "WaveField",
    "bohm_potential",
    "clamped_log_density",
    "coefficients_from_physics",
    "continuity_residual",
    "crank_nicolson",
    "decompose",
    "delta_m_density",
    "dft_forward",
    "dft_inverse",
    "energy",
    "enthalpy_gradient_mismatch",
    "enthalpy_term",
    "euler_residual",
    "evolve",
    "fit_loglog_slope",
    "fringe_metrics",
    "format_number",
    "make_grid",
    "moments",
    "parse_config",
    "pde_residual",
    "plane_wave",
    "pressure",
    "render_config",
    "run_scenario",
    "sample_gausson",
    "sample_potential",
    "scenario_free_gausson",
    "scenario_knife_edge",
    "scenario_mass_sweep",
    "scenario_plane_wave",
    "scenario_superposition",
    "solve_omega_for_normalization",
    "spectral_derivative",
    "split_step",
    "total_norm",
    "write_outputs",
]
