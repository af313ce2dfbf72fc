"""Hydrodynamic (Madelung) picture of the wavefunction.

Writing psi = sqrt(n) e^{iS/hbar} turns the logarithmic Schrodinger
equation into fluid equations for the density n and velocity v = S_x/m:

    continuity   dn/dt + d(n v)/dx = 0
    Euler        m (dv/dt + v dv/dx) + d(V + V_q)/dx + dF/dx = 0

with the Bohm quantum potential V_q = -(hbar^2/2m) (sqrt(n))''/sqrt(n) and
the enthalpy F = -b ln(n) generated by the pressure p = -b n through
dF/dx = (1/n) dp/dx. This module computes the decomposition and measures
both equations as residuals on pairs of snapshots, which is how the
equivalence of the two pictures is verified numerically.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    Grid1D,
    PhysicalParams,
    WaveField,
    clamped_log_density,
    spectral_derivative,
)
from .errors import DomainError

DENSITY_FLOOR_DEFAULT = 1e-8
_TINY = 1e-300  # guards 0/0 at masked points; results there are discarded


@dataclass(eq=False)
class HydroFields:
    """Madelung decomposition outputs on one grid.

    mask is False where the density is below the floor; every residual and
    identity in this module is evaluated on unmasked points only.
    """

    n: np.ndarray
    S: np.ndarray
    v: np.ndarray
    V_q: np.ndarray
    mask: np.ndarray


def _check_floor(density_floor: float):
    if not (0.0 < density_floor <= 1e-3):
        raise DomainError(
            f"density_floor must lie in (0, 1e-3], got {density_floor}"
        )


def _density_mask(n: np.ndarray, density_floor: float) -> np.ndarray:
    return n >= density_floor * n.max(initial=0.0)


def _probability_current(f: WaveField, params: PhysicalParams) -> np.ndarray:
    """J = (hbar/m) Im(psi* dpsi/dx); globally smooth, so spectrally safe."""
    dpsi = spectral_derivative(f.values, f.grid)
    return (params.hbar / params.mass) * np.imag(np.conj(f.values) * dpsi)


def decompose(
    f: WaveField, params: PhysicalParams, density_floor: float = DENSITY_FLOOR_DEFAULT
) -> HydroFields:
    """Split a field into density, action, velocity and quantum potential.

    The action S = hbar * arg(psi) is unwrapped left to right; across
    masked runs (density below floor) the phase is frozen at its last
    unmasked value, since arg(psi) carries no information there. The
    velocity is computed as J/n, which equals S_x/m wherever the density is
    meaningful but avoids differentiating the non-periodic unwrapped phase.
    """
    _check_floor(density_floor)
    n = np.abs(f.values) ** 2
    if n.max(initial=0.0) == 0.0:
        raise DomainError("cannot decompose an identically zero field")
    mask = _density_mask(n, density_floor)

    phase = np.angle(f.values)
    # freeze the phase over masked runs: forward-fill from unmasked points
    idx = np.where(mask, np.arange(n.size), -1)
    filled = np.maximum.accumulate(idx)
    first = np.argmax(mask)
    filled[filled < 0] = first
    S = params.hbar * np.unwrap(phase[filled])

    J = _probability_current(f, params)
    v = np.where(mask, J / np.maximum(n, _TINY), 0.0)
    V_q = bohm_potential(n, f.grid, params, mask)
    return HydroFields(n=n, S=S, v=v, V_q=V_q, mask=mask)


def bohm_potential(
    n: np.ndarray,
    grid: Grid1D,
    params: PhysicalParams,
    mask: np.ndarray | None = None,
) -> np.ndarray:
    """Quantum potential V_q = -(hbar^2/2m) (sqrt n)'' / sqrt(n).

    Masked points (and any zero-density points) are set to 0; callers that
    care about tails must pass the mask they evaluate residuals on.
    """
    n = np.asarray(n, dtype=float)
    if np.any(n < 0):
        raise DomainError("density must be non-negative")
    sqrt_n = np.sqrt(n)
    lap = spectral_derivative(sqrt_n, grid, order=2).real
    if mask is None:
        mask = n > 0
    out = np.zeros_like(n)
    hbar, m = params.hbar, params.mass
    out[mask] = -(hbar**2 / (2 * m)) * lap[mask] / sqrt_n[mask]
    return out


def pressure(n: np.ndarray, b: float) -> np.ndarray:
    """Pressure closure p = -b n that generates the logarithmic term."""
    return -b * np.asarray(n, dtype=float)


def enthalpy_term(
    f: WaveField, b: float, density_floor: float = DENSITY_FLOOR_DEFAULT
) -> np.ndarray:
    """Specific enthalpy F = -b ln|psi|^2 (clamped logarithm).

    F is the potential-like field whose gradient equals (1/n) dp/dx with
    p = -b n; enthalpy_gradient_mismatch quantifies how well the two
    discrete routes agree on unmasked points.
    """
    _check_floor(density_floor)
    return -b * clamped_log_density(f.values)


def enthalpy_gradient_mismatch(
    f: WaveField, b: float, density_floor: float = DENSITY_FLOOR_DEFAULT
) -> float:
    """Normalized max-norm of dF/dx - (1/n) dp/dx on unmasked points.

    Both sides are evaluated with the spectral derivative. The mismatch is
    zero in exact arithmetic; discretely it measures round-off
    amplification near the density floor.
    """
    _check_floor(density_floor)
    n = np.abs(f.values) ** 2
    if n.max(initial=0.0) == 0.0:
        raise DomainError("enthalpy gradient of a zero field is undefined")
    mask = _density_mask(n, density_floor)
    dn = spectral_derivative(n, f.grid).real
    grad_F = -b * dn / np.maximum(n, _TINY)
    grad_p = spectral_derivative(pressure(n, b), f.grid).real
    diff = np.abs(grad_F - grad_p / np.maximum(n, _TINY))[mask].max(initial=0.0)
    scale = np.abs(grad_F)[mask].max(initial=0.0)
    if scale == 0.0:
        return float(diff)
    return float(diff / scale)


def _euler_pieces(f: WaveField, params: PhysicalParams):
    """Velocity, its gradient, and the force terms, all spectrally."""
    grid = f.grid
    n = np.abs(f.values) ** 2
    sqrt_n = np.sqrt(n)
    d_sqrt = spectral_derivative(sqrt_n, grid).real
    lap_sqrt = spectral_derivative(sqrt_n, grid, order=2).real
    d_lap = spectral_derivative(lap_sqrt, grid).real
    dn = spectral_derivative(n, grid).real
    J = _probability_current(f, params)
    dJ = spectral_derivative(J, grid).real

    safe_n = np.maximum(n, _TINY)
    v = J / safe_n
    dv = (dJ * n - J * dn) / np.maximum(safe_n**2, _TINY)
    # d(V_q)/dx as a ratio of smooth spectral derivatives:
    # V_q = -(hbar^2/2m) lap_sqrt / sqrt_n, so
    # dV_q/dx = -(hbar^2/2m) (d_lap * sqrt_n - lap_sqrt * d_sqrt) / n
    hbar, m = params.hbar, params.mass
    dV_q = -(hbar**2 / (2 * m)) * (d_lap * sqrt_n - lap_sqrt * d_sqrt) / safe_n
    dV = spectral_derivative(params.potential_on(grid), grid).real
    dF = -params.b * dn / safe_n
    return n, v, dv, dV + dV_q, dF


def _adjacent_pair(f_a: WaveField, f_b: WaveField):
    if f_a.grid is not f_b.grid and (
        f_a.grid.n_points != f_b.grid.n_points
        or f_a.grid.x_min != f_b.grid.x_min
        or f_a.grid.x_max != f_b.grid.x_max
    ):
        raise DomainError("residuals need both fields on the same grid")
    dt = f_b.time - f_a.time
    if dt == 0.0:
        raise DomainError("residuals need two distinct times (dt = 0)")
    return dt


def continuity_residual(
    f_a: WaveField,
    f_b: WaveField,
    params: PhysicalParams,
    density_floor: float = DENSITY_FLOOR_DEFAULT,
) -> float:
    """Max-norm residual of dn/dt + d(n v)/dx between two snapshots.

    Time derivative by central difference at the midpoint, flux divergence
    as the spectral derivative of the probability current averaged over the
    pair. Normalized by max(|d(nv)/dx|, peak density): the absolute floor
    keeps the ratio meaningful for states with stationary density, whose
    flux divergence is pure round-off.
    """
    _check_floor(density_floor)
    dt = _adjacent_pair(f_a, f_b)
    n_a = np.abs(f_a.values) ** 2
    n_b = np.abs(f_b.values) ** 2
    mask = _density_mask(n_a, density_floor) & _density_mask(n_b, density_floor)
    if not mask.any():
        raise DomainError("no points above the density floor")
    dn_dt = (n_b - n_a) / dt
    dJ = 0.5 * (
        spectral_derivative(_probability_current(f_a, params), f_a.grid).real
        + spectral_derivative(_probability_current(f_b, params), f_b.grid).real
    )
    num = np.abs(dn_dt + dJ)[mask].max()
    den = max(np.abs(dJ)[mask].max(), n_a.max(), n_b.max())
    return float(num / den)


def euler_residual(
    f_a: WaveField,
    f_b: WaveField,
    params: PhysicalParams,
    density_floor: float = DENSITY_FLOOR_DEFAULT,
) -> float:
    """Max-norm residual of the Euler equation between two snapshots.

    Measures m (dv/dt + v dv/dx) + d(V + V_q)/dx + dF/dx at the pair
    midpoint, normalized by the largest constituent term with the peak
    density as an absolute floor (force-free states would otherwise divide
    round-off by round-off).
    """
    _check_floor(density_floor)
    dt = _adjacent_pair(f_a, f_b)
    n_a, v_a, dv_a, dU_a, dF_a = _euler_pieces(f_a, params)
    n_b, v_b, dv_b, dU_b, dF_b = _euler_pieces(f_b, params)
    mask = _density_mask(n_a, density_floor) & _density_mask(n_b, density_floor)
    if not mask.any():
        raise DomainError("no points above the density floor")

    m = params.mass
    accel = m * (v_b - v_a) / dt
    advect = m * 0.5 * (v_a + v_b) * 0.5 * (dv_a + dv_b)
    force = 0.5 * (dU_a + dU_b)
    enthalpy = 0.5 * (dF_a + dF_b)
    resid = np.abs(accel + advect + force + enthalpy)[mask].max()
    scale = max(
        np.abs(accel)[mask].max(),
        np.abs(advect)[mask].max(),
        np.abs(force)[mask].max(),
        np.abs(enthalpy)[mask].max(),
        n_a.max(),
        n_b.max(),
    )
    return float(resid / scale)
