"""Closed-form algebra of the gausson, the Gaussian-profile soliton.

The logarithmic Schrodinger equation

    i hbar dpsi/dt = -(hbar^2/2m) d^2psi/dx^2 - b ln(|psi|^2) psi

admits exact traveling solutions

    psi(x, t) = c * exp(a/B) * exp(-(B/4)(x - v t + d)^2) * exp(i(k x - w t))

whose envelope G(xi) = c e^{a/B} e^{-(B/4) xi^2} satisfies the profile
equation G'' + A G + B ln(G) G = 0 when a = B/2 - A. The coefficients are

    B = 4 m b / hbar^2
    A = (2m/hbar) w - k^2 + (2m/hbar^2) b ln(c^2)
    v = hbar k / m

All of that algebra lives here, together with the delta-generating density
family that exposes the large-mass (classical) limit and the normalized
plane wave with its shifted dispersion relation.
"""

from dataclasses import dataclass

import numpy as np

from .core import Grid1D, PhysicalParams, WaveField
from .errors import BoxTooSmallError, ConfigError, DomainError

TAIL_THRESHOLD = 1e-12


@dataclass(frozen=True)
class GaussonParams:
    """Parameter bundle of one soliton.

    c: real amplitude factor, k: carrier wavenumber, omega: angular
    frequency, v: group velocity, d: center offset (profile is centered at
    x = v t - d), A/B/a: profile coefficients, alpha: 2b/hbar^2, the decay
    constant of the delta-generating density family.
    """

    c: float
    k: float
    omega: float
    v: float
    d: float
    A: float
    B: float
    a: float
    alpha: float

    @property
    def peak_density(self) -> float:
        """Density at the profile center, c^2 e^{2a/B}."""
        return self.c**2 * np.exp(2 * self.a / self.B)

    def center(self, t: float) -> float:
        return self.v * t - self.d


def coefficients_from_physics(
    params: PhysicalParams,
    k: float,
    omega: float,
    c: float = 1.0,
    d: float = 0.0,
) -> GaussonParams:
    """Soliton coefficients for a given (k, omega, c) triple.

    The linear limit b = 0 has no gausson (B would vanish and the profile
    equation degenerates), so it is rejected.
    """
    if not (c > 0):
        raise DomainError(f"amplitude c must be positive, got {c}")
    if params.b == 0.0:
        raise DomainError("no gausson exists at b = 0 (linear equation)")
    hbar, m, b = params.hbar, params.mass, params.b
    B = 4 * m * b / hbar**2
    A = (2 * m / hbar) * omega - k**2 + (2 * m / hbar**2) * b * np.log(c**2)
    a = B / 2 - A
    v = hbar * k / m
    alpha = 2 * b / hbar**2
    return GaussonParams(c=c, k=k, omega=omega, v=v, d=d, A=A, B=B, a=a, alpha=alpha)


def solve_omega_for_normalization(
    params: PhysicalParams,
    k: float,
    c: float = 1.0,
    d: float = 0.0,
) -> GaussonParams:
    """Pick omega so the gausson has unit norm.

    Unit norm forces the peak density c^2 e^{2a/B} to equal sqrt(B/2pi)
    (Gaussian integral), i.e. a = (B/4) ln(B/(2 pi c^4)); omega then follows
    by inverting the definition of A with A = B/2 - a.
    """
    if not (c > 0):
        raise DomainError(f"amplitude c must be positive, got {c}")
    if params.b == 0.0:
        raise DomainError("no gausson exists at b = 0 (linear equation)")
    hbar, m, b = params.hbar, params.mass, params.b
    B = 4 * m * b / hbar**2
    a = (B / 4) * np.log(B / (2 * np.pi * c**4))
    A = B / 2 - a
    omega = (hbar / (2 * m)) * (A + k**2 - (2 * m / hbar**2) * b * np.log(c**2))
    return GaussonParams(
        c=c, k=k, omega=float(omega), v=hbar * k / m, d=d, A=float(A), B=B, a=float(a),
        alpha=2 * b / hbar**2,
    )


def sample_gausson(gp: GaussonParams, grid: Grid1D, t: float = 0.0) -> WaveField:
    """Evaluate the soliton on the grid at time t.

    The box must be wide enough that the tail density at both boundaries is
    below 1e-12 of the peak; otherwise the periodic wrap would contaminate
    every spectral operation downstream.
    """
    xi = grid.x - gp.v * t + gp.d
    envelope = gp.c * np.exp(gp.a / gp.B) * np.exp(-(gp.B / 4) * xi**2)
    peak = gp.peak_density
    tail = max(envelope[0] ** 2, envelope[-1] ** 2)
    if tail > TAIL_THRESHOLD * peak:
        raise BoxTooSmallError(
            f"gausson tail density at the boundary is {tail / peak:.2e} of peak "
            f"(limit {TAIL_THRESHOLD:g}); widen the box"
        )
    phase = np.exp(1j * (gp.k * grid.x - gp.omega * t))
    return WaveField(grid=grid, values=envelope * phase, time=t)


def delta_m_density(m: float, alpha: float, xi):
    """Delta-generating density sqrt(m alpha / pi) exp(-alpha m xi^2).

    For every m this integrates to 1 over the line; as m grows the family
    narrows toward the Dirac delta, which is the classical point-particle
    limit of the soliton density.
    """
    if not (m > 0 and alpha > 0):
        raise DomainError("delta_m_density needs m > 0 and alpha > 0")
    xi = np.asarray(xi, dtype=float)
    return np.sqrt(m * alpha / np.pi) * np.exp(-alpha * m * xi**2)


def plane_wave(grid: Grid1D, k: float, params: PhysicalParams) -> tuple[WaveField, float]:
    """Normalized plane wave and the frequency it must rotate at.

    psi = (2 pi)^{-1/2} e^{ikx}. With that amplitude, -b ln|psi|^2 is the
    constant +b ln(2 pi), so the dispersion relation gains a b-dependent
    offset:

        hbar omega = hbar^2 k^2 / (2 m) + b ln(2 pi).

    k must sit on the grid's wavenumber ladder so the state occupies a
    single spectral bin.
    """
    dk = 2 * np.pi / grid.length
    ratio = k / dk
    if abs(ratio - round(ratio)) > 1e-9:
        raise ConfigError(
            f"k = {k} is not on the wavenumber ladder (spacing {dk:.6g})"
        )
    if abs(k) > np.pi / grid.dx:
        raise ConfigError(f"k = {k} exceeds the grid Nyquist limit")
    values = (2 * np.pi) ** -0.5 * np.exp(1j * k * grid.x)
    omega = (params.hbar * k**2 / (2 * params.mass)
             + params.b * np.log(2 * np.pi) / params.hbar)
    return WaveField(grid=grid, values=values, time=0.0), float(omega)
