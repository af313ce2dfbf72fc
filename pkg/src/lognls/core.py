"""Grids, fields, physical parameters and the observables built on them.

Everything downstream (soliton algebra, hydrodynamics, integrators,
scenarios) works in terms of the three types defined here. The grid is
uniform and periodic, so spectral differentiation and the kinetic
propagator are exact for band-limited fields.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError

LOG_CLAMP_DEFAULT = 1e-30


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Uniform periodic grid on [x_min, x_max) with n_points samples."""

    x_min: float
    x_max: float
    n_points: int
    dx: float
    x: np.ndarray = field(repr=False)
    k: np.ndarray = field(repr=False)

    @property
    def length(self) -> float:
        return self.x_max - self.x_min


@dataclass(eq=False)
class PhysicalParams:
    """Physical configuration: hbar, mass, nonlinearity strength b.

    b multiplies the logarithmic term -b*ln(|psi|^2)*psi; b = 0 recovers
    the linear equation. The optional potential is sampled on the grid,
    one value per point.
    """

    hbar: float = 1.0
    mass: float = 1.0
    b: float = 0.5
    potential: np.ndarray | None = None

    def __post_init__(self):
        if not (self.hbar > 0):
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        if not (self.mass > 0):
            raise DomainError(f"mass must be positive, got {self.mass}")
        if not (self.b >= 0):
            raise DomainError(f"b must be non-negative, got {self.b}")
        if self.potential is not None:
            self.potential = np.asarray(self.potential, dtype=float)
            if not np.all(np.isfinite(self.potential)):
                raise DomainError("potential samples must all be finite")

    def potential_on(self, grid: Grid1D) -> np.ndarray:
        """Potential sampled on grid, zeros when absent."""
        if self.potential is None:
            return np.zeros(grid.n_points)
        if self.potential.shape != (grid.n_points,):
            raise DomainError(
                f"potential has {self.potential.shape[0]} samples, "
                f"grid has {grid.n_points} points"
            )
        return self.potential


@dataclass(eq=False)
class WaveField:
    """Complex wavefunction samples on a grid at a given time."""

    grid: Grid1D
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n_points,):
            raise DomainError(
                f"field has {self.values.shape[0]} values, "
                f"grid has {self.grid.n_points} points"
            )


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def make_grid(x_min: float, x_max: float, n_points: int) -> Grid1D:
    """Build a uniform periodic grid.

    n_points must be a power of two >= 16 so the FFT-based operators stay
    fast and exactly invertible. Sample points are x_j = x_min + j*dx; the
    right endpoint is excluded (periodic wrap).
    """
    if not (x_max > x_min):
        raise ConfigError(f"x_max ({x_max}) must exceed x_min ({x_min})")
    if not (_is_power_of_two(n_points) and n_points >= 16):
        raise ConfigError(
            f"n_points must be a power of two >= 16, got {n_points}"
        )
    dx = (x_max - x_min) / n_points
    x = x_min + dx * np.arange(n_points)
    k = 2 * np.pi * np.fft.fftfreq(n_points, d=dx)
    x.setflags(write=False)
    k.setflags(write=False)
    return Grid1D(x_min=x_min, x_max=x_max, n_points=n_points, dx=dx, x=x, k=k)


def dft_forward(f: WaveField) -> np.ndarray:
    """Forward DFT of the field values (numpy convention, unscaled)."""
    return np.fft.fft(f.values)


def dft_inverse(spectrum: np.ndarray, grid: Grid1D, time: float = 0.0) -> WaveField:
    """Inverse DFT back to a WaveField on the given grid."""
    spectrum = np.asarray(spectrum, dtype=complex)
    if spectrum.shape != (grid.n_points,):
        raise DomainError("spectrum length does not match the grid")
    return WaveField(grid=grid, values=np.fft.ifft(spectrum), time=time)


def spectral_derivative(values: np.ndarray, grid: Grid1D, order: int = 1) -> np.ndarray:
    """d^order/dx^order via the FFT; exact for fields resolved on the grid."""
    spec = np.fft.fft(values)
    return np.fft.ifft((1j * grid.k) ** order * spec)


def clamped_log_density(values: np.ndarray, log_clamp: float = LOG_CLAMP_DEFAULT) -> np.ndarray:
    """ln|psi|^2 with the density floored at log_clamp times its peak.

    The floor only caps a physically irrelevant phase rotation where the
    density is negligible; above the floor the logarithm is untouched.
    """
    n = np.abs(values) ** 2
    with np.errstate(divide="ignore"):
        return np.log(np.maximum(n, log_clamp * n.max(initial=0.0)))


def total_norm(f: WaveField) -> float:
    """Integral of |psi|^2 over the box (rectangle rule, spectrally accurate)."""
    return float(np.sum(np.abs(f.values) ** 2) * f.grid.dx)


def energy(f: WaveField, params: PhysicalParams, log_clamp: float = LOG_CLAMP_DEFAULT) -> float:
    """Conserved energy functional of the logarithmic Schrodinger equation.

    E = integral of hbar^2/(2m) |dpsi/dx|^2 + V |psi|^2 - b |psi|^2 (ln|psi|^2 - 1).

    Its functional derivative with respect to psi* reproduces the right-hand
    side of the evolution equation, so both integrators conserve it up to
    their own discretization error. The logarithm uses the same clamp as the
    evolution module, keeping E finite for fields with empty regions.
    """
    dpsi = spectral_derivative(f.values, f.grid)
    n = np.abs(f.values) ** 2
    kin = (params.hbar**2 / (2 * params.mass)) * np.abs(dpsi) ** 2
    pot = params.potential_on(f.grid) * n
    if params.b != 0.0:
        # n ln(n) -> 0 as n -> 0, so empty points contribute nothing
        log_n = clamped_log_density(f.values, log_clamp)
        with np.errstate(invalid="ignore"):
            nl = np.where(n > 0, -params.b * n * (log_n - 1.0), 0.0)
    else:
        nl = 0.0
    return float(np.sum(kin + pot + nl) * f.grid.dx)


def moments(f: WaveField) -> tuple[float, float]:
    """Mean position and variance of the density |psi|^2.

    Raises DomainError on a zero-norm field.
    """
    n = np.abs(f.values) ** 2
    norm = np.sum(n) * f.grid.dx
    if norm <= 0.0:
        raise DomainError("moments of a zero-norm field are undefined")
    mean = float(np.sum(f.grid.x * n) * f.grid.dx / norm)
    var = float(np.sum((f.grid.x - mean) ** 2 * n) * f.grid.dx / norm)
    return mean, var
