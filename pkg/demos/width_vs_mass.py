"""How the soliton narrows as the particle gets heavier.

The stationary profile has density standard deviation
sigma = hbar / (2 sqrt(b m)), so doubling the mass shrinks the width by
sqrt(2). On a log-log plot that is a straight line of slope -1/2, and in
the m -> infinity limit the density approaches a point concentration:
classical mechanics recovered from the wave equation.
"""

import numpy as np

from lognls import (
    PhysicalParams,
    delta_m_density,
    fit_loglog_slope,
    make_grid,
    moments,
    sample_gausson,
    solve_omega_for_normalization,
)


def main():
    hbar, b = 1.0, 0.5
    grid = make_grid(-20.0, 20.0, 1024)
    masses = [2.0**i for i in range(8)]

    print(f"{'mass':>8} {'sigma measured':>16} {'sigma analytic':>16} {'peak density':>14}")
    sigmas = []
    for m in masses:
        params = PhysicalParams(hbar=hbar, mass=m, b=b)
        gp = solve_omega_for_normalization(params, k=0.0)
        psi = sample_gausson(gp, grid)
        _, var = moments(psi)
        sigma = np.sqrt(var)
        sigmas.append(sigma)
        analytic = hbar / (2 * np.sqrt(b * m))
        peak = np.max(np.abs(psi.values) ** 2)
        print(f"{m:8.1f} {sigma:16.10f} {analytic:16.10f} {peak:14.6f}")

    slope, intercept, r2 = fit_loglog_slope(masses, sigmas)
    print(f"\nlog-log fit: slope = {slope:.6f} (expect -0.5), "
          f"intercept = {intercept:.6f} (expect {np.log(hbar / (2 * np.sqrt(b))):.6f}), "
          f"r^2 = {r2:.12f}")

    # the same limit via the delta-generating family: unit mass under the
    # curve at every m, all of it piling up at the origin
    print(f"\n{'mass':>8} {'density at 0':>14} {'density at 0.5':>15} {'integral':>10}")
    for m in (1.0, 10.0, 100.0):
        dens = delta_m_density(m, 1.0, grid.x)
        total = np.sum(dens) * grid.dx
        print(f"{m:8.1f} {delta_m_density(m, 1.0, 0.0):14.6f} "
              f"{delta_m_density(m, 1.0, 0.5):15.3e} {total:10.6f}")


if __name__ == "__main__":
    main()
