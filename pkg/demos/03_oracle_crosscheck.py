"""Three independent routes to the same growth rate.

The headline number of the package comes from a tridiagonal recurrence, but
nothing forces us to trust that route alone:

1. the recurrence itself (bisection on the unique negative eigenvalue),
2. the dense eigenvalue spectrum of the truncated Fourier generator,
3. an initial-value integration whose log-norm slope is fitted.

This script computes all three at one unstable point and prints the pairwise
deltas, then adds two more independent handles on the same object: the pole
of the continued-fraction transform and the asymptotic polynomial ratio.
"""

import math

from shear_spectrum import (
    FlowParams,
    Profile,
    integrate,
    jacobi_coefficients,
    ratio_asymptote,
    ratio_limit,
    solve_dispersion,
    stieltjes_pole,
    truncated_spectrum,
)


def main() -> None:
    params = FlowParams(k=0.5, inv_bu=0.0)

    point = solve_dispersion(params, tol=1e-12)
    rate_recur = point.growth_rate

    estimate = truncated_spectrum(Profile.cosine(), params, 256)
    rate_dense = params.k * estimate.dominant_imag

    run = integrate(params, N=64, dt=0.2, t_final=300.0, seed=2024)
    rate_evolve = run.fitted_rate

    print("growth rate by three routes:")
    print(f"  recurrence          {rate_recur:.12f}")
    print(f"  dense spectrum      {rate_dense:.12f}")
    print(f"  time evolution      {rate_evolve:.12f}")
    print(f"  |recurrence - dense|     {abs(rate_recur - rate_dense):.2e}")
    print(f"  |recurrence - evolution| {abs(rate_recur - rate_evolve):.2e}")

    coeffs = jacobi_coefficients(params, 600)
    pole = stieltjes_pole(coeffs, depth=512)
    r = point.r_trace.r_limit
    print("\ncontinued-fraction pole (should sit at -r):")
    print(f"  pole = {pole:.12f},  -r = {-r:.12f},  delta = {abs(pole + r):.2e}")

    rho = ratio_asymptote(coeffs, -2.0, 500)
    rho_limit = ratio_limit(-2.0)
    print("\npolynomial ratio at z = -2 after 500 steps:")
    print(f"  ratio = {rho:.9f},  constant-tail limit = {rho_limit:.9f}")
    print(f"  delta = {abs(rho - rho_limit):.2e}")
    print(f"\nimplied wave speed: c = +/- {math.sqrt(r):.9f}i")


if __name__ == "__main__":
    main()
