"""Necessary-condition checks that complement the spectral computation.

Two classical screens, both adapted to the rotating shallow-water setting:

* a profile can support an instability only if u'' - u/Bu vanishes somewhere
  (the rotating analogue of the inflection-point condition), and
* every unstable wave speed is confined to |c| <= max|u| when the profile is
  centered (the semicircle bound collapses to a disk about the origin).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.optimize import brentq

from .model import Profile

__all__ = ["ProfileDiagnostics", "modified_inflection", "howard_check"]


@dataclass(frozen=True)
class ProfileDiagnostics:
    """Inflection screen result plus the bound radius for one profile."""

    has_modified_inflection: bool
    inflection_points: np.ndarray
    howard_radius: float
    value_range: tuple[float, float]


def modified_inflection(
    profile: Profile, inv_bu: float, samples: int = 1024
) -> ProfileDiagnostics:
    """Locate zeros of g(y) = u''(y) - u(y)/Bu on one period.

    Sign changes of g on a uniform grid are refined by bisection to roughly
    machine precision; tangential zeros that never change sign can escape
    the grid scan, which is the usual limitation of this screen.

    Parameters
    ----------
    profile : Profile
    inv_bu : float
        Inverse Burger number (0 recovers the classical criterion).
    samples : int
        Grid resolution for the sign scan.
    """
    if samples < 8:
        raise ValueError("samples must be >= 8")
    if inv_bu < 0.0:
        raise ValueError("inv_bu must be nonnegative")

    def g(y):
        return profile.second_derivative(y) - inv_bu * profile.value(y)

    grid = np.linspace(0.0, 2.0 * np.pi, samples + 1)
    vals = np.asarray(g(grid))
    zeros: list[float] = []
    for i in range(samples):
        lo, hi = vals[i], vals[i + 1]
        if lo == 0.0:
            zeros.append(float(grid[i]))
        elif lo * hi < 0.0:
            zeros.append(float(brentq(g, grid[i], grid[i + 1], xtol=1e-14)))
    # drop the duplicate of a zero sitting exactly at the period seam
    uniq: list[float] = []
    for z in zeros:
        if not any(abs(z - u) < 1e-9 or abs(abs(z - u) - 2.0 * np.pi) < 1e-9
                   for u in uniq):
            uniq.append(z)
    points = np.array(sorted(uniq))
    return ProfileDiagnostics(
        has_modified_inflection=points.size > 0,
        inflection_points=points,
        howard_radius=profile.max_abs(),
        value_range=profile.value_range(),
    )


def howard_check(points: Iterable[complex], profile_radius: float) -> bool:
    """True when every nonreal wave speed satisfies |c| <= radius + 1e-10.

    ``points`` may mix real and complex values; real entries (marginal or
    neutral speeds) are not constrained by the bound and are skipped.
    """
    tol = 1e-10
    for c in points:
        c = complex(c)
        if c.imag != 0.0 and abs(c) > profile_radius + tol:
            return False
    return True
