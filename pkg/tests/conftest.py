"""Shared fixtures and independent oracles for the test suite.

Oracles here deliberately avoid the package's own evaluation paths:
complete integrals come from adaptive quadrature of the defining integral,
theta references from mpmath, and real-modulus Jacobi references from
scipy.special.ellipj.
"""

import numpy as np
import pytest
from scipy.integrate import quad

K_VALUES = (0.3, 0.6, 0.9)


def quadrature_K(k: float) -> float:
    """K(k) by adaptive quadrature of the defining integral (real k < 1)."""
    val, err = quad(lambda t: 1.0 / np.sqrt(1.0 - (k * np.sin(t)) ** 2), 0.0, np.pi / 2,
                    epsabs=1e-13, epsrel=1e-13, limit=200)
    assert err < 1e-12
    return val


@pytest.fixture(scope="session")
def k_values():
    return K_VALUES


def guarded_complex_grid(k: complex, n: int = 20, guard: float = 0.1):
    """An n x n complex grid that keeps `guard` distance from the common
    pole lattice of sn, cn, dn."""
    from darboux.elliptic import pole_distance

    res = np.linspace(-2.1, 2.3, n)
    ims = np.linspace(-1.35, 1.45, n)
    pts = []
    for re in res:
        for im in ims:
            u = complex(re, im)
            if pole_distance("sn", u, k) >= guard:
                pts.append(u)
    return pts
