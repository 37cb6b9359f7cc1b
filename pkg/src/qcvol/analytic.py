"""Closed-form volumes and densities of uniformly distributed qubit channels.

Volumes are in the channel measure 2^7 dλ (12 real coordinates for general channels,
9 for unital ones). Every density accepts scalars or numpy arrays and returns the
same shape; scalar input gives a float back.
"""

import math
from collections.abc import Callable, Sequence
from functools import cache

import numpy as np
from scipy import integrate, optimize

from qcvol.choi import HermitianMatrix, determinant, is_positive_definite
from qcvol.errors import DomainError

VOL_GENERAL = 2.0 * math.pi**5 / 4725.0
VOL_UNITAL = 8.0 * math.pi**4 / 945.0

V_AF_FACTOR = 16.0 * math.pi**5 / 45.0
V_A_FACTOR = 16.0 * math.pi**4 / 3.0
V_AFC_FACTOR = 32.0 * math.pi**4 / 3.0
V_AE_FACTOR = 32.0 * math.pi**3 / 3.0

MEAN_RADIUS_MM = 50.0 / 143.0
UNITAL_SHRINK = 63.0 / 128.0

EPSABS = 1e-12
EPSREL = 1e-12
QUAD_LIMIT = 200
DIFF_STEP = 1e-5

type Density = Callable[[np.ndarray], np.ndarray]


def _array(x) -> np.ndarray:
    return np.asarray(x, dtype=np.float64)


def _out(result: np.ndarray, *inputs):
    if all(np.ndim(x) == 0 for x in inputs):
        return float(result)
    return result


def _check_interval(name: str, x: np.ndarray, lo: float, hi: float) -> None:
    if np.any(np.isnan(x)) or np.any(x < lo) or np.any(x > hi):
        raise DomainError(f"{name} must lie in [{lo}, {hi}]")


def vol_general() -> float:
    return VOL_GENERAL


def vol_unital() -> float:
    return VOL_UNITAL


def v_af(a, f):
    """Volume of general channels over the classical channel (a, f)."""
    a_, f_ = np.broadcast_arrays(_array(a), _array(f))
    _check_interval("a", a_, 0.0, 1.0)
    _check_interval("f", f_, 0.0, 1.0)

    a2, f2 = 1.0 - a_, 1.0 - f_
    lower = a_**3 * f_**3 * (a_**2 * f_**2 - 5 * a_ * a2 * f_ * f2 + 10 * a2**2 * f2**2)
    upper = a2**3 * f2**3 * (a2**2 * f2**2 - 5 * a_ * a2 * f_ * f2 + 10 * a_**2 * f_**2)
    return _out(V_AF_FACTOR * np.where(a_ + f_ <= 1.0, lower, upper), a, f)


def v_af_normalized(a, f):
    return _out(_array(v_af(a, f)) / VOL_GENERAL, a, f)


def v_a(a):
    a_ = _array(a)
    _check_interval("a", a_, 0.0, 1.0)
    return _out(V_A_FACTOR * a_**4 * (1.0 - a_) ** 4, a)


def v_a_normalized(a):
    return _out(_array(v_a(a)) / VOL_UNITAL, a)


def v_afc(a, f, c):
    """Volume of general channels over (a, f, c); vanishes outside |c|^2 <= min(af, a2 f2)."""
    a_, f_ = np.broadcast_arrays(_array(a), _array(f))
    _check_interval("a", a_, 0.0, 1.0)
    _check_interval("f", f_, 0.0, 1.0)

    s = np.abs(np.asarray(c)) ** 2
    inner, outer = a_ * f_, (1.0 - a_) * (1.0 - f_)
    value = V_AFC_FACTOR * (outer - s) ** 2 * (inner - s) ** 2
    return _out(np.where(s <= np.minimum(inner, outer), value, 0.0), a, f, c)


def v_ae(a, e):
    """Volume of unital channels over (a, e); vanishes outside |e| <= 1 - a."""
    a_ = _array(a)
    _check_interval("a", a_, 0.0, 1.0)

    s = np.abs(np.asarray(e)) ** 2
    a2sq = (1.0 - a_) ** 2
    value = V_AE_FACTOR * a_**4 * (a2sq - s)
    return _out(np.where(s <= a2sq, value, 0.0), a, e)


def eta_z(z):
    """Density of the z-coordinate of a random channel applied to the maximally mixed state."""
    z_ = _array(z)
    _check_interval("z", z_, -1.0, 1.0)

    t = np.abs(z_)
    return _out(20.0 / 11.0 * ((((t + 7) * t + 17) * t + 7) * t + 1) * (1 - t) ** 7, z)


def cdf_eta_z(z):
    return cdf_z_general(z, 0.0)


def kappa_mm(r):
    r_ = _array(r)
    _check_interval("r", r_, 0.0, 1.0)
    return _out(40.0 * r_**2 * (1 - r_) ** 6 * (((r_ + 6) * r_ + 12) * r_ + 2), r)


def radial_cdf_mm(r):
    return radial_cdf_general(r, 0.0)


def _check_r0_positive(r0: np.ndarray) -> None:
    if np.any(np.isnan(r0)) or np.any(r0 <= 0.0) or np.any(r0 > 1.0):
        raise DomainError("r0 must lie in (0, 1]")


def kappa_unital(r, r0):
    r_, r0_ = np.broadcast_arrays(_array(r), _array(r0))
    _check_interval("r", r_, 0.0, 1.0)
    _check_r0_positive(r0_)

    value = 315.0 / 16.0 * r_**2 * (r0_**2 - r_**2) ** 3 / r0_**9
    return _out(np.where(r_ <= r0_, value, 0.0), r, r0)


def fz_unital(xi, r0):
    """z-marginal of a random unital channel applied to the state (0, 0, r0)."""
    xi_, r0_ = np.broadcast_arrays(_array(xi), _array(r0))
    _check_interval("xi", xi_, -1.0, 1.0)
    _check_r0_positive(r0_)

    value = 315.0 / 256.0 * (r0_**2 - xi_**2) ** 4 / r0_**9
    return _out(np.where(np.abs(xi_) <= r0_, value, 0.0), xi, r0)


def cdf_z_unital(xi, r0):
    xi_, r0_ = np.broadcast_arrays(_array(xi), _array(r0))
    _check_interval("xi", xi_, -1.0, 1.0)
    _check_r0_positive(r0_)

    s = np.clip(xi_ / r0_, -1.0, 1.0)
    s2 = s * s
    antiderivative = s * (1 + s2 * (-4 / 3 + s2 * (6 / 5 + s2 * (-4 / 7 + s2 / 9))))
    return _out(0.5 + 315.0 / 256.0 * antiderivative, xi, r0)


def radial_cdf_unital(r, r0):
    r_, r0_ = np.broadcast_arrays(_array(r), _array(r0))
    _check_interval("r", r_, 0.0, 1.0)
    _check_r0_positive(r0_)

    inside = np.minimum(r_, r0_)
    value = 2 * _array(cdf_z_unital(inside, r0_)) - 1 - 2 * inside * _array(fz_unital(inside, r0_))
    return _out(np.where(r_ >= r0_, 1.0, value), r, r0)


def mean_radius_unital(r0):
    r0_ = _array(r0)
    _check_interval("r0", r0_, 0.0, 1.0)
    return _out(UNITAL_SHRINK * r0_, r0)


def _check_general_args(name: str, x: np.ndarray, r0: np.ndarray) -> None:
    _check_interval(name, x, -1.0 if name == "xi" else 0.0, 1.0)
    _check_interval("r0", r0, 0.0, 1.0)


def _middle(x: np.ndarray, r0: np.ndarray) -> np.ndarray:
    return (np.abs(x) <= r0) & (r0 > 0.0)


def kappa_general(r, r0):
    """Radial density of a random general channel applied to the state (0, 0, r0)."""
    r_, r0_ = (np.array(x, dtype=np.float64) for x in np.broadcast_arrays(_array(r), _array(r0)))
    _check_general_args("r", r_, r0_)

    out = np.empty_like(r_)
    inner = _middle(r_, r0_)

    x, s = r_[inner], r0_[inner]
    out[inner] = (
        40 * x**2 / (s * (1 + s) ** 6)
        * (21 * x**4 - 6 * x**2 * s**2 - 36 * x**2 * s + s**4 + 6 * s**3 + 12 * s**2 + 2 * s)
    )

    x, s = r_[~inner], r0_[~inner]
    out[~inner] = (
        40 * x * (1 - x) ** 6 / (1 - s**2) ** 6
        * (21 * s**4 - 6 * x**2 * s**2 - 36 * x * s**2 + x**4 + 6 * x**3 + 12 * x**2 + 2 * x)
    )
    return _out(out, r, r0)


def fz_general(xi, r0):
    """Even density of the z-coordinate for input (0, 0, r0)."""
    xi_, r0_ = (np.array(x, dtype=np.float64) for x in np.broadcast_arrays(_array(xi), _array(r0)))
    _check_general_args("xi", xi_, r0_)

    t = np.abs(xi_)
    out = np.empty_like(t)
    inner = _middle(t, r0_)

    x, s = t[inner], r0_[inner]
    poly = (
        231 * x**6 - 99 * x**4 * s**2 + 33 * x**2 * s**4 - 5 * s**6
        - 594 * x**4 * s + 198 * x**2 * s**3 - 30 * s**5
        + 396 * x**2 * s**2 - 72 * s**4
        + 66 * x**2 * s - 82 * s**3
        - 36 * s**2 - 6 * s
    )  # fmt: skip
    out[inner] = -10.0 / (33.0 * s * (1 + s) ** 6) * poly

    x, s = t[~inner], r0_[~inner]
    poly = (
        3 * x**4 - 22 * x**2 * s**2 + 99 * s**4
        + 21 * x**3 - 154 * x * s**2
        + 51 * x**2 - 22 * s**2
        + 21 * x + 3
    )  # fmt: skip
    out[~inner] = 20.0 * (1 - x) ** 7 / (33.0 * (1 - s**2) ** 6) * poly
    return _out(out, xi, r0)


def cdf_z_general(xi, r0):
    """P(z' < xi) for input (0, 0, r0), in three pieces split at xi = -r0 and xi = r0."""
    xi_, r0_ = (np.array(x, dtype=np.float64) for x in np.broadcast_arrays(_array(xi), _array(r0)))
    _check_general_args("xi", xi_, r0_)

    out = np.empty_like(xi_)
    middle = _middle(xi_, r0_)
    lower = ~middle & (xi_ < 0.0)
    upper = ~middle & (xi_ >= 0.0)

    x, s = xi_[lower], r0_[lower]
    poly = (
        10 * x**4 - 88 * x**2 * s**2 + 495 * s**4
        - 80 * x**3 + 704 * x * s**2
        + 228 * x**2 - 198 * s**2
        - 144 * x + 33
    )  # fmt: skip
    out[lower] = poly * (1 + x) ** 8 / (66.0 * (1 - s**2) ** 6)

    x, s = xi_[middle], r0_[middle]
    poly = (
        660 * x**7 - 396 * x**5 * s**2 + 220 * x**3 * s**4 - 100 * x * s**6 - 33 * s**7
        - 2376 * x**5 * s + 1320 * x**3 * s**3 - 600 * x * s**5 - 198 * s**6
        + 2640 * x**3 * s**2 - 1440 * x * s**4 - 495 * s**5
        + 440 * x**3 * s - 1640 * x * s**3 - 660 * s**4
        - 720 * x * s**2 - 495 * s**3
        - 120 * x * s - 198 * s**2
        - 33 * s
    )  # fmt: skip
    out[middle] = -poly / (66.0 * s * (1 + s) ** 6)

    x, s = xi_[upper], r0_[upper]
    poly = (
        10 * x**4 - 88 * x**2 * s**2 + 495 * s**4
        + 80 * x**3 - 704 * x * s**2
        + 228 * x**2 - 198 * s**2
        + 144 * x + 33
    )  # fmt: skip
    out[upper] = 1.0 - poly * (1 - x) ** 8 / (66.0 * (1 - s**2) ** 6)
    return _out(out, xi, r0)


def radial_cdf_general(r, r0):
    """P(R <= r) = 2 F_z(r) - 1 - 2 r f_z(r), the integrated form of rho = -2 r f'."""
    r_, r0_ = np.broadcast_arrays(_array(r), _array(r0))
    _check_general_args("r", r_, r0_)

    value = 2 * _array(cdf_z_general(r_, r0_)) - 1 - 2 * r_ * _array(fz_general(r_, r0_))
    return _out(np.clip(value, 0.0, 1.0), r, r0)


def radial_from_marginal(f: Density, r, h: float = DIFF_STEP):
    """rho(r) = -2 r f'(r) for an even z-density f, by central differences."""
    r_ = _array(r)
    if np.any(r_ <= 0.0) or np.any(r_ >= 1.0):
        raise DomainError("r must lie in (0, 1)")

    step = np.minimum(h, (1.0 - r_) / 2.0)
    derivative = (_array(f(r_ + step)) - _array(f(r_ - step))) / (2.0 * step)
    return _out(-2.0 * r_ * derivative, r)


def ellipsoid_integral(t, rho: float, k: int) -> float:
    """Integral of (rho - <x, T x>)^k over {<x, T x> < rho} in C^n = R^(2n)."""
    matrix = HermitianMatrix(np.atleast_2d(t))
    n = matrix.size
    if n not in (1, 2):
        raise DomainError("ellipsoid integral is defined for n in {1, 2}")
    if not is_positive_definite(matrix):
        raise DomainError("T must be positive definite")
    if rho <= 0.0:
        raise DomainError("rho must be positive")
    if k < 0 or int(k) != k:
        raise DomainError("k must be a nonnegative integer")

    det = determinant(matrix)
    return math.pi**n * rho ** (n + k) * math.factorial(k) / (math.factorial(n + k) * det)


def integrate_1d(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    seams: Sequence[float] = (),
    epsabs: float = EPSABS,
    epsrel: float = EPSREL,
    limit: int = QUAD_LIMIT,
) -> float:
    """Adaptive quadrature with the known seams as forced breakpoints."""
    points = sorted({s for s in seams if lo < s < hi})
    value, _ = integrate.quad(
        func, lo, hi, points=points or None, epsabs=epsabs, epsrel=epsrel, limit=limit
    )
    return value


def integrate_v_af(epsabs: float = EPSABS, epsrel: float = EPSREL) -> float:
    """Integral of v_af over the unit square, split along the seam a + f = 1."""

    def integrand(f: float, a: float) -> float:
        return v_af(a, f)

    below, _ = integrate.dblquad(
        integrand, 0.0, 1.0, 0.0, lambda a: 1.0 - a, epsabs=epsabs, epsrel=epsrel
    )
    above, _ = integrate.dblquad(
        integrand, 0.0, 1.0, lambda a: 1.0 - a, 1.0, epsabs=epsabs, epsrel=epsrel
    )
    return below + above


def mean_radius_general(
    r0: float, epsabs: float = EPSABS, epsrel: float = EPSREL, limit: int = QUAD_LIMIT
) -> float:
    """g(r0): mean output radius of a random general channel for input radius r0."""
    if not 0.0 <= r0 <= 1.0:
        raise DomainError("r0 must lie in [0, 1]")
    return integrate_1d(
        lambda r: r * kappa_general(r, r0),
        0.0,
        1.0,
        seams=(r0,),
        epsabs=epsabs,
        epsrel=epsrel,
        limit=limit,
    )


@cache
def fixed_point_radius(
    xtol: float = 1e-12, epsabs: float = EPSABS, epsrel: float = EPSREL, limit: int = QUAD_LIMIT
) -> float:
    """Radius r* with g(r*) = r*, the attractor of repeated random general channels."""

    def excess(r: float) -> float:
        return mean_radius_general(r, epsabs=epsabs, epsrel=epsrel, limit=limit) - r

    return float(optimize.bisect(excess, 0.2, 0.5, xtol=xtol))
