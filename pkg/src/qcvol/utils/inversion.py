from collections.abc import Callable

import numpy as np

BISECTION_TOLERANCE = 1e-12
BISECTION_MAX_ITERATIONS = 64


def invert_monotone(
    cdf: Callable[[np.ndarray], np.ndarray],
    u: np.ndarray,
    lo: np.ndarray | float = 0.0,
    hi: np.ndarray | float = 1.0,
    tol: float = BISECTION_TOLERANCE,
) -> np.ndarray:
    """Solve cdf(x) = u elementwise by bisection on [lo, hi].

    `cdf` must be nondecreasing on the bracket and is evaluated on whole arrays.
    """
    u = np.asarray(u, dtype=np.float64)
    lo = np.broadcast_to(np.asarray(lo, dtype=np.float64), u.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=np.float64), u.shape).copy()

    for _ in range(BISECTION_MAX_ITERATIONS):
        mid = (lo + hi) / 2.0
        below = cdf(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= tol):
            break
    return (lo + hi) / 2.0


def ball_radius_squared(u: np.ndarray, weight_power: int) -> np.ndarray:
    """Squared radius s of a point in the unit 4-ball with density (1 - |y|^2)^k.

    In s the density is proportional to s (1 - s)^k.
    """
    if weight_power == 0:
        return np.sqrt(u)
    if weight_power == 1:
        return invert_monotone(lambda s: s * s * (3.0 - 2.0 * s), u)
    if weight_power == 2:
        return invert_monotone(lambda s: s * s * (6.0 + s * (-8.0 + 3.0 * s)), u)
    raise ValueError(f"unsupported weight power {weight_power}")
