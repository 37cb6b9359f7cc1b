import numpy as np

from .inversion import ball_radius_squared


def sample_disk(generator: np.random.Generator, radius, n: int) -> np.ndarray:
    """Uniform points of the disk |z| <= radius (radius may be an array of length n)."""
    r = np.asarray(radius) * np.sqrt(generator.random(n))
    return r * np.exp(2j * np.pi * generator.random(n))


def sample_weighted_ball(
    generator: np.random.Generator, n: int, weight_power: int
) -> tuple[np.ndarray, np.ndarray]:
    """Points w of the unit ball of C^2 with density proportional to (1 - |w|^2)^k."""
    direction = generator.normal(size=(n, 4))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    radius = np.sqrt(ball_radius_squared(generator.random(n), weight_power))

    w = direction * radius[:, None]
    return w[:, 0] + 1j * w[:, 1], w[:, 2] + 1j * w[:, 3]


def unwhiten(
    t11: np.ndarray,
    t12: np.ndarray,
    t22: np.ndarray,
    rho: np.ndarray,
    w1: np.ndarray,
    w2: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Map w from the unit ball onto {x : <x, T x> <= rho} for T = [[t11, t12], [t12*, t22]].

    With T = L L* (L lower triangular) the map is x = sqrt(rho) (L*)^-1 w, so that
    <x, T x> = rho |w|^2.
    """
    l11 = np.sqrt(t11)
    l21_conj = t12 / l11
    l22 = np.sqrt(t22 - np.abs(l21_conj) ** 2)

    scale = np.sqrt(rho)
    x2 = scale * w2 / l22
    x1 = (scale * w1 - l21_conj * x2) / l11
    return x1, x2
