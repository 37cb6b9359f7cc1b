"""Exact samplers that draw each Choi parameter from its conditional law given the previous ones.

General chain: (a, f) -> c -> (b, e) -> (d, g).  Unital chain: a -> e -> (b, c) -> d.
Every stage after the first is a weighted ball in whitened coordinates, so no stage rejects.
"""

import logging
import math

import numpy as np
from scipy import optimize

from qcvol.analytic import v_af_normalized
from qcvol.config import SamplingConfig
from qcvol.errors import DegenerateStageError
from qcvol.models import ChannelKind
from qcvol.rng import RngStream
from qcvol.services.abstractions import ChannelSampler
from qcvol.utils.ellipsoid import sample_disk, sample_weighted_ball, unwhiten
from qcvol.utils.inversion import invert_monotone
from qcvol.utils.mapping import join_general_rows, join_unital_rows

MAJORANT_GRID = 401
MAJORANT_SLACK = 1.001


def find_af_majorant(grid: int = MAJORANT_GRID) -> float:
    """Upper bound for the normalized (a, f) density: grid search, Nelder-Mead polish, slack."""
    axis = np.linspace(0.0, 1.0, grid)
    a, f = np.meshgrid(axis, axis, indexing="ij")
    values = v_af_normalized(a, f)
    i, j = np.unravel_index(np.argmax(values), values.shape)

    result = optimize.minimize(
        lambda x: -v_af_normalized(*np.clip(x, 0.0, 1.0)),
        x0=np.array([axis[i], axis[j]]),
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-12},
    )
    peak = max(float(values[i, j]), -float(result.fun))
    return peak * MAJORANT_SLACK


def _require_open_unit(name: str, x: np.ndarray) -> None:
    if np.any(x <= 0.0) or np.any(x >= 1.0):
        raise DegenerateStageError(f"{name} must lie strictly inside (0, 1)")


def sample_c_given_af(generator: np.random.Generator, a: np.ndarray, f: np.ndarray) -> np.ndarray:
    """c on the disk |c|^2 <= min(af, a2 f2) with density (a2 f2 - |c|^2)^2 (af - |c|^2)^2."""
    _require_open_unit("a", a)
    _require_open_unit("f", f)

    inner, outer = a * f, (1.0 - a) * (1.0 - f)
    m = np.minimum(inner, outer)
    if np.any(m <= 0.0):
        raise DegenerateStageError("stage-2 disk is empty")

    alpha = inner * outer
    beta = -(inner + outer)

    def antiderivative(s):
        return (
            alpha**2 * s
            + alpha * beta * s**2
            + (beta**2 + 2.0 * alpha) * s**3 / 3.0
            + beta * s**4 / 2.0
            + s**5 / 5.0
        )

    total = antiderivative(m)
    t = invert_monotone(lambda t: antiderivative(t * m) / total, generator.random(a.shape[0]))
    s = t * m
    return np.sqrt(s) * np.exp(2j * np.pi * generator.random(a.shape[0]))


def sample_e_given_a(generator: np.random.Generator, a: np.ndarray) -> np.ndarray:
    """e on the disk |e| <= 1 - a with density proportional to (1 - a)^2 - |e|^2."""
    _require_open_unit("a", a)
    a2sq = (1.0 - a) ** 2
    s = a2sq * (1.0 - np.sqrt(1.0 - generator.random(a.shape[0])))
    return np.sqrt(s) * np.exp(2j * np.pi * generator.random(a.shape[0]))


class SequentialGeneralSampler(ChannelSampler):
    kind = ChannelKind.general

    def __init__(self, sampling_config: SamplingConfig) -> None:
        self._batch_size = sampling_config.batch_size
        self._logger = logging.getLogger(__name__)
        self.majorant = find_af_majorant()
        self._logger.debug("(a, f) majorant is %s", self.majorant)

    def _sample_af(self, generator: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
        a_chunks, f_chunks = [np.empty(0)], [np.empty(0)]
        collected = 0
        while collected < n:
            size = min(self._batch_size, math.ceil((n - collected) * self.majorant * 1.1) + 16)
            a = generator.random(size)
            f = generator.random(size)
            height = generator.random(size) * self.majorant
            # a or f on the boundary has probability zero and would empty the later stages
            keep = (height < v_af_normalized(a, f)) & (a > 0.0) & (f > 0.0)
            a_chunks.append(a[keep])
            f_chunks.append(f[keep])
            collected += int(np.count_nonzero(keep))

        return np.concatenate(a_chunks)[:n], np.concatenate(f_chunks)[:n]

    def sample_batch(self, rng: RngStream, n: int) -> np.ndarray:
        generator = rng.generator
        a, f = self._sample_af(generator, n)
        a2, f2 = 1.0 - a, 1.0 - f

        c = sample_c_given_af(generator, a, f)
        abs_c2 = np.abs(c) ** 2

        # (b, conj e) in the ellipsoid <x, T2 x> < R2, weight det A3
        r2 = a2 * (a * f - abs_c2)
        w1, w2 = sample_weighted_ball(generator, n, weight_power=1)
        b, e_conj = unwhiten(f, -c, a, r2, w1, w2)
        e = np.conj(e_conj)
        det_a3 = r2 * (1.0 - np.abs(w1) ** 2 - np.abs(w2) ** 2)

        # (d', g') uniform in the ellipsoid <y, T3 y> < R3, then shifted back
        r3 = det_a3 * (f2 - abs_c2 / a2)
        v1, v2 = sample_weighted_ball(generator, n, weight_power=0)
        d_shift, g_shift = unwhiten(
            a2 * f - np.abs(e) ** 2, b * e - a2 * c, a * a2 - np.abs(b) ** 2, r3, v1, v2
        )
        d = d_shift - b * c / a2
        g = g_shift - c * np.conj(e) / a2

        self._logger.debug("drew %s general channels sequentially", n)
        return join_general_rows(a, f, b, c, d, e, g)


class SequentialUnitalSampler(ChannelSampler):
    kind = ChannelKind.unital

    def __init__(self, sampling_config: SamplingConfig) -> None:
        self._logger = logging.getLogger(__name__)

    def _sample_a(self, generator: np.random.Generator, n: int) -> np.ndarray:
        a = generator.beta(5.0, 5.0, size=n)
        bad = (a <= 0.0) | (a >= 1.0)
        while np.any(bad):
            a[bad] = generator.beta(5.0, 5.0, size=int(np.count_nonzero(bad)))
            bad = (a <= 0.0) | (a >= 1.0)
        return a

    def sample_batch(self, rng: RngStream, n: int) -> np.ndarray:
        generator = rng.generator
        a = self._sample_a(generator, n)
        a2 = 1.0 - a

        e = sample_e_given_a(generator, a)
        det_a2 = a2**2 - np.abs(e) ** 2

        # (conj b, conj c) in the ellipsoid <x, T2 x> < R2, weight det A3 squared
        r2 = a * det_a2
        w1, w2 = sample_weighted_ball(generator, n, weight_power=2)
        b_conj, c_conj = unwhiten(a2, -e, a2, r2, w1, w2)
        b, c = np.conj(b_conj), np.conj(c_conj)
        det_a3 = r2 * (1.0 - np.abs(w1) ** 2 - np.abs(w2) ** 2)

        d_shift = sample_disk(generator, det_a3 / det_a2, n)
        d = d_shift - (2.0 * a2 * b * c - np.conj(e) * c**2 - e * b**2) / det_a2

        self._logger.debug("drew %s unital channels sequentially", n)
        return join_unital_rows(a, b, c, d, e)
