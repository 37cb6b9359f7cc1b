"""Pauli-basis (Stokes) form of a qubit channel: x -> v + T x on the Bloch ball.

With the standard Pauli matrices and the Choi layout of `qcvol.choi`:

    v = (Re(b+g), -Im(b+g), a+f-1)
    T = [[Re(d+e), Im(d+e), Re(b-g)],
         [Im(e-d), Re(d-e), Im(g-b)],
         [2 Re c,  2 Im c,  a-f    ]]
"""

import numpy as np
from scipy.spatial.transform import Rotation

from qcvol.errors import RangeViolationError
from qcvol.models import BlochVector, ClassicalChannel, GeneralChannelParams, UnitalChannelParams
from qcvol.utils.mapping import (
    embed_unital_rows,
    general_params_to_row,
    join_general_rows,
    row_to_general_params,
    split_general_rows,
    unital_params_to_row,
)

BALL_SLACK = 1e-9
ORTHOGONALITY_TOLERANCE = 1e-10
PROBABILITY_SNAP = 1e-12


class AffineMap:
    def __init__(self, v, t) -> None:
        self.v = np.array(v, dtype=np.float64).reshape(3)
        self.t = np.array(t, dtype=np.float64).reshape(3, 3)

    def __repr__(self) -> str:
        return f"AffineMap(v={self.v.tolist()!r}, t={self.t.tolist()!r})"


class Rotation3:
    """Proper rotation of R^3."""

    def __init__(self, matrix) -> None:
        r = np.array(matrix, dtype=np.float64).reshape(3, 3)
        if not np.allclose(r.T @ r, np.eye(3), rtol=0.0, atol=ORTHOGONALITY_TOLERANCE):
            raise ValueError("rotation matrix is not orthogonal")
        if abs(np.linalg.det(r) - 1.0) > ORTHOGONALITY_TOLERANCE:
            raise ValueError("rotation matrix is not orientation preserving")
        self.matrix = r

    @classmethod
    def identity(cls) -> "Rotation3":
        return cls(np.eye(3))

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> "Rotation3":
        axis = np.asarray(axis, dtype=np.float64)
        axis = axis / np.linalg.norm(axis)
        return cls(Rotation.from_rotvec(angle * axis).as_matrix())

    @classmethod
    def random(cls, generator: np.random.Generator) -> "Rotation3":
        # normalized Gaussian quaternion, Haar distributed
        return cls(Rotation.from_quat(generator.normal(size=4)).as_matrix())

    def inverse(self) -> "Rotation3":
        return Rotation3(self.matrix.T)

    def __repr__(self) -> str:
        return f"Rotation3({self.matrix.tolist()!r})"


def affine_batch(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(v, T) for a stack of general rows; shapes (n, 3) and (n, 3, 3)."""
    a, f, b, c, d, e, g = split_general_rows(rows)
    n = a.shape[0]

    v = np.empty((n, 3))
    v[:, 0] = (b + g).real
    v[:, 1] = -(b + g).imag
    v[:, 2] = a + f - 1.0

    t = np.empty((n, 3, 3))
    t[:, 0, 0] = (d + e).real
    t[:, 0, 1] = (d + e).imag
    t[:, 0, 2] = (b - g).real
    t[:, 1, 0] = (e - d).imag
    t[:, 1, 1] = (d - e).real
    t[:, 1, 2] = (g - b).imag
    t[:, 2, 0] = 2.0 * c.real
    t[:, 2, 1] = 2.0 * c.imag
    t[:, 2, 2] = a - f
    return v, t


def rows_from_affine(v: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Inverse of `affine_batch`."""
    v = np.atleast_2d(v)
    t = t.reshape(-1, 3, 3)

    a = (1.0 + v[:, 2] + t[:, 2, 2]) / 2.0
    f = (1.0 + v[:, 2] - t[:, 2, 2]) / 2.0
    c = (t[:, 2, 0] + 1j * t[:, 2, 1]) / 2.0
    b = (v[:, 0] + t[:, 0, 2] - 1j * (v[:, 1] + t[:, 1, 2])) / 2.0
    g = (v[:, 0] - t[:, 0, 2] + 1j * (t[:, 1, 2] - v[:, 1])) / 2.0
    d = (t[:, 0, 0] + t[:, 1, 1] + 1j * (t[:, 0, 1] - t[:, 1, 0])) / 2.0
    e = (t[:, 0, 0] - t[:, 1, 1] + 1j * (t[:, 0, 1] + t[:, 1, 0])) / 2.0

    return join_general_rows(_snap_probability(a), _snap_probability(f), b, c, d, e, g)


def _snap_probability(x: np.ndarray) -> np.ndarray:
    clipped = np.clip(x, 0.0, 1.0)
    return np.where(np.abs(x - clipped) <= PROBABILITY_SNAP, clipped, x)


def rotate_post_batch(rows: np.ndarray, r: np.ndarray) -> np.ndarray:
    """alpha_O: the rotation acts after the channel, (v, T) -> (R v, R T)."""
    v, t = affine_batch(rows)
    return rows_from_affine(v @ r.T, r @ t)


def rotate_pre_batch(rows: np.ndarray, r: np.ndarray) -> np.ndarray:
    """beta_O: the rotation acts before the channel, (v, T) -> (v, T R)."""
    v, t = affine_batch(rows)
    return rows_from_affine(v, t @ r)


def to_affine(p: GeneralChannelParams | UnitalChannelParams) -> AffineMap:
    if isinstance(p, UnitalChannelParams):
        p = embed_unital(p)
    v, t = affine_batch(general_params_to_row(p))
    return AffineMap(v[0], t[0])


def from_affine(m: AffineMap) -> GeneralChannelParams:
    return row_to_general_params(rows_from_affine(m.v, m.t)[0])


def embed_unital(p: UnitalChannelParams) -> GeneralChannelParams:
    return row_to_general_params(embed_unital_rows(unital_params_to_row(p))[0])


def apply(m: AffineMap, s: BlochVector) -> BlochVector:
    image = m.v + m.t @ np.array(s.as_tuple())
    norm = float(np.linalg.norm(image))
    if norm > 1.0 + BALL_SLACK:
        raise RangeViolationError(f"image norm {norm} exceeds the unit ball")
    if norm > 1.0:
        image = image / norm
    return BlochVector(x=float(image[0]), y=float(image[1]), z=float(image[2]))


def underlying_classical(p: GeneralChannelParams) -> ClassicalChannel:
    return ClassicalChannel(a_row=(p.a, 1.0 - p.a), f_row=(p.f, 1.0 - p.f))


def compose_rotation_post(p: GeneralChannelParams, r: Rotation3) -> GeneralChannelParams:
    return row_to_general_params(rotate_post_batch(general_params_to_row(p), r.matrix)[0])


def compose_rotation_pre(p: GeneralChannelParams, r: Rotation3) -> GeneralChannelParams:
    return row_to_general_params(rotate_pre_batch(general_params_to_row(p), r.matrix)[0])
