"""Choi matrices of qubit channels and the leading-minor machinery on them.

A general channel is stored as the block matrix

    [[a,  b,  c,  d ],
     [b*, a2, e,  -c],
     [c*, e*, f,  g ],
     [d*, -c*, g*, f2]]

with a2 = 1 - a and f2 = 1 - f; a unital one additionally has f = 1 - a and g = -b.
Determinants are written out as cofactor expansions for sizes up to 4 and work on
stacks of matrices (shape (..., n, n)), which is what the samplers feed in.
"""

from typing import NamedTuple

import numpy as np

from qcvol.errors import DegenerateMinorError
from qcvol.models import GeneralChannelParams, UnitalChannelParams
from qcvol.utils.mapping import (
    embed_unital_rows,
    general_params_to_row,
    split_general_rows,
    unital_params_to_row,
)

# A = U* Q U reorders the basis so that A[i, j] = Q[p[i], p[j]]
GENERAL_PERMUTATION = (0, 2, 1, 3)
UNITAL_PERMUTATION = (1, 2, 0, 3)

HERMITIAN_TOLERANCE = 1e-12
IMAG_RESIDUE_TOLERANCE = 1e-12
DEGENERATE_MINOR_THRESHOLD = 1e-14


class HermitianMatrix:
    """Complex Hermitian n x n matrix, 1 <= n <= 4."""

    def __init__(self, entries) -> None:
        m = np.array(entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or not 1 <= m.shape[0] <= 4:
            raise ValueError(f"expected a square matrix of size 1..4, got shape {m.shape}")

        scale = max(1.0, float(np.max(np.abs(m))))
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=HERMITIAN_TOLERANCE * scale):
            raise ValueError("matrix is not Hermitian")

        # symmetrize so entry(i, j) == conj(entry(j, i)) holds exactly
        self._m = (m + m.conj().T) / 2
        self._m.setflags(write=False)

    @property
    def size(self) -> int:
        return self._m.shape[0]

    @property
    def array(self) -> np.ndarray:
        return self._m

    def entry(self, i: int, j: int) -> complex:
        return complex(self._m[i, j])

    def leading_block(self, k: int) -> "HermitianMatrix":
        return HermitianMatrix(self._m[:k, :k])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        return np.array_equal(self._m, other._m)

    def __repr__(self) -> str:
        return f"HermitianMatrix({self._m.tolist()!r})"


class SchurDecomposition(NamedTuple):
    a_nn: float
    det_minor: float
    quadratic_form: float

    def determinant(self) -> float:
        return self.a_nn * self.det_minor - self.quadratic_form


def determinant_batch(m: np.ndarray) -> np.ndarray:
    """Cofactor-expansion determinant over the last two axes (sizes 1 to 4)."""
    n = m.shape[-1]
    if n == 1:
        return m[..., 0, 0]
    if n == 2:
        return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    if n == 3:
        return (
            m[..., 0, 0] * (m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1])
            - m[..., 0, 1] * (m[..., 1, 0] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 0])
            + m[..., 0, 2] * (m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0])
        )
    if n == 4:
        # Laplace expansion along the first two rows
        def top(j, k):
            return m[..., 0, j] * m[..., 1, k] - m[..., 0, k] * m[..., 1, j]

        def bottom(j, k):
            return m[..., 2, j] * m[..., 3, k] - m[..., 2, k] * m[..., 3, j]

        return (
            top(0, 1) * bottom(2, 3)
            - top(0, 2) * bottom(1, 3)
            + top(0, 3) * bottom(1, 2)
            + top(1, 2) * bottom(0, 3)
            - top(1, 3) * bottom(0, 2)
            + top(2, 3) * bottom(0, 1)
        )
    raise ValueError(f"unsupported matrix size {n}")


def _real_part(values: np.ndarray, scale: float) -> np.ndarray:
    residue = np.max(np.abs(np.imag(values)), initial=0.0)
    assert residue <= IMAG_RESIDUE_TOLERANCE * scale, f"imaginary residue {residue} in minors"
    return np.real(values).astype(np.float64)


def leading_minors_batch(m: np.ndarray) -> np.ndarray:
    """Leading principal minors of a stack of Hermitian matrices, shape (..., n)."""
    n = m.shape[-1]
    scale = max(1.0, float(np.max(np.abs(m), initial=0.0))) ** n
    minors = [determinant_batch(m[..., :k, :k]) for k in range(1, n + 1)]
    return _real_part(np.stack(minors, axis=-1), scale)


def leading_minors(m: HermitianMatrix) -> tuple[float, ...]:
    return tuple(float(x) for x in leading_minors_batch(m.array))


def determinant(m: HermitianMatrix) -> float:
    return leading_minors(m)[-1]


def is_positive_definite(m: HermitianMatrix, tol: float = 0.0) -> bool:
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return all(minor > tol for minor in leading_minors(m))


def adjugate(m: np.ndarray) -> np.ndarray:
    """Adjugate of a single square matrix via cofactors, adj[i, j] = C[j, i]."""
    n = m.shape[0]
    if n == 1:
        return np.ones((1, 1), dtype=m.dtype)

    adj = np.empty_like(m)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(m, j, axis=0), i, axis=1)
            adj[i, j] = (-1) ** (i + j) * determinant_batch(minor)
    return adj


def schur_det_decomposition(m: HermitianMatrix) -> SchurDecomposition:
    """Split det(A) = a_nn det(A_{n-1}) - <x, T x> with T = adj(A_{n-1}).

    x holds the first n - 1 entries of the last column.
    """
    n = m.size
    if n < 2:
        raise ValueError("decomposition needs a matrix of size at least 2")

    block = m.array[: n - 1, : n - 1]
    det_minor = float(np.real(determinant_batch(block)))
    if abs(det_minor) < DEGENERATE_MINOR_THRESHOLD:
        raise DegenerateMinorError(f"leading block determinant {det_minor} is degenerate")

    x = m.array[: n - 1, n - 1]
    quadratic_form = float(np.real(np.conj(x) @ adjugate(block) @ x))
    return SchurDecomposition(float(np.real(m.array[n - 1, n - 1])), det_minor, quadratic_form)


def choi_general_batch(rows: np.ndarray) -> np.ndarray:
    a, f, b, c, d, e, g = split_general_rows(rows)
    q = np.empty((a.shape[0], 4, 4), dtype=np.complex128)

    q[:, 0, 0] = a
    q[:, 0, 1] = b
    q[:, 0, 2] = c
    q[:, 0, 3] = d
    q[:, 1, 1] = 1.0 - a
    q[:, 1, 2] = e
    q[:, 1, 3] = -c
    q[:, 2, 2] = f
    q[:, 2, 3] = g
    q[:, 3, 3] = 1.0 - f

    for i in range(4):
        for j in range(i):
            q[:, i, j] = np.conj(q[:, j, i])
    return q


def choi_unital_batch(rows: np.ndarray) -> np.ndarray:
    return choi_general_batch(embed_unital_rows(rows))


def permute_batch(q: np.ndarray, permutation: tuple[int, ...]) -> np.ndarray:
    index = np.array(permutation)
    return q[..., index[:, None], index[None, :]]


def build_choi_general(p: GeneralChannelParams) -> HermitianMatrix:
    return HermitianMatrix(choi_general_batch(general_params_to_row(p))[0])


def build_choi_unital(p: UnitalChannelParams) -> HermitianMatrix:
    return HermitianMatrix(choi_unital_batch(unital_params_to_row(p))[0])


def permute_general(q: HermitianMatrix) -> HermitianMatrix:
    """U* Q U for the basis swap 2 <-> 3, which moves (a, c, f) into the leading block."""
    return HermitianMatrix(permute_batch(q.array, GENERAL_PERMUTATION))


def permute_unital(q: HermitianMatrix) -> HermitianMatrix:
    """U* Q U for the cyclic reordering (2, 3, 1, 4), leading block [[a2, e], [e*, a2]]."""
    return HermitianMatrix(permute_batch(q.array, UNITAL_PERMUTATION))
