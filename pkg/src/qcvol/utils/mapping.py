import numpy as np

from qcvol.models import Complex, GeneralChannelParams, UnitalChannelParams

GENERAL_COLUMNS = (
    "a",
    "f",
    "b_re",
    "b_im",
    "c_re",
    "c_im",
    "d_re",
    "d_im",
    "e_re",
    "e_im",
    "g_re",
    "g_im",
)
UNITAL_COLUMNS = ("a", "b_re", "b_im", "c_re", "c_im", "d_re", "d_im", "e_re", "e_im")


def general_params_to_row(p: GeneralChannelParams) -> np.ndarray:
    return np.array(
        [
            p.a,
            p.f,
            p.b.re,
            p.b.im,
            p.c.re,
            p.c.im,
            p.d.re,
            p.d.im,
            p.e.re,
            p.e.im,
            p.g.re,
            p.g.im,
        ],
        dtype=np.float64,
    )


def _complex_pairs(values: np.ndarray) -> list[Complex]:
    """(re, im, re, im, ...) to Complex values."""
    pairs = np.ascontiguousarray(values, dtype=np.float64).view(np.complex128)
    return [Complex.of(complex(z)) for z in pairs]


def row_to_general_params(row: np.ndarray) -> GeneralChannelParams:
    a, f = (float(x) for x in row[:2])
    b, c, d, e, g = _complex_pairs(row[2:])
    return GeneralChannelParams(a=a, f=f, b=b, c=c, d=d, e=e, g=g)


def unital_params_to_row(p: UnitalChannelParams) -> np.ndarray:
    return np.array(
        [p.a, p.b.re, p.b.im, p.c.re, p.c.im, p.d.re, p.d.im, p.e.re, p.e.im], dtype=np.float64
    )


def row_to_unital_params(row: np.ndarray) -> UnitalChannelParams:
    b, c, d, e = _complex_pairs(row[1:])
    return UnitalChannelParams(a=float(row[0]), b=b, c=c, d=d, e=e)


def embed_unital_rows(rows: np.ndarray) -> np.ndarray:
    """Unital rows (n, 9) to general rows (n, 12) with f = 1 - a and g = -b."""
    rows = np.atleast_2d(rows)
    out = np.empty((rows.shape[0], len(GENERAL_COLUMNS)), dtype=np.float64)
    out[:, 0] = rows[:, 0]
    out[:, 1] = 1.0 - rows[:, 0]
    out[:, 2:10] = rows[:, 1:9]
    out[:, 10:12] = -rows[:, 1:3]
    return out


def split_general_rows(rows: np.ndarray):
    """Columns of general rows as (a, f, b, c, d, e, g) with complex entries."""
    rows = np.atleast_2d(rows)
    return (
        rows[:, 0],
        rows[:, 1],
        rows[:, 2] + 1j * rows[:, 3],
        rows[:, 4] + 1j * rows[:, 5],
        rows[:, 6] + 1j * rows[:, 7],
        rows[:, 8] + 1j * rows[:, 9],
        rows[:, 10] + 1j * rows[:, 11],
    )


def join_general_rows(a, f, b, c, d, e, g) -> np.ndarray:
    return np.column_stack(
        [a, f, b.real, b.imag, c.real, c.imag, d.real, d.imag, e.real, e.imag, g.real, g.imag]
    ).astype(np.float64)


def join_unital_rows(a, b, c, d, e) -> np.ndarray:
    return np.column_stack(
        [a, b.real, b.imag, c.real, c.imag, d.real, d.imag, e.real, e.imag]
    ).astype(np.float64)
