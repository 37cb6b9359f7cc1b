import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcvol.choi import build_choi_general
from qcvol.errors import RangeViolationError
from qcvol.models import (
    BlochVector,
    ChannelKind,
    Complex,
    GeneralChannelParams,
)
from qcvol.rng import RngStream
from qcvol.stokes import (
    AffineMap,
    Rotation3,
    affine_batch,
    apply,
    compose_rotation_post,
    compose_rotation_pre,
    embed_unital,
    from_affine,
    rows_from_affine,
    to_affine,
    underlying_classical,
)
from qcvol.utils.mapping import embed_unital_rows, join_general_rows, row_to_general_params

X_AXIS = (1.0, 0.0, 0.0)


def test_identity_channel_is_identity_map():
    identity = GeneralChannelParams(a=1.0, f=0.0, d=Complex(re=1.0))
    m = to_affine(identity)

    np.testing.assert_allclose(m.v, 0.0)
    np.testing.assert_allclose(m.t, np.eye(3))


def test_depolarizing_channel_collapses_ball(depolarizing_channel):
    m = to_affine(depolarizing_channel)

    np.testing.assert_allclose(m.v, 0.0)
    np.testing.assert_allclose(m.t, 0.0)
    assert apply(m, BlochVector(z=1.0)).norm() == 0.0


def test_amplitude_damping_affine_form(amplitude_damping_channel):
    m = to_affine(amplitude_damping_channel)

    np.testing.assert_allclose(m.v, [0.0, 0.0, 0.3])
    np.testing.assert_allclose(np.diag(m.t), [math.sqrt(0.7), math.sqrt(0.7), 0.7])
    assert apply(m, BlochVector(z=-1.0)).z == pytest.approx(-0.4)


def test_unital_channel_fixes_maximally_mixed_state(interior_unital_channel):
    m = to_affine(interior_unital_channel)

    np.testing.assert_allclose(m.v, 0.0, atol=1e-15)
    assert apply(m, BlochVector()).norm() == pytest.approx(0.0, abs=1e-15)


def test_apply_rejects_maps_leaving_the_ball():
    m = AffineMap(v=[0.0, 0.0, 0.9], t=np.eye(3))

    with pytest.raises(RangeViolationError):
        apply(m, BlochVector(z=1.0))


def uniform_sphere(generator: np.random.Generator, n: int) -> np.ndarray:
    s = generator.normal(size=(n, 3))
    return s / np.linalg.norm(s, axis=1, keepdims=True)


def test_sampled_channels_keep_the_ball(sampler_set, rng):
    rows = sampler_set.get(ChannelKind.general).sample_batch(rng, 10_000)
    states = uniform_sphere(rng.child(3).generator, 100)

    v, t = affine_batch(rows)
    images = v[:, None, :] + np.einsum("nij,sj->nsi", t, states)
    assert np.max(np.linalg.norm(images, axis=2)) <= 1.0 + 1e-12

    for row in rows[:100]:
        m = to_affine(row_to_general_params(row))
        for state in states:
            image = apply(m, BlochVector(x=state[0], y=state[1], z=state[2]))
            assert image.norm() <= 1.0 + 1e-12


def random_kraus_pair(generator: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Two Kraus operators from a random 4 x 2 isometry."""
    z = generator.normal(size=(4, 2)) + 1j * generator.normal(size=(4, 2))
    isometry, _ = np.linalg.qr(z)
    return isometry[:2], isometry[2:]


def kraus_row(kraus: tuple[np.ndarray, ...]) -> np.ndarray:
    def phi(i: int, j: int) -> np.ndarray:
        unit = np.zeros((2, 2), dtype=np.complex128)
        unit[i, j] = 1.0
        return sum(k @ unit @ k.conj().T for k in kraus)

    q00, q01, q11 = phi(0, 0), phi(0, 1), phi(1, 1)
    a, f = np.array([q00[0, 0].real]), np.array([q11[0, 0].real])
    b, g = np.array([q00[0, 1]]), np.array([q11[0, 1]])
    c, d, e = np.array([q01[0, 0]]), np.array([q01[0, 1]]), np.array([q01[1, 0]])
    return join_general_rows(a, f, b, c, d, e, g)


def bloch_image(kraus: tuple[np.ndarray, ...], s: np.ndarray) -> np.ndarray:
    pauli = (
        np.array([[0, 1], [1, 0]], dtype=np.complex128),
        np.array([[0, -1j], [1j, 0]]),
        np.array([[1, 0], [0, -1]], dtype=np.complex128),
    )
    rho = (np.eye(2) + sum(x * p for x, p in zip(s, pauli))) / 2
    out = sum(k @ rho @ k.conj().T for k in kraus)
    return np.array([np.trace(out @ p).real for p in pauli])


def test_affine_form_matches_kraus_action(generator):
    states = uniform_sphere(generator, 5)

    for _ in range(200):
        kraus = random_kraus_pair(generator)
        v, t = affine_batch(kraus_row(kraus))
        for s in states:
            np.testing.assert_allclose(v[0] + t[0] @ s, bloch_image(kraus, s), atol=1e-12)


def test_phase_then_flip_unitary():
    unitary = np.array([[0, 1], [1, 0]]) @ np.diag([1.0, np.exp(0.7j)])
    v, t = affine_batch(kraus_row((unitary,)))
    m = AffineMap(v[0], t[0])

    image = apply(m, BlochVector(x=1.0))
    assert image.as_tuple() == pytest.approx((math.cos(0.7), -math.sin(0.7), 0.0), abs=1e-12)



def test_affine_round_trip(sampler_set, rng):
    rows = sampler_set.get(ChannelKind.general).sample_batch(rng, 100)
    v, t = affine_batch(rows)

    np.testing.assert_allclose(rows_from_affine(v, t), rows, atol=1e-14)

    p = row_to_general_params(rows[0])
    q = from_affine(to_affine(p))
    assert q.a == pytest.approx(p.a)
    assert q.d.value == pytest.approx(p.d.value)
    assert q.g.value == pytest.approx(p.g.value)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=3, max_size=3),
    st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=3, max_size=3),
    st.floats(min_value=-1.0, max_value=1.0),
)
def test_affine_map_is_affine(x, y, weight):
    m = to_affine(GeneralChannelParams(a=0.9, f=0.2, c=Complex(re=0.1), d=Complex(im=0.4)))
    x, y = np.array(x), np.array(y)

    def image(s):
        return m.v + m.t @ s

    mixed = weight * x + (1.0 - weight) * y
    np.testing.assert_allclose(
        image(mixed), weight * image(x) + (1.0 - weight) * image(y), atol=1e-12
    )


def test_rotation_validation():
    with pytest.raises(ValueError):
        Rotation3(2.0 * np.eye(3))
    with pytest.raises(ValueError):
        Rotation3(np.diag([1.0, 1.0, -1.0]))


def test_rotation_from_axis_angle():
    r = Rotation3.from_axis_angle((0.0, 0.0, 1.0), math.pi / 2)

    np.testing.assert_allclose(r.matrix @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(r.inverse().matrix @ r.matrix, np.eye(3), atol=1e-15)


@pytest.mark.parametrize("angle", [0.3, -1.1, 2.0])
def test_pre_rotation_about_x_closed_form(angle):
    p = GeneralChannelParams(a=0.7, f=0.2, c=Complex(re=0.05, im=0.1), d=Complex(re=0.3))
    r = Rotation3.from_axis_angle(X_AXIS, angle)
    q = compose_rotation_pre(p, r)

    c2 = p.c.im
    assert q.a == pytest.approx(
        (p.a + p.f) / 2 + (p.a - p.f) * math.cos(angle) / 2 - c2 * math.sin(angle)
    )
    assert q.c.im == pytest.approx(c2 * math.cos(angle) + (p.a - p.f) * math.sin(angle) / 2)

    # the opposite orientation flips the sign of the sine terms
    q = compose_rotation_pre(p, r.inverse())
    assert q.a == pytest.approx(
        (p.a + p.f) / 2 + (p.a - p.f) * math.cos(angle) / 2 + c2 * math.sin(angle)
    )
    assert q.c.im == pytest.approx(c2 * math.cos(angle) - (p.a - p.f) * math.sin(angle) / 2)


def test_rotations_preserve_complete_positivity(sampler_set, rng):
    rows = sampler_set.get(ChannelKind.general).sample_batch(rng, 50)
    rotations = rng.child(7).generator

    for row in rows:
        p = row_to_general_params(row)
        r = Rotation3.random(rotations)
        for q in (compose_rotation_post(p, r), compose_rotation_pre(p, r)):
            assert np.min(np.linalg.eigvalsh(build_choi_general(q).array)) >= -1e-12


def test_post_rotation_moves_the_fixed_vector(amplitude_damping_channel):
    r = Rotation3.from_axis_angle(X_AXIS, math.pi / 2)
    m = to_affine(compose_rotation_post(amplitude_damping_channel, r))

    np.testing.assert_allclose(m.v, [0.0, -0.3, 0.0], atol=1e-12)


def test_underlying_classical_channel(amplitude_damping_channel, interior_unital_channel):
    classical = underlying_classical(amplitude_damping_channel)

    assert classical.a_row == (1.0, 0.0)
    assert classical.f_row == pytest.approx((0.3, 0.7))
    assert classical.apply(0.0, 1.0) == pytest.approx((0.3, 0.7))
    assert not classical.is_bistochastic()
    assert underlying_classical(embed_unital(interior_unital_channel)).is_bistochastic()


def test_unital_sample_has_zero_translation(sampler_set, rng):
    rows = sampler_set.get(ChannelKind.unital).sample_batch(rng, 100)
    v, _ = affine_batch(embed_unital_rows(rows))

    np.testing.assert_allclose(v, 0.0, atol=1e-15)


def test_rotation_seeds_are_reproducible():
    a = Rotation3.random(RngStream(5).generator).matrix
    b = Rotation3.random(RngStream(5).generator).matrix

    np.testing.assert_array_equal(a, b)
