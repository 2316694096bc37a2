import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nordenslant.errors import DegenerateFrame, ValidationError
from nordenslant.semiriemann import (
    CausalCharacter,
    Metric,
    causal_character,
    induced_gram,
    inertia,
    normal_frame,
    tangent_frame,
    tangential_projection,
)

G = Metric.diag(1, -1, 1, -1)


@pytest.mark.parametrize("v,want", [
    ((1, 0, 0, 0), CausalCharacter.SPACELIKE),
    ((0, 1, 0, 0), CausalCharacter.TIMELIKE),
    ((1, 1, 0, 0), CausalCharacter.LIGHTLIKE),
])
def test_causal_character(v, want):
    assert causal_character(np.array(v, float), G) is want


def test_causal_character_band_is_relative():
    v = np.array([1.0, 1.0 + 1e-11, 0, 0]) * 1e6
    assert causal_character(v, G) is CausalCharacter.LIGHTLIKE


def test_causal_character_dimension_mismatch():
    with pytest.raises(ValidationError):
        causal_character(np.ones(3), G)


def test_metric_rejects_asymmetric_and_singular():
    with pytest.raises(ValidationError):
        Metric(np.array([[1.0, 0.1], [0.0, -1.0]]))
    with pytest.raises(ValidationError):
        Metric(np.diag([1.0, 0.0]))


def test_metric_signature():
    assert G.signature == (2, 2)
    assert Metric.diag(-1, 1, 1, -1).signature == (2, 2)
    assert Metric.diag(1, 1, 1).signature == (3, 0)
    assert inertia(np.diag([2.0, -3.0, -1.0])) == (1, 2)


def test_induced_gram_examples():
    E = np.eye(4)[:, :2]
    assert np.array_equal(induced_gram(E, G), np.diag([1.0, -1.0]))
    a, b = 1.7, -0.4
    B = np.array([[a, 0], [0, 1], [b, 0], [1, 0]], float)
    assert np.allclose(induced_gram(B, G), np.diag([a * a + b * b - 1, -1.0]), atol=1e-15)
    k, v = 1.3, 0.8
    B = np.array([[1, 0], [0, k * np.sinh(v)], [0, 1], [0, k * np.cosh(v)]])
    G1 = Metric.diag(1, 1, -1, -1)
    assert np.allclose(induced_gram(B, G1), np.diag([1.0, -1 - k * k]), atol=1e-14)


def test_tangential_projection_examples():
    frame = tangent_frame(np.eye(4)[:, :2], G)
    coeffs, res = tangential_projection(G, frame, np.array([1.0, 2, 3, 4]))
    assert np.allclose(coeffs, [1, 2]) and np.allclose(res, [0, 0, 3, 4])

    B = np.array([[2, 0], [0, 1], [0, 0], [1, 0]], float)
    frame = tangent_frame(B, G)
    coeffs, res = tangential_projection(G, frame, np.array([0.0, 2, 1, 0]))
    assert np.allclose(coeffs, [0, 2], atol=1e-15)
    assert np.allclose(res, [0, 0, 1, 0], atol=1e-15)


def test_projection_of_tangent_vector_has_no_residual():
    B = np.array([[2, 0], [0, 1], [0.5, 0], [1, 0]], float)
    frame = tangent_frame(B, G)
    c = np.array([0.3, -1.2])
    coeffs, res = tangential_projection(G, frame, B @ c)
    assert np.allclose(coeffs, c, atol=1e-10) and np.max(np.abs(res)) < 1e-12


def test_normal_frame_examples():
    N = normal_frame(G, tangent_frame(np.eye(4)[:, :2], G))
    assert np.allclose(N[:2], 0)
    assert np.linalg.matrix_rank(N[2:]) == 2

    c = np.sqrt(0.6)
    s = np.sqrt(0.4)
    B = np.array([[1, 0], [0, c], [0, s], [0, 0]])
    N = normal_frame(G, tangent_frame(B, G))
    assert N.shape == (4, 2)
    assert np.max(np.abs(B.T @ G.entries @ N)) <= 1e-10


def test_light_like_frame_is_degenerate():
    frame = tangent_frame(np.array([[1.0], [1.0], [0.0], [0.0]]), G)
    assert frame.degenerate
    with pytest.raises(DegenerateFrame):
        normal_frame(G, frame)
    with pytest.raises(DegenerateFrame):
        tangential_projection(G, frame, np.ones(4))


def test_rank_deficient_frame_is_degenerate():
    B = np.array([[1.0, 2.0], [0, 0], [0, 0], [0, 0]])
    assert tangent_frame(B, G).degenerate


frames = st.lists(st.floats(-3, 3, allow_nan=False), min_size=8, max_size=8).map(
    lambda xs: np.array(xs).reshape(4, 2))
mats = st.lists(st.floats(-2, 2, allow_nan=False), min_size=4, max_size=4).map(
    lambda xs: np.array(xs).reshape(2, 2))


@settings(max_examples=200, deadline=None)
@given(frames, st.lists(st.floats(-5, 5, allow_nan=False), min_size=4, max_size=4))
def test_projection_residual_is_orthogonal_and_idempotent(B, w):
    frame = tangent_frame(B, G)
    if frame.degenerate:
        return
    w = np.array(w)
    coeffs, res = tangential_projection(G, frame, w)
    scale = max(1.0, np.max(np.abs(B)) ** 2 * max(1.0, np.max(np.abs(w))))
    cond = np.linalg.cond(frame.gram)
    assert np.max(np.abs(B.T @ G.entries @ res)) <= 1e-9 * scale * cond
    again, _ = tangential_projection(G, frame, B @ coeffs)
    assert np.allclose(again, coeffs, atol=1e-10 * cond * max(1.0, np.max(np.abs(coeffs))))


@settings(max_examples=200, deadline=None)
@given(frames, mats)
def test_signature_invariant_under_reparametrization(B, M):
    frame = tangent_frame(B, G)
    if frame.degenerate or abs(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) < 1e-2:
        return
    other = tangent_frame(B @ M, G)
    if other.degenerate:
        return
    assert other.signature == frame.signature


@settings(max_examples=200, deadline=None)
@given(frames)
def test_tangent_and_normal_spaces_split_the_ambient(B):
    frame = tangent_frame(B, G)
    if frame.degenerate:
        return
    N = normal_frame(G, frame)
    assert N.shape == (4, 2)
    assert np.linalg.matrix_rank(np.hstack([B, N])) == 4
