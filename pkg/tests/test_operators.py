import numpy as np
import pytest

from seqforms import (
    DiagonalWeights,
    ScalarRule,
    build_bundle,
    bundle_from_columns,
    complement_basis,
    direct_sum_check,
    operator_image_bundle,
    principal_angles,
    pseudo_inverse,
    range_basis,
)
from seqforms.errors import DimensionMismatch


def random_columns(dim, count, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((dim, count)) + 1j * rng.standard_normal((dim, count))


def test_bundle_conventions():
    X = random_columns(4, 6, 0)
    b = bundle_from_columns(X)
    assert b.dim == 4 and b.count == 6
    assert np.allclose(b.C, X.conj().T)
    assert np.allclose(b.D, b.C.conj().T)
    assert np.allclose(b.S, X @ X.conj().T)
    assert np.allclose(b.G, X.conj().T @ X)
    # (C f)_n = <f, xi_n>
    f = random_columns(4, 1, 1).ravel()
    coeffs = b.C @ f
    for n in range(6):
        assert coeffs[n] == pytest.approx(np.vdot(X[:, n], f))


def test_gram_and_frame_share_nonzero_spectrum():
    X = random_columns(3, 5, 2)
    b = bundle_from_columns(X)
    eig_S = np.sort(np.linalg.eigvalsh(b.S))
    eig_G = np.sort(np.linalg.eigvalsh(b.G))[-3:]
    assert np.allclose(eig_S, eig_G, atol=1e-10)


def test_build_bundle_from_rule():
    b = build_bundle(DiagonalWeights(ScalarRule("n")), 4, 4)
    assert np.allclose(b.S, np.diag([1.0, 4.0, 9.0, 16.0]))
    assert b.rank() == 4


def test_range_and_complement_bases():
    X = np.zeros((5, 3), dtype=complex)
    X[0, 0] = 1.0
    X[1, 1] = 2.0
    X[1, 2] = -1.0  # third column dependent
    R = range_basis(X)
    N = complement_basis(X)
    assert R.dim == 2 and N.dim == 3
    assert np.allclose(R.Q.conj().T @ N.Q, 0, atol=1e-12)
    stacked = np.hstack([R.Q, N.Q])
    assert np.allclose(stacked.conj().T @ stacked, np.eye(5), atol=1e-12)


def test_principal_angles_known_plane():
    theta = 0.3
    U = range_basis(np.array([[1.0], [0.0]]))
    W = range_basis(np.array([[np.cos(theta)], [np.sin(theta)]]))
    angles = principal_angles(U, W)
    assert angles[0] == pytest.approx(theta, abs=1e-12)
    with pytest.raises(DimensionMismatch):
        principal_angles(U, range_basis(np.eye(3)))


def test_direct_sum_check_cases():
    e = np.eye(3)
    span01 = range_basis(e[:, :2])
    span2 = range_basis(e[:, 2:])
    span12 = range_basis(e[:, 1:])
    assert direct_sum_check(span01, span2) == "holds"
    assert direct_sum_check(span01, span12) == "fails_intersection"
    assert direct_sum_check(span2, span2) == "fails_span"


def test_pseudo_inverse_reconstructs_on_range():
    X = random_columns(5, 3, 3)
    P = pseudo_inverse(X)
    assert np.allclose(X @ P @ X, X, atol=1e-10)


def test_operator_image_identities():
    V = random_columns(6, 6, 4)
    res = operator_image_bundle(V)
    assert res.analysis_error < 1e-12
    assert res.frame_error < 1e-12
    assert res.ok()
    with pytest.raises(DimensionMismatch):
        operator_image_bundle(random_columns(3, 4, 5))
