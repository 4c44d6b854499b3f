"""Analysis/synthesis/frame/Gram matrices and subspace geometry.

Conventions: for columns xi_n (dim x count matrix X), the analysis matrix is
C = X^H, so (C f)_n = <f, xi_n> including the complex conjugation; the
synthesis matrix is D = C^H = X; the frame matrix is S = D C and the Gram
matrix is G = C D. Rank decisions use a singular-value cutoff relative to
the largest singular value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .core import DEFAULT_TOL, Tolerances
from .errors import DimensionMismatch
from .sequences import OperatorImage, SequenceSpec

__all__ = [
    "OperatorBundle",
    "SubspaceBasis",
    "build_bundle",
    "bundle_from_columns",
    "range_basis",
    "complement_basis",
    "principal_angles",
    "direct_sum_check",
    "pseudo_inverse",
    "operator_image_bundle",
    "ImageBundleResult",
]


@dataclass(frozen=True)
class OperatorBundle:
    """Materialized operators of one sequence at a fixed truncation."""

    columns: np.ndarray  # dim x count, column n is xi_n
    C: np.ndarray  # count x dim analysis
    D: np.ndarray  # dim x count synthesis, D = C^H
    S: np.ndarray  # dim x dim frame matrix, S = D C
    G: np.ndarray  # count x count Gram matrix, G = C D
    svd_C: Tuple[np.ndarray, np.ndarray, np.ndarray] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.columns.shape[0]

    @property
    def count(self) -> int:
        return self.columns.shape[1]

    @property
    def singular_values(self) -> np.ndarray:
        return self.svd_C[1]

    def rank(self, tol: Tolerances = DEFAULT_TOL) -> int:
        s = self.singular_values
        if s.size == 0 or s[0] == 0:
            return 0
        return int(np.count_nonzero(s > tol.rank_tol * s[0]))


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal columns spanning a subspace of the truncated l2 space."""

    Q: np.ndarray
    ambient_dim: int

    @property
    def dim(self) -> int:
        return self.Q.shape[1]


def bundle_from_columns(X: np.ndarray) -> OperatorBundle:
    X = np.atleast_2d(np.asarray(X, dtype=complex))
    C = X.conj().T
    D = X
    S = D @ C
    G = C @ D
    svd_C = np.linalg.svd(C)
    return OperatorBundle(columns=X, C=C, D=D, S=S, G=G, svd_C=svd_C)


def build_bundle(
    spec: SequenceSpec, dim: int, count: int, tol: Tolerances = DEFAULT_TOL
) -> OperatorBundle:
    return bundle_from_columns(spec.materialize(dim, count))


def range_basis(M: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the column space of M, by SVD with relative cutoff."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return SubspaceBasis(np.zeros((M.shape[0], 0), dtype=complex), M.shape[0])
    r = int(np.count_nonzero(s > tol.rank_tol * s[0]))
    return SubspaceBasis(U[:, :r], M.shape[0])


def complement_basis(
    M: np.ndarray, tol: Tolerances = DEFAULT_TOL
) -> SubspaceBasis:
    """Orthonormal basis of the orthogonal complement of the column space."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    m = M.shape[0]
    U, s, _ = np.linalg.svd(M, full_matrices=True)
    if s.size == 0 or s[0] == 0:
        r = 0
    else:
        r = int(np.count_nonzero(s > tol.rank_tol * s[0]))
    return SubspaceBasis(U[:, r:], m)


def principal_angles(U: SubspaceBasis, W: SubspaceBasis) -> np.ndarray:
    """Principal angles between two subspaces, ascending, in [0, pi/2]."""
    if U.ambient_dim != W.ambient_dim:
        raise DimensionMismatch(
            f"ambient dims differ: {U.ambient_dim} vs {W.ambient_dim}"
        )
    if U.dim == 0 or W.dim == 0:
        return np.empty(0)
    s = np.linalg.svd(U.Q.conj().T @ W.Q, compute_uv=False)
    return np.arccos(np.clip(s, 0.0, 1.0))


def direct_sum_check(
    U: SubspaceBasis, W: SubspaceBasis, tol: Tolerances = DEFAULT_TOL
) -> str:
    """Whether U and W decompose the ambient space as a direct sum.

    Returns "holds", "fails_intersection" or "fails_span".
    """
    if U.ambient_dim != W.ambient_dim:
        raise DimensionMismatch(
            f"ambient dims differ: {U.ambient_dim} vs {W.ambient_dim}"
        )
    total = U.dim + W.dim
    if total < U.ambient_dim:
        return "fails_span"
    stacked = np.hstack([U.Q, W.Q])
    s = np.linalg.svd(stacked, compute_uv=False)
    rank_deficient = s[-1] <= tol.rank_tol * s[0]
    if total == U.ambient_dim and not rank_deficient:
        return "holds"
    # overfull or rank deficient: the pieces overlap
    return "fails_intersection"


def pseudo_inverse(M: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    return np.linalg.pinv(M, rcond=tol.rank_tol)


@dataclass(frozen=True)
class ImageBundleResult:
    """Bundle of xi_n = V e_n with the defining operator identities checked."""

    bundle: OperatorBundle
    analysis_error: float  # max |C - V^H|
    frame_error: float  # max |S - V V^H|

    def ok(self, tol: Tolerances = DEFAULT_TOL) -> bool:
        return self.analysis_error <= tol.eq_tol and self.frame_error <= tol.eq_tol


def operator_image_bundle(
    V: np.ndarray, tol: Tolerances = DEFAULT_TOL
) -> ImageBundleResult:
    V = np.atleast_2d(np.asarray(V, dtype=complex))
    if V.shape[0] != V.shape[1]:
        raise DimensionMismatch("operator must be square for the truncation window")
    bundle = build_bundle(OperatorImage(V), V.shape[0], V.shape[1], tol)
    analysis_error = float(np.max(np.abs(bundle.C - V.conj().T)))
    frame_error = float(np.max(np.abs(bundle.S - V @ V.conj().T)))
    return ImageBundleResult(bundle, analysis_error, frame_error)
