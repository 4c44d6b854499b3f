"""Sesquilinear forms of one and two sequences: evaluation, inf-sup
constants, 0-closedness and the weighted lambda-closedness region.

The two-sequence form is Omega(f, g) = sum_n <f, xi_n> <eta_n, g>. At a
truncation its 0-closedness is decided twice: via the subspace route (both
sequences injective-analysis plus a direct-sum condition on the analysis
ranges) and via invertibility of the associated matrix C_eta^H C_xi; the
two verdicts must agree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .core import (
    DEFAULT_TOL,
    CoeffVector,
    ConvergenceVerdict,
    Tolerances,
    TruncationLadder,
    partial_sum_trend,
)
from .errors import DegenerateNormWarning, DimensionMismatch
from .operators import (
    OperatorBundle,
    SubspaceBasis,
    build_bundle,
    complement_basis,
    direct_sum_check,
    principal_angles,
    range_basis,
)
from .sequences import SequenceSpec

__all__ = [
    "FormAssessment",
    "InfSupConstants",
    "LambdaVerdict",
    "ShiftResult",
    "eval_form_pair",
    "eval_gram_form",
    "infsup_constants",
    "zero_closed_check",
    "lambda_region_weighted",
    "solvability_shift",
    "weighted_riesz_associated",
]


def _term_coefficient(spec: SequenceSpec, n: int, f: np.ndarray) -> complex:
    """<f, xi_n> from the sparse support of xi_n."""
    idx, val = spec.term_entries(n)
    if len(idx) == 0:
        return 0.0 + 0j
    live = idx[np.abs(val) > 0]
    if live.size and live.max() >= f.size:
        from .errors import SupportOverflow

        raise SupportOverflow(
            f"term {n} exceeds the ambient dimension {f.size}"
        )
    return complex(np.sum(f[idx] * np.conj(val)))


def eval_form_pair(
    spec_xi: SequenceSpec,
    spec_eta: SequenceSpec,
    f: CoeffVector,
    g: CoeffVector,
    ladder: TruncationLadder,
    tol: Tolerances = DEFAULT_TOL,
) -> Tuple[complex, ConvergenceVerdict]:
    """Ordered partial sums of sum_n <f, xi_n> <eta_n, g> along the ladder."""
    if f.dim != g.dim:
        raise DimensionMismatch(f"dims differ: {f.dim} vs {g.dim}")
    fv, gv = f.coeffs, g.coeffs
    sums = []
    acc = 0.0 + 0j
    rungs = ladder.sizes
    next_rung = 0
    for n in range(1, rungs[-1] + 1):
        a = _term_coefficient(spec_xi, n, fv)
        # <eta_n, g> = conj(<g, eta_n>)
        b = np.conj(_term_coefficient(spec_eta, n, gv))
        acc += a * b
        if n == rungs[next_rung]:
            sums.append(acc)
            next_rung += 1
    verdict = partial_sum_trend(rungs, sums, tol)
    value = verdict.limit_estimate if verdict.kind == "Converged" else sums[-1]
    return complex(value), verdict


def eval_gram_form(
    spec_xi: SequenceSpec,
    c: Sequence[complex],
    d: Sequence[complex],
    dim: int,
    count: int,
    tol: Tolerances = DEFAULT_TOL,
) -> complex:
    """Gram form sum_{i,j} c_i conj(d_j) <xi_i, xi_j> = <D c, D d>."""
    c = np.asarray(c, dtype=complex).ravel()
    d = np.asarray(d, dtype=complex).ravel()
    if c.size != count or d.size != count:
        raise DimensionMismatch(
            f"coefficient lists must have length count={count}"
        )
    X = spec_xi.materialize(dim, count)
    return complex(np.vdot(X @ d, X @ c))


@dataclass(frozen=True)
class InfSupConstants:
    c1: float
    c2: float
    angles: np.ndarray
    degenerate_xi: bool  # C_xi has a nontrivial kernel at this truncation
    degenerate_eta: bool

    def __iter__(self):
        return iter((self.c1, self.c2, self.angles))


def infsup_constants(
    bundle_xi: OperatorBundle,
    bundle_eta: OperatorBundle,
    tol: Tolerances = DEFAULT_TOL,
) -> InfSupConstants:
    """Inf-sup constants of the pair form in the graph-equivalent norms
    ||f||_xi = ||C_xi f||, ||g||_eta = ||C_eta g||.

    c1 = inf over unit u in R(C_xi) of ||P_{R(C_eta)} u||, i.e. the smallest
    singular value of Q_eta^H Q_xi (the cosine of the largest principal
    angle when the ranges have equal dimension); c2 is symmetric.
    """
    if bundle_xi.count != bundle_eta.count:
        raise DimensionMismatch("bundles must share the l2 truncation (count)")
    deg_xi = bundle_xi.rank(tol) < bundle_xi.dim
    deg_eta = bundle_eta.rank(tol) < bundle_eta.dim
    if deg_xi or deg_eta:
        warnings.warn(
            "analysis operator has a nontrivial kernel; inf-sup constants "
            "computed on the quotient",
            DegenerateNormWarning,
        )
    Qxi = range_basis(bundle_xi.C, tol)
    Qeta = range_basis(bundle_eta.C, tol)
    c1 = _min_projection(Qxi, Qeta)
    c2 = _min_projection(Qeta, Qxi)
    angles = principal_angles(Qxi, Qeta)
    return InfSupConstants(c1, c2, angles, deg_xi, deg_eta)


def _min_projection(src: SubspaceBasis, dst: SubspaceBasis) -> float:
    """min over unit u in src of ||P_dst u||."""
    if src.dim == 0:
        return 0.0
    if src.dim > dst.dim:
        return 0.0
    s = np.linalg.svd(dst.Q.conj().T @ src.Q, compute_uv=False)
    return float(s[-1])


@dataclass(frozen=True)
class FormAssessment:
    """Two-sequence form diagnostics at a fixed truncation."""

    null_dim_left: int
    null_dim_right: int
    c1: float
    c2: float
    max_principal_angle: float
    direct_sum: str
    zero_closed: bool
    associated_operator: np.ndarray
    assoc_invertible: bool
    assoc_inverse_norm: Optional[float]
    lower_xi: bool
    lower_eta: bool
    lower_bound_xi: float
    lower_bound_eta: float
    dim: int
    count: int
    finite_truncation: bool = True  # verdicts hold at this truncation only

    def to_dict(self, include_matrix: bool = True) -> dict:
        d = {
            "null_dim_left": self.null_dim_left,
            "null_dim_right": self.null_dim_right,
            "c1": self.c1,
            "c2": self.c2,
            "max_principal_angle": self.max_principal_angle,
            "direct_sum": self.direct_sum,
            "zero_closed": self.zero_closed,
            "assoc_invertible": self.assoc_invertible,
            "assoc_inverse_norm": self.assoc_inverse_norm,
            "lower_xi": self.lower_xi,
            "lower_eta": self.lower_eta,
            "lower_bound_xi": self.lower_bound_xi,
            "lower_bound_eta": self.lower_bound_eta,
            "dim": self.dim,
            "count": self.count,
            "finite_truncation": self.finite_truncation,
        }
        if include_matrix:
            M = self.associated_operator
            d["associated_operator"] = [
                [[float(z.real), float(z.imag)] for z in row] for row in M
            ]
        return d


def zero_closed_check(
    spec_xi: SequenceSpec,
    spec_eta: SequenceSpec,
    dim: int,
    count: int,
    tol: Tolerances = DEFAULT_TOL,
) -> FormAssessment:
    bundle_xi = build_bundle(spec_xi, dim, count, tol)
    bundle_eta = build_bundle(spec_eta, dim, count, tol)
    return zero_closed_from_bundles(bundle_xi, bundle_eta, tol)


def zero_closed_from_bundles(
    bundle_xi: OperatorBundle,
    bundle_eta: OperatorBundle,
    tol: Tolerances = DEFAULT_TOL,
) -> FormAssessment:
    if bundle_xi.dim != bundle_eta.dim or bundle_xi.count != bundle_eta.count:
        raise DimensionMismatch("bundles must share (dim, count)")
    dim, count = bundle_xi.dim, bundle_xi.count

    def lower_data(bundle):
        s = bundle.singular_values
        smax = float(s[0]) if s.size else 0.0
        sigma_dim = float(s[dim - 1]) if (count >= dim and s.size >= dim) else 0.0
        is_lower = smax > 0 and sigma_dim > tol.rank_tol * smax
        return is_lower, sigma_dim**2

    lower_xi, a_xi = lower_data(bundle_xi)
    lower_eta, a_eta = lower_data(bundle_eta)

    # route (b): lower semi-frames plus R(C_xi) (+) R(C_eta)^perp = l2
    R_xi = range_basis(bundle_xi.C, tol)
    R_eta_perp = complement_basis(bundle_eta.C, tol)
    ds = direct_sum_check(R_xi, R_eta_perp, tol)
    route_b = lower_xi and lower_eta and ds == "holds"

    # route (a'): invertibility of the associated matrix C_eta^H C_xi
    assoc = bundle_eta.C.conj().T @ bundle_xi.C
    s_assoc = np.linalg.svd(assoc, compute_uv=False)
    smax_assoc = float(s_assoc[0]) if s_assoc.size else 0.0
    smin_assoc = float(s_assoc[-1]) if s_assoc.size else 0.0
    assoc_invertible = smax_assoc > 0 and smin_assoc > tol.rank_tol * smax_assoc
    assoc_inverse_norm = 1.0 / smin_assoc if assoc_invertible else None

    cutoff = tol.rank_tol * smax_assoc
    rank_assoc = int(np.count_nonzero(s_assoc > cutoff)) if smax_assoc > 0 else 0
    null_left = dim - rank_assoc
    null_right = dim - rank_assoc  # assoc is square; left/right defects agree

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateNormWarning)
        isc = infsup_constants(bundle_xi, bundle_eta, tol)
    max_angle = float(np.max(isc.angles)) if isc.angles.size else 0.0

    return FormAssessment(
        null_dim_left=null_left,
        null_dim_right=null_right,
        c1=isc.c1,
        c2=isc.c2,
        max_principal_angle=max_angle,
        direct_sum=ds,
        zero_closed=route_b,
        associated_operator=assoc,
        assoc_invertible=assoc_invertible,
        assoc_inverse_norm=assoc_inverse_norm,
        lower_xi=lower_xi,
        lower_eta=lower_eta,
        lower_bound_xi=a_xi,
        lower_bound_eta=a_eta,
        dim=dim,
        count=count,
    )


def weighted_riesz_associated(
    alpha: Sequence[complex], V: Optional[np.ndarray] = None
) -> np.ndarray:
    """Associated matrix of the weighted pair xi = {V e_n},
    eta = {alpha_n (V^{-1})^H e_n}: similar to diag(alpha), so its spectrum
    is exactly {alpha_n}."""
    alpha = np.asarray(alpha, dtype=complex).ravel()
    N = alpha.size
    if V is None:
        return np.diag(alpha)
    V = np.atleast_2d(np.asarray(V, dtype=complex))
    if V.shape != (N, N):
        raise DimensionMismatch("V must be square of size len(alpha)")
    Vh = V.conj().T
    return np.linalg.solve(Vh, np.diag(alpha) @ Vh)


@dataclass(frozen=True)
class LambdaVerdict:
    lam: complex
    distance: float  # distance from lam to the weight set + accumulation pts
    lambda_closed: bool
    resolvent_invertible: bool  # sigma_min(H - lam I) above the rank cutoff
    sigma_min: float

    def to_dict(self) -> dict:
        lam = complex(self.lam)
        return {
            "lambda": lam.real if lam.imag == 0 else [lam.real, lam.imag],
            "distance": self.distance,
            "lambda_closed": self.lambda_closed,
            "resolvent_invertible": self.resolvent_invertible,
            "sigma_min": self.sigma_min,
        }


def lambda_region_weighted(
    alpha: Sequence[complex],
    lambdas: Sequence[complex],
    tol: Tolerances = DEFAULT_TOL,
    V: Optional[np.ndarray] = None,
    accumulation_points: Sequence[complex] = (),
) -> list:
    """Per-probe lambda-closedness of the weighted Riesz form.

    lambda-closed iff the distance from lambda to the weight values (plus the
    declared accumulation points; closures of infinite sets are not inferred)
    exceeds eq_tol; cross-checked against invertibility of H - lambda I at
    the truncation.
    """
    alpha = np.asarray(alpha, dtype=complex).ravel()
    H = weighted_riesz_associated(alpha, V)
    spectrum = np.concatenate(
        [alpha, np.asarray(list(accumulation_points), dtype=complex)]
    )
    out = []
    for lam in lambdas:
        lam = complex(lam)
        dist = float(np.min(np.abs(spectrum - lam)))
        s = np.linalg.svd(H - lam * np.eye(alpha.size), compute_uv=False)
        smax, smin = float(s[0]), float(s[-1])
        invertible = smax > 0 and smin > tol.rank_tol * smax
        out.append(
            LambdaVerdict(
                lam=lam,
                distance=dist,
                lambda_closed=dist > tol.eq_tol,
                resolvent_invertible=invertible,
                sigma_min=smin,
            )
        )
    return out


@dataclass(frozen=True)
class ShiftResult:
    sigma: np.ndarray
    shifted: np.ndarray  # alpha + sigma
    min_shifted_modulus: float
    shifted_zero_closed: bool

    def to_dict(self) -> dict:
        return {
            "sigma": [_cx(v) for v in self.sigma],
            "shifted": [_cx(v) for v in self.shifted],
            "min_shifted_modulus": self.min_shifted_modulus,
            "shifted_zero_closed": self.shifted_zero_closed,
        }


def _cx(z):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def solvability_shift(
    alpha: Sequence[complex], tol: Tolerances = DEFAULT_TOL
) -> ShiftResult:
    """Bounded shift making the weighted form 0-closed:
    sigma_n = 1 - alpha_n when |alpha_n| <= 1, else 0; then
    |alpha_n + sigma_n| >= 1 for every n."""
    alpha = np.asarray(alpha, dtype=complex).ravel()
    sigma = np.where(np.abs(alpha) <= 1.0, 1.0 - alpha, 0.0 + 0j)
    shifted = alpha + sigma
    min_mod = float(np.min(np.abs(shifted)))
    H = np.diag(shifted)
    s = np.linalg.svd(H, compute_uv=False)
    zero_closed = float(s[-1]) > tol.rank_tol * float(s[0])
    return ShiftResult(
        sigma=sigma,
        shifted=shifted,
        min_shifted_modulus=min_mod,
        shifted_zero_closed=zero_closed,
    )
