"""Sequence classification: exact finite-dimensional verdicts and ladder
diagnostics of the infinite-dimensional class.

At a fixed truncation the frame bounds are the extreme squared singular
values of the analysis matrix; the infinite-dimensional class can only be
diagnosed, by tracking how the bounds move along a truncation ladder.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import scipy.linalg

from .core import DEFAULT_TOL, ConvergenceVerdict, Tolerances, TruncationLadder, partial_sum_trend
from .errors import NotPositiveDefinite
from .operators import OperatorBundle, build_bundle
from .sequences import SequenceSpec

__all__ = [
    "ClassificationReport",
    "AsymptoticDiagnosis",
    "WeightedFrameBounds",
    "classify_finite",
    "diagnose_asymptotic",
    "check_biorthogonal",
    "weighted_space_frame",
]


@dataclass(frozen=True)
class ClassificationReport:
    complete: bool
    bessel_bound: float  # B = sigma_max(C)^2
    lower_bound: float  # A = sigma_{dim}(C)^2, 0 when count < dim
    frame: bool
    riesz_fischer_bound: float  # smallest nonzero singular value of D, squared
    riesz_fischer_possible: bool  # False for overcomplete truncations
    riesz_basis: bool
    dim: int
    count: int
    biorthogonal_partner_checked: Optional[bool] = None
    asymptotic: Optional["AsymptoticDiagnosis"] = None
    notes: tuple = ()

    def to_dict(self) -> dict:
        d = {
            "complete": self.complete,
            "bessel_bound": self.bessel_bound,
            "lower_bound": self.lower_bound,
            "frame": self.frame,
            "riesz_fischer_bound": self.riesz_fischer_bound,
            "riesz_fischer_possible": self.riesz_fischer_possible,
            "riesz_basis": self.riesz_basis,
            "dim": self.dim,
            "count": self.count,
            "notes": list(self.notes),
        }
        if self.biorthogonal_partner_checked is not None:
            d["biorthogonal_partner_checked"] = self.biorthogonal_partner_checked
        if self.asymptotic is not None:
            d["asymptotic"] = self.asymptotic.to_dict()
        return d


@dataclass(frozen=True)
class AsymptoticDiagnosis:
    """Trend of the frame bounds along a ladder, with the inferred class.

    Heuristic: a finite ladder cannot certify an infinite-dimensional class.
    """

    bessel_trend: ConvergenceVerdict
    lower_trend: ConvergenceVerdict
    inferred_class: str
    sizes: tuple = ()
    upper_bounds: tuple = ()
    lower_bounds: tuple = ()

    def to_dict(self) -> dict:
        return {
            "inferred_class": self.inferred_class,
            "heuristic": True,
            "sizes": list(self.sizes),
            "upper_bounds": list(self.upper_bounds),
            "lower_bounds": list(self.lower_bounds),
            "bessel_trend": _verdict_dict(self.bessel_trend),
            "lower_trend": _verdict_dict(self.lower_trend),
        }


def _verdict_dict(v: ConvergenceVerdict) -> dict:
    d = {"kind": v.kind}
    if v.growth_exponent is not None:
        d["growth_exponent"] = v.growth_exponent
    if v.cauchy_gap is not None:
        d["cauchy_gap"] = v.cauchy_gap
    if v.limit_estimate is not None and np.isscalar(v.limit_estimate):
        lim = complex(v.limit_estimate)
        d["limit_estimate"] = lim.real if lim.imag == 0 else [lim.real, lim.imag]
    return d


def classify_finite(
    bundle: OperatorBundle, tol: Tolerances = DEFAULT_TOL
) -> ClassificationReport:
    """Exact classification of the truncated sequence from the SVD of C."""
    s = bundle.singular_values
    dim, count = bundle.dim, bundle.count
    smax = float(s[0]) if s.size else 0.0
    cutoff = tol.rank_tol * smax
    rank = int(np.count_nonzero(s > cutoff)) if smax > 0 else 0

    B = smax**2
    sigma_dim = float(s[dim - 1]) if (count >= dim and s.size >= dim) else 0.0
    A = sigma_dim**2
    complete = rank == dim
    frame = sigma_dim > cutoff and smax > 0
    riesz_basis = frame and count == dim

    nonzero = s[s > cutoff]
    rf_bound = float(nonzero[-1] ** 2) if nonzero.size else 0.0
    rf_possible = count <= dim

    notes: List[str] = []
    if frame:
        # finite-dim fact: ||S^{-1}|| = 1/A; inverse-norm bound stated in
        # terms of 1/A (the literal A-form degenerates dimensionally)
        notes.append(f"frame_inverse_norm_bound=1/A={1.0 / A:.6g}")

    return ClassificationReport(
        complete=complete,
        bessel_bound=B,
        lower_bound=A,
        frame=frame,
        riesz_fischer_bound=rf_bound,
        riesz_fischer_possible=rf_possible,
        riesz_basis=riesz_basis,
        dim=dim,
        count=count,
        notes=tuple(notes),
    )


def diagnose_asymptotic(
    spec: SequenceSpec, ladder: TruncationLadder, tol: Tolerances = DEFAULT_TOL
) -> AsymptoticDiagnosis:
    """Track frame bounds with dim = N and count = arity * N along the ladder."""
    sizes = ladder.sizes
    uppers, lowers, completes = [], [], []
    for N in sizes:
        bundle = build_bundle(spec, N, spec.arity * N, tol)
        rep = classify_finite(bundle, tol)
        uppers.append(rep.bessel_bound)
        lowers.append(rep.lower_bound)
        completes.append(rep.complete)

    bessel_trend = partial_sum_trend(sizes, [complex(b) for b in uppers], tol)
    lower_trend = partial_sum_trend(sizes, [complex(a) for a in lowers], tol)

    slope_b = _loglog_slope(sizes, uppers)
    slope_a = _loglog_slope(sizes, lowers)

    b_bounded = slope_b is not None and slope_b < tol.growth_min
    a_positive = (
        all(a > 0 for a in lowers)
        and slope_a is not None
        and slope_a > -tol.growth_min
    )

    if slope_a is None and slope_b is None:
        inferred = "Inconclusive"
    elif a_positive and b_bounded:
        flat = abs(slope_a) < tol.growth_min and abs(slope_b) < tol.growth_min
        inferred = "RieszBasis" if (flat and spec.arity == 1) else "Frame"
    elif a_positive and not b_bounded:
        inferred = "LowerSemiFrame"
    elif b_bounded and not a_positive:
        inferred = "UpperSemiFrame" if all(completes) else "Bessel"
    else:
        inferred = "None"

    return AsymptoticDiagnosis(
        bessel_trend=bessel_trend,
        lower_trend=lower_trend,
        inferred_class=inferred,
        sizes=tuple(sizes),
        upper_bounds=tuple(uppers),
        lower_bounds=tuple(lowers),
    )


def _loglog_slope(sizes, values) -> Optional[float]:
    v = np.asarray(values, dtype=float)
    if np.any(v <= 0):
        return None
    return float(np.polyfit(np.log(np.asarray(sizes, float)), np.log(v), 1)[0])


def check_biorthogonal(
    specA: SequenceSpec,
    specB: SequenceSpec,
    dim: int,
    count: int,
    tol: Tolerances = DEFAULT_TOL,
) -> bool:
    """True iff <xi_n, eta_m> = delta_{n,m} on the leading count x count window."""
    XA = specA.materialize(dim, count)
    XB = specB.materialize(dim, count)
    cross = XA.T @ XB.conj()  # cross[i, j] = <xi_{i+1}, eta_{j+1}>
    return bool(np.max(np.abs(cross - np.eye(count))) <= tol.eq_tol)


@dataclass(frozen=True)
class WeightedFrameBounds:
    """Frame bounds of {R^{-1} xi_n} in the inner product <f, R g>."""

    lower: float
    upper: float
    identity_error: float  # max deviation of <f, xi_n> = <f, xi'_n>_+

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "identity_error": self.identity_error,
        }


def weighted_space_frame(
    spec: SequenceSpec,
    R: np.ndarray,
    dim: int,
    count: int,
    tol: Tolerances = DEFAULT_TOL,
    rng: Optional[np.random.Generator] = None,
) -> WeightedFrameBounds:
    """Bounds A+, B+ with A+ ||f||_+^2 <= sum |<f, xi'_n>_+|^2 <= B+ ||f||_+^2,
    where xi'_n = R^{-1} xi_n and <f, g>_+ = <f, R g>.

    Since <f, xi'_n>_+ = <f, xi_n>, the extreme values are the generalized
    eigenvalue extremes of (S, R) with S the frame matrix of xi.
    """
    R = np.atleast_2d(np.asarray(R, dtype=complex))
    if R.shape != (dim, dim):
        raise NotPositiveDefinite(f"R must be {dim}x{dim} Hermitian positive definite")
    if np.max(np.abs(R - R.conj().T)) > tol.eq_tol * max(1.0, np.max(np.abs(R))):
        raise NotPositiveDefinite("R is not Hermitian")
    eigs = np.linalg.eigvalsh(R)
    if eigs[0] <= tol.rank_tol * max(eigs[-1], 0.0):
        raise NotPositiveDefinite("R has a nonpositive (or negligible) eigenvalue")

    X = spec.materialize(dim, count)
    S = X @ X.conj().T
    gen = scipy.linalg.eigh(S, R, eigvals_only=True)
    lower, upper = float(gen[0]), float(gen[-1])

    # spot-check the defining identity <f, xi_n> = <f, R (R^{-1} xi_n)>
    rng = rng or np.random.default_rng(0)
    Xp = np.linalg.solve(R, X)
    F = rng.standard_normal((dim, 8)) + 1j * rng.standard_normal((dim, 8))
    lhs = X.conj().T @ F  # <f, xi_n> for every f column
    rhs = (R @ Xp).conj().T @ F
    identity_error = float(np.max(np.abs(lhs - rhs))) if F.size else 0.0

    return WeightedFrameBounds(lower=lower, upper=upper, identity_error=identity_error)
