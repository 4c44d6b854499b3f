"""Canonical duals and weak reconstruction formulas.

A canonical dual of a truncated lower semi-frame is {S^{-1} xi_n}; for a
0-closed two-sequence form with associated matrix T the left/right duals
{(T^{-1})^H xi_n} and {T^{-1} eta_n} reconstruct the identity against eta
and xi respectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .core import DEFAULT_TOL, CoeffVector, Tolerances
from .errors import DimensionMismatch, NotLowerSemiFrame, NotZeroClosed
from .forms import FormAssessment
from .operators import OperatorBundle

__all__ = [
    "DualSystem",
    "canonical_dual",
    "reconstruct_with",
    "reproducing_pair_duals",
]


@dataclass(frozen=True)
class DualSystem:
    """A primal family with its dual columns and the coefficient partner.

    reconstruct_with computes sum_n <f, partner_n> dual_n; for the canonical
    dual the partner is the primal family itself.
    """

    primal: np.ndarray  # dim x count
    dual: np.ndarray  # dim x count
    kind: str  # canonical_lower | reproducing_left | reproducing_right
    bessel_bound_of_dual: float
    partner: Optional[np.ndarray] = None

    @property
    def coefficient_columns(self) -> np.ndarray:
        return self.primal if self.partner is None else self.partner

    def to_dict(self, include_columns: bool = True) -> dict:
        d = {
            "kind": self.kind,
            "bessel_bound_of_dual": self.bessel_bound_of_dual,
            "dim": int(self.primal.shape[0]),
            "count": int(self.primal.shape[1]),
        }
        if include_columns:
            d["dual_columns"] = [
                [[float(z.real), float(z.imag)] for z in row] for row in self.dual
            ]
        return d


def canonical_dual(
    bundle: OperatorBundle, tol: Tolerances = DEFAULT_TOL
) -> DualSystem:
    """Dual columns S^{-1} xi_n of a truncated lower semi-frame.

    The reported Bessel bound of the dual is sigma_max(C S^{-1})^2.
    """
    s = bundle.singular_values
    dim, count = bundle.dim, bundle.count
    smax = float(s[0]) if s.size else 0.0
    sigma_dim = float(s[dim - 1]) if (count >= dim and s.size >= dim) else 0.0
    if smax == 0 or sigma_dim <= tol.rank_tol * smax:
        raise NotLowerSemiFrame(
            "frame matrix is singular at this truncation (A = 0)"
        )
    S_inv = np.linalg.inv(bundle.S)
    dual = S_inv @ bundle.columns
    bound = float(np.linalg.norm(bundle.C @ S_inv, 2) ** 2)
    return DualSystem(
        primal=bundle.columns,
        dual=dual,
        kind="canonical_lower",
        bessel_bound_of_dual=bound,
    )


def reconstruct_with(
    dual_system: DualSystem, f: CoeffVector, tol: Tolerances = DEFAULT_TOL
) -> Tuple[CoeffVector, float]:
    """sum_n <f, partner_n> dual_n and the Euclidean residual ||sum - f||."""
    P = dual_system.coefficient_columns
    if f.dim != P.shape[0]:
        raise DimensionMismatch(
            f"vector dim {f.dim} does not match system dim {P.shape[0]}"
        )
    coeffs = P.conj().T @ f.coeffs  # <f, partner_n>
    recon = dual_system.dual @ coeffs
    residual = float(np.linalg.norm(recon - f.coeffs))
    return CoeffVector(recon), residual


def reproducing_pair_duals(
    assessment: FormAssessment,
    bundle_xi: OperatorBundle,
    bundle_eta: OperatorBundle,
    tol: Tolerances = DEFAULT_TOL,
) -> Tuple[DualSystem, DualSystem]:
    """Left dual {(T^{-1})^H xi_n} paired against eta, and right dual
    {T^{-1} eta_n} paired against xi, with T the associated matrix."""
    if not assessment.zero_closed:
        raise NotZeroClosed("the pair form is not 0-closed at this truncation")
    T = assessment.associated_operator
    T_inv = np.linalg.inv(T)
    left_cols = T_inv.conj().T @ bundle_xi.columns
    right_cols = T_inv @ bundle_eta.columns
    left_bound = float(np.linalg.norm(bundle_xi.C @ T_inv, 2) ** 2)
    right_bound = float(np.linalg.norm(bundle_eta.C @ T_inv.conj().T, 2) ** 2)
    left = DualSystem(
        primal=bundle_xi.columns,
        dual=left_cols,
        kind="reproducing_left",
        bessel_bound_of_dual=left_bound,
        partner=bundle_eta.columns,
    )
    right = DualSystem(
        primal=bundle_eta.columns,
        dual=right_cols,
        kind="reproducing_right",
        bessel_bound_of_dual=right_bound,
        partner=bundle_xi.columns,
    )
    return left, right
