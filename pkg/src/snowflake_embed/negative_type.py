"""Quadratic forms of negative type and general-position certificates.

A finite metric is of negative type when L D L^T <= 0 for every weight
vector L with zero sum, D being the squared-distance matrix; by Schoenberg's
criterion this is equivalent to isometric embeddability into Hilbert space.
The decision here is spectral: the condition holds iff -1/2 P D P
(P the centering projector) is positive semidefinite on the sum-zero
subspace, so we diagonalize that restriction instead of searching over L.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadPartition, DimensionMismatch, DomainError, NotStrict
from .metric import (
    FiniteMetricSpace,
    SnowflakeExponent,
    as_point_cloud,
    euclidean_metric,
    exponent_value,
    pairwise_distances,
    snowflake,
    squared_distance_matrix,
)

#: Relative spectral tolerance for negative-type and general-position decisions.
DEFAULT_TOL = 1e-9

#: Absolute tolerance on weight-vector sum constraints.
WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class WeightVector:
    """A vector of real weights; operations that need sum zero enforce it."""

    lam: np.ndarray


@dataclass(frozen=True)
class NegativeTypeReport:
    """Outcome of a spectral negative-type or general-position test.

    ``min_eigenvalue`` is the smallest eigenvalue of -1/2 P D P restricted
    to the sum-zero subspace (the trivial zero along the all-ones direction
    is excluded).  ``witness``, when present, is a sum-zero weight vector
    reproducing the violation or degeneracy through ``quadratic_form``.
    """

    is_negative_type: bool
    is_strict: bool
    min_eigenvalue: float
    witness: np.ndarray | None

    @property
    def embeddable(self) -> bool:
        """Alias: negative type is equivalent to Hilbert-space embeddability."""
        return self.is_negative_type


def as_weights(lam) -> np.ndarray:
    if isinstance(lam, WeightVector):
        return np.asarray(lam.lam, dtype=float)
    return np.asarray(lam, dtype=float)


def sumzero_basis(n: int) -> np.ndarray:
    """Orthonormal basis (as columns) of the sum-zero subspace of R^n.

    Columns 1..n-1 of the Householder reflection sending ones/sqrt(n)
    to -e_0; deterministic and exactly orthogonal to machine precision.
    """
    e0 = np.zeros(n)
    if n:
        e0[0] = 1.0
    u = np.full(n, 1.0 / np.sqrt(n)) if n else np.zeros(0)
    w = u + e0
    H = np.eye(n) - 2.0 * np.outer(w, w) / (w @ w) if n else np.eye(0)
    return H[:, 1:]


def _centered_form(D: np.ndarray) -> np.ndarray:
    # -1/2 P D P via row/column means; symmetrized to kill 1-ulp asymmetry
    r = D.mean(axis=1)
    B = -0.5 * (D - r[:, None] - r[None, :] + r.mean())
    return 0.5 * (B + B.T)


def restricted_spectrum(D: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Spectrum of -1/2 P D P on the sum-zero subspace.

    Returns ascending eigenvalues (length n-1) and the corresponding
    sum-zero eigenvectors as columns of an (n, n-1) matrix.
    """
    V = sumzero_basis(D.shape[0])
    M = V.T @ _centered_form(D) @ V
    M = 0.5 * (M + M.T)
    evals, W = np.linalg.eigh(M)
    return evals, V @ W


def quadratic_form(D, lam) -> float:
    """Evaluate L D L^T without forming any matrix larger than D."""
    D = np.asarray(D, dtype=float)
    lam = as_weights(lam)
    if D.ndim != 2 or D.shape[0] != D.shape[1] or lam.shape != (D.shape[0],):
        raise DimensionMismatch(
            f"incompatible shapes: D {D.shape}, weights {lam.shape}"
        )
    return float(lam @ D @ lam)


def check_negative_type(X: FiniteMetricSpace, tol: float = DEFAULT_TOL) -> NegativeTypeReport:
    """Decide whether X is of negative type (equivalently, embeddable).

    Thresholds are relative to the spectral radius of the restricted
    centered form.  When violated, the witness is the eigenvector of the
    most negative eigenvalue; when merely degenerate (not strict), it is
    the eigenvector of the near-zero eigenvalue.
    """
    D = squared_distance_matrix(X)
    evals, vecs = restricted_spectrum(D)
    if evals.size == 0:
        return NegativeTypeReport(True, True, np.inf, None)
    scale = float(max(abs(evals[0]), abs(evals[-1])))
    if scale == 0.0:
        scale = 1.0
    min_eig = float(evals[0])
    is_negative = min_eig >= -tol * scale
    is_strict = min_eig > tol * scale
    witness = None if is_strict else vecs[:, 0]
    return NegativeTypeReport(is_negative, is_strict, min_eig, witness)


def check_strict_negative_type(
    X: FiniteMetricSpace,
    a: SnowflakeExponent | float,
    tol: float = DEFAULT_TOL,
) -> NegativeTypeReport:
    """Assert the snowflaked metric is of *strict* negative type.

    For Euclidean-embeddable X with distinct points and alpha in (0, 1)
    strictness is guaranteed; alpha = 1 is accepted as a contrast case but
    carries no guarantee (degenerate configurations then fail).  Raises
    NotStrict either when X itself is not of negative type (the hypothesis)
    or when the strictness margin is not met.
    """
    alpha = exponent_value(a)
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"strict negative type needs alpha in (0, 1], got {alpha!r}")
    base = check_negative_type(X, tol)
    if not base.is_negative_type:
        raise NotStrict(
            base.min_eigenvalue,
            witness=base.witness,
            reason="input metric is not of negative type",
        )
    report = check_negative_type(snowflake(X, alpha), tol)
    if not report.is_strict:
        raise NotStrict(
            report.min_eigenvalue,
            witness=report.witness,
            reason="strictness margin not met",
        )
    return report


def geometric_form_check(P, lam) -> tuple[float, float]:
    """Evaluate both sides of the centroid identity L D L^T = -2 |x+ - x-|^2.

    The weights must split into a nonnegative part summing to +1 and a
    nonpositive part summing to -1.  x+ and x- are the corresponding convex
    combinations of the points (the negative part enters with |lam_i|, which
    is the reading under which the identity balances).  Coincident points
    are allowed.
    """
    cloud = as_point_cloud(P)
    lam = as_weights(lam)
    if lam.shape != (cloud.n,):
        raise DimensionMismatch(
            f"weights shape {lam.shape} does not match {cloud.n} points"
        )
    pos = lam > 0.0
    neg = lam < 0.0
    pos_sum = float(lam[pos].sum())
    neg_sum = float(lam[neg].sum())
    if abs(pos_sum - 1.0) > WEIGHT_SUM_TOL or abs(neg_sum + 1.0) > WEIGHT_SUM_TOL:
        raise BadPartition(pos_sum, neg_sum)

    D = pairwise_distances(cloud.coordinates) ** 2
    lhs = float(lam @ D @ lam)
    x_plus = lam[pos] @ cloud.coordinates[pos]
    x_minus = (-lam[neg]) @ cloud.coordinates[neg]
    gap = x_plus - x_minus
    rhs = -2.0 * float(gap @ gap)
    return lhs, rhs


def general_position_certificate(P, tol: float = DEFAULT_TOL) -> NegativeTypeReport:
    """Certify that points are affinely independent, or produce a witness.

    The points are in general position iff the only sum-zero L with
    L D L^T = 0 is L = 0, decided through the restricted spectrum of the
    centered form.  A degenerate configuration yields a nonzero sum-zero
    witness - an affine dependence certificate.
    """
    cloud = as_point_cloud(P)
    D = squared_distance_matrix(euclidean_metric(cloud))
    evals, vecs = restricted_spectrum(D)
    if evals.size == 0:
        return NegativeTypeReport(True, True, np.inf, None)
    lam_max = float(evals[-1])
    min_eig = float(evals[0])
    general = bool(min_eig > tol * lam_max)
    witness = None if general else vecs[:, 0]
    return NegativeTypeReport(True, general, min_eig, witness)
