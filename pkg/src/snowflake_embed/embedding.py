"""Spectral isometric embedding of negative-type metrics into Euclidean space.

Classical double centering: B = -1/2 P D P is the Gram matrix of the
embedded points about their centroid, so the coordinates are eigenvectors
scaled by square roots of eigenvalues.  For a snowflaked metric d**alpha
with alpha in (0, 1) of a negative-type input the embedding is certified
to have full rank n-1: the embedded points are always in general position,
and a rank deficit is reported as an error rather than silently accepted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError, NotEmbeddable, TheoremViolation
from .metric import (
    FiniteMetricSpace,
    SnowflakeExponent,
    exponent_value,
    pairwise_distances,
    snowflake,
    squared_distance_matrix,
)
from .negative_type import check_negative_type, sumzero_basis

#: Relative eigenvalue cutoff for keeping embedding dimensions.
DEFAULT_TOL = 1e-9

#: Largest admissible relative distance-reconstruction error.
RESIDUAL_LIMIT = 1e-8

#: Cap on point count, bounding the dense O(n^3) eigendecomposition.
MAX_POINTS = 4096


@dataclass(frozen=True)
class EmbeddingResult:
    """Embedded coordinates plus the data certifying the embedding.

    ``eigenvalues`` is the full nonincreasing spectrum (length n-1) of the
    centered Gram form on the sum-zero subspace; ``rank`` counts the kept
    eigenpairs; ``residual`` is the max relative distance-reconstruction
    error.  Coordinates are centered at the centroid and unique only up to
    rigid motion.
    """

    coordinates: np.ndarray
    eigenvalues: np.ndarray
    rank: int
    residual: float


def gram_from_distances(D) -> np.ndarray:
    """Double centering: B = -1/2 P D P with P = I - ones/n.

    B is symmetric and annihilates the all-ones vector.
    """
    D = np.asarray(D, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise DimensionMismatch(f"squared-distance matrix must be square, got {D.shape}")
    if (D != D.T).any():
        raise ValueError("squared-distance matrix must be symmetric")
    if (np.diagonal(D) != 0.0).any():
        raise ValueError("squared-distance matrix must have zero diagonal")
    r = D.mean(axis=1)
    B = -0.5 * (D - r[:, None] - r[None, :] + r.mean())
    return 0.5 * (B + B.T)


def embed(X: FiniteMetricSpace, tol: float = DEFAULT_TOL) -> EmbeddingResult:
    """Isometrically embed X into Euclidean space, if possible.

    Eigenpairs of the centered form with eigenvalue > tol * lam_max are
    kept; any eigenvalue below -tol * lam_max makes the metric
    non-embeddable and the corresponding sum-zero eigenvector is returned
    as a negative-type violator.  The reconstruction residual is verified
    against RESIDUAL_LIMIT.
    """
    if X.n > MAX_POINTS:
        raise ValueError(f"point count {X.n} exceeds the configured cap {MAX_POINTS}")
    D = squared_distance_matrix(X)
    B = gram_from_distances(D)
    V = sumzero_basis(X.n)
    M = V.T @ B @ V
    M = 0.5 * (M + M.T)
    mu, W = np.linalg.eigh(M)
    order = np.argsort(-mu, kind="stable")
    mu = mu[order]
    U = (V @ W)[:, order]

    lam_max = max(float(mu[0]), 0.0) if mu.size else 0.0
    if mu.size and mu[-1] < -tol * lam_max:
        raise NotEmbeddable(mu[-1], witness=U[:, -1])
    keep = mu > tol * lam_max
    coords = U[:, keep] * np.sqrt(mu[keep])
    coords.flags.writeable = False
    mu.flags.writeable = False
    result = EmbeddingResult(
        coordinates=coords,
        eigenvalues=mu,
        rank=int(keep.sum()),
        residual=embedding_residual(coords, X),
    )
    if result.residual > RESIDUAL_LIMIT:
        # happens only for extreme dynamic range: pair distances so far
        # below the configuration scale that double precision cannot
        # certify them to the relative limit
        raise NotEmbeddable(
            float(mu[-1]) if mu.size else 0.0,
            reason=(
                f"reconstruction residual {result.residual:.3e} exceeds "
                f"{RESIDUAL_LIMIT:.0e}"
            ),
        )
    return result


def snowflake_embed(
    X: FiniteMetricSpace,
    a: SnowflakeExponent | float,
    tol: float = DEFAULT_TOL,
) -> EmbeddingResult:
    """Embed the snowflake X**alpha and certify that its rank is exactly n-1.

    Requires alpha in (0, 1) and X itself of negative type (the hypothesis
    is verified; a failing X raises NotEmbeddable with the violating weight
    vector).  Under those hypotheses the embedded points span dimension
    n-1 with the smallest kept eigenvalue strictly positive - its value,
    ``eigenvalues[rank - 1]``, is the reported margin.  A smaller rank is a
    numerical breakdown and raises TheoremViolation.
    """
    alpha = exponent_value(a)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"snowflake embedding needs alpha in (0, 1), got {alpha!r}")
    hypothesis = check_negative_type(X, tol)
    if not hypothesis.is_negative_type:
        raise NotEmbeddable(
            hypothesis.min_eigenvalue,
            witness=hypothesis.witness,
            reason="input metric is not of negative type",
        )
    result = embed(snowflake(X, alpha), tol)
    if result.rank < X.n - 1:
        raise TheoremViolation(result.rank, X.n - 1, result.eigenvalues)
    return result


def embedding_residual(coords, X: FiniteMetricSpace) -> float:
    """Max over pairs of | ||p_i - p_j|| - d_ij | / d_ij."""
    coords = np.atleast_2d(np.asarray(coords, dtype=float))
    if coords.shape[0] != X.n:
        raise DimensionMismatch(
            f"{coords.shape[0]} coordinate rows for {X.n} points"
        )
    if X.n < 2:
        return 0.0
    achieved = pairwise_distances(coords)
    iu = np.triu_indices(X.n, k=1)
    return float(np.max(np.abs(achieved[iu] - X.d[iu]) / X.d[iu]))
