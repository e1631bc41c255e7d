"""Quotient metrics of finite orthogonal actions and equivariant snowflake
embeddings into the canonical quotient target.

Given representatives of n free orbits under a finite orthogonal group G,
the orbit-lifted configuration Y (|Y| = n |G|) induces, through its
snowflaked squared distances, a G-invariant scalar product B on the
sum-zero subspace of R^(n|G|).  The symmetric square root T of B is an
explicit equivariant isometry onto the standard structure: placing point k
at ones/N + T e_(k, identity) inside the coordinate-sum-one hyperplane
realizes every snowflaked quotient distance as a minimum over the regular
permutation action.  The verification of that statement ships with the
embedding.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .embedding import gram_from_distances
from .errors import (
    DimensionMismatch,
    DomainError,
    InvarianceViolation,
    NonFreeOrbit,
    OrbitCollision,
    VerificationFailure,
)
from .groups import OrthogonalAction
from .metric import SnowflakeExponent, exponent_value, pairwise_distances
from .negative_type import sumzero_basis

DEFAULT_TOL = 1e-9

SCALE_NOTE = (
    "distances are measured in the Euclidean structure induced on the "
    "coordinate-sum-one hyperplane by the snowflaked configuration; at "
    "alpha = 0 the embedded simplex has edge length 1, not the sqrt(2) of "
    "the raw coordinate simplex (a global scale choice)"
)


@dataclass(frozen=True)
class QuotientConfiguration:
    """Orbit-lifted point set with block indexing by (orbit, group element).

    ``lifted`` row k * |G| + h holds h . representatives[k]; the permutation
    for g sends that index to k * |G| + (g h), the left regular action on
    each block.
    """

    representatives: np.ndarray
    lifted: np.ndarray
    action_permutations: np.ndarray
    action: OrthogonalAction

    @property
    def n_orbits(self) -> int:
        return self.representatives.shape[0]

    @property
    def group_order(self) -> int:
        return self.action.group.order

    @property
    def size(self) -> int:
        return self.lifted.shape[0]


@dataclass(frozen=True)
class PairCheck:
    """One row of the verification report."""

    i: int
    j: int
    target: float
    achieved: float
    abs_error: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class QngEmbedding:
    """n points in the coordinate-sum-one hyperplane of R^(n|G|), verified.

    ``points`` rows sum to 1; ``gram_root`` is the equivariant symmetric
    square root T (annihilates the all-ones vector and commutes with every
    regular permutation); ``spectrum`` is the nonincreasing spectrum of the
    induced form, which has exactly one zero eigenvalue for free
    configurations and alpha < 1.
    """

    points: np.ndarray
    gram_root: np.ndarray
    report: list[PairCheck]
    spectrum: np.ndarray
    equivariance_defect: float
    max_abs_error: float
    scale_note: str = SCALE_NOTE


def quotient_distance(x, y, action: OrthogonalAction) -> float:
    """min over g of ||x - g . y||: the quotient metric between orbits."""
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != (action.dim,) or y.shape != (action.dim,):
        raise DimensionMismatch(
            f"points of dimension {x.shape} / {y.shape} under an action on E^{action.dim}"
        )
    images = action.matrices @ y
    return float(np.linalg.norm(images - x[None, :], axis=1).min())


def lift_orbits(reps, action: OrthogonalAction, tol: float = DEFAULT_TOL) -> QuotientConfiguration:
    """Lift orbit representatives to the full configuration Y.

    Every orbit must be free and orbits must be disjoint: all n |G| lifted
    points pairwise separated by more than tol times the configuration
    scale.  Degenerate inputs are hard errors, not limits.
    """
    reps = np.atleast_2d(np.asarray(reps, dtype=float))
    if reps.shape[1] != action.dim:
        raise DimensionMismatch(
            f"representatives in E^{reps.shape[1]} under an action on E^{action.dim}"
        )
    n = reps.shape[0]
    order = action.group.order
    size = n * order

    # lifted[k * order + h] = matrices[h] @ reps[k]
    lifted = np.einsum("hij,kj->khi", action.matrices, reps).reshape(size, action.dim)

    dists = pairwise_distances(lifted)
    scale = float(dists.max())
    iu, ju = np.triu_indices(size, k=1)
    close = dists[iu, ju] <= tol * scale
    if close.any():
        p, q = int(iu[np.argmax(close)]), int(ju[np.argmax(close)])
        kp, hp = divmod(p, order)
        kq, hq = divmod(q, order)
        if kp == kq:
            raise NonFreeOrbit(kp, [hp, hq])
        raise OrbitCollision(kp, kq)

    perms = np.empty((order, size), dtype=int)
    offsets = np.arange(n)[:, None] * order
    for g in range(order):
        perms[g] = (offsets + action.group.table[g][None, :]).reshape(size)
    perms.flags.writeable = False
    lifted = lifted.copy()
    lifted.flags.writeable = False
    reps = reps.copy()
    reps.flags.writeable = False
    return QuotientConfiguration(
        representatives=reps,
        lifted=lifted,
        action_permutations=perms,
        action=action,
    )


def regular_permutation_matrices(Q: QuotientConfiguration) -> list[np.ndarray]:
    """Permutation matrices pi(g) e_(k,h) = e_(k, g h); an exact homomorphism."""
    size = Q.size
    mats = []
    for sigma in Q.action_permutations:
        P = np.zeros((size, size))
        P[sigma, np.arange(size)] = 1.0
        mats.append(P)
    return mats


def equivariance_defect(T, perms) -> float:
    """Largest absolute entry of T pi(g) - pi(g) T over the given permutations."""
    T = np.asarray(T, dtype=float)
    worst = 0.0
    for P in perms:
        P = np.asarray(P, dtype=float)
        if P.shape != T.shape:
            raise DimensionMismatch(f"permutation shape {P.shape} against matrix {T.shape}")
        worst = max(worst, float(np.abs(T @ P - P @ T).max()))
    return worst


def qng_embed(
    Q: QuotientConfiguration,
    a: SnowflakeExponent | float,
    tol: float = DEFAULT_TOL,
) -> QngEmbedding:
    """Embed the snowflaked orbit space into the canonical quotient target.

    Pipeline: squared snowflaked distances of the lifted points; the induced
    form B = -1/2 P D P, checked to commute with every regular permutation;
    its symmetric square root T; points ones/N + T e_(k, identity).  The
    achieved quotient distances (minima over the permutation action) are
    verified against the snowflaked geometric quotient distances pair by
    pair.  Monotonicity of t -> t**alpha makes the minimizing group element
    agree with the geometric minimizer.

    Requires 0 <= alpha < 1; the alpha = 1 endpoint is excluded because the
    construction relies on the strict positivity of B on the sum-zero
    subspace, which can fail there.
    """
    alpha = exponent_value(a)
    if alpha >= 1.0:
        raise DomainError(f"quotient embedding needs alpha in [0, 1), got {alpha!r}")
    order = Q.group_order
    n = Q.n_orbits
    size = Q.size
    e_idx = Q.action.group.identity_index

    dists = pairwise_distances(Q.lifted)
    if alpha == 0.0:
        D = np.ones((size, size)) - np.eye(size)
    else:
        D = dists ** (2.0 * alpha)
    B = gram_from_distances(D)

    perm_mats = regular_permutation_matrices(Q)
    defect_B = equivariance_defect(B, perm_mats)
    inv_tol = tol * (1.0 + float(np.abs(B).max()))
    if defect_B > inv_tol:
        raise InvarianceViolation(defect_B, inv_tol)

    evals = np.linalg.eigvalsh(B)
    # The square root is taken on the sum-zero restriction so that T
    # annihilates the all-ones vector exactly; otherwise the trivial
    # eigenvalue of B (zero only up to round-off) leaks a sqrt(eps)-sized
    # component into every embedded point.
    V = sumzero_basis(size)
    M = V.T @ B @ V
    M = 0.5 * (M + M.T)
    mu, W = np.linalg.eigh(M)
    root = (W * np.sqrt(np.clip(mu, 0.0, None))) @ W.T
    T = V @ root @ V.T
    T = 0.5 * (T + T.T)
    defect_T = equivariance_defect(T, perm_mats)

    base = np.full(size, 1.0 / size)
    points = base[None, :] + T[:, np.arange(n) * order + e_idx].T

    report = []
    max_err = 0.0
    max_target = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            target = quotient_distance(
                Q.representatives[i], Q.representatives[j], Q.action
            ) ** alpha
            permuted = points[j][Q.action_permutations]
            achieved = float(np.linalg.norm(permuted - points[i][None, :], axis=1).min())
            err = abs(achieved - target)
            report.append(PairCheck(i, j, target, achieved, err))
            max_err = max(max_err, err)
            max_target = max(max_target, target)

    verify_tol = tol * (1.0 + max_target)
    if max_err > verify_tol:
        raise VerificationFailure(max_err, verify_tol, report=report)

    spectrum = evals[::-1].copy()
    for arr in (points, T, spectrum):
        arr.flags.writeable = False
    return QngEmbedding(
        points=points,
        gram_root=T,
        report=report,
        spectrum=spectrum,
        equivariance_defect=defect_T,
        max_abs_error=max_err,
    )
