"""Finite nets of the hull of minimal ample pairs.

The hull of a finite space is an infinite polyhedral object; it is represented
here only by certified finite nets: the canonical point embeddings plus
projected random candidates.  Nets are deterministic given (space, k, seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotMetric
from .gh import Correspondence, distortion
from .pairs import (
    AmplePair,
    ample_completion,
    embed_point,
    pair_dist,
    project_arrays,
)
from .space import QSpace
from .tolerances import CERTIFICATION_TOL, DEDUP_TOL

PERTURB_RADIUS_FACTOR = 0.25


@dataclass(frozen=True)
class HullSample:
    """A certified net of hull points; the point embeddings always come first.

    ``spread`` is the minimum pairwise sym-distance among the stored points
    (inf for a single point).
    """

    space: QSpace
    points: tuple[AmplePair, ...]
    seed: int
    spread: float


def _stack(points) -> tuple[np.ndarray, np.ndarray]:
    return (
        np.stack([p.f1 for p in points]),
        np.stack([p.f2 for p in points]),
    )


def _dsym_to_pool(F1, F2, f1, f2) -> np.ndarray:
    return np.maximum(
        np.abs(F1 - f1[None, :]).max(axis=1), np.abs(F2 - f2[None, :]).max(axis=1)
    )


def sample_hull(X: QSpace, k: int, seed: int = 0) -> HullSample:
    """Draw k hull candidates and keep the distinct certified ones.

    Half the candidates are fresh: f1 uniform in [0, 2 diam]^n completed by
    the least valid f2 (ample by construction) and projected.  The rest
    perturb already accepted members by bounded bumps and re-project; the bump
    radius starts at 0.25 diam and halves whenever a candidate collapses onto
    an existing point.  The point embeddings are always included (first).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    rng = np.random.default_rng(seed)
    points = [embed_point(X, i) for i in range(X.n)]
    F1, F2 = _stack(points)
    R = X.diam

    def try_add(f1, f2, res) -> bool:
        nonlocal F1, F2
        if _dsym_to_pool(F1, F2, f1, f2).min() < DEDUP_TOL:
            return False
        points.append(
            AmplePair(X, f1, f2, certified_minimal=True, certified_tol=float(res))
        )
        F1 = np.vstack([F1, f1[None, :]])
        F2 = np.vstack([F2, f2[None, :]])
        return True

    if k > 0 and R > 0.0:
        n_fresh = (k + 1) // 2
        C1 = rng.uniform(0.0, 2.0 * R, size=(n_fresh, X.n))
        C2 = np.maximum((X.d[None, :, :] - C1[:, None, :]).max(axis=2), 0.0)
        P1, P2, res = project_arrays(X, C1, C2)
        for i in range(n_fresh):
            try_add(P1[i], P2[i], res[i])

        radius = PERTURB_RADIUS_FACTOR * R
        floor = R * 2.0 ** -30
        for _ in range(k - n_fresh):
            base = int(rng.integers(0, len(points)))
            g1 = np.maximum(
                points[base].f1 + rng.uniform(-radius, radius, size=X.n), 0.0
            )
            cand = ample_completion(X, g1)
            p1, p2, res = project_arrays(X, cand.f1, cand.f2)
            if not try_add(p1, p2, res) and radius > floor:
                radius /= 2.0

    if len(points) >= 2:
        D1, D2 = _stack(points)
        gaps = np.maximum(
            np.abs(D1[:, None, :] - D1[None, :, :]).max(axis=2),
            np.abs(D2[:, None, :] - D2[None, :, :]).max(axis=2),
        )
        np.fill_diagonal(gaps, np.inf)
        spread = float(gaps.min())
    else:
        spread = float("inf")
    return HullSample(X, tuple(points), seed, spread)


def hull_as_qspace(H: HullSample) -> QSpace:
    """The net as a finite quasi-metric space under the hull quasi-metric.

    The first rows/columns reproduce the base space exactly (the point
    embedding is isometric); dedup keeps the matrix T0.
    """
    F1, F2 = _stack(H.points)
    D = np.maximum(
        np.maximum((F1[:, None, :] - F1[None, :, :]).max(axis=2), 0.0),
        np.maximum((F2[None, :, :] - F2[:, None, :]).max(axis=2), 0.0),
    )
    labels = list(H.space.labels) + [
        f"s{i}" for i in range(len(H.points) - H.space.n)
    ]
    return QSpace(D, labels)


@dataclass(frozen=True)
class DiagonalReport:
    n_diagonal: int
    n_off_diagonal: int
    max_minimality_residual: float
    max_metric_discrepancy: float


def metric_diag_check(X: QSpace, H: HullSample, tol: float = CERTIFICATION_TOL) -> DiagonalReport:
    """On a metric space, audit the samples with equal components.

    Pairs with f1 = f2 (within tol) form the metric tight span sitting inside
    the hull; for those, minimality must hold and the symmetrized hull
    distance must equal the sup-norm of the function difference.
    """
    if not X.classification.satisfies_M3:
        raise NotMetric("diagonal check requires a symmetric space")
    diag = [p for p in H.points if np.abs(p.f1 - p.f2).max() <= tol]
    n_off = len(H.points) - len(diag)
    worst_res = 0.0
    for p in diag:
        s1, s2 = (
            np.maximum((X.d - p.f2[:, None]).max(axis=0), 0.0),
            np.maximum((X.d - p.f1[None, :]).max(axis=1), 0.0),
        )
        res = max(np.abs(p.f1 - s1).max(), np.abs(p.f2 - s2).max())
        worst_res = max(worst_res, float(res))
    worst_disc = 0.0
    for i, p in enumerate(diag):
        for q in diag[i + 1:]:
            ds = pair_dist(p, q, "Dsym")
            worst_disc = max(worst_disc, abs(ds - float(np.abs(p.f1 - q.f1).max())))
    return DiagonalReport(len(diag), n_off, worst_res, worst_disc)


def net_gh_upper(HX: HullSample, HY: HullSample) -> float:
    """Upper bound on the GH distance between two hull nets.

    Only for nets over spaces on the same index set (e.g. perturbation pairs):
    each net point is inflated by half the matrix perturbation, re-projected
    in the other space, and snapped to the nearest net point there; the two
    snapped maps assemble a correspondence whose half-distortion bounds the
    net GH distance from above.  A net approximation, not a proof-grade value.
    """
    X, Y = HX.space, HY.space
    if X.n != Y.n:
        raise ValueError("net GH bound requires spaces on the same index set")
    eta = float(np.abs(X.d - Y.d).max())

    def snapped(source: HullSample, target: HullSample, pad: float):
        F1, F2 = _stack(source.points)
        P1, P2, _ = project_arrays(target.space, F1 + pad, F2 + pad)
        T1, T2 = _stack(target.points)
        out = []
        for i in range(P1.shape[0]):
            gaps = np.maximum(
                np.abs(T1 - P1[i][None, :]).max(axis=1),
                np.abs(T2 - P2[i][None, :]).max(axis=1),
            )
            out.append(int(np.argmin(gaps)))
        return out

    DX = hull_as_qspace(HX)
    DY = hull_as_qspace(HY)
    phi = snapped(HX, HY, eta / 2.0)
    psi = snapped(HY, HX, eta / 2.0)
    pairs = [(i, phi[i]) for i in range(len(HX.points))]
    pairs += [(psi[j], j) for j in range(len(HY.points))]
    R = Correspondence(DX, DY, tuple(sorted(set(pairs))))
    return distortion(R) / 2.0
