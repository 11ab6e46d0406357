"""Ample pairs of functions and the minimizing projection onto the hull.

A pair f = (f1, f2) of non-negative functions on a space X is *ample* when
d(x, y) <= f2(x) + f1(y) for all x, y.  The minimal ample pairs form the
q-hyperconvex hull of X; they are exactly the fixed points of the double
conjugation

    f1'(x) = max_y (d(y, x) - f2(y))+      f2'(x) = max_y (d(x, y) - f1(y))+

and the projection onto them is the limit of repeatedly averaging a pair
with its double conjugate.  The hull carries the quasi-metric

    D(f, g) = max( max_x (f1 - g1)+ , max_x (g2 - f2)+ ),

whose symmetrization is the sup-norm distance on both components.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    IndexOutOfRange,
    LengthMismatch,
    NoConvergence,
    NotAmple,
    NotMinimal,
    SpaceMismatch,
    SubsetMismatch,
)
from .space import QSpace, restrict, subset_indices
from .tolerances import AMPLE_TOL, CERTIFICATION_TOL, PROJECTION_TOL

PROJECTION_MAX_ITER = 200


@dataclass(frozen=True, eq=False)
class AmplePair:
    """A candidate or certified member of the hull of ``space``.

    ``certified_tol`` records the measured double-conjugation residual when
    the pair was certified minimal.
    """

    space: QSpace
    f1: np.ndarray
    f2: np.ndarray
    certified_minimal: bool = False
    certified_tol: float | None = None

    def __post_init__(self):
        f1 = np.asarray(self.f1, dtype=float).copy()
        f2 = np.asarray(self.f2, dtype=float).copy()
        if f1.shape != (self.space.n,) or f2.shape != (self.space.n,):
            raise LengthMismatch(
                f"component lengths {f1.shape}/{f2.shape} do not match n={self.space.n}"
            )
        f1.setflags(write=False)
        f2.setflags(write=False)
        object.__setattr__(self, "f1", f1)
        object.__setattr__(self, "f2", f2)

    def __repr__(self):
        tag = "minimal" if self.certified_minimal else "candidate"
        return f"AmplePair(n={self.space.n}, {tag}, f1={self.f1}, f2={self.f2})"


def is_ample(f: AmplePair, tol: float = AMPLE_TOL):
    """Check d(x,y) <= f2(x) + f1(y) within tol.

    Returns (flag, worst) where worst is None or the most violated
    (x, y, excess) triple.
    """
    gap = f.space.d - f.f2[:, None] - f.f1[None, :]
    worst = gap.max()
    if worst > tol:
        i, j = np.unravel_index(np.argmax(gap), gap.shape)
        return False, (int(i), int(j), float(worst))
    return True, None


def _require_ample(f: AmplePair, tol: float = AMPLE_TOL):
    ok, worst = is_ample(f, tol)
    if not ok:
        raise NotAmple(worst)


def _star_arrays(d: np.ndarray, F1: np.ndarray, F2: np.ndarray):
    # F* on a batch: leading axes are batch, last axis is the point index.
    S1 = np.maximum((d - F2[..., :, None]).max(axis=-2), 0.0)
    S2 = np.maximum((d - F1[..., None, :]).max(axis=-1), 0.0)
    return S1, S2


def double_conjugate(f: AmplePair) -> AmplePair:
    """The pair f* = (sup_y(d(y,.) - f2(y))+, sup_y(d(.,y) - f1(y))+).

    For ample f this satisfies f* <= f, with equality exactly on the hull.
    f* itself need not be ample.
    """
    _require_ample(f)
    s1, s2 = _star_arrays(f.space.d, f.f1, f.f2)
    return AmplePair(f.space, s1, s2)


def project_arrays(
    space: QSpace,
    F1: np.ndarray,
    F2: np.ndarray,
    tol: float = PROJECTION_TOL,
    max_iter: int = PROJECTION_MAX_ITER,
):
    """Batched hull projection; returns (P1, P2, residuals).

    Iterates f <- (f + f*)/2 until the worst residual ||f - f*|| drops below
    tol.  The residual halves each round, so max_iter is a formality; if it is
    ever exhausted above 10*tol, NoConvergence is raised.  Results are clamped
    by the inputs so "projection never increases a value" holds exactly.
    """
    d = space.d
    G1 = np.array(F1, dtype=float)
    G2 = np.array(F2, dtype=float)
    prev_gap = np.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        S1, S2 = _star_arrays(d, G1, G2)
        gap = max(np.abs(G1 - S1).max(), np.abs(G2 - S2).max())
        assert gap <= prev_gap + 1e-12, "projection residual increased"
        prev_gap = gap
        if gap <= tol:
            break
        G1 = (G1 + S1) / 2.0
        G2 = (G2 + S2) / 2.0
    else:
        if prev_gap > 10.0 * tol:
            raise NoConvergence(max_iter, float(prev_gap))
    np.minimum(G1, F1, out=G1)
    np.minimum(G2, F2, out=G2)
    S1, S2 = _star_arrays(d, G1, G2)
    residuals = np.maximum(
        np.abs(G1 - S1).max(axis=-1), np.abs(G2 - S2).max(axis=-1)
    )
    return G1, G2, residuals


def project_to_hull(
    f: AmplePair,
    tol: float = PROJECTION_TOL,
    max_iter: int = PROJECTION_MAX_ITER,
) -> AmplePair:
    """Project an ample pair onto the hull (the nearest-below minimal pair).

    The result is <= f entrywise, ample, certified minimal, and the map is
    non-expansive for the hull quasi-metric.
    """
    _require_ample(f)
    g1, g2, res = project_arrays(f.space, f.f1, f.f2, tol=tol, max_iter=max_iter)
    return AmplePair(f.space, g1, g2, certified_minimal=True, certified_tol=float(res))


def in_hull(f: AmplePair, tol: float = CERTIFICATION_TOL) -> bool:
    """True when f is its own double conjugate within tol (minimality)."""
    _require_ample(f)
    s = double_conjugate(f)
    res = max(np.abs(f.f1 - s.f1).max(), np.abs(f.f2 - s.f2).max())
    return bool(res <= tol)


def pair_dist(f: AmplePair, g: AmplePair, mode: str = "D") -> float:
    """Hull distance between two pairs on the same space.

    mode "D" is the asymmetric hull quasi-metric; mode "Dsym" is its
    symmetrization, the sup-norm of the component differences.
    """
    if f.space is not g.space and not np.array_equal(f.space.d, g.space.d):
        raise SpaceMismatch("pairs live on different spaces")
    if mode == "D":
        up = max(0.0, float((f.f1 - g.f1).max()))
        down = max(0.0, float((g.f2 - f.f2).max()))
        return max(up, down)
    if mode == "Dsym":
        return float(
            max(np.abs(f.f1 - g.f1).max(), np.abs(f.f2 - g.f2).max())
        )
    raise ValueError(f"unknown pair_dist mode {mode!r}")


def embed_point(X: QSpace, x: int) -> AmplePair:
    """Canonical embedding of a point: x maps to (d(x, .), d(., x)).

    Minimal by the triangle inequality, and an isometric embedding of X into
    its hull.
    """
    if not 0 <= x < X.n:
        raise IndexOutOfRange(f"point index {x} out of range for n={X.n}")
    f = AmplePair(X, X.d[x, :], X.d[:, x])
    s = double_conjugate(f)
    res = max(np.abs(f.f1 - s.f1).max(), np.abs(f.f2 - s.f2).max())
    return replace(f, certified_minimal=True, certified_tol=float(res))


def ample_completion(X: QSpace, f1) -> AmplePair:
    """Smallest f2 making (f1, f2) ample: f2(x) = max_y (d(x,y) - f1(y))+."""
    f1 = np.maximum(np.asarray(f1, dtype=float), 0.0)
    f2 = np.maximum((X.d - f1[None, :]).max(axis=1), 0.0)
    return AmplePair(X, f1, f2)


def extend_from_subspace(X: QSpace, subset, f: AmplePair) -> AmplePair:
    """Extend a minimal pair on a subspace to a minimal pair on X.

    Inf-convolution along the ambient distances gives an ample extension that
    restricts back to f; projecting keeps the restriction (the subspace values
    are already mutually tight) and lands on the hull of X.  The assembled map
    is an isometric embedding of the subspace hull into the hull of X.
    """
    idx = subset_indices(X, subset)
    sub = restrict(X, idx)
    if not np.array_equal(sub.d, f.space.d):
        raise SubsetMismatch("pair does not live on the selected subspace")
    if not (f.certified_minimal or in_hull(f, CERTIFICATION_TOL)):
        raise NotMinimal("extension requires a certified minimal pair")
    iy = np.asarray(idx)
    s1 = (X.d[iy, :] + f.f1[:, None]).min(axis=0)
    s2 = (f.f2[:, None] + X.d[:, iy].T).min(axis=0)
    out = project_to_hull(AmplePair(X, s1, s2))
    drift = max(
        np.abs(out.f1[iy] - f.f1).max(), np.abs(out.f2[iy] - f.f2).max()
    )
    assert drift <= 1e-7, f"extension moved subspace values by {drift:.3e}"
    return out
