"""Coarse injectivity: inflated two-sided ball families and fixed points.

A family of triples (x_i, r_i, s_i) is feasible when d(x_i, x_j) <= r_i + s_j.
The injectivity constant of a space is the least uniform inflation delta such
that every feasible family admits a common point z with d(x_i, z) <= r_i +
delta and d(z, x_i) <= s_i + delta.  Equivalently (and this is how it is
estimated here) it is how far hull points can sit from the embedded copy of
the space in the symmetrized hull distance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleFamily, NotMinimal, NotNonexpansive
from .hull import sample_hull
from .pairs import AmplePair, ample_completion, in_hull, project_arrays
from .space import QSpace
from .tolerances import AMPLE_TOL, CERTIFICATION_TOL

BISECTION_TOL = 1e-7
NONEXPANSIVE_TOL = 1e-9


@dataclass(frozen=True)
class BallFamily:
    """Entries (point index, forward radius r, backward radius s)."""

    entries: tuple[tuple[int, float, float], ...]

    def __post_init__(self):
        entries = tuple((int(x), float(r), float(s)) for x, r, s in self.entries)
        for x, r, s in entries:
            if r < 0 or s < 0:
                raise ValueError("radii must be non-negative")
        object.__setattr__(self, "entries", entries)


def family_violation(X: QSpace, F: BallFamily, tol: float = AMPLE_TOL):
    """Worst feasibility violation d(x_i, x_j) - r_i - s_j, or None."""
    worst = None
    for i, (xi, ri, _) in enumerate(F.entries):
        for j, (xj, _, sj) in enumerate(F.entries):
            excess = X.d[xi, xj] - ri - sj
            if excess > tol and (worst is None or excess > worst[2]):
                worst = (i, j, float(excess))
    return worst


def find_center(X: QSpace, F: BallFamily, delta: float, atol: float = 1e-12) -> int | None:
    """Lowest-index z inside every inflated two-sided ball, or None.

    z qualifies when d(x_i, z) <= r_i + delta and d(z, x_i) <= s_i + delta for
    every entry.  Raises InfeasibleFamily when F itself is infeasible.
    """
    bad = family_violation(X, F)
    if bad is not None:
        raise InfeasibleFamily((bad[0], bad[1]), bad[2])
    xs = np.array([e[0] for e in F.entries])
    rs = np.array([e[1] for e in F.entries])
    ss = np.array([e[2] for e in F.entries])
    for z in range(X.n):
        if (X.d[xs, z] <= rs + delta + atol).all() and (
            X.d[z, xs] <= ss + delta + atol
        ).all():
            return z
    return None


def family_from_hull_point(X: QSpace, f: AmplePair) -> BallFamily:
    """The family {(x, f2(x), f1(x))}; feasible by ampleness.

    Its least satisfiable delta equals the symmetrized hull distance from f
    to the nearest embedded point.
    """
    if not (f.certified_minimal or in_hull(f, CERTIFICATION_TOL)):
        raise NotMinimal("family extraction requires a certified minimal pair")
    return BallFamily(
        tuple((x, float(f.f2[x]), float(f.f1[x])) for x in range(X.n))
    )


def min_delta(X: QSpace, F: BallFamily, tol: float = BISECTION_TOL) -> float:
    """Least delta solving a feasible family, by bisection over find_center.

    Feasibility is monotone in delta, and delta = diam always works, so the
    bracket is [0, diam].
    """
    if find_center(X, F, 0.0) is not None:
        return 0.0
    lo, hi = 0.0, X.diam
    assert find_center(X, F, hi) is not None, "diameter inflation must solve"
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if find_center(X, F, mid) is not None:
            hi = mid
        else:
            lo = mid
    return hi


def _embedding_gaps(X: QSpace, F1: np.ndarray, F2: np.ndarray) -> np.ndarray:
    """Per-row min over x of max(||f1 - d(x,.)||, ||f2 - d(.,x)||)."""
    gaps = np.full(F1.shape[0], np.inf)
    for x in range(X.n):
        g = np.maximum(
            np.abs(F1 - X.d[x, :][None, :]).max(axis=1),
            np.abs(F2 - X.d[:, x][None, :]).max(axis=1),
        )
        np.minimum(gaps, g, out=gaps)
    return gaps


def distance_to_embedding(X: QSpace, f: AmplePair) -> float:
    """Symmetrized hull distance from f to the nearest embedded point."""
    return float(_embedding_gaps(X, f.f1[None, :], f.f2[None, :])[0])


@dataclass(frozen=True)
class DeltaEstimate:
    """A certified lower bound plus a labeled heuristic upper value."""

    lower: float
    heuristic_upper: float
    samples: int
    restarts: int
    seed: int


def estimate_delta(
    X: QSpace, samples: int = 200, restarts: int = 6, seed: int = 0
) -> DeltaEstimate:
    """Estimate the injectivity constant by sampling plus local ascent.

    The lower bound is the best embedding gap over certified hull samples,
    refined by coordinate perturbation of f1 (rebuild f2 as the lower
    envelope, re-project, accept on improvement) from the most promising
    starts.  The upper value adds the stagnation step of the ascent and is
    reported, not proven.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    H = sample_hull(X, samples, seed)
    F1 = np.stack([p.f1 for p in H.points])
    F2 = np.stack([p.f2 for p in H.points])
    # each sample is within its certified residual of a true hull point, so
    # discounting the residual keeps the bound a genuine lower bound
    res = np.array([p.certified_tol or 0.0 for p in H.points])
    gaps = np.maximum(_embedding_gaps(X, F1, F2) - res, 0.0)
    lower = float(gaps.max())
    R = X.diam
    if R == 0.0 or restarts < 1:
        return DeltaEstimate(lower, lower, samples, restarts, seed)

    rng = np.random.default_rng(seed + 1)
    order = np.argsort(-gaps)
    margin = 0.0
    floor = 1e-7 * max(R, 1.0)
    for start in order[:restarts]:
        f1 = F1[start].copy()
        cur = float(gaps[start])
        step = 0.25 * R
        rounds = 0
        while step > floor and rounds < 200:
            rounds += 1
            C1 = np.maximum(f1[None, :] + rng.uniform(-step, step, (16, X.n)), 0.0)
            C2 = np.maximum((X.d[None, :, :] - C1[:, None, :]).max(axis=2), 0.0)
            P1, P2, pres = project_arrays(X, C1, C2)
            objs = np.maximum(_embedding_gaps(X, P1, P2) - pres, 0.0)
            j = int(np.argmax(objs))
            if objs[j] > cur + 1e-12:
                cur = float(objs[j])
                f1 = P1[j].copy()
            else:
                step /= 2.0
        margin = max(margin, step * 2.0)
        lower = max(lower, cur)
    return DeltaEstimate(lower, lower + margin, samples, restarts, seed)


def _nonexpansive_excess(X: QSpace, T) -> tuple[tuple[int, int], float] | None:
    ix = np.asarray(T)
    excess = X.d[np.ix_(ix, ix)] - X.d
    worst = excess.max()
    if worst > NONEXPANSIVE_TOL:
        i, j = np.unravel_index(np.argmax(excess), excess.shape)
        return (int(i), int(j)), float(worst)
    return None


def random_nonexpansive(
    X: QSpace, seed: int = 0, exhaustive_cap: int = 4096, count: int = 32
) -> list[tuple[int, ...]]:
    """Non-expansive self-maps of X as function tables.

    Enumerates all n^n self-maps when that fits under ``exhaustive_cap``,
    otherwise rejection-samples ``count`` maps (identity always included).
    Deterministic given the seed.
    """
    n = X.n
    if n ** n <= exhaustive_cap:
        return [
            T
            for T in itertools.product(range(n), repeat=n)
            if _nonexpansive_excess(X, T) is None
        ]
    rng = np.random.default_rng(seed)
    found = [tuple(range(n))]
    seen = {found[0]}
    for _ in range(200 * count):
        if len(found) >= count:
            break
        T = tuple(int(v) for v in rng.integers(0, n, n))
        if T in seen:
            continue
        seen.add(T)
        if _nonexpansive_excess(X, T) is None:
            found.append(T)
    return found


def fixed_point_gap(X: QSpace, T) -> tuple[float, int]:
    """min over x of the symmetrized displacement dsym(x, T(x)), with argmin.

    T must be a total non-expansive self-map; NotNonexpansive reports the
    violating pair otherwise.
    """
    T = [int(v) for v in T]
    if len(T) != X.n or any(not 0 <= v < X.n for v in T):
        raise ValueError("map table must be a total self-map")
    bad = _nonexpansive_excess(X, T)
    if bad is not None:
        raise NotNonexpansive(*bad)
    vals = X.dsym[np.arange(X.n), T]
    arg = int(np.argmin(vals))
    return float(vals[arg]), arg
