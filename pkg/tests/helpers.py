"""Shared strategies and independent oracles for the test suite."""

import hypothesis.strategies as st
import numpy as np

from qmet import QSpace, ample_completion, random_qspace, triangle_closure
from qmet.pairs import AmplePair


@st.composite
def qspaces(draw, min_n=2, max_n=5, symmetric=False):
    n = draw(st.integers(min_n, max_n))
    vals = draw(
        st.lists(
            st.floats(0.1, 3.0, allow_nan=False, allow_infinity=False),
            min_size=n * (n - 1),
            max_size=n * (n - 1),
        )
    )
    m = np.zeros((n, n))
    k = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                m[i, j] = vals[k]
                k += 1
    if symmetric:
        m = np.maximum(m, m.T)
    return QSpace(triangle_closure(m))


def random_ample_pair(X, rng, generic=True):
    """Ample pair: envelope completion of a random f1, optionally padded."""
    scale = X.diam + 0.1
    base = rng.uniform(0.0, 2.0 * scale, X.n)
    f = ample_completion(X, base)
    if not generic:
        return f
    pad1 = rng.uniform(0.0, 0.5 * scale, X.n)
    pad2 = rng.uniform(0.0, 0.5 * scale, X.n)
    return AmplePair(X, f.f1 + pad1, f.f2 + pad2)


def perturbed_space(X, rng, eta):
    """A nearby valid space: entrywise bump, floored positive, re-closed."""
    m = X.d + rng.uniform(-eta, eta, (X.n, X.n))
    np.fill_diagonal(m, 0.0)
    return QSpace(triangle_closure(np.maximum(m, 0.01)))


def permuted_copy(X, rng):
    perm = rng.permutation(X.n)
    return QSpace(X.d[np.ix_(perm, perm)]), perm


def brute_gh(X, Y):
    """Half the minimum distortion over *all* correspondences, by complete
    enumeration of the 2^(n m) subsets of the product (filtered for
    surjectivity).  Independent oracle for the solver; only for n*m <= ~12.
    """
    wx = X.d if isinstance(X, QSpace) else np.asarray(X, dtype=float)
    wy = Y.d if isinstance(Y, QSpace) else np.asarray(Y, dtype=float)
    nx, ny = len(wx), len(wy)
    cells = [(i, j) for i in range(nx) for j in range(ny)]
    full_x = (1 << nx) - 1
    full_y = (1 << ny) - 1
    best = np.inf
    for mask in range(1, 1 << (nx * ny)):
        cover_x = 0
        cover_y = 0
        pairs = []
        for b, (i, j) in enumerate(cells):
            if mask >> b & 1:
                pairs.append((i, j))
                cover_x |= 1 << i
                cover_y |= 1 << j
        if cover_x != full_x or cover_y != full_y:
            continue
        dis = 0.0
        for (i, j) in pairs:
            for (k, l) in pairs:
                dis = max(dis, abs(wx[i, k] - wy[j, l]))
        if dis < best:
            best = dis
    return best / 2.0


def rng_spaces(count, n, seed, scale=1.0, symmetric=False):
    rng = np.random.default_rng(seed)
    return [random_qspace(n, rng, scale=scale, symmetric=symmetric) for _ in range(count)]
