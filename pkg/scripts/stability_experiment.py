#!/usr/bin/env python3
"""Net-level audit of hull stability under base-space perturbations.

For random base spaces and small random perturbations of their matrices, the
GH distance between sampled hull nets is compared against eight times the
exact GH distance of the bases plus a documented net slack.  The net value is
a correspondence upper bound (cross projection between the hulls), so a PASS
is conservative.
"""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from qmet import gh_exact, net_gh_upper, random_qspace, sample_hull
from qmet.space import QSpace, triangle_closure


@dataclass
class Config:
    pairs: int = 20
    points: int = 4
    samples: int = 400
    noise: float = 0.08
    slack: float = 0.1
    seed: int = 0


def perturb(X, rng, eta):
    m = X.d + rng.uniform(-eta, eta, (X.n, X.n))
    np.fill_diagonal(m, 0.0)
    return QSpace(triangle_closure(np.maximum(m, 0.01)))


def run(cfg: Config) -> int:
    rng = np.random.default_rng(cfg.seed)
    print(f"# {cfg}")
    print(f"{'trial':>5} {'gh':>8} {'net':>8} {'bound':>8}  status")
    failures = 0
    for trial in range(cfg.pairs):
        X = random_qspace(cfg.points, rng)
        Y = perturb(X, rng, cfg.noise * X.diam)
        g = gh_exact(X, Y).value
        HX = sample_hull(X, cfg.samples, seed=cfg.seed + trial)
        HY = sample_hull(Y, cfg.samples, seed=cfg.seed + trial + 10_000)
        net = net_gh_upper(HX, HY)
        bound = 8.0 * g + cfg.slack * max(X.diam, Y.diam)
        ok = net <= bound
        failures += not ok
        print(
            f"{trial:>5} {g:8.4f} {net:8.4f} {bound:8.4f}  "
            f"{'pass' if ok else 'FAIL'}"
        )
    print(f"# {cfg.pairs - failures}/{cfg.pairs} within bound")
    return 1 if failures else 0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=Config.pairs)
    parser.add_argument("--points", type=int, default=Config.points)
    parser.add_argument("--samples", type=int, default=Config.samples)
    parser.add_argument("--noise", type=float, default=Config.noise)
    parser.add_argument("--slack", type=float, default=Config.slack)
    parser.add_argument("--seed", type=int, default=Config.seed)
    args = parser.parse_args()
    sys.exit(run(Config(**vars(args))))


if __name__ == "__main__":
    main()
