"""Built-in demo spaces, enough to run every check with zero external data."""

from __future__ import annotations

import numpy as np

from .space import QSpace


def _upper_line(values) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    return np.maximum(v[:, None] - v[None, :], 0.0)


def _builders():
    return {
        # two points at asymmetric distance: one direction free, the other 1
        "sierpinski": lambda: QSpace([[0.0, 0.0], [1.0, 0.0]], ["0", "1"]),
        # the one-way line on {0, 1, 2}
        "line3": lambda: QSpace(_upper_line([0.0, 1.0, 2.0]), ["0", "1", "2"]),
        # the two-point metric space at distance 1
        "metric2": lambda: QSpace([[0.0, 1.0], [1.0, 0.0]], ["0", "1"]),
        # the one-way distance on five evenly spaced points of [0, 1]
        "runit5": lambda: QSpace(
            _upper_line([0.0, 0.25, 0.5, 0.75, 1.0]),
            ["0", "0.25", "0.5", "0.75", "1"],
        ),
    }


def demo_names() -> list[str]:
    return sorted(_builders())


def demo_space(name: str) -> QSpace:
    builders = _builders()
    if name not in builders:
        raise KeyError(f"unknown demo {name!r}; available: {', '.join(sorted(builders))}")
    return builders[name]()
