"""Lorenz vector field, parameters and equilibria."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LorenzParams:
    """Parameters (sigma, r, b) of the Lorenz system.

    The classical chaotic regime is ``sigma=10, r=28, b=8/3``.
    """

    sigma: float = 10.0
    r: float = 28.0
    b: float = 8.0 / 3.0

    def __post_init__(self):
        for name in ("sigma", "r", "b"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.sigma <= 0 or self.b <= 0:
            raise ValueError("sigma and b must be positive")
        if self.r <= 1:
            raise ValueError("r must exceed 1 for the off-origin equilibria to exist")

    @property
    def anchor(self) -> float:
        """Height ``r - 1`` of the plane through both off-origin equilibria."""
        return self.r - 1.0


CLASSICAL = LorenzParams()


def vector_field(s, p: LorenzParams = CLASSICAL) -> np.ndarray:
    """Evaluate the Lorenz right-hand side at state ``s = (x1, x2, x3)``."""
    x1, x2, x3 = s
    return np.array([p.sigma * (x2 - x1), p.r * x1 - x2 - x1 * x3, x1 * x2 - p.b * x3])


def equilibria(p: LorenzParams = CLASSICAL) -> tuple[np.ndarray, np.ndarray]:
    """Return the two off-origin equilibria ``(O1, O2)``.

    ``O2 = (q, q, r - 1)`` and ``O1 = (-q, -q, r - 1)`` with ``q = sqrt(b (r - 1))``.
    """
    if p.r <= 1:
        raise ValueError("equilibria are not real for r <= 1")
    q = math.sqrt(p.b * (p.r - 1.0))
    z = p.r - 1.0
    return np.array([-q, -q, z]), np.array([q, q, z])
