"""Harmonic-balance equations for the Lorenz system.

Unknown ordering (length ``6h + 4``)::

    [w, x10, x20, x30, c11, s11, c21, s21, c31, s31, c12, s12, ...]

Equation ordering: for each harmonic ``i`` the cosine and sine balance of
residuals 1, 2, 3; then the three constant-term balances; then the anchor
``x3(0) = r - 1`` that fixes the phase of the cycle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lorenz import CLASSICAL, LorenzParams
from .trigpoly import (TrigPoly, differentiate, differentiation_matrix, evaluate,
                       product_matrix, truncated_product)


@dataclass(frozen=True, eq=False)
class HBState:
    """Frequency plus one truncated Fourier series per phase coordinate."""

    omega: float
    x1: TrigPoly
    x2: TrigPoly
    x3: TrigPoly

    def __post_init__(self):
        if not self.x1.h == self.x2.h == self.x3.h:
            raise ValueError("all coordinates must share the same harmonic count")

    @property
    def h(self) -> int:
        return self.x1.h

    @property
    def coords(self) -> tuple[TrigPoly, TrigPoly, TrigPoly]:
        return self.x1, self.x2, self.x3

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega

    def padded(self, h: int) -> "HBState":
        return HBState(self.omega, *(x.padded(h) for x in self.coords))

    def at(self, t) -> np.ndarray:
        """Phase point(s) at time ``t``; shape ``(3,)`` or ``(3, len(t))``."""
        return np.array([evaluate(x, self.omega, t) for x in self.coords])

    @classmethod
    def equilibrium(cls, h: int, p: LorenzParams = CLASSICAL, sign: int = 1,
                    omega: float = 1.0) -> "HBState":
        """Embed an equilibrium: constant series, all amplitudes zero."""
        q = sign * np.sqrt(p.b * (p.r - 1.0))
        return cls(omega, TrigPoly.constant(q, h), TrigPoly.constant(q, h),
                   TrigPoly.constant(p.r - 1.0, h))


def size(h: int) -> int:
    return 6 * h + 4


def _layout(h: int) -> tuple[np.ndarray, np.ndarray]:
    """Maps from a coordinate's ``to_vector`` layout to canonical positions.

    Returns ``(cols, rows)``, each of shape ``(3, 2h + 1)``: ``cols[k, j]`` is
    the unknown index of coefficient ``j`` of coordinate ``k``, ``rows[k, j]``
    the equation index balancing that coefficient in residual ``k``.
    """
    i = np.arange(h)
    cols = np.empty((3, 2 * h + 1), dtype=int)
    rows = np.empty((3, 2 * h + 1), dtype=int)
    for k in range(3):
        cols[k, 0] = 1 + k
        cols[k, 1:h + 1] = 4 + 6 * i + 2 * k
        cols[k, h + 1:] = 4 + 6 * i + 2 * k + 1
        rows[k, 0] = 6 * h + k
        rows[k, 1:h + 1] = 6 * i + 2 * k
        rows[k, h + 1:] = 6 * i + 2 * k + 1
    return cols, rows


def flatten(z: HBState) -> np.ndarray:
    cols, _ = _layout(z.h)
    v = np.empty(size(z.h), dtype=np.result_type(*(x.to_vector() for x in z.coords), float))
    v[0] = z.omega
    for k, x in enumerate(z.coords):
        v[cols[k]] = x.to_vector()
    return v


def unflatten(v, h: int) -> HBState:
    v = np.asarray(v)
    if v.shape != (size(h),):
        raise ValueError(f"expected vector of length {size(h)}, got shape {v.shape}")
    cols, _ = _layout(h)
    return HBState(v[0], *(TrigPoly.from_vector(v[cols[k]]) for k in range(3)))


def harmonic_count(n: int) -> int:
    """Inverse of :func:`size`."""
    if n < 10 or (n - 4) % 6:
        raise ValueError(f"{n} is not of the form 6h + 4 with h >= 1")
    return (n - 4) // 6


def residual_polys(z: HBState, p: LorenzParams = CLASSICAL) -> tuple[TrigPoly, TrigPoly, TrigPoly]:
    """Truncated Fourier coefficients of the three ODE residuals."""
    x1, x2, x3 = z.coords
    w = z.omega
    d1 = differentiate(x1, w) - p.sigma * (x2 - x1)
    d2 = differentiate(x2, w) - p.r * x1 + x2 + truncated_product(x1, x3)
    d3 = differentiate(x3, w) - truncated_product(x1, x2) + p.b * x3
    return d1, d2, d3


def assemble_residual(z: HBState, p: LorenzParams = CLASSICAL) -> np.ndarray:
    """Residual vector of the ``6h + 4`` balance equations."""
    h = z.h
    _, rows = _layout(h)
    F = np.empty(size(h), dtype=np.result_type(*(x.to_vector() for x in z.coords), float))
    for k, d in enumerate(residual_polys(z, p)):
        F[rows[k]] = d.to_vector()
    F[-1] = z.x3.mean + np.sum(z.x3.cos_amp) - p.anchor
    return F


def assemble_jacobian(z: HBState, p: LorenzParams = CLASSICAL) -> np.ndarray:
    """Exact Jacobian of :func:`assemble_residual` in canonical ordering."""
    h = z.h
    n = size(h)
    m = 2 * h + 1
    cols, rows = _layout(h)
    x1, x2, x3 = z.coords
    D = differentiation_matrix(h, z.omega)
    I = np.eye(m)
    P1, P2, P3 = product_matrix(x1), product_matrix(x2), product_matrix(x3)

    # blocks[k][j] = d(residual k) / d(coordinate j), all in to_vector layout
    blocks = [
        [D + p.sigma * I, -p.sigma * I, None],
        [-p.r * I + P3, D + I, P1],
        [-P2, -P1, D + p.b * I],
    ]
    J = np.zeros((n, n))
    for k in range(3):
        for j in range(3):
            if blocks[k][j] is not None:
                J[np.ix_(rows[k], cols[j])] = blocks[k][j]
        J[rows[k], 0] = differentiate(z.coords[k], 1.0).to_vector()
    J[-1, cols[2][:h + 1]] = 1.0
    return J
