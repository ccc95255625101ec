"""Truncated trigonometric polynomials.

A :class:`TrigPoly` of degree ``h`` represents

    mean + sum_{i=1..h} (cos_amp[i] cos(i w t) + sin_amp[i] sin(i w t))

with harmonics stored 1-based in the formulas and 0-based in the arrays.
Products are truncated back to degree ``h`` by projection.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class TrigPoly:
    mean: float
    cos_amp: np.ndarray
    sin_amp: np.ndarray

    def __post_init__(self):
        # contiguous copies keep reductions (and hence results) independent of the source layout
        c = np.ascontiguousarray(self.cos_amp)
        s = np.ascontiguousarray(self.sin_amp)
        if c.ndim != 1 or c.shape != s.shape or c.size < 1:
            raise ValueError("cos_amp and sin_amp must be 1-D arrays of equal length h >= 1")
        object.__setattr__(self, "cos_amp", c)
        object.__setattr__(self, "sin_amp", s)

    @property
    def h(self) -> int:
        return self.cos_amp.size

    @classmethod
    def zeros(cls, h: int) -> "TrigPoly":
        return cls(0.0, np.zeros(h), np.zeros(h))

    @classmethod
    def constant(cls, value: float, h: int) -> "TrigPoly":
        return cls(value, np.zeros(h), np.zeros(h))

    @classmethod
    def from_vector(cls, v) -> "TrigPoly":
        """Inverse of :meth:`to_vector`."""
        v = np.asarray(v)
        if v.ndim != 1 or v.size < 3 or v.size % 2 == 0:
            raise ValueError("expected a vector of length 2h + 1")
        h = (v.size - 1) // 2
        return cls(v[0], v[1:h + 1].copy(), v[h + 1:].copy())

    def to_vector(self) -> np.ndarray:
        """Coefficients as ``[mean, cos_1..cos_h, sin_1..sin_h]``."""
        return np.concatenate(([self.mean], self.cos_amp, self.sin_amp))

    def padded(self, h: int) -> "TrigPoly":
        """Zero-pad (or truncate) to ``h`` harmonics."""
        c = np.zeros(h, dtype=self.cos_amp.dtype)
        s = np.zeros(h, dtype=self.sin_amp.dtype)
        n = min(h, self.h)
        c[:n] = self.cos_amp[:n]
        s[:n] = self.sin_amp[:n]
        return TrigPoly(self.mean, c, s)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        _check_same_h(self, other)
        return TrigPoly(self.mean + other.mean, self.cos_amp + other.cos_amp,
                        self.sin_amp + other.sin_amp)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + (-1.0) * other

    def __mul__(self, k) -> "TrigPoly":
        if isinstance(k, TrigPoly):
            return truncated_product(self, k)
        return TrigPoly(k * self.mean, k * self.cos_amp, k * self.sin_amp)

    __rmul__ = __mul__

    def __call__(self, omega: float, t):
        return evaluate(self, omega, t)

    def allclose(self, other: "TrigPoly", atol: float = 0.0) -> bool:
        return self.h == other.h and bool(
            np.all(np.abs(self.to_vector() - other.to_vector()) <= atol))


def _check_same_h(f: TrigPoly, g: TrigPoly) -> None:
    if f.h != g.h:
        raise ValueError(f"harmonic counts differ: {f.h} != {g.h}")


def evaluate(p: TrigPoly, omega: float, t):
    """Value of ``p`` at time(s) ``t`` for cyclic frequency ``omega``."""
    t = np.asarray(t, dtype=float)
    i = np.arange(1, p.h + 1)
    phase = np.multiply.outer(t, i * omega)
    return p.mean + np.cos(phase) @ p.cos_amp + np.sin(phase) @ p.sin_amp


def differentiate(p: TrigPoly, omega: float) -> TrigPoly:
    """Time derivative: ``cos_i' = i w sin_i``, ``sin_i' = -i w cos_i``."""
    iw = np.arange(1, p.h + 1) * omega
    return TrigPoly(0.0 * p.mean, iw * p.sin_amp, -iw * p.cos_amp)


def truncated_product(f: TrigPoly, g: TrigPoly) -> TrigPoly:
    """Product ``f * g`` projected onto harmonics ``0..h``.

    Direct summation of the closed-form convolution sums (with the reflection
    ``A_{m-i} = A_{i-m}``, ``B_{m-i} = -B_{i-m}`` already folded in). Empty
    index ranges contribute zero.
    """
    _check_same_h(f, g)
    h = f.h
    # 1-based views; index 0 holds the mean (cosine) or 0 (sine)
    a = np.concatenate(([f.mean], f.cos_amp))
    b = np.concatenate(([0.0 * f.mean], f.sin_amp))
    A = np.concatenate(([g.mean], g.cos_amp))
    B = np.concatenate(([0.0 * g.mean], g.sin_amp))

    alpha0 = a[0] * A[0] + 0.5 * (a[1:] @ A[1:] + b[1:] @ B[1:])
    alpha = np.empty(h, dtype=np.result_type(a, A))
    beta = np.empty(h, dtype=np.result_type(a, A))
    for i in range(1, h + 1):
        hi = slice(1, h - i + 1)        # m = 1..h-i, partner m+i
        hi_p = slice(i + 1, h + 1)
        lo = slice(1, i)                # m = 1..i-1, partner i-m
        lo_p = slice(i - 1, 0, -1) if i > 1 else slice(0, 0)
        up = slice(i + 1, h + 1)        # m = i+1..h, partner m-i
        up_p = slice(1, h - i + 1)

        alpha[i - 1] = (
            a[0] * A[i] + a[i] * A[0]
            + 0.5 * (a[hi] @ A[hi_p] + b[hi] @ B[hi_p])
            + 0.5 * (a[lo] @ A[lo_p] - b[lo] @ B[lo_p])
            + 0.5 * (a[up] @ A[up_p] + b[up] @ B[up_p])
        )
        beta[i - 1] = (
            a[0] * B[i] + b[i] * A[0]
            + 0.5 * (a[hi] @ B[hi_p] - b[hi] @ A[hi_p])
            + 0.5 * (a[lo] @ B[lo_p] + b[lo] @ A[lo_p])
            + 0.5 * (-(a[up] @ B[up_p]) + b[up] @ A[up_p])
        )
    return TrigPoly(alpha0, alpha, beta)


def product_matrix(g: TrigPoly) -> np.ndarray:
    """Matrix ``M`` with ``M @ f.to_vector() == truncated_product(f, g).to_vector()``.

    Since the truncated product is bilinear, ``M`` is also the derivative of
    the product with respect to its first factor.
    """
    h = g.h
    A = np.concatenate(([g.mean], g.cos_amp)).astype(float)
    B = np.concatenate(([0.0], g.sin_amp)).astype(float)
    n = 2 * h + 1
    M = np.zeros((n, n))

    def ca(m):  # column of a_m (a_0 is the mean)
        return m

    def cb(m):
        return h + m

    # mean row
    M[0, 0] = A[0]
    for m in range(1, h + 1):
        M[0, ca(m)] = 0.5 * A[m]
        M[0, cb(m)] = 0.5 * B[m]

    for i in range(1, h + 1):
        ra, rb = i, h + i
        M[ra, 0] = A[i]
        M[ra, ca(i)] += A[0]
        M[rb, 0] = B[i]
        M[rb, cb(i)] += A[0]
        for m in range(1, h - i + 1):
            M[ra, ca(m)] += 0.5 * A[m + i]
            M[ra, cb(m)] += 0.5 * B[m + i]
            M[rb, ca(m)] += 0.5 * B[m + i]
            M[rb, cb(m)] -= 0.5 * A[m + i]
        for m in range(1, i):
            M[ra, ca(m)] += 0.5 * A[i - m]
            M[ra, cb(m)] -= 0.5 * B[i - m]
            M[rb, ca(m)] += 0.5 * B[i - m]
            M[rb, cb(m)] += 0.5 * A[i - m]
        for m in range(i + 1, h + 1):
            M[ra, ca(m)] += 0.5 * A[m - i]
            M[ra, cb(m)] += 0.5 * B[m - i]
            M[rb, ca(m)] -= 0.5 * B[m - i]
            M[rb, cb(m)] += 0.5 * A[m - i]
    return M


def differentiation_matrix(h: int, omega: float) -> np.ndarray:
    """Matrix of :func:`differentiate` acting on ``to_vector`` layout."""
    n = 2 * h + 1
    D = np.zeros((n, n))
    iw = np.arange(1, h + 1) * omega
    idx = np.arange(1, h + 1)
    D[idx, h + idx] = iw
    D[h + idx, idx] = -iw
    return D
