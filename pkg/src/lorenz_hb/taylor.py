"""Power-series (Taylor) integration of the Lorenz system.

Coefficients of the local solution follow from the quadratic right-hand side
by the usual Cauchy-product recurrences, so any order is cheap. Steps have a
fixed order and an adaptive length chosen so that the last retained term stays
below ``term_tol``.

With ``precision_bits > 53`` the same code runs on :mod:`mpmath` numbers
(object arrays) at that working precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import mpmath
import numpy as np

from .lorenz import CLASSICAL, LorenzParams


class IntegrationError(RuntimeError):
    pass


class StepUnderflow(IntegrationError):
    pass


class NonFinite(IntegrationError):
    pass


@dataclass(frozen=True)
class TaylorConfig:
    term_tol: float = 1e-16
    max_order: int = 20
    direction: Literal["forward", "backward"] = "forward"
    precision_bits: int = 53
    min_step: float = 1e-6
    max_step: float = 1.0

    def __post_init__(self):
        if not self.term_tol > 0:
            raise ValueError("term_tol must be positive")
        if self.max_order < 2:
            raise ValueError("max_order must be >= 2")
        if self.direction not in ("forward", "backward"):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.precision_bits < 53:
            raise ValueError("precision_bits must be at least 53")

    @property
    def extended(self) -> bool:
        return self.precision_bits > 53

    def reversed(self) -> "TaylorConfig":
        return replace(self, direction="backward" if self.direction == "forward" else "forward")


@dataclass(frozen=True)
class VerificationReport:
    forward_closure_error: float
    backward_recovery_error: float
    steps_taken: int
    config_used: TaylorConfig

    @property
    def closure_digits(self) -> int:
        return matching_digits(self.forward_closure_error)

    @property
    def recovery_digits(self) -> int:
        return matching_digits(self.backward_recovery_error)


def matching_digits(err: float) -> int:
    """Number of decimal places to which two values agree given their gap."""
    if err == 0:
        return 17
    return max(0, int(math.floor(-math.log10(err))))


def _scalars(values, cfg: TaylorConfig) -> np.ndarray:
    if cfg.extended:
        return np.array([mpmath.mpf(v) for v in values], dtype=object)
    return np.array(values, dtype=float)


def taylor_coefficients(s, p: LorenzParams = CLASSICAL, order: int = 20,
                        sign: float = 1.0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Taylor coefficients ``(a, b, c)`` of the solution through ``s``.

    ``a[k]`` is the coefficient of ``t**k`` for ``x1``, likewise ``b`` for
    ``x2`` and ``c`` for ``x3``. ``sign=-1`` gives the time-reversed flow.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    s = np.asarray(s)
    dtype = s.dtype if s.dtype == object else float
    a = np.zeros(order + 1, dtype=dtype)
    b = np.zeros(order + 1, dtype=dtype)
    c = np.zeros(order + 1, dtype=dtype)
    if dtype == object:
        a[:] = b[:] = c[:] = mpmath.mpf(0)
    a[0], b[0], c[0] = s
    sigma, r, beta = p.sigma, p.r, p.b
    for k in range(order):
        ac = a[:k + 1] @ c[k::-1]
        ab = a[:k + 1] @ b[k::-1]
        a[k + 1] = sign * sigma * (b[k] - a[k]) / (k + 1)
        b[k + 1] = sign * (r * a[k] - b[k] - ac) / (k + 1)
        c[k + 1] = sign * (ab - beta * c[k]) / (k + 1)
    return a, b, c


def _horner(coef: np.ndarray, dt):
    acc = coef[-1]
    for q in coef[-2::-1]:
        acc = acc * dt + q
    return acc


def step_size(coefs, cfg: TaylorConfig) -> float:
    """Largest step keeping the top-order terms below ``cfg.term_tol``.

    Uses the last two coefficients so that an accidentally tiny top
    coefficient cannot produce an oversized step. Returns ``cfg.max_step``
    when both vanish (e.g. at an equilibrium).
    """
    n = cfg.max_order
    dt = cfg.max_step
    for k in (n - 1, n):
        mag = max(abs(float(x[k])) for x in coefs)
        if mag > 0:
            dt = min(dt, (cfg.term_tol / mag) ** (1.0 / k))
    return dt


def _integrate(x, p: LorenzParams, span, cfg: TaylorConfig):
    """Stepping loop; ``x`` and ``span`` already carry the working scalar type."""
    sign = -1.0 if cfg.direction == "backward" else 1.0
    t = span * 0
    steps = 0
    while t < span:
        coefs = taylor_coefficients(x, p, cfg.max_order, sign)
        dt = step_size(coefs, cfg)
        if dt < cfg.min_step:
            raise StepUnderflow(f"step {dt:.3e} below {cfg.min_step:.1e} at t={float(t):.6f}")
        if dt >= span - t:
            h_step, t = span - t, span
        else:
            h_step = mpmath.mpf(dt) if cfg.extended else dt
            t = t + h_step
        x = np.array([_horner(cf, h_step) for cf in coefs], dtype=x.dtype)
        if not all(math.isfinite(float(v)) for v in x):
            raise NonFinite(f"state became non-finite at t={float(t):.6f}")
        steps += 1
    return x, steps


def integrate(s0, p: LorenzParams = CLASSICAL, t_span: float = 1.0,
              cfg: TaylorConfig = TaylorConfig(), stats: dict | None = None):
    """Advance ``s0`` by ``t_span`` time units.

    ``cfg.direction == "backward"`` integrates the negated vector field. The
    result is a float array, or an mpf object array in extended mode.
    """
    if not t_span > 0:
        raise ValueError("t_span must be positive")
    with _precision(cfg), np.errstate(over="ignore", invalid="ignore"):
        x, steps = _integrate(_scalars(s0, cfg), p, _span(t_span, cfg), cfg)
    if stats is not None:
        stats["steps"] = stats.get("steps", 0) + steps
    return x


def _span(t_span, cfg: TaylorConfig):
    return mpmath.mpf(t_span) if cfg.extended else float(t_span)


def _precision(cfg: TaylorConfig):
    return mpmath.workprec(cfg.precision_bits) if cfg.extended else _null()


class _null:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def verify_orbit(result, p: LorenzParams | None = None,
                 cfg: TaylorConfig = TaylorConfig()) -> VerificationReport:
    """Check that the initial condition of ``result`` closes after one period.

    ``result`` is anything exposing ``initial_condition`` and ``period``
    (e.g. :class:`~lorenz_hb.newton.CycleResult`). The forward image, kept at
    full working accuracy, is then integrated back over the same span and
    compared with the start point.
    """
    if p is None:
        p = getattr(result, "params", CLASSICAL)
    T = float(result.period)
    if not T > 0:
        raise ValueError("period must be positive")
    fwd = replace(cfg, direction="forward")
    with _precision(cfg):
        x0 = _scalars(np.asarray(result.initial_condition, dtype=float), cfg)
        span = _span(T, cfg)
        xT, n_fwd = _integrate(x0, p, span, fwd)
        back, n_back = _integrate(xT, p, span, fwd.reversed())
        fwd_err = max(abs(float(u - v)) for u, v in zip(xT, x0))
        back_err = max(abs(float(u - v)) for u, v in zip(back, x0))
    return VerificationReport(fwd_err, back_err, n_fwd + n_back, cfg)
