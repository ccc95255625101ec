"""Newton iteration and continuation in the number of harmonics."""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .lorenz import CLASSICAL, LorenzParams
from .system import HBState, assemble_jacobian, assemble_residual, flatten, unflatten
from .trigpoly import TrigPoly

log = logging.getLogger(__name__)


class SolverError(RuntimeError):
    """Base class for Newton failures; ``stage_h`` is set by continuation."""

    stage_h: int | None = None

    def __str__(self):
        msg = super().__str__()
        return f"[h={self.stage_h}] {msg}" if self.stage_h is not None else msg


class MaxIterExceeded(SolverError):
    pass


class SingularJacobian(SolverError):
    pass


class Diverged(SolverError):
    pass


class Stagnated(SolverError):
    pass


@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-8
    max_iter: int = 50
    min_step_norm: float = 1e-14
    # pivots below rcond * max|pivot| are treated as singular
    rcond: float = 1e-13

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass(frozen=True)
class NewtonStep:
    residual_norm: float
    step_norm: float


def _max_norm(v) -> float:
    return float(np.max(np.abs(v)))


def newton_solve(z0: HBState, p: LorenzParams = CLASSICAL,
                 cfg: NewtonConfig = NewtonConfig(),
                 trace: list[NewtonStep] | None = None) -> HBState:
    """Solve the balance equations by full-step Newton with LU.

    Converged when the residual max-norm drops to ``cfg.tol``. If ``trace``
    is given, one :class:`NewtonStep` is appended per iteration.
    """
    h = z0.h
    z = np.asarray(flatten(z0), dtype=float)
    if not np.all(np.isfinite(z)):
        raise Diverged("initial guess is not finite")
    if not z[0] > 0:
        raise ValueError("initial frequency must be positive")

    for it in range(cfg.max_iter + 1):
        state = unflatten(z, h)
        F = assemble_residual(state, p)
        res = _max_norm(F)
        if not np.isfinite(res):
            raise Diverged(f"residual became non-finite at iteration {it}")
        log.debug("h=%d iter=%d |F|=%.3e", h, it, res)
        if res <= cfg.tol:
            return state
        if it == cfg.max_iter:
            break

        J = assemble_jacobian(state, p)
        with warnings.catch_warnings():
            # exact zero pivots are reported below as SingularJacobian
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(J, check_finite=False)
        pivots = np.abs(np.diag(lu))
        if pivots.min() <= cfg.rcond * max(pivots.max(), np.finfo(float).tiny):
            raise SingularJacobian(
                f"LU pivot {pivots.min():.3e} below threshold at iteration {it}")
        dz = scipy.linalg.lu_solve((lu, piv), -F, check_finite=False)
        step = _max_norm(dz)
        if trace is not None:
            trace.append(NewtonStep(res, step))
        if not np.isfinite(step):
            raise Diverged(f"Newton step became non-finite at iteration {it}")
        if step < cfg.min_step_norm:
            raise Stagnated(f"step {step:.3e} below {cfg.min_step_norm:.1e} "
                            f"with residual {res:.3e}")
        z = z + dz
        if not np.all(np.isfinite(z)):
            raise Diverged(f"state became non-finite at iteration {it}")

    raise MaxIterExceeded(f"residual {res:.3e} > {cfg.tol:.1e} after {cfg.max_iter} iterations")


def builtin_seed() -> HBState:
    """Initial guess at h = 5 leading to the shortest Lorenz cycle."""
    h = 5
    x1 = TrigPoly(0.0, -np.ones(h), np.array([0.0, 1.0, 0.0, 0.0, 0.0]))
    return HBState(4.0, x1, TrigPoly.zeros(h), TrigPoly.zeros(h))


@dataclass
class CycleResult:
    state: HBState
    params: LorenzParams
    residual_norm: float
    iterations_per_stage: list[tuple[int, int]] = field(default_factory=list)

    @property
    def period(self) -> float:
        return self.state.period

    @property
    def initial_condition(self) -> np.ndarray:
        return self.state.at(0.0)


def default_schedule(h: int, start: int = 5, step: int = 5) -> list[int]:
    """``start, start+step, ...`` up to and including ``h``."""
    if h < start:
        raise ValueError(f"target h={h} is below the starting h={start}")
    ladder = list(range(start, h + 1, step))
    if ladder[-1] != h:
        ladder.append(h)
    return ladder


def _check_schedule(schedule) -> list[int]:
    hs = [int(h) for h in schedule]
    if not hs or any(h < 1 for h in hs) or any(b <= a for a, b in zip(hs, hs[1:])):
        raise ValueError(f"schedule must be a non-empty strictly increasing list "
                         f"of positive integers, got {schedule}")
    return hs


def run_continuation(schedule=(5, 10, 15, 20, 25, 30, 35), p: LorenzParams = CLASSICAL,
                     cfg: NewtonConfig = NewtonConfig(),
                     seed: HBState | None = None) -> CycleResult:
    """Solve at each harmonic count in turn, zero-padding the previous root.

    The first stage starts from ``seed`` (default :func:`builtin_seed`), which
    is padded or truncated to ``schedule[0]`` harmonics.
    """
    hs = _check_schedule(schedule)
    z = builtin_seed() if seed is None else seed
    stages = []
    for h in hs:
        trace: list[NewtonStep] = []
        try:
            z = newton_solve(z.padded(h), p, cfg, trace)
        except SolverError as exc:
            exc.stage_h = h
            raise
        stages.append((h, len(trace)))
        log.info("stage h=%d converged in %d iterations, T=%.12f", h, len(trace), z.period)
    res = _max_norm(assemble_residual(z, p))
    return CycleResult(z, p, res, stages)
