"""Harmonic-balance search for periodic orbits of the Lorenz system."""
from .lorenz import CLASSICAL, LorenzParams, equilibria, vector_field
from .newton import (CycleResult, Diverged, MaxIterExceeded, NewtonConfig, SingularJacobian,
                     SolverError, Stagnated, builtin_seed, default_schedule, newton_solve,
                     run_continuation)
from .system import (HBState, assemble_jacobian, assemble_residual, flatten, harmonic_count,
                     unflatten)
from .taylor import (StepUnderflow, NonFinite, TaylorConfig, VerificationReport, integrate,
                     taylor_coefficients, verify_orbit)
from .trigpoly import TrigPoly, differentiate, evaluate, truncated_product

__version__ = "0.1.0"
