"""Deterministic natural-gradient descent on quadratic composites.

On f(x) = g(x^T A x) the natural gradient has the closed form
(C A m, C A C), so the iteration needs no sampling.  Learning rates are
normalized per step by the largest eigenvalue of sqrt(A) C sqrt(A), which
equals the largest eigenvalue of C^-1 (C A C); with pseudo-rates
(alpha_m, alpha_C) the update is

    m   <- m - (alpha_m / lambda_1) C A m
    C   <- C - (alpha_C / lambda_1) C A C.

Cond(C A) then follows an exact scalar recurrence, and once Cond reaches 1
both ``m`` and ``C`` shrink geometrically with ratios 1 - alpha_m and
1 - alpha_C.  Those closed-form predictors live here next to the iteration
they describe.
"""

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InvalidInputError, NumericalError
from .linalg import GaussianParams, cond_given_sqrt, matrix_sqrt, symmetrize
from .objectives import expected_objective
from .trace import IterationTrace, StopRule


@dataclass(frozen=True)
class DetSchedule:
    """Pseudo learning rates; alpha_C <= 1/2 keeps the covariance PD."""

    alpha_m: float = 0.1
    alpha_C: float = 0.1

    def __post_init__(self):
        if not 0.0 < self.alpha_m <= 1.0:
            raise InvalidInputError(f"alpha_m must be in (0, 1], got {self.alpha_m}")
        if not 0.0 < self.alpha_C <= 0.5:
            raise InvalidInputError(f"alpha_C must be in (0, 1/2], got {self.alpha_C}")


@dataclass
class DetState:
    params: GaussianParams
    iteration: int = 0


def _advance(m, C, A, sqrt_a, sched):
    cond, lam1 = cond_given_sqrt(sqrt_a, C)
    eta_m = sched.alpha_m / lam1
    eta_C = sched.alpha_C / lam1
    CA = C @ A
    new_m = m - eta_m * (CA @ m)
    new_C = symmetrize(C - eta_C * (CA @ C))
    if not (np.all(np.isfinite(new_m)) and np.all(np.isfinite(new_C))):
        raise NumericalError("deterministic update produced non-finite parameters")
    return new_m, new_C, cond, eta_m, eta_C


def det_step(state: DetState, A, sched: DetSchedule) -> DetState:
    """One normalized natural-gradient step; A must be symmetric PD."""
    sqrt_a = matrix_sqrt(A)
    A = np.asarray(A, dtype=np.float64)
    if A.shape[0] != state.params.dim:
        raise InvalidInputError("A dimension does not match the state")
    m, C, _, _, _ = _advance(state.params.mean, state.params.covariance, A, sqrt_a, sched)
    return DetState(params=GaussianParams(m, C), iteration=state.iteration + 1)


def predict_cond_recurrence(cond0: float, alpha: float, t: int) -> float:
    """Cond(C^t A) after t steps of the exact recurrence
    cond <- cond (1 - alpha) / (1 - alpha / cond)."""
    return float(cond_recurrence_curve(cond0, alpha, t)[-1])


def cond_recurrence_curve(cond0: float, alpha: float, iters: int) -> np.ndarray:
    """The full Cond(C^t A) trajectory for t = 0..iters under equal pseudo-rates."""
    if not cond0 >= 1.0:
        raise InvalidInputError(f"cond0 must be >= 1, got {cond0}")
    if not 0.0 < alpha <= 0.5:
        raise InvalidInputError(f"alpha must be in (0, 1/2], got {alpha}")
    if iters < 0:
        raise InvalidInputError("iteration count must be >= 0")
    out = np.empty(iters + 1)
    c = float(cond0)
    out[0] = c
    for k in range(1, iters + 1):
        c = c * (1.0 - alpha) / (1.0 - alpha / c)
        out[k] = c
    return out


def predict_cond_upper_bound(cond0: float, gamma_min: float, t: int) -> float:
    """Bound 1 + ((1-2g)/(1-g))^t (cond0 - 1), valid for any schedule with
    per-step normalized rate at least gamma_min."""
    if not cond0 >= 1.0:
        raise InvalidInputError(f"cond0 must be >= 1, got {cond0}")
    if not 0.0 < gamma_min <= 0.5:
        raise InvalidInputError(f"gamma_min must be in (0, 1/2], got {gamma_min}")
    if t < 0:
        raise InvalidInputError("iteration count must be >= 0")
    factor = (1.0 - 2.0 * gamma_min) / (1.0 - gamma_min)
    return float(1.0 + factor**t * (cond0 - 1.0))


def iterate_deterministic(
    A, init: GaussianParams, sched: DetSchedule
) -> Iterator[tuple[IterationTrace, GaussianParams]]:
    """Yield (trace of the pre-step state, post-step params) forever.

    The caller owns the stopping rule; ``run_deterministic`` is the standard
    driver.
    """
    sqrt_a = matrix_sqrt(A)
    A = np.asarray(A, dtype=np.float64)
    m = init.mean.copy()
    C = init.covariance.copy()
    t = 0
    while True:
        J = expected_objective(GaussianParams(m, C), A)
        new_m, new_C, cond, eta_m, eta_C = _advance(m, C, A, sqrt_a, sched)
        trace = IterationTrace(
            iteration=t,
            cond=cond,
            J=J,
            norm_m=float(np.linalg.norm(m)),
            norm_C=float(np.linalg.norm(C)),
            eta_m=eta_m,
            eta_C=eta_C,
        )
        m, C = new_m, new_C
        yield trace, GaussianParams(m, C)
        t += 1


def run_deterministic(
    A, init: GaussianParams, sched: DetSchedule, stop: StopRule = StopRule()
) -> list[IterationTrace]:
    """Iterate until J <= target or max_iters; one trace row per iteration."""
    rows: list[IterationTrace] = []
    for trace, _params in iterate_deterministic(A, init, sched):
        rows.append(trace)
        if trace.J <= stop.target_J or trace.iteration >= stop.max_iters:
            break
    return rows
