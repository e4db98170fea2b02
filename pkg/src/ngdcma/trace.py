"""Per-iteration diagnostics and stopping rules shared by the optimizers."""

from dataclasses import dataclass

from .errors import InvalidInputError


@dataclass
class IterationTrace:
    """State diagnostics at the start of iteration t plus the rates used by step t.

    ``sigma1_z`` is populated by the sampling-based algorithms only.  A row
    whose ``eta_m`` is NaN marks an iteration where no step was taken (the
    stopping row, or a degenerate population that was skipped).
    """

    iteration: int
    cond: float
    J: float
    norm_m: float
    norm_C: float
    eta_m: float
    eta_C: float
    sigma1_z: float | None = None


@dataclass(frozen=True)
class StopRule:
    """Stop at the first iteration with J <= target_J, or after max_iters."""

    target_J: float = 1e-10
    max_iters: int = 100_000

    def __post_init__(self):
        if not self.target_J > 0:
            raise InvalidInputError("target_J must be positive")
        if self.max_iters < 1:
            raise InvalidInputError("max_iters must be at least 1")
