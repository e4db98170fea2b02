"""Monotonic convex-quadratic-composite test functions.

An objective is f(x) = g(x^T A x) with A symmetric positive definite and g
strictly increasing.  All evaluation entry points accept a single vector of
length d or a batch of shape (n, d).
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, InvalidInputError
from .linalg import GaussianParams, as_square_matrix, check_symmetric, symmetrize


@dataclass(frozen=True)
class MonotoneTransform:
    """Strictly increasing scalar map applied on top of the quadratic form."""

    name: str
    fn: Callable[[np.ndarray], np.ndarray]

    def __call__(self, values):
        return self.fn(values)


IDENTITY = MonotoneTransform("identity", lambda v: v)
LOG1P = MonotoneTransform("log1p", np.log1p)


def power_transform(p: float) -> MonotoneTransform:
    if not p > 0:
        raise InvalidInputError(f"power exponent must be > 0, got {p}")
    return MonotoneTransform(f"power({p:g})", lambda v: np.power(v, p))


def custom_transform(fn: Callable, name: str = "custom") -> MonotoneTransform:
    return MonotoneTransform(name, fn)


_DEFAULT_GRID = np.concatenate(([0.0], np.logspace(-8, 8, 33)))


def is_strictly_increasing(transform: MonotoneTransform, grid=None) -> bool:
    """Spot-check monotonicity of a transform on a grid over [0, inf)."""
    g = _DEFAULT_GRID if grid is None else np.asarray(grid, dtype=np.float64)
    vals = np.asarray(transform(g), dtype=np.float64)
    return bool(np.all(np.isfinite(vals)) and np.all(np.diff(vals) > 0))


def quadratic_form(A: np.ndarray, x: np.ndarray):
    """x^T A x for a single vector or row-wise for a batch."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != A.shape[0]:
        raise InvalidInputError(
            f"point dimension {x.shape[-1]} does not match matrix dimension {A.shape[0]}"
        )
    q = np.einsum("...i,ij,...j->...", x, A, x)
    return float(q) if q.ndim == 0 else q


@dataclass
class QuadraticComposite:
    """f(x) = transform(x^T A x) with A symmetric positive definite."""

    A: np.ndarray
    transform: MonotoneTransform = field(default=IDENTITY)

    def __post_init__(self):
        A = as_square_matrix(self.A, "A")
        check_symmetric(A, "A")
        self.A = symmetrize(A)

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    def validate(self) -> "QuadraticComposite":
        if np.linalg.eigvalsh(self.A).min() <= 0.0:
            raise DomainError("A is not positive definite")
        if not is_strictly_increasing(self.transform):
            raise InvalidInputError(f"transform {self.transform.name!r} is not strictly increasing")
        return self

    def __call__(self, x):
        return evaluate(self, x)


def build_ellipsoid(d: int, transform: MonotoneTransform = IDENTITY) -> QuadraticComposite:
    """Ellipsoid benchmark: coefficients 10^(6(i-1)/(d-1)), i = 1..d."""
    if d < 2:
        raise InvalidInputError(f"ellipsoid needs dimension >= 2, got {d}")
    coeffs = 10.0 ** (6.0 * np.arange(d) / (d - 1))
    return QuadraticComposite(A=np.diag(coeffs), transform=transform)


def evaluate(obj: QuadraticComposite, x):
    return obj.transform(quadratic_form(obj.A, x))


def exact_invariant_cost(obj: QuadraticComposite, x):
    """Level-set cost x^T A x; by construction independent of the transform."""
    return quadratic_form(obj.A, x)


def expected_objective(params: GaussianParams, A) -> float:
    """E[X^T A X] under N(m, C): m^T A m + Tr(A C)."""
    A = as_square_matrix(A, "A")
    if A.shape[0] != params.dim:
        raise InvalidInputError("A dimension does not match params")
    m = params.mean
    return float(m @ A @ m + np.sum(A * params.covariance))


@dataclass
class AffineWrappedObjective:
    """base evaluated through the change of variables x -> B x + shift."""

    base: QuadraticComposite
    B: np.ndarray
    shift: np.ndarray

    def __post_init__(self):
        B = as_square_matrix(self.B, "B")
        if B.shape[0] != self.base.dim:
            raise InvalidInputError("B dimension does not match the base objective")
        sv = np.linalg.svd(B, compute_uv=False)
        if sv.min() <= 1e-12 * sv.max():
            raise DomainError("B is singular (or numerically so)")
        self.B = B
        self.shift = np.asarray(self.shift, dtype=np.float64).reshape(-1)
        if self.shift.shape[0] != B.shape[0]:
            raise InvalidInputError("shift length does not match B")

    @property
    def dim(self) -> int:
        return self.B.shape[0]

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        return self.base(x @ self.B.T + self.shift)


def affine_wrap(obj: QuadraticComposite, B, shift=None) -> AffineWrappedObjective:
    B = np.asarray(B, dtype=np.float64)
    if shift is None:
        shift = np.zeros(B.shape[0])
    return AffineWrappedObjective(base=obj, B=B, shift=shift)
