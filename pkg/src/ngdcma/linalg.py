"""Symmetric positive-definite linear algebra and Gaussian information geometry.

Everything here is a pure function of its inputs.  Symmetric outputs are
explicitly symmetrized so that round-off cannot accumulate into asymmetry
over long optimization runs.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidInputError

SYM_RTOL = 1e-12


def as_square_matrix(M, name: str = "matrix") -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return M


def symmetrize(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


def check_symmetric(M: np.ndarray, name: str = "matrix", rtol: float = SYM_RTOL) -> None:
    """Entrywise |M[i,j] - M[j,i]| <= rtol * max(1, |M[i,j]|)."""
    gap = np.abs(M - M.T)
    if np.any(gap > rtol * np.maximum(1.0, np.abs(M))):
        raise InvalidInputError(f"{name} is not symmetric")


def vect(M: np.ndarray) -> np.ndarray:
    """Column-major vectorization: (i, j) entry lands at position i + d*j."""
    return np.asarray(M).reshape(-1, order="F")


def spectral_norm(M: np.ndarray) -> float:
    """Largest absolute eigenvalue of a symmetric matrix."""
    return float(np.abs(np.linalg.eigvalsh(M)).max())


@dataclass
class GaussianParams:
    """Search-distribution state: mean vector and SPD covariance matrix."""

    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        self.mean = np.asarray(self.mean, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(self.mean)):
            raise InvalidInputError("mean contains non-finite entries")
        cov = as_square_matrix(self.covariance, "covariance")
        if cov.shape[0] != self.mean.shape[0]:
            raise InvalidInputError(
                f"covariance is {cov.shape[0]}x{cov.shape[1]} but mean has length "
                f"{self.mean.shape[0]}"
            )
        check_symmetric(cov, "covariance")
        self.covariance = symmetrize(cov)

    @property
    def dim(self) -> int:
        return self.mean.shape[0]

    def validate(self) -> "GaussianParams":
        """Check the type invariants in full (adds positive definiteness)."""
        if np.linalg.eigvalsh(self.covariance).min() <= 0.0:
            raise DomainError("covariance is not positive definite")
        return self


@dataclass
class SymEigen:
    """Eigendecomposition of a symmetric matrix, eigenvalues sorted descending."""

    eigenvectors: np.ndarray
    eigenvalues: np.ndarray

    def reconstruct(self) -> np.ndarray:
        B = self.eigenvectors
        return symmetrize((B * self.eigenvalues) @ B.T)


@dataclass
class NaturalGradient:
    """Natural-gradient pair (mean direction, covariance direction)."""

    delta_m: np.ndarray
    delta_C: np.ndarray

    def __post_init__(self):
        self.delta_m = np.asarray(self.delta_m, dtype=np.float64).reshape(-1)
        self.delta_C = as_square_matrix(self.delta_C, "delta_C")
        check_symmetric(self.delta_C, "delta_C")
        self.delta_C = symmetrize(self.delta_C)


def sym_eigen(M) -> SymEigen:
    """Eigendecomposition of a (nearly) symmetric matrix.

    The input is symmetrized first; eigenvalues come back sorted descending.
    """
    M = as_square_matrix(M)
    vals, vecs = np.linalg.eigh(symmetrize(M))
    return SymEigen(eigenvectors=vecs[:, ::-1].copy(), eigenvalues=vals[::-1].copy())


def matrix_sqrt(M) -> np.ndarray:
    """Symmetric PD square root S with S @ S = M."""
    eig = sym_eigen(M)
    if eig.eigenvalues.min() <= 0.0:
        raise DomainError("matrix_sqrt requires a positive definite input")
    B = eig.eigenvectors
    return symmetrize((B * np.sqrt(eig.eigenvalues)) @ B.T)


def cond_product(C, A) -> float:
    """Condition number of C @ A for SPD C and A.

    Computed from the spectrum of sqrt(A) @ C @ sqrt(A), which is similar to
    C @ A but symmetric, so the eigenproblem stays real and well behaved.
    """
    C = as_square_matrix(C, "C")
    sqrt_a = matrix_sqrt(A)
    if C.shape != sqrt_a.shape:
        raise InvalidInputError("C and A must have matching shapes")
    vals = np.linalg.eigvalsh(symmetrize(sqrt_a @ C @ sqrt_a))
    if vals.min() <= 0.0:
        raise DomainError("cond_product requires positive definite C")
    return max(float(vals[-1] / vals[0]), 1.0)


def cond_given_sqrt(sqrt_a: np.ndarray, C: np.ndarray) -> tuple[float, float]:
    """(Cond(CA), largest eigenvalue of sqrt(A) C sqrt(A)) with sqrt(A) precomputed.

    Loop-internal variant of cond_product; raises DomainError if C has lost
    positive definiteness.
    """
    vals = np.linalg.eigvalsh(symmetrize(sqrt_a @ C @ sqrt_a))
    if vals[0] <= 0.0:
        raise DomainError("covariance lost positive definiteness")
    return max(float(vals[-1] / vals[0]), 1.0), float(vals[-1])


def nat_grad_quadratic(params: GaussianParams, A) -> NaturalGradient:
    """Closed-form natural gradient on f(x) = g(x^T A x): (C A m, C A C).

    The overall proportionality constant is fixed to 1; the normalized
    learning-rate schedules divide it out, so it never affects iterates.
    """
    A = as_square_matrix(A, "A")
    if A.shape[0] != params.dim:
        raise InvalidInputError("A dimension does not match params")
    check_symmetric(A, "A")
    C = params.covariance
    CA = C @ A
    return NaturalGradient(delta_m=CA @ params.mean, delta_C=symmetrize(CA @ C))


def grad_log_likelihood(params: GaussianParams, x) -> NaturalGradient:
    """Gradient of ln p(x; m, C) in the (m, vect(C)) coordinates.

    Returns the pair (C^-1 (x-m), 1/2 (C^-1 (x-m)(x-m)^T C^-1 - C^-1)).
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != params.dim:
        raise InvalidInputError("x dimension does not match params")
    eig = sym_eigen(params.covariance)
    if eig.eigenvalues.min() <= 0.0:
        raise DomainError("covariance is singular")
    B = eig.eigenvectors
    inv = symmetrize((B / eig.eigenvalues) @ B.T)
    g_mean = inv @ (x - params.mean)
    g_cov = 0.5 * (np.outer(g_mean, g_mean) - inv)
    return NaturalGradient(delta_m=g_mean, delta_C=symmetrize(g_cov))


def fisher_matrix(params: GaussianParams) -> np.ndarray:
    """Fisher information in (m, vect(C)) coordinates: blkdiag(C^-1, (C^-1 x C^-1)/2)."""
    d = params.dim
    eig = sym_eigen(params.covariance)
    if eig.eigenvalues.min() <= 0.0:
        raise DomainError("covariance is singular")
    B = eig.eigenvectors
    inv = symmetrize((B / eig.eigenvalues) @ B.T)
    out = np.zeros((d + d * d, d + d * d))
    out[:d, :d] = inv
    out[d:, d:] = 0.5 * np.kron(inv, inv)
    return out
