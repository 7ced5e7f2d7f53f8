"""Dense complex linear algebra on small bipartite operators.

Matrices are plain 2-d ``numpy`` arrays of ``complex128``. Bipartite operators
use the row-major computational ordering ``|i j> -> i * d_B + j`` everywhere.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from qsep.config import DEFAULT_TOLERANCES
from qsep.errors import DimensionError, NumericalError, ValidationError

_SUBSYSTEMS = ("A", "B")


@dataclass(frozen=True)
class BipartiteDims:
    d_A: int
    d_B: int

    def __post_init__(self):
        for name in ("d_A", "d_B"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise DimensionError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))

    @property
    def total(self) -> int:
        return self.d_A * self.d_B

    def of(self, subsystem: str) -> int:
        return self.d_A if _check_subsystem(subsystem) == "A" else self.d_B

    def __iter__(self):
        yield self.d_A
        yield self.d_B


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_dims(dims) -> BipartiteDims:
    if isinstance(dims, BipartiteDims):
        return dims
    d_A, d_B = dims
    return BipartiteDims(d_A, d_B)


def as_matrix(M) -> np.ndarray:
    """Coerce to a finite 2-d complex array."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix contains NaN or Inf entries")
    return A


def _check_subsystem(subsystem: str) -> str:
    if subsystem not in _SUBSYSTEMS:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return subsystem


def _check_bipartite(rho: np.ndarray, dims: BipartiteDims) -> None:
    n = dims.total
    if rho.shape != (n, n):
        raise DimensionError(
            f"matrix of shape {rho.shape} does not act on a {dims.d_A}x{dims.d_B} system"
        )


def kron(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    rows = A.shape[0] * B.shape[0]
    cols = A.shape[1] * B.shape[1]
    if rows * cols > 2**31:
        raise DimensionError(f"tensor product of size {rows}x{cols} is too large")
    return np.kron(A, B)


def partial_transpose(rho, dims, subsystem: str = "A") -> np.ndarray:
    """Transpose the indices of one tensor factor.

    For ``subsystem="A"`` entry ``((i, mu), (j, nu))`` of the result is entry
    ``((j, mu), (i, nu))`` of ``rho``. This is a pure index permutation, so it
    is exact and an involution.
    """
    rho = as_matrix(rho)
    dims = as_dims(dims)
    _check_bipartite(rho, dims)
    t = rho.reshape(dims.d_A, dims.d_B, dims.d_A, dims.d_B)
    if _check_subsystem(subsystem) == "A":
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return np.ascontiguousarray(t).reshape(dims.total, dims.total)


def partial_trace(rho, dims, keep: str = "A") -> np.ndarray:
    rho = as_matrix(rho)
    dims = as_dims(dims)
    _check_bipartite(rho, dims)
    t = rho.reshape(dims.d_A, dims.d_B, dims.d_A, dims.d_B)
    if _check_subsystem(keep) == "A":
        return np.einsum("ijkj->ik", t)
    return np.einsum("ijik->jk", t)


def hermiticity_error(M) -> float:
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        return np.inf
    if M.size == 0:
        return 0.0
    return float(np.max(np.abs(M - M.conj().T)))


def eigh(M, tol: float = DEFAULT_TOLERANCES.hermitian) -> Spectrum:
    """Spectral decomposition of a Hermitian matrix, eigenvalues descending.

    The input is symmetrised before diagonalisation so that round-off
    asymmetry below ``tol`` cannot leak into the spectrum.
    """
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"eigh needs a square matrix, got {M.shape}")
    err = hermiticity_error(M)
    if err > tol:
        raise ValidationError(f"matrix is not Hermitian (max |M - M^dag| = {err:.3e})")
    H = 0.5 * (M + M.conj().T)
    try:
        w, v = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition did not converge: {exc}") from exc
    return Spectrum(w[::-1].copy(), v[:, ::-1].copy())


def eigvalsh(M, tol: float = DEFAULT_TOLERANCES.hermitian) -> np.ndarray:
    """Eigenvalues only, descending."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"eigvalsh needs a square matrix, got {M.shape}")
    err = hermiticity_error(M)
    if err > tol:
        raise ValidationError(f"matrix is not Hermitian (max |M - M^dag| = {err:.3e})")
    try:
        w = np.linalg.eigvalsh(0.5 * (M + M.conj().T))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition did not converge: {exc}") from exc
    return w[::-1].copy()


def svd(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``M = U @ diag(s) @ V.conj().T`` with ``s`` descending.

    Note that ``V`` is returned, not ``V^dag``.
    """
    M = as_matrix(M)
    try:
        U, s, Vh = np.linalg.svd(M, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    return U, s, Vh.conj().T


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product ``tr(A^dag B)``."""
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {B.shape}")
    return complex(np.vdot(A, B))


def dagger(M) -> np.ndarray:
    return as_matrix(M).conj().T
