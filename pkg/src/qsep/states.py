"""Validated bipartite states, named constructors and seeded random generators."""

from dataclasses import dataclass, field

import numpy as np

from qsep.config import DEFAULT_TOLERANCES, Tolerances
from qsep.errors import DimensionError, DomainError, ValidationError
from qsep.linalg import (
    BipartiteDims,
    as_dims,
    as_matrix,
    eigvalsh,
    hermiticity_error,
    partial_trace,
)

BELL_KINDS = ("psi_plus", "psi_minus", "phi_plus", "phi_minus")


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator on ``C^d_A (x) C^d_B``."""

    mat: np.ndarray
    dims: BipartiteDims
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)

    def __post_init__(self):
        dims = as_dims(self.dims)
        mat = as_matrix(self.mat)
        if mat.shape != (dims.total, dims.total):
            raise DimensionError(
                f"matrix of shape {mat.shape} does not match dims ({dims.d_A}, {dims.d_B})"
            )
        tol = self.tolerances
        herm = hermiticity_error(mat)
        if herm > tol.hermitian:
            raise ValidationError(f"density matrix is not Hermitian (deviation {herm:.3e})")
        tr = np.trace(mat)
        if abs(tr - 1) > tol.trace:
            raise ValidationError(f"density matrix trace is {tr.real:.12g}, expected 1")
        lam_min = eigvalsh(mat, tol=tol.hermitian)[-1]
        if lam_min < -tol.psd:
            raise ValidationError(
                f"density matrix is not positive semidefinite (min eigenvalue {lam_min:.3e})"
            )
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mat", _readonly(mat))

    @property
    def dim(self) -> int:
        return self.dims.total

    def reduced(self, keep: str) -> np.ndarray:
        return partial_trace(self.mat, self.dims, keep)

    def purity(self) -> float:
        return float(np.real(np.vdot(self.mat, self.mat)))

    def conjugated(self, U) -> "DensityMatrix":
        """``U rho U^dag`` for a unitary ``U`` on the full space."""
        U = as_matrix(U)
        return DensityMatrix(U @ self.mat @ U.conj().T, self.dims, self.tolerances)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)


@dataclass(frozen=True, eq=False)
class PureState:
    vec: np.ndarray
    dims: BipartiteDims

    def __post_init__(self):
        dims = as_dims(self.dims)
        vec = np.asarray(self.vec, dtype=np.complex128).reshape(-1)
        if vec.shape != (dims.total,):
            raise DimensionError(
                f"amplitude vector of length {vec.size} does not match dims ({dims.d_A}, {dims.d_B})"
            )
        if not np.all(np.isfinite(vec)):
            raise ValidationError("amplitudes contain NaN or Inf")
        norm = np.linalg.norm(vec)
        if abs(norm - 1) > DEFAULT_TOLERANCES.norm:
            raise ValidationError(f"state vector has norm {norm:.15g}, expected 1")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "vec", _readonly(vec))

    def amplitude_matrix(self) -> np.ndarray:
        """Coefficients ``c_ij`` of ``|psi> = sum c_ij |i>|j>`` as a ``d_A x d_B`` array."""
        return self.vec.reshape(self.dims.d_A, self.dims.d_B)

    @classmethod
    def normalized(cls, vec, dims) -> "PureState":
        vec = np.asarray(vec, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise ValidationError("cannot normalise the zero vector")
        return cls(vec / norm, dims)


def bell_state(kind: str) -> PureState:
    """One of the four Bell states, e.g. ``psi_minus = (|01> - |10>)/sqrt(2)``."""
    s = 1 / np.sqrt(2)
    table = {
        "psi_plus": (0, s, s, 0),
        "psi_minus": (0, s, -s, 0),
        "phi_plus": (s, 0, 0, s),
        "phi_minus": (s, 0, 0, -s),
    }
    if kind not in table:
        raise DomainError(f"unknown Bell state {kind!r}; choose from {BELL_KINDS}")
    return PureState(np.array(table[kind], dtype=np.complex128), BipartiteDims(2, 2))


def projector(psi: PureState) -> DensityMatrix:
    v = psi.vec
    return DensityMatrix(np.outer(v, v.conj()), psi.dims)


def product_state(e, f) -> PureState:
    """``|e> (x) |f>`` from two local vectors (normalised on the way in)."""
    e = np.asarray(e, dtype=np.complex128).reshape(-1)
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    e = e / np.linalg.norm(e)
    f = f / np.linalg.norm(f)
    return PureState(np.kron(e, f), BipartiteDims(e.size, f.size))


def basis_state(i: int, j: int, dims=(2, 2)) -> PureState:
    dims = as_dims(dims)
    if not (0 <= i < dims.d_A and 0 <= j < dims.d_B):
        raise DomainError(f"|{i}{j}> is not a basis state of a {dims.d_A}x{dims.d_B} system")
    v = np.zeros(dims.total, dtype=np.complex128)
    v[i * dims.d_B + j] = 1
    return PureState(v, dims)


def maximally_mixed(dims=(2, 2)) -> DensityMatrix:
    dims = as_dims(dims)
    return DensityMatrix(np.eye(dims.total) / dims.total, dims)


def werner(p: float) -> DensityMatrix:
    """``p |psi-><psi-| + (1 - p) I/4`` on two qubits."""
    if not 0 <= p <= 1:
        raise DomainError(f"Werner mixing parameter must lie in [0, 1], got {p}")
    singlet = projector(bell_state("psi_minus")).mat
    return DensityMatrix(p * singlet + (1 - p) * np.eye(4) / 4, BipartiteDims(2, 2))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector in ``C^d`` (normalised complex Gaussian)."""
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def haar_unitary(d: int, seed=None) -> np.ndarray:
    """Haar-random unitary via QR with the phase correction of Mezzadri."""
    rng = _rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_pure(dims, seed=None) -> PureState:
    dims = as_dims(dims)
    return PureState(haar_vector(dims.total, _rng(seed)), dims)


def random_density(dim, rank: int | None = None, seed=None) -> DensityMatrix:
    """Wishart-type random state ``G G^dag / tr`` with ``G`` a ``dim x rank`` Gaussian.

    ``dim`` is either an integer (tagged as dims ``(dim, 1)``) or a bipartite
    dims pair. ``rank`` defaults to full rank.
    """
    dims = BipartiteDims(int(dim), 1) if np.isscalar(dim) else as_dims(dim)
    n = dims.total
    if rank is None:
        rank = n
    if not 1 <= rank <= n:
        raise DomainError(f"rank must satisfy 1 <= rank <= {n}, got {rank}")
    rng = _rng(seed)
    G = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = G @ G.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real, dims)


def random_separable(dims, K: int | None = None, seed=None) -> DensityMatrix:
    """``sum_k p_k |e_k><e_k| (x) |f_k><f_k|`` with Haar local states and Dirichlet weights.

    ``K`` defaults to ``(d_A d_B)^2``, the Caratheodory bound on the number of
    product terms a separable state needs.
    """
    dims = as_dims(dims)
    if K is None:
        K = dims.total**2
    if K < 1:
        raise DomainError(f"need at least one product term, got K={K}")
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(K)) if K > 1 else np.ones(1)
    rho = np.zeros((dims.total, dims.total), dtype=np.complex128)
    for p in weights:
        v = np.kron(haar_vector(dims.d_A, rng), haar_vector(dims.d_B, rng))
        rho += p * np.outer(v, v.conj())
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real, dims)
