"""Entanglement witnesses, positive maps and the Choi-Jamiolkowski correspondence."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from qsep.config import DEFAULT_TOLERANCES
from qsep.errors import DimensionError, DomainError, ValidationError
from qsep.linalg import (
    BipartiteDims,
    as_dims,
    as_matrix,
    eigh,
    eigvalsh,
    hermiticity_error,
    partial_trace,
    partial_transpose,
)
from qsep.states import DensityMatrix, _rng, bell_state, haar_vector, projector

_TOL = DEFAULT_TOLERANCES.hermitian


@dataclass(frozen=True, eq=False)
class Witness:
    """Hermitian observable ``W`` with ``tr(W sigma) >= 0`` on separable ``sigma``.

    ``decomposition`` optionally holds a certificate ``(P, Q)`` with
    ``W = P + Q^{T_A}`` and ``P, Q >= 0``.
    """

    op: np.ndarray
    dims: BipartiteDims
    decomposition: tuple[np.ndarray, np.ndarray] | None = None

    def __post_init__(self):
        dims = as_dims(self.dims)
        op = as_matrix(self.op)
        if op.shape != (dims.total, dims.total):
            raise DimensionError(f"witness of shape {op.shape} does not match dims {tuple(dims)}")
        err = hermiticity_error(op)
        if err > _TOL:
            raise ValidationError(f"witness operator is not Hermitian (deviation {err:.3e})")
        if self.decomposition is not None:
            P, Q = (as_matrix(m) for m in self.decomposition)
            for name, m in (("P", P), ("Q", Q)):
                if m.shape != op.shape:
                    raise DimensionError(f"{name} has shape {m.shape}, expected {op.shape}")
                if eigvalsh(m)[-1] < -_TOL:
                    raise ValidationError(f"decomposition part {name} is not positive semidefinite")
            resid = np.max(np.abs(op - (P + partial_transpose(Q, dims, "A"))))
            if resid > _TOL:
                raise ValidationError(f"decomposition does not reproduce W (residual {resid:.3e})")
            object.__setattr__(self, "decomposition", (P, Q))
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "op", op)

    @property
    def is_decomposable(self) -> bool:
        return self.decomposition is not None


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A linear map ``M_{d_in} -> M_{d_out}`` stored as its Choi operator.

    ``choi = sum_ij |i><j| (x) eps(|i><j|)``, i.e. ``d_in`` times
    ``(I (x) eps)`` applied to the normalised maximally entangled projector.
    """

    choi: np.ndarray
    d_in: int
    d_out: int

    def __post_init__(self):
        choi = as_matrix(self.choi)
        n = self.d_in * self.d_out
        if choi.shape != (n, n):
            raise DimensionError(
                f"Choi operator of shape {choi.shape} does not match {self.d_in} -> {self.d_out}"
            )
        object.__setattr__(self, "choi", choi)

    @property
    def is_hermiticity_preserving(self) -> bool:
        return hermiticity_error(self.choi) <= _TOL

    def __call__(self, rho) -> np.ndarray:
        return map_from_choi(self, rho)


def witness_value(W: Witness, rho: DensityMatrix) -> float:
    if tuple(W.dims) != tuple(rho.dims):
        raise DimensionError(f"witness dims {tuple(W.dims)} vs state dims {tuple(rho.dims)}")
    return float(np.real(np.sum(W.op * rho.mat.T)))


def canonical_witness_2x2() -> Witness:
    """``W = Q^{T_A}`` with ``Q = |phi+><phi+|``; equals ``(I - 2|psi-><psi-|)/2``."""
    Q = projector(bell_state("phi_plus")).mat
    return decomposable_witness(np.zeros((4, 4)), Q, (2, 2))


def decomposable_witness(P, Q, dims) -> Witness:
    dims = as_dims(dims)
    P, Q = as_matrix(P), as_matrix(Q)
    for name, m in (("P", P), ("Q", Q)):
        if m.shape != (dims.total, dims.total):
            raise DimensionError(f"{name} has shape {m.shape}, expected {(dims.total, dims.total)}")
        if hermiticity_error(m) > _TOL or eigvalsh(m)[-1] < -_TOL:
            raise DomainError(f"{name} must be positive semidefinite")
    return Witness(P + partial_transpose(Q, dims, "A"), dims, (P, Q))


def _contract(W4: np.ndarray, v: np.ndarray, side: str) -> np.ndarray:
    if side == "B":
        # <f| on the B factor: (I (x) <f|) W (I (x) |f>)
        return np.einsum("b,abcd,d->ac", v.conj(), W4, v)
    return np.einsum("a,abcd,c->bd", v.conj(), W4, v)


def min_product_expectation(W: Witness, restarts: int = 32, seed=None, tol: float = 1e-10,
                            max_iter: int = 1000):
    """Upper bound on ``min <e,f|W|e,f>`` over unit product vectors.

    Alternating minimisation: with ``f`` fixed the optimal ``e`` is the lowest
    eigenvector of ``(I (x) <f|) W (I (x) |f>)``, and symmetrically for ``f``.
    Each restart starts from a Haar-random ``f``; the best result is returned
    as ``(value, e, f)``.
    """
    if restarts < 1:
        raise DomainError("need at least one restart")
    rng = _rng(seed)
    d_A, d_B = W.dims
    W4 = W.op.reshape(d_A, d_B, d_A, d_B)
    best = (np.inf, None, None)
    for _ in range(restarts):
        f = haar_vector(d_B, rng)
        value = np.inf
        for _ in range(max_iter):
            wA, vA = eigh(_contract(W4, f, "B"))
            e = vA[:, -1]
            wB, vB = eigh(_contract(W4, e, "A"))
            f = vB[:, -1]
            new = float(wB[-1])
            done = value - new < tol
            value = new
            if done:
                break
        if value < best[0]:
            best = (value, e, f)
    return best


def choi_from_map(eps: Callable[[np.ndarray], np.ndarray], d_in: int) -> LinearMap:
    blocks = []
    d_out = None
    for i in range(d_in):
        row = []
        for j in range(d_in):
            unit = np.zeros((d_in, d_in), dtype=np.complex128)
            unit[i, j] = 1
            out = as_matrix(eps(unit))
            if d_out is None:
                d_out = out.shape[0]
            row.append(out)
        blocks.append(row)
    return LinearMap(np.block(blocks), d_in, d_out)


def map_from_choi(E: LinearMap, rho) -> np.ndarray:
    """``eps(rho) = tr_B(E (rho^T (x) I))`` with B the input factor of the Choi operator."""
    rho = as_matrix(rho)
    if rho.shape != (E.d_in, E.d_in):
        raise DimensionError(f"input of shape {rho.shape} for a map on {E.d_in}x{E.d_in} matrices")
    return partial_trace(E.choi @ np.kron(rho.T, np.eye(E.d_out)), (E.d_in, E.d_out), keep="B")


def _as_linear_map(eps, d_in: int) -> LinearMap:
    if isinstance(eps, LinearMap):
        return eps
    return choi_from_map(eps, d_in)


def apply_map_partially(E, rho) -> np.ndarray:
    """``(I_A (x) eps) rho`` where ``eps`` acts on the B factor.

    ``E`` may be a :class:`LinearMap` or a callable on ``d_B x d_B`` matrices.
    """
    M = rho.mat if isinstance(rho, DensityMatrix) else as_matrix(rho)
    d_A, d_B = rho.dims
    E = _as_linear_map(E, d_B)
    if E.d_in != d_B:
        raise DimensionError(f"map acts on dimension {E.d_in}, state has d_B = {d_B}")
    r4 = M.reshape(d_A, d_B, d_A, d_B)
    c4 = E.choi.reshape(E.d_in, E.d_out, E.d_in, E.d_out)
    out = np.einsum("abij,bcjd->acid", r4, c4)
    n = d_A * E.d_out
    return out.reshape(n, n)


def transpose_map(X: np.ndarray) -> np.ndarray:
    return np.asarray(X).T


def identity_map(X: np.ndarray) -> np.ndarray:
    return np.asarray(X)


def unitary_channel(U) -> Callable[[np.ndarray], np.ndarray]:
    U = as_matrix(U)
    return lambda X: U @ X @ U.conj().T


def depolarizing_channel(q: float, d: int) -> Callable[[np.ndarray], np.ndarray]:
    """``X -> (1 - q) X + q tr(X) I/d``."""
    if not 0 <= q <= 1:
        raise DomainError(f"depolarizing strength must lie in [0, 1], got {q}")
    return lambda X: (1 - q) * np.asarray(X) + q * np.trace(X) * np.eye(d) / d


def witness_from_chsh(setting, sign: int = 1) -> Witness:
    """``W = 2 I - sign * B_CHSH``.

    Local-realistic (hence separable) states obey ``|tr(B sigma)| <= 2``, so both
    signs give a valid witness; ``sign`` picks which side of the two-sided
    inequality is probed. With :func:`qsep.bell.optimal_singlet_setting` the
    singlet has ``tr(B rho) = -2 sqrt(2)``, so use ``sign=-1`` there.
    """
    from qsep.bell import chsh_operator

    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    B = chsh_operator(setting)
    return Witness(2 * np.eye(4) - sign * B, BipartiteDims(2, 2))
