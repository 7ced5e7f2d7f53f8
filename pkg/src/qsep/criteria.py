"""Operational entanglement criteria.

Every test here is a *necessary* condition for separability: a violation
certifies entanglement, a pass does not certify separability. The single
exception is the PPT test in 2x2 and 2x3, where positivity of the partial
transpose is also sufficient; such verdicts carry ``separable_certified``.
"""

from dataclasses import dataclass

import numpy as np

from qsep.config import DEFAULT_TOLERANCES
from qsep.errors import DomainError
from qsep.linalg import as_matrix, eigvalsh, partial_transpose, svd
from qsep.states import DensityMatrix, PureState

DEFAULT_TOL = 1e-9

# dims in which PPT <=> separable
PPT_SUFFICIENT_DIMS = frozenset({(2, 2), (2, 3), (3, 2)})


@dataclass(frozen=True)
class CriterionVerdict:
    criterion: str
    violated: bool
    margin: float
    conclusive_for_entanglement: bool
    separable_certified: bool = False

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "violated": self.violated,
            "margin": self.margin,
            "conclusive_for_entanglement": self.conclusive_for_entanglement,
            "separable_certified": self.separable_certified,
        }


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    coefficients: np.ndarray
    basis_A: np.ndarray
    basis_B: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def reconstruct(self) -> np.ndarray:
        """``sum_i a_i |e_i> (x) |f_i>`` as a flat amplitude vector."""
        d = self.basis_A.shape[0] * self.basis_B.shape[0]
        out = np.zeros(d, dtype=np.complex128)
        for a, e, f in zip(self.coefficients, self.basis_A.T, self.basis_B.T):
            out += a * np.kron(e, f)
        return out


def schmidt(psi: PureState, cutoff: float = DEFAULT_TOLERANCES.schmidt_cutoff) -> SchmidtDecomposition:
    """Schmidt decomposition from the SVD of the ``d_A x d_B`` amplitude matrix.

    With ``C = U diag(s) V^dag`` we get ``|psi> = sum_i s_i |u_i> (x) |conj(v_i)>``.
    Coefficients at or below ``cutoff`` are dropped.
    """
    U, s, V = svd(psi.amplitude_matrix())
    keep = s > cutoff
    return SchmidtDecomposition(
        coefficients=s[keep].copy(),
        basis_A=U[:, keep].copy(),
        basis_B=V[:, keep].conj().copy(),
    )


def is_product(psi: PureState, cutoff: float = DEFAULT_TOLERANCES.schmidt_cutoff) -> bool:
    return schmidt(psi, cutoff).rank == 1


def ppt_test(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> CriterionVerdict:
    margin = float(eigvalsh(partial_transpose(rho.mat, rho.dims, "A"))[-1])
    violated = margin < -tol
    return CriterionVerdict(
        criterion="ppt",
        violated=violated,
        margin=margin,
        conclusive_for_entanglement=violated,
        separable_certified=(not violated) and tuple(rho.dims) in PPT_SUFFICIENT_DIMS,
    )


def _as_distribution(x, tol: float = DEFAULT_TOLERANCES.distribution) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size == 0 or not np.all(np.isfinite(x)):
        raise DomainError("probability vector must be non-empty and finite")
    if np.any(x < -1e-12):
        raise DomainError(f"probability vector has negative entry {x.min():.3e}")
    if abs(x.sum() - 1) > tol:
        raise DomainError(f"probability vector sums to {x.sum():.12g}, expected 1")
    return x


def _partial_sum_gap(x: np.ndarray, y: np.ndarray) -> float:
    """``min_l (sum_{i<=l} y_i - sum_{i<=l} x_i)`` after descending sort and zero padding."""
    n = max(x.size, y.size)
    xs = np.zeros(n)
    ys = np.zeros(n)
    xs[: x.size] = np.sort(x)[::-1]
    ys[: y.size] = np.sort(y)[::-1]
    return float(np.min(np.cumsum(ys) - np.cumsum(xs)))


def majorizes(x, y, tol: float = 1e-10) -> bool:
    """True iff ``x`` is majorized by ``y``, i.e. ``y`` majorizes ``x``."""
    x = _as_distribution(x)
    y = _as_distribution(y)
    return _partial_sum_gap(x, y) >= -tol


def majorization_test(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> CriterionVerdict:
    """Global spectrum must be majorized by both reduced spectra.

    Reduced spectra are zero-padded to ``d_A * d_B`` entries. The margin is the
    most negative partial-sum gap over both reductions.
    """
    lam = np.clip(eigvalsh(rho.mat), 0, None)
    lam_A = np.clip(eigvalsh(rho.reduced("A")), 0, None)
    lam_B = np.clip(eigvalsh(rho.reduced("B")), 0, None)
    margin = min(_partial_sum_gap(lam, lam_A), _partial_sum_gap(lam, lam_B))
    violated = margin < -tol
    return CriterionVerdict("majorization", violated, margin, violated)


def _entropy_of_eigenvalues(lam: np.ndarray, reject: float) -> float:
    if lam.size and lam.min() < -reject:
        raise DomainError(f"operator has eigenvalue {lam.min():.3e}; not positive semidefinite")
    lam = lam[lam > 0]
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def von_neumann_entropy(rho, reject: float = DEFAULT_TOLERANCES.entropy_reject) -> float:
    """``-tr rho log2 rho`` in bits, with ``0 log 0 = 0``.

    Accepts a :class:`DensityMatrix` or a bare PSD matrix. Slightly negative
    eigenvalues from round-off are clamped to zero.
    """
    M = rho.mat if isinstance(rho, DensityMatrix) else as_matrix(rho)
    return _entropy_of_eigenvalues(eigvalsh(M), reject)


def entropy_test(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> CriterionVerdict:
    S = von_neumann_entropy(rho)
    margin = min(S - von_neumann_entropy(rho.reduced("A")), S - von_neumann_entropy(rho.reduced("B")))
    violated = margin < -tol
    return CriterionVerdict("entropy", violated, margin, violated)


def shannon_entropy(p) -> float:
    p = np.clip(_as_distribution(p), 0, None)
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))
