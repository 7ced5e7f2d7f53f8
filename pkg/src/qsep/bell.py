"""CHSH correlations for two-qubit states and numerical maximisation over settings."""

from dataclasses import dataclass

import numpy as np

from qsep.errors import DimensionError, DomainError
from qsep.states import DensityMatrix, _rng

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)

_GOLDEN = (np.sqrt(5) - 1) / 2


def _unit(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise DomainError(f"direction {name} must be a 3-vector, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1) > 1e-10:
        raise DomainError(f"direction {name} is not a unit vector (norm {np.linalg.norm(v):.12g})")
    return v


@dataclass(frozen=True, eq=False)
class ChshSetting:
    """Measurement directions ``a, a'`` (Alice) and ``b, b'`` (Bob) in R^3."""

    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            object.__setattr__(self, name, _unit(getattr(self, name), name))

    def vectors(self) -> np.ndarray:
        return np.stack([self.a, self.a_prime, self.b, self.b_prime])

    def coplanarity(self) -> float:
        """Largest angle (radians) between a direction and the best-fit plane through the origin."""
        V = self.vectors()
        _, _, vh = np.linalg.svd(V)
        normal = vh[-1]
        return float(np.max(np.arcsin(np.clip(np.abs(V @ normal), 0, 1))))

    def as_dict(self) -> dict:
        return {k: getattr(self, k).tolist() for k in ("a", "a_prime", "b", "b_prime")}


def optimal_singlet_setting() -> ChshSetting:
    """Planar geometry with ``a`` along z, ``a'`` along x and ``b, b'`` at 45 degrees.

    On the singlet this gives ``E(a,b) + E(a,b') + E(a',b) - E(a',b') = -2 sqrt(2)``.
    """
    s = 1 / np.sqrt(2)
    return ChshSetting(
        a=[0, 0, 1],
        a_prime=[1, 0, 0],
        b=[s, 0, s],
        b_prime=[-s, 0, s],
    )


def spin_observable(n) -> np.ndarray:
    """``n . sigma`` for a direction ``n``."""
    return np.einsum("i,ijk->jk", np.asarray(n, dtype=float), PAULI)


def _check_two_qubit(rho: DensityMatrix) -> None:
    if tuple(rho.dims) != (2, 2):
        raise DimensionError(f"CHSH needs a two-qubit state, got dims {tuple(rho.dims)}")


def correlator(rho: DensityMatrix, a, b) -> float:
    """``E(a, b) = tr(rho (a.sigma) (x) (b.sigma))``."""
    _check_two_qubit(rho)
    a, b = _unit(a, "a"), _unit(b, "b")
    obs = np.kron(spin_observable(a), spin_observable(b))
    return float(np.real(np.sum(obs * rho.mat.T)))


def correlation_matrix(rho: DensityMatrix) -> np.ndarray:
    """``T_ij = tr(rho sigma_i (x) sigma_j)``, so that ``E(a, b) = a^T T b``."""
    _check_two_qubit(rho)
    T = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            T[i, j] = np.real(np.sum(np.kron(PAULI[i], PAULI[j]) * rho.mat.T))
    return T


def chsh_operator(s: ChshSetting) -> np.ndarray:
    A, Ap = spin_observable(s.a), spin_observable(s.a_prime)
    B, Bp = spin_observable(s.b), spin_observable(s.b_prime)
    return np.kron(A, B) + np.kron(A, Bp) + np.kron(Ap, B) - np.kron(Ap, Bp)


def chsh_value(rho: DensityMatrix, s: ChshSetting) -> float:
    """``E(a,b) + E(a,b') + E(a',b) - E(a',b')``."""
    return (
        correlator(rho, s.a, s.b)
        + correlator(rho, s.a, s.b_prime)
        + correlator(rho, s.a_prime, s.b)
        - correlator(rho, s.a_prime, s.b_prime)
    )


def _directions(angles: np.ndarray) -> np.ndarray:
    """(..., 8) spherical angles -> (..., 4, 3) unit vectors."""
    th = angles[..., 0::2]
    ph = angles[..., 1::2]
    st = np.sin(th)
    return np.stack([st * np.cos(ph), st * np.sin(ph), np.cos(th)], axis=-1)


def _chsh_from_angles(T: np.ndarray, angles: np.ndarray) -> np.ndarray:
    v = _directions(angles)
    a, ap, b, bp = v[..., 0, :], v[..., 1, :], v[..., 2, :], v[..., 3, :]
    return np.einsum("...i,ij,...j->...", a, T, b + bp) + np.einsum("...i,ij,...j->...", ap, T, b - bp)


def _sinusoid_step(T, x, k):
    """Exact maximiser of ``B^2`` along coordinate ``k``.

    Restricted to one spherical angle, ``B(t) = alpha cos t + beta sin t + gamma``,
    so three equally spaced samples pin it down.
    """
    ts = x[:, k:k + 1] + np.array([0.0, 2 * np.pi / 3, 4 * np.pi / 3])
    y = np.empty_like(ts)
    for j in range(3):
        trial = x.copy()
        trial[:, k] = ts[:, j]
        y[:, j] = _chsh_from_angles(T, trial)
    gamma = y.mean(axis=1)
    alpha = (2 / 3) * np.sum(y * np.cos(ts), axis=1)
    beta = (2 / 3) * np.sum(y * np.sin(ts), axis=1)
    t_star = np.arctan2(beta, alpha) + np.where(gamma >= 0, 0.0, np.pi)
    x[:, k] = t_star
    return x


def _golden_step(T, x, k, grid: int = 12, xtol: float = 1e-9):
    """Grid bracket then golden-section refinement of ``B^2`` along coordinate ``k``."""
    n = x.shape[0]

    def f(t):
        trial = x.copy()
        trial[:, k] = t
        return _chsh_from_angles(T, trial) ** 2

    h = 2 * np.pi / grid
    grid_pts = x[:, k:k + 1] + h * np.arange(grid)
    vals = np.stack([f(grid_pts[:, j]) for j in range(grid)], axis=1)
    centre = grid_pts[np.arange(n), np.argmax(vals, axis=1)]
    lo, hi = centre - h, centre + h
    while np.max(hi - lo) > xtol:
        c = hi - _GOLDEN * (hi - lo)
        d = lo + _GOLDEN * (hi - lo)
        left = f(c) > f(d)
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
    x[:, k] = 0.5 * (lo + hi)
    return x


def maximize_chsh(rho: DensityMatrix, restarts: int = 32, seed=None, method: str = "sinusoid",
                  tol: float = 1e-13, max_sweeps: int = 2000):
    """Multistart coordinate ascent of ``|B_CHSH|`` over eight spherical angles.

    Returns ``(value, setting)``. ``value`` is a lower bound on the true
    maximum and is non-decreasing in ``restarts`` for a fixed seed. ``method``
    selects the one-dimensional update: ``"sinusoid"`` (closed form) or
    ``"golden"`` (grid-bracketed golden-section search).
    """
    _check_two_qubit(rho)
    if restarts < 1:
        raise DomainError("need at least one restart")
    step = {"sinusoid": _sinusoid_step, "golden": _golden_step}.get(method)
    if step is None:
        raise DomainError(f"unknown method {method!r}")
    T = correlation_matrix(rho)
    rng = _rng(seed)
    u = rng.uniform(size=(restarts, 8))
    x = np.empty_like(u)
    x[:, 0::2] = np.arccos(1 - 2 * u[:, 0::2])
    x[:, 1::2] = 2 * np.pi * u[:, 1::2]

    current = _chsh_from_angles(T, x) ** 2
    for _ in range(max_sweeps):
        for k in range(8):
            x = step(T, x, k)
        new = _chsh_from_angles(T, x) ** 2
        gain = np.max(new - current)
        current = new
        if gain < tol:
            break

    best = int(np.argmax(current))
    v = _directions(x[best])
    setting = ChshSetting(*(vi / np.linalg.norm(vi) for vi in v))
    return float(np.sqrt(current[best])), setting
