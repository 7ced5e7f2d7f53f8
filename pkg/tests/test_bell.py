import numpy as np
import pytest
from hypothesis import given, strategies as st

from qsep.bell import (
    ChshSetting,
    chsh_operator,
    chsh_value,
    correlation_matrix,
    correlator,
    maximize_chsh,
    optimal_singlet_setting,
)
from qsep.errors import DimensionError, DomainError
from qsep.states import (
    basis_state,
    bell_state,
    haar_unitary,
    maximally_mixed,
    projector,
    random_density,
    random_separable,
    werner,
)

seeds = st.integers(0, 2**32 - 1)
TSIRELSON = 2 * np.sqrt(2)


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def random_unit(r):
    return unit(r.standard_normal(3))


def random_setting(r):
    return ChshSetting(*(random_unit(r) for _ in range(4)))


def planar_grid_max(state_T, n=48):
    """Brute-force max of |B| over settings confined to the x-z plane."""
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    v = np.stack([np.sin(t), np.zeros_like(t), np.cos(t)], axis=1)
    E = v @ state_T @ v.T  # E[i, j] = E(v_i, v_j)
    B = (E[:, None, :, None] + E[:, None, None, :] + E[None, :, :, None] - E[None, :, None, :])
    return np.max(np.abs(B))


def horodecki_max(T):
    m = np.sort(np.linalg.eigvalsh(T.T @ T))[::-1]
    return 2 * np.sqrt(m[0] + m[1])


def test_singlet_correlator(singlet):
    z = [0, 0, 1]
    assert correlator(singlet, z, z) == pytest.approx(-1, abs=1e-15)
    assert correlator(singlet, z, [1, 0, 0]) == pytest.approx(0, abs=1e-15)


@given(seeds)
def test_singlet_correlator_is_minus_cosine(seed):
    r = np.random.default_rng(seed)
    a, b = random_unit(r), random_unit(r)
    rho = projector(bell_state("psi_minus"))
    assert correlator(rho, a, b) == pytest.approx(-np.dot(a, b), abs=1e-12)


def test_maximally_mixed_correlator(mixed4, rng):
    assert correlator(mixed4, random_unit(rng), random_unit(rng)) == pytest.approx(0, abs=1e-15)


@given(seeds)
def test_correlator_bilinear(seed):
    r = np.random.default_rng(seed)
    rho = random_density((2, 2), seed=r)
    a1, a2, b = random_unit(r), random_unit(r), random_unit(r)
    s = unit(a1 + a2)
    norm = np.linalg.norm(a1 + a2)
    assert correlator(rho, s, b) * norm == pytest.approx(correlator(rho, a1, b) + correlator(rho, a2, b), abs=1e-12)
    assert -1 - 1e-9 <= correlator(rho, a1, b) <= 1 + 1e-9


def test_correlator_dims():
    with pytest.raises(DimensionError):
        correlator(maximally_mixed((2, 3)), [0, 0, 1], [0, 0, 1])
    with pytest.raises(DomainError):
        correlator(maximally_mixed((2, 2)), [0, 0, 2], [0, 0, 1])


def test_setting_validation():
    with pytest.raises(DomainError):
        ChshSetting([1, 1, 0], [1, 0, 0], [1, 0, 0], [1, 0, 0])


def test_chsh_operator_optimal(singlet):
    B = chsh_operator(optimal_singlet_setting())
    assert np.max(np.abs(B - B.conj().T)) == 0
    assert np.real(np.trace(B @ singlet.mat)) == pytest.approx(-TSIRELSON, abs=1e-12)
    assert np.allclose(np.sort(np.linalg.eigvalsh(B)), [-TSIRELSON, 0, 0, TSIRELSON], atol=1e-12)


def test_chsh_all_directions_equal(singlet):
    z = [0, 0, 1]
    s = ChshSetting(z, z, z, z)
    assert chsh_value(singlet, s) == pytest.approx(2 * correlator(singlet, z, z))
    assert chsh_value(singlet, s) == pytest.approx(-2)


@given(seeds)
def test_chsh_two_ways_agree(seed):
    r = np.random.default_rng(seed)
    rho = random_density((2, 2), seed=r)
    s = random_setting(r)
    via_op = np.real(np.trace(chsh_operator(s) @ rho.mat))
    assert abs(chsh_value(rho, s) - via_op) < 1e-10
    assert abs(chsh_value(rho, s)) <= TSIRELSON + 1e-8


def test_chsh_value_singlet_and_werner(singlet):
    assert chsh_value(singlet, optimal_singlet_setting()) == pytest.approx(-TSIRELSON, abs=1e-12)
    for p in (0.0, 0.3, 0.8):
        assert chsh_value(werner(p), optimal_singlet_setting()) == pytest.approx(-TSIRELSON * p, abs=1e-12)


@given(seeds)
def test_chsh_separable_bounded(seed):
    r = np.random.default_rng(seed)
    assert abs(chsh_value(random_separable((2, 2), K=3, seed=r), random_setting(r))) <= 2 + 1e-6


def test_maximize_singlet(singlet):
    value, setting = maximize_chsh(singlet, seed=0)
    assert value == pytest.approx(TSIRELSON, abs=1e-10)
    assert abs(chsh_value(singlet, setting)) == pytest.approx(value, abs=1e-10)
    assert setting.coplanarity() < 1e-6


def test_maximize_golden_agrees(singlet):
    v1, _ = maximize_chsh(singlet, restarts=4, seed=1, method="golden")
    v2, _ = maximize_chsh(singlet, restarts=4, seed=1)
    assert v1 == pytest.approx(TSIRELSON, abs=1e-8)
    assert v1 == pytest.approx(v2, abs=1e-8)


def test_maximize_product_state():
    value, _ = maximize_chsh(projector(basis_state(0, 0)), seed=0)
    assert value <= 2 + 1e-6
    assert value == pytest.approx(2, abs=1e-9)


@pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 1 / np.sqrt(2), 0.9, 1.0])
def test_maximize_werner_matches_grid(p):
    rho = werner(p)
    grid = planar_grid_max(correlation_matrix(rho))
    assert grid == pytest.approx(TSIRELSON * p, abs=1e-12)
    value, _ = maximize_chsh(rho, seed=7)
    assert value == pytest.approx(grid, abs=1e-5)
    assert (value > 2 + 1e-9) == (p > 1 / np.sqrt(2))


@given(seeds)
def test_maximize_matches_closed_form(seed):
    rho = random_density((2, 2), seed=seed)
    value, _ = maximize_chsh(rho, restarts=16, seed=seed)
    assert value == pytest.approx(horodecki_max(correlation_matrix(rho)), abs=1e-6)


def test_maximize_monotone_in_restarts():
    rho = random_density((2, 2), rank=2, seed=42)
    values = [maximize_chsh(rho, restarts=k, seed=5, max_sweeps=3)[0] for k in (1, 2, 4, 8, 16)]
    assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))


@given(seeds)
def test_maximize_local_unitary_invariance(seed):
    r = np.random.default_rng(seed)
    rho = random_density((2, 2), seed=r)
    U = np.kron(haar_unitary(2, r), haar_unitary(2, r))
    v1, _ = maximize_chsh(rho, seed=1)
    v2, _ = maximize_chsh(rho.conjugated(U), seed=1)
    assert abs(v1 - v2) < 1e-5


def test_maximize_rejects():
    with pytest.raises(DimensionError):
        maximize_chsh(maximally_mixed((2, 3)))
    with pytest.raises(DomainError):
        maximize_chsh(maximally_mixed((2, 2)), method="newton")
