import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as st

from qsep.criteria import (
    PPT_SUFFICIENT_DIMS,
    entropy_test,
    is_product,
    majorization_test,
    majorizes,
    ppt_test,
    schmidt,
    shannon_entropy,
    von_neumann_entropy,
)
from qsep.errors import DomainError
from qsep.linalg import eigh, partial_trace
from qsep.states import (
    PureState,
    basis_state,
    bell_state,
    maximally_mixed,
    projector,
    random_density,
    random_pure,
    random_separable,
    werner,
)

seeds = st.integers(0, 2**32 - 1)


def werner_pt_margin(p):
    # Bell-basis diagonalisation: T_A of werner(p) has eigenvalues (1+p)/4 (x3) and (1-3p)/4
    return (1 - 3 * p) / 4


def entropy_bits(probs):
    return -sum(x * np.log2(x) for x in probs if x > 0)


# --- Schmidt decomposition ---------------------------------------------------

def test_schmidt_singlet():
    dec = schmidt(bell_state("psi_minus"))
    assert np.allclose(dec.coefficients, [1 / np.sqrt(2)] * 2, atol=1e-15)


def test_schmidt_product():
    dec = schmidt(basis_state(0, 0))
    assert dec.rank == 1 and dec.coefficients[0] == pytest.approx(1.0, abs=1e-15)


def test_schmidt_matches_svd_oracle():
    psi = random_pure((3, 2), seed=5)
    oracle = scipy.linalg.svdvals(psi.vec.reshape(3, 2))
    assert np.max(np.abs(schmidt(psi).coefficients - oracle)) < 1e-10


@given(seeds, st.sampled_from([(2, 2), (3, 2), (2, 3), (4, 3), (3, 3)]))
def test_schmidt_invariants(seed, dims):
    psi = random_pure(dims, seed=seed)
    dec = schmidt(psi)
    assert abs(np.sum(dec.coefficients**2) - 1) < 1e-10
    assert dec.rank <= min(dims)
    assert np.all(np.diff(dec.coefficients) <= 0) and np.all(dec.coefficients > 0)
    assert np.linalg.norm(psi.vec - dec.reconstruct()) <= 1e-9
    assert np.allclose(dec.basis_A.conj().T @ dec.basis_A, np.eye(dec.rank))
    assert np.allclose(dec.basis_B.conj().T @ dec.basis_B, np.eye(dec.rank))
    reduced = eigh(partial_trace(projector(psi).mat, dims, "A")).eigenvalues[: dec.rank]
    assert np.max(np.abs(dec.coefficients**2 - reduced)) <= 1e-9


def test_is_product():
    assert is_product(basis_state(0, 0))
    assert not is_product(bell_state("psi_minus"))
    eps = 1e-3
    psi = PureState.normalized([1, 0, 0, eps], (2, 2))
    assert not is_product(psi, cutoff=1e-8)
    assert schmidt(psi).coefficients[1] == pytest.approx(eps / np.sqrt(1 + eps**2), rel=1e-12)


# --- PPT -------------------------------------------------------------------------

def test_ppt_singlet(singlet):
    v = ppt_test(singlet)
    assert v.violated and v.conclusive_for_entanglement and not v.separable_certified
    assert v.margin == pytest.approx(-0.5, abs=1e-12)


@pytest.mark.parametrize("p", np.linspace(0, 1, 21))
def test_ppt_werner_margin(p):
    v = ppt_test(werner(p))
    assert v.margin == pytest.approx(werner_pt_margin(p), abs=1e-12)
    assert v.violated == (p > 1 / 3 + 1e-8)


def test_ppt_separable_certificate_dims(mixed4):
    assert ppt_test(mixed4).separable_certified
    assert not ppt_test(maximally_mixed((3, 3))).separable_certified
    assert PPT_SUFFICIENT_DIMS == {(2, 2), (2, 3), (3, 2)}


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3)]))
def test_ppt_random_separable(seed, dims):
    assert not ppt_test(random_separable(dims, seed=seed)).violated


# --- majorization --------------------------------------------------------------

def test_majorizes_examples():
    assert majorizes([0.5, 0.5], [1, 0])
    assert not majorizes([1, 0], [0.5, 0.5])
    assert majorizes([0.3, 0.7], [0.7, 0.3])
    assert majorizes([0.25] * 4, [0.5, 0.5])  # unequal lengths are zero padded


def test_majorizes_rejects_non_distributions():
    with pytest.raises(DomainError):
        majorizes([0.5, 0.6], [1, 0])
    with pytest.raises(DomainError):
        majorizes([1.5, -0.5], [1, 0])


@given(st.lists(st.floats(0, 1), min_size=1, max_size=6), st.lists(st.floats(0, 1), min_size=1, max_size=6))
def test_majorization_implies_entropy_order(x, y):
    x, y = np.array(x), np.array(y)
    if x.sum() == 0 or y.sum() == 0:
        return
    x, y = x / x.sum(), y / y.sum()
    if majorizes(x, y):
        assert shannon_entropy(x) >= shannon_entropy(y) - 1e-9


def test_majorization_singlet(singlet):
    v = majorization_test(singlet)
    assert v.violated and v.margin == pytest.approx(-0.5, abs=1e-12)


def test_majorization_werner_third():
    # spectra (1/2, 1/6, 1/6, 1/6) vs padded (1/2, 1/2, 0, 0): partial sums 1/2<=1/2, 2/3<=1, 5/6<=1, 1<=1
    v = majorization_test(werner(1 / 3))
    assert not v.violated
    assert v.margin == pytest.approx(0.0, abs=1e-12)


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3)]))
def test_majorization_random_separable(seed, dims):
    assert not majorization_test(random_separable(dims, seed=seed)).violated


# --- entropies -----------------------------------------------------------------

def test_von_neumann_examples(singlet, mixed4):
    assert von_neumann_entropy(singlet) == pytest.approx(0, abs=1e-12)
    assert von_neumann_entropy(mixed4) == pytest.approx(2, abs=1e-14)
    oracle = entropy_bits([5 / 8, 1 / 8, 1 / 8, 1 / 8])
    assert oracle == pytest.approx(1.5487949406953985, abs=1e-15)
    assert von_neumann_entropy(werner(0.5)) == pytest.approx(oracle, abs=1e-12)


def test_von_neumann_accepts_matrix_and_clamps():
    assert von_neumann_entropy(np.diag([1.0, -1e-10])) == pytest.approx(0, abs=1e-12)
    with pytest.raises(DomainError):
        von_neumann_entropy(np.diag([1.1, -0.1]))


@given(seeds, st.sampled_from([2, 3, 4, 6, 9]))
def test_von_neumann_bounds(seed, d):
    S = von_neumann_entropy(random_density(d, seed=seed))
    assert 0 <= S <= np.log2(d) + 1e-12


def test_entropy_test_examples(singlet, mixed4):
    v = entropy_test(singlet)
    assert v.violated and v.margin == pytest.approx(-1, abs=1e-12)
    v = entropy_test(mixed4)
    assert not v.violated and v.margin == pytest.approx(1, abs=1e-12)


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3)]))
def test_entropy_random_separable(seed, dims):
    assert not entropy_test(random_separable(dims, seed=seed)).violated


def test_shannon_examples():
    assert shannon_entropy([1, 0]) == 0
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1)
    assert shannon_entropy([0.9, 0.1]) == pytest.approx(entropy_bits([0.9, 0.1]), abs=1e-15)
    assert shannon_entropy([0.9, 0.1]) == pytest.approx(0.4690, abs=1e-4)
    with pytest.raises(DomainError):
        shannon_entropy([0.2, 0.2])


# --- hierarchy between the criteria ----------------------------------------------

@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3)]), st.data())
def test_criteria_hierarchy(seed, dims, data):
    rank = data.draw(st.integers(1, dims[0] * dims[1]))
    rho = random_density(dims, rank, seed=seed)
    ppt, maj, ent = ppt_test(rho), majorization_test(rho), entropy_test(rho)
    if maj.violated:
        assert ppt.violated
    if not maj.violated:
        assert not ent.violated


@given(seeds, st.integers(1, 4))
def test_two_qubit_pt_has_at_most_one_negative_eigenvalue(seed, rank):
    from qsep.linalg import partial_transpose

    rho = random_density((2, 2), rank, seed=seed)
    w = np.linalg.eigvalsh(partial_transpose(rho.mat, (2, 2), "A"))
    assert np.sum(w < -1e-9) <= 1
