import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from splitlinalg.errors import PivotFailure, Singular
from splitlinalg.jordan_svd import blocks_match
from splitlinalg.real_linalg import (
    eigenvalues,
    half_plane_sqrt,
    in_half_plane,
    jordan_form,
    jordan_matrix,
    ldu,
    lu,
    lu_complete_pivot,
    lup,
    principal_sqrt,
    rank,
)

from strategies import int_matrix

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def test_ldu_examples():
    L, D, U = ldu(np.eye(3))
    assert np.allclose(L, np.eye(3)) and np.allclose(D, np.eye(3)) and np.allclose(U, np.eye(3))
    L, D, U = ldu(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(L, [[1, 0], [0.5, 1]])
    assert np.allclose(D, np.diag([2, 1.5]))
    assert np.allclose(U, [[1, 0.5], [0, 1]])


def test_ldu_pivot_failure_names_minor():
    with pytest.raises(PivotFailure) as info:
        ldu(SWAP)
    assert info.value.minor == 1
    with pytest.raises(PivotFailure) as info:
        lu(np.array([[1.0, 1.0, 0.0], [1.0, 1.0, 1.0], [0.0, 1.0, 1.0]]))
    assert info.value.minor == 2


@given(int_matrix(4))
def test_lu_reconstructs_when_minors_nonzero(A):
    if any(abs(np.linalg.det(A[:k, :k])) < 0.5 for k in range(1, 5)):
        return
    L, D, U = ldu(A)
    assert np.allclose(L @ D @ U, A, atol=1e-10 * max(1, np.abs(A).sum(axis=1).max()))
    assert np.allclose(np.diag(L), 1) and np.allclose(np.diag(U), 1)


def test_lup_examples():
    P, L, U = lup(np.eye(3))
    assert np.array_equal(P, np.eye(3))
    P, L, U = lup(SWAP)
    assert np.array_equal(P, SWAP) and np.allclose(L, np.eye(2)) and np.allclose(U, np.eye(2))


@given(int_matrix(3))
def test_lup_reconstructs_all_matrices(A):
    A = A.copy()
    A[2] = A[0] + A[1]  # singular
    P, L, U = lup(A)
    assert np.allclose(P.T @ L @ U, A)


def test_lu_complete_pivot_examples():
    P, Q, L, D, U = lu_complete_pivot(np.eye(2))
    for X in (P, Q, L, D, U):
        assert np.allclose(X, np.eye(2))
    P, Q, L, D, U = lu_complete_pivot(np.array([[0.0, 0.0], [0.0, 5.0]]))
    assert np.allclose(D, np.diag([5, 0]))
    assert np.allclose(P @ np.array([[0, 0], [0, 5]]) @ Q, L @ D @ U)


def test_lu_complete_pivot_rank_deficient(rng):
    X = rng.standard_normal((4, 2)) @ rng.standard_normal((2, 4))
    P, Q, L, D, U = lu_complete_pivot(X)
    assert np.max(np.abs(P @ X @ Q - L @ D @ U)) <= 1e-10
    assert np.count_nonzero(np.diag(D)) == 2


def test_rank_examples():
    assert rank(np.eye(3)) == 3
    assert rank(np.zeros((3, 3))) == 0
    assert rank(np.array([[1, 2], [2, 4]])) == 1


@given(int_matrix(4))
def test_rank_matches_numpy(A):
    assert rank(A) == np.linalg.matrix_rank(A)


def test_half_plane():
    assert in_half_plane(3 - 4j)
    assert not in_half_plane(-1)
    assert in_half_plane(1j) and not in_half_plane(-1j)
    assert half_plane_sqrt(-4) == pytest.approx(2j)


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_half_plane_exactly_one_of_pair(z):
    if z != 0:
        assert in_half_plane(z) != in_half_plane(-z)


def test_eigenvalues_sorted():
    assert np.allclose(eigenvalues(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])


def test_jordan_form_examples():
    jf = jordan_form(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert blocks_match(jf.blocks, [(1, 2)])
    jf = jordan_form(np.diag([2.0, 3.0]))
    assert blocks_match(jf.blocks, [(2, 1), (3, 1)])
    assert np.allclose(np.abs(jf.P), np.eye(2))
    jf = jordan_form(np.array([[5.0, 1.0], [-1.0, 3.0]]))
    assert blocks_match(jf.blocks, [(4, 2)])
    assert np.allclose(jf.reconstruct(), [[5, 1], [-1, 3]])


def test_jordan_form_zero_and_mixed():
    assert blocks_match(jordan_form(np.zeros((3, 3))).blocks, [(0, 1)] * 3)
    target = [(2, 2), (2, 1), (-1 + 1j, 1)]
    T = np.array([[1, 2, 0, 1], [0, 1, 1, 0], [1, 0, 1, 2], [0, 1, 0, 1]], dtype=complex)
    A = T @ jordan_matrix(target) @ np.linalg.inv(T)
    jf = jordan_form(A)
    assert blocks_match(jf.blocks, target)
    assert np.allclose(jf.reconstruct(), A, atol=1e-8)


def test_jordan_form_orders_blocks():
    jf = jordan_form(np.diag([3.0, -1.0, 1j, 2.0]))
    assert [lam for lam, _ in jf.blocks] == pytest.approx([-1, 1j, 2, 3])


@given(st.integers(0, 2**32 - 1))
def test_jordan_form_similarity_invariant(seed):
    rng = np.random.default_rng(seed)
    blocks = [(1.5, 2), (-2.0, 1), (0.5 + 1j, 1)]
    J = jordan_matrix(blocks)
    T = rng.standard_normal((4, 4))
    if np.linalg.cond(T) > 50:
        return
    A = T @ J @ np.linalg.inv(T)
    assert blocks_match(jordan_form(A).blocks, blocks)


def test_principal_sqrt_examples():
    assert np.allclose(principal_sqrt(np.eye(3)), np.eye(3))
    assert np.allclose(principal_sqrt(np.diag([4.0, -1.0])), np.diag([2, 1j]))
    assert np.allclose(principal_sqrt(np.array([[4.0, 1.0], [0.0, 4.0]])), [[2, 0.25], [0, 2]])


def test_principal_sqrt_singular():
    with pytest.raises(Singular):
        principal_sqrt(np.diag([1.0, 0.0]))


@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_principal_sqrt_squares_back(seed, n):
    rng = np.random.default_rng(seed)
    A = rng.uniform(-1, 1, (n, n)) * 10 / n
    ev = np.linalg.eigvals(A)
    gaps = [abs(a - b) for i, a in enumerate(ev) for b in ev[i + 1:]]
    if (gaps and min(gaps) < 1e-3) or min(abs(ev)) < 1e-3:
        return
    S = principal_sqrt(A)
    scale = np.abs(A).sum(axis=1).max()
    assert np.max(np.abs(S @ S - A)) <= 1e-8 * scale
    assert all(in_half_plane(z, 1e-9) for z in np.linalg.eigvals(S))


@given(st.integers(0, 2**32 - 1))
def test_principal_sqrt_matches_scipy_on_generic_input(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((3, 3)) + 3 * np.eye(3)  # spectrum away from the branch cut
    ev = np.linalg.eigvals(A)
    if np.any((ev.real < 0.1) & (abs(ev.imag) < 0.1)):
        return
    assert np.allclose(principal_sqrt(A), scipy.linalg.sqrtm(A), atol=1e-8)


@given(st.integers(0, 2**32 - 1))
def test_square_root_jordan_blocks(seed):
    rng = np.random.default_rng(seed)
    blocks = [(complex(rng.uniform(0.5, 3), rng.uniform(-3, 3)), 2), (-1.0 + 0.5j, 1)]
    T = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    if np.linalg.cond(T) > 50:
        return
    A = T @ jordan_matrix(blocks) @ np.linalg.inv(T)
    got = jordan_form(principal_sqrt(A)).blocks
    assert blocks_match(got, [(half_plane_sqrt(lam), k) for lam, k in blocks])
