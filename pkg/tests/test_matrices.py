import numpy as np
import pytest
from hypothesis import given

from splitlinalg.errors import DimensionMismatch
from splitlinalg.matrices import (
    DoubleMatrix,
    conj_transpose,
    from_json_dict,
    from_real,
    is_diagonal,
    is_hermitian,
    is_lower_tri,
    is_real_embedded,
    is_unitary,
    is_upper_tri,
    mul,
    pack,
    to_json_dict,
    unpack,
)
from splitlinalg.scalars import DoubleScalar

from strategies import conformable_triples, int_pairs

I2 = np.eye(2, dtype=int)


def test_entry_components_use_transpose_of_B():
    A = np.array([[1, 2], [3, 4]])
    B = np.array([[5, 6], [7, 8]])
    M = DoubleMatrix(A, B)
    assert M[0, 1].idempotent() == (2, 7)
    assert M[1, 0].idempotent() == (3, 6)


def test_pack_unpack_round_trip():
    A, B = np.arange(6).reshape(2, 3), np.arange(6).reshape(3, 2)
    out = unpack(pack(A, B))
    assert np.array_equal(out[0], A) and np.array_equal(out[1], B)


def test_shape_check():
    with pytest.raises(DimensionMismatch):
        DoubleMatrix(np.zeros((2, 3)), np.zeros((2, 3)))
    with pytest.raises(DimensionMismatch):
        DoubleMatrix(I2, I2) @ DoubleMatrix(np.zeros((3, 3)), np.zeros((3, 3)))


def test_mul_examples():
    C, D = np.array([[1, 2], [3, 4]]), np.array([[0, 1], [5, 2]])
    assert DoubleMatrix(I2, I2) @ DoubleMatrix(C, D) == DoubleMatrix(C, D)
    assert DoubleMatrix([[2]], [[3]]) @ DoubleMatrix([[5]], [[7]]) == DoubleMatrix([[10]], [[21]])
    A = np.array([[1, 1], [0, 1]])
    assert mul(DoubleMatrix(A, I2), DoubleMatrix(I2, I2)) == DoubleMatrix(A, I2)


def test_conj_transpose_examples():
    A, B = np.array([[1, 2], [3, 4]]), np.array([[0, 1], [1, 1]])
    assert conj_transpose(DoubleMatrix(A, A)) == DoubleMatrix(A, A)
    assert conj_transpose(DoubleMatrix(A, B)) == DoubleMatrix(B, A)


@given(conformable_triples())
def test_pair_rule_matches_entrywise_scalar_product(triple):
    M, N, _ = triple
    P = M @ N
    n, m = M.shape
    r = N.shape[1]
    for i in range(n):
        for k in range(r):
            expected = sum((M[i, l] * N[l, k] for l in range(m)), DoubleScalar(0, 0))
            assert P[i, k] == expected


@given(conformable_triples())
def test_mul_associative_and_star_antihomomorphism(triple):
    M, N, K = triple
    assert (M @ N) @ K == M @ (N @ K)
    assert (M @ N).H == N.H @ M.H
    assert M.H.H == M


@given(int_pairs(n=3), int_pairs(n=3))
def test_addition_componentwise(M, N):
    S = M + N
    assert np.array_equal(S.A, M.A + N.A) and np.array_equal(S.B, M.B + N.B)
    for i in range(3):
        for k in range(3):
            assert S[i, k] == M[i, k] + N[i, k]


def test_scalar_multiplication():
    M = DoubleMatrix(np.array([[1, 2], [3, 4]]), np.array([[5, 6], [7, 8]]))
    s = DoubleScalar(2, 1)  # p = 3, q = 1
    out = M * s
    assert out == DoubleMatrix(3 * M.A, M.B)
    assert out[0, 1] == M[0, 1] * s


def test_predicates_on_identity():
    M = DoubleMatrix.identity(3)
    assert is_hermitian(M) and is_unitary(M) and is_diagonal(M) and is_real_embedded(M)
    assert is_lower_tri(M) and is_upper_tri(M)


def test_unitary_not_hermitian():
    A = np.array([[2.0, 0.0], [0.0, 1.0]])
    M = DoubleMatrix(A, np.linalg.inv(A))
    assert is_unitary(M)
    assert not is_hermitian(M)


def test_real_embedded_permutation():
    S = np.array([[0, 1], [1, 0]])
    assert is_real_embedded(DoubleMatrix(S, S.T))


def test_triangular_families():
    L = np.array([[1, 0], [2, 1]])
    U = L.T
    assert is_lower_tri(DoubleMatrix(L, U)) and not is_upper_tri(DoubleMatrix(L, U))
    assert is_upper_tri(DoubleMatrix(U, L))
    # the product of lower-triangular double matrices is lower triangular
    assert is_lower_tri(DoubleMatrix(L, U) @ DoubleMatrix(L, U))


def test_from_real_examples():
    assert from_real(I2) == DoubleMatrix(I2, I2)
    A = np.array([[1, 2], [3, 4]])
    M = from_real(A)
    assert M[0, 1] == DoubleScalar(2, 0)
    assert all(M[i, k].b == 0 for i in range(2) for k in range(2))


@given(int_pairs(n=3), int_pairs(n=3))
def test_from_real_homomorphism(M, N):
    A, C = M.A, N.A
    assert from_real(A) @ from_real(C) == from_real(A @ C)
    assert from_real(A.T) == from_real(A).H


def test_unitary_closure(rng):
    def unitary():
        X = rng.standard_normal((3, 3))
        return DoubleMatrix(X, np.linalg.inv(X))

    U, V = unitary(), unitary()
    assert is_unitary(U @ V, 1e-9)
    assert is_unitary(U.H, 1e-9)


def test_inverse():
    M = DoubleMatrix(np.array([[2.0, 1.0], [0.0, 1.0]]), np.array([[1.0, 0.0], [3.0, 1.0]]))
    assert (M @ M.inv()).allclose(DoubleMatrix.identity(2))


def test_json_round_trip_real_and_complex():
    M = DoubleMatrix(np.array([[1, 2], [3, 4]]), np.array([[0, 1], [1, 0]]))
    assert from_json_dict(to_json_dict(M)) == M
    C = DoubleMatrix(np.array([[1 + 2j]]), np.array([[3 - 1j]]))
    data = to_json_dict(C)
    assert data == {"field": "complex", "A": [[[1.0, 2.0]]], "B": [[[3.0, -1.0]]]}
    assert from_json_dict(data) == C


def test_json_missing_B_defaults_to_transpose():
    M = from_json_dict({"field": "real", "A": [[1, 2], [3, 4]]})
    assert M == from_real(np.array([[1, 2], [3, 4]]))


def test_json_rejects_bad_field():
    with pytest.raises(ValueError):
        from_json_dict({"field": "quaternion", "A": [[1]]})
