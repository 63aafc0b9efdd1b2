import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from splitlinalg.errors import InvalidParam, Singular
from splitlinalg.matrices import DoubleMatrix
from splitlinalg.scalars import DoubleScalar
from splitlinalg.yaglom import (
    DEMO_SPECS,
    InversionSpec,
    classify,
    counterexample,
    demo,
    format_demo,
    inversion_matrix,
    jordan_invariant,
    proposed_family_covers,
    proposed_matrix,
    third_kind_eigenvalues,
)

GRID = (
    [InversionSpec.first(k) for k in (-2, -1, 0.5, 1, 3)]
    + [InversionSpec.second()]
    + [InversionSpec.third(a) for a in (0, 0.5, 1, 2)]
    + [InversionSpec.fourth(k) for k in (-2, -1, 0.5, 1, 3)]
)


def random_unitary(rng, n=2):
    while True:
        A = rng.integers(-3, 4, (n, n)).astype(float)
        if abs(np.linalg.det(A)) >= 1:
            return DoubleMatrix(A, np.linalg.inv(A))


def test_inversion_matrices():
    assert np.allclose(inversion_matrix(InversionSpec.first(1)).A, [[0, -1], [1, 0]])
    S = inversion_matrix(InversionSpec.second())
    j = DoubleScalar(0, 1)
    assert S[0, 0] == j and S[1, 1] == j and S[0, 1] == DoubleScalar(-1, 0) and S[1, 0] == DoubleScalar(3, 0)
    F = inversion_matrix(InversionSpec.fourth(2))
    assert F[0, 1] == DoubleScalar(0, 2) and F[1, 0] == DoubleScalar(1, 0)


def test_spec_validation():
    with pytest.raises(InvalidParam):
        InversionSpec("Fifth", 1)
    with pytest.raises(InvalidParam):
        InversionSpec("Second", 2)
    with pytest.raises(InvalidParam):
        InversionSpec.third(-1)
    with pytest.raises(InvalidParam):
        InversionSpec("First")


def test_family_invariants():
    inv = jordan_invariant(inversion_matrix(InversionSpec.second()))
    assert not inv.is_diagonal
    assert inv.blocks[0][0] == pytest.approx(2)
    inv = jordan_invariant(inversion_matrix(InversionSpec.first(3)))
    assert inv.w in (pytest.approx(9), pytest.approx(1 / 9))
    inv = jordan_invariant(inversion_matrix(InversionSpec.fourth(1)))
    assert inv.w == pytest.approx(-1)


@pytest.mark.parametrize("alpha", [0, 0.5, 1, 2])
def test_third_kind_closed_form(alpha):
    inv = jordan_invariant(inversion_matrix(InversionSpec.third(alpha)))
    z1, z2 = third_kind_eigenvalues(alpha)
    from splitlinalg.jordan_svd import blocks_match

    assert blocks_match(inv.blocks, [(z1, 1), (z2, 1)])


@pytest.mark.parametrize("spec", GRID, ids=str)
def test_each_family_member_is_covered_by_its_kind(spec):
    verdict = classify(inversion_matrix(spec))
    assert verdict.covered
    assert spec.kind in verdict.kinds


def test_classify_examples(rng):
    assert not classify(counterexample()).covered
    assert str(classify(counterexample())) == "NotCovered"
    assert str(classify(inversion_matrix(InversionSpec.second()))) == "Covered(Second)"
    W1, W2 = random_unitary(rng), random_unitary(rng)
    M = W1 @ inversion_matrix(InversionSpec.first(3)) @ W2.H
    assert classify(M).kind == "First"


def test_proposed_family():
    assert proposed_family_covers(counterexample())
    assert proposed_family_covers(inversion_matrix(InversionSpec.first(5)))
    for k in (-3, 0.5, 2):
        inv = jordan_invariant(proposed_matrix(k))
        assert not inv.is_diagonal and inv.blocks[0][0] == pytest.approx(abs(k))
        assert proposed_family_covers(proposed_matrix(k))


@given(st.integers(0, 2**32 - 1), st.floats(0.1, 3), st.floats(0.1, 3))
def test_third_kind_invariant_covered_after_motions(seed, re, im):
    rng = np.random.default_rng(seed)
    z = complex(re, im)
    S = DoubleMatrix(np.diag([z, z.conjugate()]), np.diag([z, z.conjugate()]))
    W1, W2 = random_unitary(rng), random_unitary(rng)
    M = W1 @ S @ W2.H
    assert proposed_family_covers(M)
    assert "Third" in classify(M).kinds


@given(st.integers(0, 2**32 - 1), st.sampled_from(GRID))
def test_unitary_invariance(seed, spec):
    rng = np.random.default_rng(seed)
    S = inversion_matrix(spec)
    W1, W2 = random_unitary(rng), random_unitary(rng)
    assert jordan_invariant(W1 @ S @ W2.H).matches(jordan_invariant(S))


def test_scalar_scaling_invariance():
    S = inversion_matrix(InversionSpec.first(3))
    scaled = S * DoubleScalar.from_idempotent(2.0, 5.0)
    assert jordan_invariant(scaled).matches(jordan_invariant(S))


def test_singular_rejected():
    M = DoubleMatrix(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]))
    with pytest.raises(Singular):
        classify(M)
    with pytest.raises(ValueError):
        jordan_invariant(DoubleMatrix(np.eye(3), np.eye(3)))


def test_demo_contents():
    result = demo()
    assert [f["family"] for f in result["families"]] == [str(s) for s in DEMO_SPECS]
    ce = result["counterexample"]
    assert ce["verdict"] == "NotCovered" and ce["proposed_covers"] is True
    text = format_demo(result)
    assert "NotCovered" in text and "J_2(1)" in text
