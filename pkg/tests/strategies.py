"""Hypothesis strategies shared by the test modules."""

import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from splitlinalg.matrices import DoubleMatrix
from splitlinalg.scalars import DoubleScalar

small_ints = st.integers(-5, 5)
int_scalars = st.builds(DoubleScalar, small_ints, small_ints)
float_scalars = st.builds(
    DoubleScalar,
    st.floats(-1e3, 1e3, allow_nan=False),
    st.floats(-1e3, 1e3, allow_nan=False),
)


def int_matrix(n, m=None):
    return arrays(np.int64, (n, n if m is None else m), elements=small_ints)


@st.composite
def int_pairs(draw, n=None, max_n=4):
    n = draw(st.integers(1, max_n)) if n is None else n
    return DoubleMatrix(draw(int_matrix(n)), draw(int_matrix(n)))


@st.composite
def conformable_triples(draw, max_n=4):
    n, m, r, s = (draw(st.integers(1, max_n)) for _ in range(4))
    M = DoubleMatrix(draw(int_matrix(n, m)), draw(int_matrix(m, n)))
    N = DoubleMatrix(draw(int_matrix(m, r)), draw(int_matrix(r, m)))
    K = DoubleMatrix(draw(int_matrix(r, s)), draw(int_matrix(s, r)))
    return M, N, K
