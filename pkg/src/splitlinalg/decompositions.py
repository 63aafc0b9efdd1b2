"""Decompositions of double matrices: LDL, QR (three ways), LR-iteration SVD, polar.

Unpacking the components of each result gives a familiar real decomposition:

* ``[A, A] = L D L^*`` is ``A = L D U`` (LDU of ``A``);
* ``[A, B] = Q R`` with ``Q = [C, C^{-1}]``, ``R = [U, L]`` is ``B A = L U``;
* the LR-SVD of ``[A, B]`` is the LR eigenvalue iteration on ``B A``.

Gram-Schmidt and Householder QR are written against double arithmetic
directly, the way they read over the complex numbers.  Where a split norm
``x^* x`` is negative the square root is taken in the complexification, so
their outputs may be double-complex even for real input.  Each costs about
``8 n^3 / 3`` flops, the same as the component route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import matrices as mx
from .errors import (
    DegenerateColumn,
    DimensionMismatch,
    NotHermitian,
    PivotZeroDivisor,
    Singular,
    ZeroDivisorNorm,
)
from .matrices import DoubleMatrix
from .real_linalg import half_plane_sqrt, lu
from .scalars import DoubleScalar, apply_analytic, scabs


@dataclass
class LDLResult:
    L: DoubleMatrix
    D: DoubleMatrix

    def reconstruct(self):
        return self.L @ self.D @ self.L.H


@dataclass
class QRResult:
    Q: DoubleMatrix
    R: DoubleMatrix

    def reconstruct(self):
        return self.Q @ self.R


def _require_square(M):
    n, m = M.shape
    if n != m:
        raise DimensionMismatch(f"decompositions need a square matrix, got {M.shape}")
    return n


def _scale(M):
    return max(M.norm(), 1.0)


def _emath_sqrt(x):
    # real root where it exists, complexification otherwise
    return math.sqrt(x) if not isinstance(x, complex) and x >= 0 else half_plane_sqrt(x)


def _double_sqrt(s, complex_field):
    if complex_field:
        return apply_analytic(half_plane_sqrt, s)
    return apply_analytic(math.sqrt, s)


# -- LDL -------------------------------------------------------------------

def ldl_double(M, tol=1e-12):
    """``M = L D L^*`` for a Hermitian double matrix ``M = [A, A]``.

    Uses the usual recurrences, read in double arithmetic::

        D_j  = M_jj - sum_k L_jk L_jk^* D_k
        L_ij = (M_ij - sum_k L_ik L_jk^* D_k) / D_j      (i > j)

    In idempotent components ``L_jk^*`` swaps the pair, so each recurrence is
    two coupled real recurrences.  A pivot ``D_j`` with a component of modulus
    at most ``tol * max(|M|, 1)`` raises :class:`PivotZeroDivisor`.
    """
    n = _require_square(M)
    if not mx.is_hermitian(M, 1e-9 * _scale(M)):
        raise NotHermitian("LDL needs a Hermitian double matrix [A, A]")
    P, Q = M.entries()
    dtype = np.result_type(P, Q, float)
    P, Q = P.astype(dtype), Q.astype(dtype)
    Lp, Lq = np.eye(n, dtype=dtype), np.eye(n, dtype=dtype)
    Dp, Dq = np.zeros(n, dtype=dtype), np.zeros(n, dtype=dtype)
    cutoff = tol * _scale(M)
    for j in range(n):
        w = Lp[j, :j] * Lq[j, :j]
        Dp[j] = P[j, j] - np.sum(w * Dp[:j])
        Dq[j] = Q[j, j] - np.sum(w * Dq[:j])
        if abs(Dp[j]) <= cutoff or abs(Dq[j]) <= cutoff:
            raise PivotZeroDivisor(j)
        for i in range(j + 1, n):
            Lp[i, j] = (P[i, j] - np.sum(Lp[i, :j] * Lq[j, :j] * Dp[:j])) / Dp[j]
            Lq[i, j] = (Q[i, j] - np.sum(Lq[i, :j] * Lp[j, :j] * Dq[:j])) / Dq[j]
    L = DoubleMatrix.from_entries(Lp, Lq)
    D = DoubleMatrix.from_entries(np.diag(Dp), np.diag(Dq))
    return LDLResult(L, D)


def ldu_via_double(A, tol=1e-12):
    """Real ``A = L D U`` obtained by running :func:`ldl_double` on ``[A, A]``."""
    A = np.asarray(A)
    res = ldl_double(DoubleMatrix(A, A.copy()), tol)
    return res.L.A, res.D.A, res.L.B


# -- QR --------------------------------------------------------------------

def qr_components(M):
    """QR of ``[A, B]`` through the components.

    1. ``L U = B A`` (no pivoting; :class:`PivotFailure` when it does not exist)
    2. ``C`` from ``A = C U``
    3. ``C^{-1}`` from ``B = L C^{-1}`` by forward substitution

    Returns ``Q = [C, C^{-1}]`` and ``R = [U, L]``.
    """
    _require_square(M)
    A, B = M.A, M.B
    L, U = lu(B @ A)
    if np.any(np.abs(np.diag(U)) <= 1e-12 * max(mx.inf_norm(U), 1.0)):
        raise Singular("B A is singular, so R = [U, L] is not invertible")
    C = scipy.linalg.solve_triangular(U.T, A.T, lower=True).T
    C_inv = scipy.linalg.solve_triangular(L, B, lower=True, unit_diagonal=True)
    return QRResult(DoubleMatrix(C, C_inv), DoubleMatrix(U, L))


def split_dot(u, v):
    """Split inner product ``u^* v`` of two double column vectors, as a scalar."""
    return (u.H @ v)[0, 0]


def _proj(u, a, uu):
    return u * (split_dot(u, a) / uu)


def qr_gram_schmidt(M, tol=1e-12):
    """Classical Gram-Schmidt over double matrices.

    ``Q_k = u_k (u_k^* u_k)^{-1/2}`` and ``R_ij = Q_i^* M_j`` for ``i <= j``.
    """
    n = _require_square(M)
    cutoff = tol * _scale(M) ** 2
    us, norms = [], []
    for k in range(n):
        m_k = M.column(k)
        u = m_k
        for u_j, uu_j in zip(us, norms):
            u = u - _proj(u_j, m_k, uu_j)
        uu = split_dot(u, u)
        if uu.is_zero_divisor(cutoff):
            raise ZeroDivisorNorm(k)
        us.append(u)
        norms.append(uu)
    cols = []
    for u, uu in zip(us, norms):
        root = apply_analytic(_emath_sqrt, uu)
        cols.append(u / root)
    Q = mx.hstack(cols)
    rows = [
        [split_dot(cols[i], M.column(k)) if i <= k else DoubleScalar(0, 0) for k in range(n)]
        for i in range(n)
    ]
    R = DoubleMatrix.from_scalars(rows)
    return QRResult(Q, R)


def vec_norm(x):
    """``sqrt(x^* x)``; ``x^* x`` always has equal idempotent components."""
    return apply_analytic(_emath_sqrt, split_dot(x, x))


def _unit(n):
    e1 = np.zeros((n, 1))
    e1[0, 0] = 1
    return DoubleMatrix(e1, e1.T.copy())


def householder_reflector(x, tol=1e-12):
    """Pure reflector ``H = I - 2 v v^*`` with ``H x`` a multiple of ``e_1``.

    Requires ``x[0]`` to be invertible.  ``H`` is Hermitian, unitary and an
    involution.
    """
    n = x.shape[0]
    x0 = x[0, 0]
    if x0.is_zero_divisor(tol):
        raise DegenerateColumn(0)
    alpha = -x0 / vec_norm(x[0:1, :]) * vec_norm(x)
    u = x - _unit(n) * alpha
    nu = vec_norm(u)
    if nu.is_zero_divisor(tol * max(x.norm(), 1.0)):
        raise ZeroDivisorNorm(0)
    v = u / nu
    return DoubleMatrix.identity(n) - (v @ v.H) * 2


def householder_reflection(x, tol=1e-12):
    """Unitary ``G`` mapping the double vector ``x`` onto the ``e_1`` axis.

    When ``x[0]`` is a zero divisor the first entry with nonzero split
    absolute value is rotated to the top first (``G = H R``).
    """
    n = x.shape[0]
    for i in range(n):
        if scabs(x[i, 0]) > tol:
            break
    else:
        raise DegenerateColumn(0)
    if i == 0:
        return householder_reflector(x, tol)
    rot = np.eye(n)
    rot[0, 0] = rot[i, i] = 0
    rot[i, 0] = -1
    rot[0, i] = 1
    R = mx.from_real(rot)
    return householder_reflection(R @ x, tol) @ R


def qr_householder(M, tol=1e-12):
    """Householder QR: ``Q`` is the product of the conjugate transposes of the
    double reflections applied to successive trailing columns."""
    n = _require_square(M)
    W = M
    Q = DoubleMatrix.identity(n)
    for k in range(n):
        try:
            G = householder_reflection(W[k:, k], tol)
        except DegenerateColumn:
            raise DegenerateColumn(k) from None
        except ZeroDivisorNorm:
            raise ZeroDivisorNorm(k) from None
        if k:
            G = mx.block_diag(DoubleMatrix.identity(k), G)
        W = G @ W
        Q = Q @ G.H
    R = DoubleMatrix(np.triu(W.A), np.tril(W.B))
    return QRResult(Q, R)


# -- SVD by LR iteration -----------------------------------------------------

def svd_lr(M, iters=20):
    """Singular values of a double matrix by the LR iteration.

    ``K = M^* M``, then ``iters`` times: ``L, D = LDL(K)`` and
    ``K = D^{1/2} L^* L D^{1/2}``.  Returns the last ``D^{1/2}`` (diagonal).
    ``K`` is re-symmetrized after every step.  There is no convergence test.  Over the real field a negative pivot
    component raises :class:`DomainError`; pass ``M.complexify()`` to work in
    the double-complex numbers instead.
    """
    n = _require_square(M)
    if iters < 1:
        raise ValueError("iters must be at least 1")
    complex_field = M.is_complex
    K = M.H @ M
    root = None
    for _ in range(iters):
        res = ldl_double(K)
        roots = [_double_sqrt(res.D[i, i], complex_field) for i in range(n)]
        P = np.diag([r.p for r in roots])
        Q = np.diag([r.q for r in roots])
        root = DoubleMatrix.from_entries(P, Q)
        K = root @ res.L.H @ res.L @ root
        # Hermitian in exact arithmetic; remove the rounding drift
        K = _hermitian_part(K)
    return root


def _hermitian_part(K):
    H = (K.A + K.B) / 2
    return DoubleMatrix(H, H.copy())


def svd_lr_values(M, iters=20):
    """Idempotent components of the LR-SVD diagonal, as two arrays."""
    S = svd_lr(M, iters)
    return np.diag(S.A), np.diag(S.B)


# -- polar -----------------------------------------------------------------

def polar(M, **kw):
    """``M = U_n P`` with ``U_n`` unitary and ``P`` Hermitian.

    Built from the Jordan SVD ``M = W [J, J] V^*`` as ``U_n = W V^*`` and
    ``P = V [J, J] V^*``.  The component of ``P`` squares to ``B A``.
    """
    from .jordan_svd import jordan_svd, polar_from_jordan_svd

    return polar_from_jordan_svd(jordan_svd(M, **kw))
