"""Pivoting for double matrices.

A double permutation matrix is a pair ``[P, Q]`` of ordinary permutation
matrices.  It is unitary only when ``Q = P^{-1}``, and restricting pivots to
that case is not enough: ``[I, S]`` with ``S`` the 2x2 swap has no
factorization ``A = L1 U2 P``, ``B = P^{-1} L2 U1`` for any ``P``.  With
general pairs every pivoted real factorization carries over.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NotHermitian, PivotFailure, Singular
from .matrices import DoubleMatrix, is_hermitian
from .real_linalg import lu, lu_complete_pivot, lup, perm_matrix, rank

#: Largest order searched exhaustively by :func:`lup_restricted`.
RESTRICTED_MAX_N = 6


def _is_permutation(P):
    P = np.asarray(P)
    return (
        P.ndim == 2
        and P.shape[0] == P.shape[1]
        and np.all((P == 0) | (P == 1))
        and np.all(P.sum(axis=0) == 1)
        and np.all(P.sum(axis=1) == 1)
    )


@dataclass
class PermPair:
    """The double permutation matrix ``[P, Q]``."""

    P: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        self.P = np.asarray(self.P, dtype=int)
        self.Q = np.asarray(self.Q, dtype=int)
        if not (_is_permutation(self.P) and _is_permutation(self.Q)):
            raise ValueError("PermPair components must be permutation matrices")
        if self.P.shape != self.Q.shape:
            raise ValueError("PermPair components must have the same order")

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n, dtype=int), np.eye(n, dtype=int))

    @property
    def n(self):
        return self.P.shape[0]

    def as_double(self):
        return DoubleMatrix(self.P, self.Q)

    def compose(self, other):
        """``[P, Q] [P', Q'] = [P P', Q' Q]``."""
        return PermPair(self.P @ other.P, other.Q @ self.Q)

    __matmul__ = compose

    @property
    def H(self):
        return PermPair(self.Q, self.P)

    def inv(self):
        """``[P, Q]^{-1} = [P^T, Q^T]``; equals ``[P, Q]^*`` only in the unitary case."""
        return PermPair(self.P.T, self.Q.T)

    def is_unitary(self):
        return bool(np.array_equal(self.Q @ self.P, np.eye(self.n, dtype=int)))


# -- restricted and general LUP --------------------------------------------

@dataclass
class Infeasible:
    """No factorization exists; ``reason`` says what was searched."""

    reason: str

    def __bool__(self):
        return False


@dataclass
class RestrictedLUP:
    """``A = L1 U2 P`` and ``B = P^{-1} L2 U1``, i.e. ``M = [L1, U1] [U2, L2] [P, P^{-1}]``."""

    P: np.ndarray
    lower: DoubleMatrix
    upper: DoubleMatrix

    @property
    def perm(self):
        return PermPair(self.P, self.P.T)

    def reconstruct(self):
        return self.lower @ self.upper @ self.perm.as_double()


def _lu_or_none(X):
    try:
        return lu(X)
    except PivotFailure:
        return None


def lup_restricted(M, max_n=RESTRICTED_MAX_N):
    """Search every ``P`` for an LUP of ``M`` pivoted by the unitary ``[P, P^{-1}]``.

    ``A P^{-1}`` and ``P B`` must both admit an LU factorization without
    pivoting.  Returns a :class:`RestrictedLUP` for the first permutation that
    works (in lexicographic order), else an :class:`Infeasible` value.
    """
    A, B = np.asarray(M.A), np.asarray(M.B)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"lup_restricted needs a square matrix, got {A.shape}")
    if n > max_n:
        raise ValueError(f"exhaustive search is limited to n <= {max_n}")
    for perm in itertools.permutations(range(n)):
        P = perm_matrix(perm)
        left = _lu_or_none(A @ P.T)
        if left is None:
            continue
        right = _lu_or_none(P @ B)
        if right is None:
            continue
        L1, U2 = left
        L2, U1 = right
        return RestrictedLUP(P, DoubleMatrix(L1, U1), DoubleMatrix(U2, L2))
    return Infeasible(f"no P among {n}! permutations gives LU factorizations of A P^-1 and P B")


@dataclass
class GeneralLUP:
    lower: DoubleMatrix
    upper: DoubleMatrix
    perm: PermPair

    def reconstruct(self):
        return self.lower @ self.upper @ self.perm.as_double()


def lup_general(M):
    """``M = [L1, U1] [U2, L2] [P, Q]``: separate pivoted LU of each component.

    ``A = L1 U2 P`` comes from the row-pivoted LU of ``A^T``; ``B = Q L2 U1``
    from the row-pivoted LU of ``B``.
    """
    A, B = np.asarray(M.A, dtype=np.result_type(M.A, float)), np.asarray(M.B, dtype=np.result_type(M.B, float))
    Pa, La, Ua = lup(A.T)
    Pb, Lb, Ub = lup(B)
    lower = DoubleMatrix(Ua.T, Ub)
    upper = DoubleMatrix(La.T, Lb)
    return GeneralLUP(lower, upper, PermPair(Pa, Pb.T))


# -- BKP-style PAQ = LDU ---------------------------------------------------

@dataclass
class BKPResult:
    """``[P, Q] [A, A] [Q, P] = [L, U] [D, D] [U, L]``, i.e. ``P A Q = L D U``."""

    perm: PermPair
    L: DoubleMatrix
    D: DoubleMatrix
    U: DoubleMatrix

    def reconstruct(self):
        """Undo the pivoting: ``[P, Q]^{-1} (L D U) [Q, P]^{-1} = M``."""
        left = self.perm.inv().as_double()
        right = self.perm.H.inv().as_double()
        return left @ self.L @ self.D @ self.U @ right

    @property
    def rank(self):
        return int(np.count_nonzero(np.diag(self.D.A)))


def bkp_double(M, tol=None):
    """Complete-pivoting ``P A Q = L D U`` for a Hermitian ``M = [A, A]``.

    Uses 1x1 pivots only, so it always succeeds; trailing pivots below
    ``tol`` are set to zero and the number of nonzero pivots is the rank.
    """
    if not is_hermitian(M, 1e-9 * max(M.norm(), 1.0)):
        raise NotHermitian("bkp_double needs a Hermitian double matrix [A, A]")
    P, Q, L, D, U = lu_complete_pivot(M.A, tol)
    return BKPResult(PermPair(P, Q), DoubleMatrix(L, U), DoubleMatrix(D, D.copy()), DoubleMatrix(U, L))


# -- RRQR analogue ---------------------------------------------------------

@dataclass
class RRQRResult:
    """``M [Pi1, Pi2] = Q R`` with ``Q = [C, C^{-1}]`` and ``R = [U, L]``."""

    perm: PermPair
    Q: DoubleMatrix
    R: DoubleMatrix

    def reconstruct(self):
        return self.Q @ self.R @ self.perm.inv().as_double()


def rrqr_double(M, tol=None):
    """Pivoted QR of ``[A, B]`` from the complete-pivoting LU ``Pi2 B A Pi1 = L U``.

    Then ``A Pi1 = C U`` and ``Pi2 B = L C^{-1}``.
    """
    A = np.asarray(M.A, dtype=np.result_type(M.A, float))
    B = np.asarray(M.B, dtype=np.result_type(M.B, float))
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"rrqr_double needs a square matrix, got {A.shape}")
    if rank(A, tol) < n or rank(B, tol) < n:
        raise Singular("rrqr_double needs invertible components")
    Pi2, Pi1, L, D, U = lu_complete_pivot(B @ A, tol)
    Ur = D @ U
    if np.any(np.diag(D) == 0):
        raise Singular("B A is numerically singular")
    C = scipy.linalg.solve_triangular(Ur.T, (A @ Pi1).T, lower=True).T
    C_inv = scipy.linalg.solve_triangular(L, Pi2 @ B, lower=True, unit_diagonal=True)
    return RRQRResult(PermPair(Pi1, Pi2), DoubleMatrix(C, C_inv), DoubleMatrix(Ur, L))
