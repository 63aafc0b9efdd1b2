"""Jordan SVD ``M = U [J, J] V^*`` of double-complex matrices, and the pseudoinverse.

For ``M = [A, B]`` with invertible components, take a square root ``S`` of
``A B`` with Jordan decomposition ``S = P J P^{-1}`` and set ``Q = A^{-1} P J``.
Then ``A = P J Q^{-1}``, ``B = Q J P^{-1}``, and ``U = [P, P^{-1}]``,
``V = [Q, Q^{-1}]`` are unitary in the double sense.

Choosing the half-plane branch for every block makes ``J`` unique up to the
order of its blocks.  The unitary factors are not unique.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from .errors import NilpotentBlock, RankMismatch, ReconstructionFailure, Singular
from .matrices import DoubleMatrix, inf_norm
from .real_linalg import (
    in_half_plane,
    jordan_form,
    jordan_matrix,
    rank,
    sqrt_jordan_block,
)

__all__ = [
    "JordanSVD",
    "PenroseReport",
    "blocks_match",
    "in_half_plane",
    "jordan_svd",
    "jordan_svd_from_polar",
    "normalize_half_plane",
    "penrose_check",
    "pinv",
    "polar_from_jordan_svd",
    "uniqueness_probe",
]

#: Relative reconstruction bound for an accepted Jordan SVD.
RECONSTRUCTION_TOL = 1e-6


@dataclass
class JordanSVD:
    U: DoubleMatrix
    blocks: list
    V: DoubleMatrix

    @property
    def J(self):
        return jordan_matrix(self.blocks)

    @property
    def middle(self):
        J = self.J
        return DoubleMatrix(J, J.copy())

    def reconstruct(self):
        return self.U @ self.middle @ self.V.H

    def eigenvalues(self):
        return [lam for lam, k in self.blocks for _ in range(k)]


def _unitary(P):
    return DoubleMatrix(P, np.linalg.inv(P))


def _root_jordan(lam, k, sign):
    """Jordan chain ``T`` with ``f(J_k(lam)) = T J_k(mu) T^{-1}`` for the chosen root ``mu``."""
    F = sqrt_jordan_block(lam, k, sign)
    mu = F[0, 0]
    N = F - mu * np.eye(k)
    head = np.zeros(k, dtype=complex)
    head[-1] = 1
    T = np.column_stack([np.linalg.matrix_power(N, k - 1 - i) @ head for i in range(k)])
    return mu, T


def _zero_eigenvalue(lam, scale):
    return abs(lam) <= 1e-9 * scale


def sqrt_jordan(AB, signs=None, allow_zero=False, **jordan_kw):
    """Jordan decomposition ``(P, blocks)`` of a square root of ``AB``.

    The Jordan form of ``AB`` is computed once; each block's square root is
    an upper-triangular Toeplitz matrix, which is brought to Jordan form by
    its own chain.  ``signs`` picks the branch per block (``+1`` = half-plane).
    """
    AB = np.asarray(AB, dtype=complex)
    scale = max(inf_norm(AB), np.finfo(float).tiny)
    jf = jordan_form(AB, **jordan_kw)
    signs = [1] * len(jf.blocks) if signs is None else list(signs)
    Ts, blocks = [], []
    for (lam, k), sgn in zip(jf.blocks, signs):
        if _zero_eigenvalue(lam, scale):
            if not allow_zero:
                raise Singular("A B has a zero eigenvalue")
            if k > 1:
                raise NilpotentBlock(f"zero eigenvalue of A B carries a Jordan block of size {k}")
            Ts.append(np.eye(1, dtype=complex))
            blocks.append((0j, 1))
            continue
        mu, T = _root_jordan(lam, k, sgn)
        Ts.append(T)
        blocks.append((complex(mu), k))
    return jf.P @ block_diag(*Ts), blocks


def _assemble(M, P, blocks, check=True):
    A, B = M.A.astype(complex), M.B.astype(complex)
    n = A.shape[0]
    J = jordan_matrix(blocks)
    zero = np.array([lam == 0 for lam, k in blocks for _ in range(k)], dtype=bool)
    if not zero.any():
        Q = np.linalg.solve(A, P @ J)
    else:
        nz = ~zero
        Q = np.zeros((n, n), dtype=complex)
        Q[:, nz] = B @ P[:, nz] @ np.linalg.inv(J[np.ix_(nz, nz)])
        _, s, vh = np.linalg.svd(A)
        null = vh[n - int(zero.sum()):].conj().T
        Q[:, zero] = null
    s = JordanSVD(_unitary(P), blocks, _unitary(Q))
    if check:
        resid = (s.reconstruct() - M).norm()
        bound = RECONSTRUCTION_TOL * max(M.norm(), 1.0)
        if not np.isfinite(resid) or resid > bound:
            raise ReconstructionFailure(resid, bound)
    return s


def _components_rank(M):
    A, B = M.A, M.B
    return rank(A), rank(B), rank(A @ B), rank(B @ A)


def jordan_svd(M, allow_singular=False, check=True, **jordan_kw):
    """Jordan SVD with every eigenvalue of ``J`` in the half-plane.

    Requires invertible components unless ``allow_singular``; the singular
    extension needs ``rank A = rank B = rank AB = rank BA`` and 1x1 zero
    blocks, and reports :class:`RankMismatch` / :class:`NilpotentBlock`
    otherwise.  :class:`ReconstructionFailure` guards against an
    ill-conditioned Jordan basis.
    """
    n, m = M.shape
    if n != m:
        raise ValueError(f"Jordan SVD needs a square matrix, got {M.shape}")
    ranks = _components_rank(M)
    if ranks[0] < n or ranks[1] < n:
        if not allow_singular:
            raise Singular(f"components have ranks {ranks[0]} and {ranks[1]} < {n}")
        if len(set(ranks)) != 1:
            raise RankMismatch(ranks)
    A, B = M.A.astype(complex), M.B.astype(complex)
    P, blocks = sqrt_jordan(A @ B, allow_zero=allow_singular, **jordan_kw)
    return _assemble(M, P, blocks, check)


def _flip_similarity(k):
    return np.diag([(-1.0) ** i for i in range(k)])


def normalize_half_plane(s, tol=1e-12):
    """Move every eigenvalue of ``J`` into the half-plane.

    A block with ``lam`` outside it is negated (``U`` absorbs ``-I`` on that
    block), then ``-J_k(lam)`` is brought back to ``J_k(-lam)`` by the
    similarity ``diag(1, -1, 1, ...)``, which is applied to ``U`` and ``V``.
    """
    signs, flips, blocks = [], [], []
    for lam, k in s.blocks:
        flip = not in_half_plane(lam, tol)
        signs.extend([-1.0 if flip else 1.0] * k)
        flips.append(_flip_similarity(k) if flip else np.eye(k))
        blocks.append((-lam if flip else lam, k))
    if all(x > 0 for x in signs):
        return s
    D = np.diag(signs)
    T = block_diag(*flips)
    U = s.U @ DoubleMatrix(D, D.copy()) @ DoubleMatrix(T, T.copy())
    V = s.V @ DoubleMatrix(T, T.copy())
    return JordanSVD(U, blocks, V)


def jordan_svd_with_branches(M, signs, **jordan_kw):
    """Jordan SVD built from a non-principal square root of ``A B``.

    The result is generally not half-plane normalized.
    """
    A, B = M.A.astype(complex), M.B.astype(complex)
    P, blocks = sqrt_jordan(A @ B, signs=signs, **jordan_kw)
    return _assemble(M, P, blocks)


def blocks_match(first, second, tol=1e-6):
    """Compare two Jordan block lists as multisets (relative eigenvalue tolerance)."""
    if sorted(k for _, k in first) != sorted(k for _, k in second):
        return False
    scale = max([1.0] + [abs(lam) for lam, _ in first])
    unused = list(second)
    for lam, k in first:
        for idx, (mu, size) in enumerate(unused):
            if size == k and abs(lam - mu) <= tol * scale:
                del unused[idx]
                break
        else:
            return False
    return True


def uniqueness_probe(M, tol=1e-6, **jordan_kw):
    """Check that independent square-root branches normalize to the same ``J``.

    Besides the principal construction, two more Jordan SVDs are built from
    square roots of ``A B`` with every block negated and with alternating
    signs.  After half-plane normalization all block multisets must agree.
    """
    ref = jordan_svd(M, **jordan_kw)
    nblocks = len(ref.blocks)
    patterns = [[-1] * nblocks, [(-1) ** b for b in range(nblocks)]]
    for signs in patterns:
        alt = normalize_half_plane(jordan_svd_with_branches(M, signs, **jordan_kw))
        if (alt.reconstruct() - M).norm() > RECONSTRUCTION_TOL * max(M.norm(), 1.0):
            return False
        if not blocks_match(ref.blocks, alt.blocks, tol):
            return False
    return True


# -- polar decomposition ---------------------------------------------------

def polar_from_jordan_svd(s):
    """``(W V^*, V [J, J] V^*)`` from a Jordan SVD ``W [J, J] V^*``."""
    return s.U @ s.V.H, s.V @ s.middle @ s.V.H


def jordan_svd_from_polar(Un, P, **jordan_kw):
    """Jordan SVD from a polar decomposition ``U_n P`` with ``P = [C, C]``.

    ``C = Q J Q^{-1}`` gives ``M = U_n [Q, Q^{-1}] [J, J] [Q, Q^{-1}]^*``.
    """
    jf = jordan_form(P.A, **jordan_kw)
    W = _unitary(jf.P)
    return JordanSVD(Un @ W, list(jf.blocks), W)


# -- pseudoinverse ---------------------------------------------------------

def _jordan_pinv(blocks):
    J = jordan_matrix(blocks)
    out = np.zeros_like(J)
    start = 0
    for lam, k in blocks:
        sl = slice(start, start + k)
        if lam != 0:
            out[sl, sl] = np.linalg.inv(J[sl, sl])
        start += k
    return out


def pinv(M, **jordan_kw):
    """Moore-Penrose pseudoinverse ``M^+ = V [J^+, J^+] U^*`` under the ``*`` involution.

    Exists iff ``rank A = rank B = rank AB = rank BA``; otherwise
    :class:`RankMismatch` carries the four ranks.
    """
    n, m = M.shape
    if n != m:
        raise ValueError(f"pinv needs a square matrix, got {M.shape}")
    ranks = _components_rank(M)
    if len(set(ranks)) != 1:
        raise RankMismatch(ranks)
    if ranks[0] == 0:
        return DoubleMatrix(np.zeros_like(M.A.T, dtype=complex), np.zeros_like(M.B.T, dtype=complex))
    s = jordan_svd(M, allow_singular=ranks[0] < n, **jordan_kw)
    Jp = _jordan_pinv(s.blocks)
    return s.V @ DoubleMatrix(Jp, Jp.copy()) @ s.U.H


@dataclass
class PenroseReport:
    mxm: bool
    xmx: bool
    mx_hermitian: bool
    xm_hermitian: bool
    residuals: tuple

    @property
    def all(self):
        return self.mxm and self.xmx and self.mx_hermitian and self.xm_hermitian

    def as_dict(self):
        return {
            "MXM=M": self.mxm,
            "XMX=X": self.xmx,
            "(MX)*=MX": self.mx_hermitian,
            "(XM)*=XM": self.xm_hermitian,
        }


def penrose_check(M, X, tol=1e-8):
    """The four Penrose identities, each judged relative to the size of its terms."""
    if M.shape[::-1] != X.shape:
        raise ValueError(f"shapes {M.shape} and {X.shape} do not pair up")
    MX, XM = M @ X, X @ M
    checks = [
        ((MX @ M - M).norm(), M.norm()),
        ((XM @ X - X).norm(), X.norm()),
        ((MX.H - MX).norm(), MX.norm()),
        ((XM.H - XM).norm(), XM.norm()),
    ]
    ok = [r <= tol * max(1.0, ref) for r, ref in checks]
    return PenroseReport(*ok, residuals=tuple(r for r, _ in checks))
