"""Base-field kernel: triangular factorizations, rank, Jordan form, matrix square root.

Everything here acts on ordinary real or complex numpy arrays.  The double
matrix algorithms call into these routines component by component.

Jordan structure is discontinuous, so the numerical Jordan form is only
reliable for inputs whose eigenvalues are either well separated or exactly
repeated.  Clusters of computed eigenvalues closer than ``cluster_tol`` are
treated as one eigenvalue; ranks of powers of the shifted restriction are
judged with ``rank_tol``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ClusterAmbiguity, NilpotentBlock, PivotFailure, Singular

#: Maximum order handled by the Jordan-form machinery.
N_MAX = 8

#: Relative radius for merging computed eigenvalues into one cluster.
CLUSTER_TOL = 1e-6
#: Relative tolerance for ranks inside the Jordan chain construction.
RANK_TOL = 1e-8
#: Relative reconstruction bound for an accepted Jordan form.
JORDAN_TOL = 1e-7


def _inf_norm(X):
    return float(np.max(np.sum(np.abs(X), axis=1))) if X.size else 0.0


def _float(A):
    A = np.asarray(A)
    if np.iscomplexobj(A):
        return A.astype(complex)
    return A.astype(float)


def _check_square(A):
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A.shape[0]


def perm_matrix(perm):
    """Permutation matrix ``P`` with ``(P @ X)[i] = X[perm[i]]``."""
    n = len(perm)
    P = np.zeros((n, n), dtype=int)
    P[np.arange(n), perm] = 1
    return P


# -- LU family -------------------------------------------------------------

def lu(A, tol=None):
    """``A = L U`` without pivoting; ``L`` unit lower triangular.

    A vanishing pivot is tolerated only when the column below it is already
    zero (then the factorization still exists); otherwise :class:`PivotFailure`
    reports the order of the first failing leading minor.
    """
    U = _float(A).copy()
    n = _check_square(U)
    tol = 1e-12 * _inf_norm(U) if tol is None else tol
    L = np.eye(n, dtype=U.dtype)
    for k in range(n - 1):
        pivot = U[k, k]
        if abs(pivot) <= tol:
            if np.all(np.abs(U[k + 1:, k]) <= tol):
                U[k + 1:, k] = 0
                continue
            raise PivotFailure(k + 1)
        L[k + 1:, k] = U[k + 1:, k] / pivot
        U[k + 1:, k:] -= np.outer(L[k + 1:, k], U[k, k:])
        U[k + 1:, k] = 0
    return L, U


def ldu(A, tol=None):
    """``A = L D U`` with unit triangular ``L``, ``U`` and diagonal ``D``."""
    A = _float(A)
    tol = 1e-12 * _inf_norm(A) if tol is None else tol
    L, U = lu(A, tol)
    d = np.diag(U).copy()
    n = len(d)
    Uu = np.eye(n, dtype=U.dtype)
    for k in range(n):
        if abs(d[k]) > tol:
            Uu[k, k + 1:] = U[k, k + 1:] / d[k]
        elif np.any(np.abs(U[k, k + 1:]) > tol):
            raise PivotFailure(k + 1)
        else:
            d[k] = 0
    return L, np.diag(d), Uu


def lup(A):
    """Partial pivoting: ``P A = L U``.  Succeeds for every square matrix."""
    U = _float(A).copy()
    n = _check_square(U)
    L = np.eye(n, dtype=U.dtype)
    perm = np.arange(n)
    for k in range(n - 1):
        r = k + int(np.argmax(np.abs(U[k:, k])))
        if r != k:
            U[[k, r], :] = U[[r, k], :]
            L[[k, r], :k] = L[[r, k], :k]
            perm[[k, r]] = perm[[r, k]]
        if U[k, k] == 0:
            continue
        L[k + 1:, k] = U[k + 1:, k] / U[k, k]
        U[k + 1:, k:] -= np.outer(L[k + 1:, k], U[k, k:])
        U[k + 1:, k] = 0
    return perm_matrix(perm), L, U


def lu_complete_pivot(A, tol=None):
    """Complete pivoting: ``P A Q = L D U``.

    ``L`` and ``U`` are unit triangular and ``D`` diagonal.  Elimination stops
    once every remaining entry is at most ``tol`` in modulus; the trailing
    entries of ``D`` are then zero, so the number of nonzero pivots is the
    numerical rank.
    """
    W = _float(A).copy()
    n = _check_square(W)
    tol = 1e-12 * _inf_norm(W) if tol is None else tol
    rows, cols = np.arange(n), np.arange(n)
    L = np.eye(n, dtype=W.dtype)
    d = np.zeros(n, dtype=W.dtype)
    for k in range(n):
        sub = np.abs(W[k:, k:])
        i, j = np.unravel_index(int(np.argmax(sub)), sub.shape)
        if sub[i, j] <= tol:
            W[k:, k:] = 0
            break
        i += k
        j += k
        W[[k, i], :] = W[[i, k], :]
        L[[k, i], :k] = L[[i, k], :k]
        rows[[k, i]] = rows[[i, k]]
        W[:, [k, j]] = W[:, [j, k]]
        cols[[k, j]] = cols[[j, k]]
        pivot = W[k, k]
        d[k] = pivot
        L[k + 1:, k] = W[k + 1:, k] / pivot
        W[k + 1:, k + 1:] -= np.outer(L[k + 1:, k], W[k, k + 1:])
        W[k + 1:, k] = 0
        W[k, k + 1:] /= pivot
        W[k, k] = 1
    U = np.triu(W, 1) + np.eye(n)
    P = perm_matrix(rows)
    Q = perm_matrix(cols).T
    return P, Q, L, np.diag(d), U


def rank(A, tol=None):
    """Number of complete-pivoting pivots larger than ``tol``.

    The default tolerance is ``1e-9 * |A|_inf``.
    """
    A = _float(A)
    tol = 1e-9 * _inf_norm(A) if tol is None else tol
    *_, D, _ = lu_complete_pivot(A, tol)
    return int(np.sum(np.abs(np.diag(D)) > tol))


# -- spectra ---------------------------------------------------------------

def in_half_plane(z, tol=0.0):
    """``Re z > 0``, or ``Re z == 0`` and ``Im z >= 0``.

    With ``tol > 0`` a real part below ``tol * |z|`` counts as zero.
    """
    z = complex(z)
    re = z.real
    if abs(re) <= tol * abs(z):
        re = 0.0
    return re > 0 or (re == 0 and z.imag >= 0)


def half_plane_sqrt(z, tol=1e-12):
    """The square root of ``z`` lying in the half-plane."""
    s = cmath.sqrt(complex(z))
    return s if in_half_plane(s, tol) else -s


def eigenvalues(A):
    """Eigenvalues with multiplicity, sorted by ``(Re, Im)``."""
    A = _float(A)
    n = _check_square(A)
    if n > N_MAX:
        raise ValueError(f"order {n} exceeds the supported maximum {N_MAX}")
    ev = np.linalg.eigvals(A).astype(complex)
    return sorted(ev, key=lambda z: (round(z.real, 9), z.imag))


def jordan_block(lam, k):
    return lam * np.eye(k, dtype=complex) + np.eye(k, k=1, dtype=complex)


def jordan_matrix(blocks):
    if not blocks:
        return np.zeros((0, 0), dtype=complex)
    return scipy.linalg.block_diag(*[jordan_block(lam, k) for lam, k in blocks])


@dataclass
class JordanForm:
    """``A = P J P^{-1}`` with ``J`` assembled from ``blocks`` in order."""

    P: np.ndarray
    blocks: list = field(default_factory=list)

    @property
    def n(self):
        return sum(k for _, k in self.blocks)

    @property
    def J(self):
        return jordan_matrix(self.blocks)

    def reconstruct(self):
        return self.P @ self.J @ np.linalg.inv(self.P)

    def block_slices(self):
        start = 0
        for lam, k in self.blocks:
            yield lam, k, slice(start, start + k)
            start += k


def _cluster(ev, radius):
    """Single-linkage clusters of the eigenvalues ``ev``; returns a label per entry."""
    m = len(ev)
    labels = list(range(m))

    def find(i):
        while labels[i] != i:
            labels[i] = labels[labels[i]]
            i = labels[i]
        return i

    for i in range(m):
        for k in range(i + 1, m):
            if abs(ev[i] - ev[k]) <= radius:
                labels[find(i)] = find(k)
    return [find(i) for i in range(m)]


def _null_basis(X, tol):
    """Orthonormal basis of the numerical null space of ``X``."""
    if X.shape[1] == 0:
        return np.zeros((0, 0), dtype=complex)
    _, s, vh = np.linalg.svd(X)
    r = int(np.sum(s > tol))
    return vh[r:].conj().T


def _nilpotent_chains(N, scale, rank_tol):
    """Jordan chains of a (numerically) nilpotent matrix ``N``.

    Returns ``(columns, sizes)``: each chain is ordered ``N^{k-1} h, ..., h``
    so that ``N V = V J_0`` with ones on the superdiagonal.
    """
    m = N.shape[0]
    powers = [np.eye(m, dtype=complex)]
    nullity = [0]
    nulls = [np.zeros((m, 0), dtype=complex)]
    while nullity[-1] < m:
        k = len(powers)
        if k > m:
            raise ClusterAmbiguity("cluster restriction is not nilpotent")
        Nk = powers[-1] @ N
        basis = _null_basis(Nk, rank_tol * scale ** k)
        powers.append(Nk)
        nulls.append(basis)
        nullity.append(basis.shape[1])
        if nullity[-1] <= nullity[-2]:
            raise ClusterAmbiguity("null spaces of powers stopped growing before the cluster was exhausted")
    kmax = len(nullity) - 1
    at_least = [0] + [nullity[k] - nullity[k - 1] for k in range(1, kmax + 1)] + [0]
    heads = []
    for k in range(kmax, 0, -1):
        count = at_least[k] - at_least[k + 1]
        if count < 0:
            raise ClusterAmbiguity("inconsistent Jordan staircase")
        if count == 0:
            continue
        existing = [np.linalg.matrix_power(N, s - k) @ h for h, s in heads]
        W = np.hstack([nulls[k - 1]] + [v[:, None] for v in existing]) if (nulls[k - 1].size or existing) else np.zeros((m, 0))
        K = nulls[k]
        if W.shape[1]:
            Wq, _ = np.linalg.qr(W)
            Kp = K - Wq @ (Wq.conj().T @ K)
        else:
            Kp = K
        _, _, vh = np.linalg.svd(Kp)
        picked = K @ vh[:count].conj().T
        for c in range(count):
            heads.append((picked[:, c], k))
    columns, sizes = [], []
    for h, k in heads:
        chain = [np.linalg.matrix_power(N, k - 1 - i) @ h for i in range(k)]
        columns.extend(chain)
        sizes.append(k)
    return np.column_stack(columns), sizes


def _snap(z, scale):
    re, im = z.real, z.imag
    if abs(im) <= 1e-12 * scale:
        im = 0.0
    if abs(re) <= 1e-12 * scale:
        re = 0.0
    return complex(re, im)


def _jordan_at_radius(A, ev, radius, scale, rank_tol):
    n = A.shape[0]
    labels = _cluster(ev, radius)
    groups = {}
    for z, lab in zip(ev, labels):
        groups.setdefault(lab, []).append(z)
    clusters = sorted(
        groups.values(),
        key=lambda g: (round(np.mean(g).real / scale, 7), np.mean(g).imag),
    )
    label_of = {}
    for c, g in enumerate(clusters):
        for z in g:
            label_of[z] = c
    ev_arr = np.array(ev)

    P_cols, blocks = [], []
    for c, g in enumerate(clusters):
        m = len(g)

        def select(x, c=c):
            return label_of[ev[int(np.argmin(np.abs(ev_arr - x)))]] == c

        T, Z, sdim = scipy.linalg.schur(A.astype(complex), output="complex", sort=select)
        if sdim != m:
            raise ClusterAmbiguity(f"Schur reordering found {sdim} eigenvalues for a cluster of {m}")
        T11 = T[:m, :m]
        lam = _snap(np.trace(T11) / m, scale)
        N = T11 - lam * np.eye(m)
        V, sizes = _nilpotent_chains(N, scale, rank_tol)
        P_cols.append(Z[:, :m] @ V)
        blocks.extend((lam, k) for k in sizes)
    P = np.hstack(P_cols)
    if P.shape != (n, n):
        raise ClusterAmbiguity("chain construction did not produce a square basis")
    return JordanForm(P, blocks)


def jordan_form(A, cluster_tol=CLUSTER_TOL, rank_tol=RANK_TOL, jordan_tol=JORDAN_TOL):
    """Numerical Jordan normal form ``A = P J P^{-1}``.

    Eigenvalue clusters are ordered by ``(Re, Im)``; blocks within a cluster
    by decreasing size.  When the first clustering radius
    ``cluster_tol * |A|_inf`` yields an ill-conditioned or inaccurate basis
    (a split defective eigenvalue), the radius is widened twice by a factor
    of ten before giving up with :class:`ClusterAmbiguity`.
    """
    A = _float(A)
    n = _check_square(A)
    if n > N_MAX:
        raise ValueError(f"order {n} exceeds the supported maximum {N_MAX}")
    if n == 0:
        return JordanForm(np.zeros((0, 0), dtype=complex), [])
    scale = max(_inf_norm(A), np.finfo(float).tiny)
    ev = list(np.linalg.eigvals(A).astype(complex))
    last_error = None
    for widen in (1, 10, 100):
        try:
            jf = _jordan_at_radius(A, ev, cluster_tol * widen * scale, scale, rank_tol)
        except ClusterAmbiguity as exc:
            last_error = exc
            continue
        if np.linalg.cond(jf.P) > 1e10:
            last_error = ClusterAmbiguity("Jordan basis is numerically singular")
            continue
        resid = _inf_norm(jf.reconstruct() - A)
        if resid <= jordan_tol * scale:
            return jf
        last_error = ClusterAmbiguity(f"Jordan reconstruction residual {resid:.2e}")
    raise last_error


# -- matrix square root ----------------------------------------------------

def _binom_half(k):
    """Binomial coefficient ``C(1/2, k)``."""
    c = 1.0
    for i in range(k):
        c *= (0.5 - i) / (i + 1)
    return c


def sqrt_jordan_block(lam, k, sign=1):
    """``f(J_k(lam))`` for the branch ``sign * half_plane_sqrt``.

    Upper-triangular Toeplitz with entries ``f^{(i)}(lam) / i!``.
    """
    s = sign * half_plane_sqrt(lam)
    F = np.zeros((k, k), dtype=complex)
    for i in range(k):
        F += _binom_half(i) * s / lam ** i * np.eye(k, k=i)
    return F


def sqrt_from_jordan(jf, signs=None, allow_zero=False):
    """Square root ``P f(J) P^{-1}`` choosing a branch per Jordan block.

    ``signs[b] = +1`` selects the half-plane root for block ``b``; ``-1`` its
    negative.  With ``allow_zero`` a 1x1 block at eigenvalue zero maps to zero.
    """
    signs = [1] * len(jf.blocks) if signs is None else list(signs)
    F_blocks = []
    for (lam, k), sgn in zip(jf.blocks, signs):
        if lam == 0:
            if not allow_zero:
                raise Singular("matrix has a zero eigenvalue")
            if k > 1:
                raise NilpotentBlock(f"zero eigenvalue with a Jordan block of size {k}")
            F_blocks.append(np.zeros((1, 1), dtype=complex))
        else:
            F_blocks.append(sqrt_jordan_block(lam, k, sgn))
    F = scipy.linalg.block_diag(*F_blocks)
    return jf.P @ F @ np.linalg.inv(jf.P)


def principal_sqrt(A, **jordan_kw):
    """Square root of an invertible matrix with every eigenvalue in the half-plane."""
    A = _float(A)
    n = _check_square(A)
    if n and rank(A) < n:
        raise Singular("principal_sqrt needs an invertible matrix")
    jf = jordan_form(A, **jordan_kw)
    return sqrt_from_jordan(jf)


def charpoly(A):
    """Characteristic polynomial coefficients (highest degree first)."""
    return np.poly(_float(A))


def is_invertible(A, tol=None):
    A = np.asarray(A)
    return rank(A, tol) == A.shape[0]
