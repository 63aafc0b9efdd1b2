"""Double and double-complex matrices in the pair representation ``[A, B]``.

``[A, B]`` denotes ``A (1+j)/2 + B^T (1-j)/2``.  Entry ``(i, k)`` therefore has
idempotent components ``(A[i, k], B[k, i])``; note the transpose on ``B``.
With this convention::

    [A, B] + [C, D] = [A + C, B + D]
    [A, B] @ [C, D] = [A C, D B]
    [A, B]^*        = [B, A]

``B`` is stored exactly as it appears in ``[A, B]`` so these rules hold
literally.  Integer arrays stay integer, which keeps identity checks exact.
"""

from __future__ import annotations

import numbers

import numpy as np

from .errors import DimensionMismatch
from .scalars import DoubleScalar, _coerce

#: Default comparison tolerance (infinity norm).
TOL = 1e-9


def _as_array(x):
    arr = np.asarray(x)
    if arr.dtype == object:
        arr = arr.astype(complex)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
    return arr


def _item(x):
    return x.item() if hasattr(x, "item") else x


def inf_norm(X):
    X = np.asarray(X)
    if X.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(X), axis=1)))


class DoubleMatrix:
    """Matrix over the double (or double-complex) numbers, stored as ``[A, B]``."""

    __array_priority__ = 100

    def __init__(self, A, B):
        A = _as_array(A)
        B = _as_array(B)
        if A.shape != B.shape[::-1]:
            raise DimensionMismatch(f"[A, B] needs B of shape {A.shape[::-1]}, got {B.shape}")
        self.A = A
        self.B = B

    # -- construction ----------------------------------------------------
    @classmethod
    def from_entries(cls, P, Q):
        """Build from arrays of idempotent components ``P[i,k]``, ``Q[i,k]``."""
        return cls(P, np.asarray(Q).T)

    @classmethod
    def from_scalars(cls, rows):
        """Build from a nested list of :class:`DoubleScalar` (or plain numbers)."""
        cells = [[_coerce(x) for x in row] for row in rows]
        P = np.array([[c.p for c in row] for row in cells])
        Q = np.array([[c.q for c in row] for row in cells])
        return cls.from_entries(P, Q)

    @classmethod
    def identity(cls, n, dtype=int):
        eye = np.eye(n, dtype=dtype)
        return cls(eye, eye.copy())

    @classmethod
    def zeros(cls, n, m=None, dtype=float):
        m = n if m is None else m
        return cls(np.zeros((n, m), dtype=dtype), np.zeros((m, n), dtype=dtype))

    # -- views -----------------------------------------------------------
    @property
    def shape(self):
        return self.A.shape

    @property
    def dtype(self):
        return np.result_type(self.A, self.B)

    @property
    def is_complex(self):
        return np.iscomplexobj(self.A) or np.iscomplexobj(self.B)

    def entries(self):
        """Idempotent components of every entry as two arrays ``(P, Q)``."""
        return self.A, self.B.T

    def coordinates(self):
        """Arrays ``(a, b)`` with ``M[i,k] = a[i,k] + b[i,k] j``."""
        P, Q = self.entries()
        return (P + Q) / 2, (P - Q) / 2

    def components(self):
        return self.A, self.B

    def astype(self, dtype):
        return DoubleMatrix(self.A.astype(dtype), self.B.astype(dtype))

    def complexify(self):
        return self.astype(complex)

    def copy(self):
        return DoubleMatrix(self.A.copy(), self.B.copy())

    def __getitem__(self, key):
        if not (isinstance(key, tuple) and len(key) == 2):
            raise IndexError("DoubleMatrix needs a (row, column) index")
        r, c = key
        if isinstance(r, numbers.Integral) and isinstance(c, numbers.Integral):
            return DoubleScalar.from_idempotent(_item(self.A[r, c]), _item(self.B[c, r]))
        r = slice(r, r + 1) if isinstance(r, numbers.Integral) else r
        c = slice(c, c + 1) if isinstance(c, numbers.Integral) else c
        return DoubleMatrix(self.A[r, c], self.B[c, r])

    def column(self, k):
        return self[:, k]

    def as_scalars(self):
        n, m = self.shape
        return [[self[i, k] for k in range(m)] for i in range(n)]

    # -- arithmetic ------------------------------------------------------
    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        if not isinstance(other, DoubleMatrix):
            return NotImplemented
        self._check_same(other)
        return DoubleMatrix(self.A + other.A, self.B + other.B)

    def __sub__(self, other):
        if not isinstance(other, DoubleMatrix):
            return NotImplemented
        self._check_same(other)
        return DoubleMatrix(self.A - other.A, self.B - other.B)

    def __neg__(self):
        return DoubleMatrix(-self.A, -self.B)

    def __matmul__(self, other):
        if not isinstance(other, DoubleMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        # second component in reversed order
        return DoubleMatrix(self.A @ other.A, other.B @ self.B)

    def __mul__(self, s):
        s = _coerce(s)
        if s is None:
            return NotImplemented
        return DoubleMatrix(_item(s.p) * self.A, _item(s.q) * self.B)

    __rmul__ = __mul__

    def __truediv__(self, s):
        s = _coerce(s)
        if s is None:
            return NotImplemented
        return self * s.inv()

    @property
    def H(self):
        """Conjugate transpose ``[A, B]^* = [B, A]``."""
        return DoubleMatrix(self.B, self.A)

    @property
    def T(self):
        """Plain transpose (no conjugation)."""
        return DoubleMatrix(self.A.T, self.B.T)

    def inv(self):
        return DoubleMatrix(np.linalg.inv(self.A), np.linalg.inv(self.B))

    def norm(self):
        """Infinity norm of the pair: ``max(|A|_inf, |B|_inf)``."""
        return max(inf_norm(self.A), inf_norm(self.B))

    def allclose(self, other, tol=TOL):
        self._check_same(other)
        return (self - other).norm() <= tol

    def __eq__(self, other):
        if not isinstance(other, DoubleMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.A, other.A)
            and np.array_equal(self.B, other.B)
        )

    __hash__ = None

    def __repr__(self):
        return f"DoubleMatrix(A={self.A.tolist()!r}, B={self.B.tolist()!r})"


# -- constructors ----------------------------------------------------------

def pack(A, B):
    return DoubleMatrix(A, B)


def unpack(M):
    return M.A, M.B


def from_real(A):
    """Embed a real matrix as ``[A, A^T]``; every entry has zero j-part."""
    A = _as_array(A)
    return DoubleMatrix(A, A.T.copy())


def from_complex(A):
    A = _as_array(A).astype(complex)
    return DoubleMatrix(A, A.T.copy())


def block_diag(*blocks):
    from scipy.linalg import block_diag as _bd

    return DoubleMatrix(_bd(*[b.A for b in blocks]), _bd(*[b.B for b in blocks]))


def hstack(columns):
    """Concatenate double matrices side by side."""
    return DoubleMatrix(
        np.hstack([c.A for c in columns]), np.vstack([c.B for c in columns])
    )


def mul(M, N):
    return M @ N


def conj_transpose(M):
    return M.H


# -- families --------------------------------------------------------------

def _square(M):
    n, m = M.shape
    if n != m:
        raise DimensionMismatch(f"expected a square matrix, got {M.shape}")
    return n


def is_hermitian(M, tol=TOL):
    _square(M)
    return inf_norm(M.A - M.B) <= tol


def is_unitary(M, tol=TOL):
    n = _square(M)
    return inf_norm(M.B @ M.A - np.eye(n)) <= tol


def _lower(X, tol):
    return np.all(np.abs(np.triu(X, 1)) <= tol)


def _upper(X, tol):
    return np.all(np.abs(np.tril(X, -1)) <= tol)


def is_lower_tri(M, tol=TOL):
    """``[L, U]`` with ``L`` lower and ``U`` upper triangular."""
    _square(M)
    return bool(_lower(M.A, tol) and _upper(M.B, tol))


def is_upper_tri(M, tol=TOL):
    """``[U, L]`` with ``U`` upper and ``L`` lower triangular."""
    _square(M)
    return bool(_upper(M.A, tol) and _lower(M.B, tol))


def is_diagonal(M, tol=TOL):
    _square(M)
    return bool(
        _lower(M.A, tol) and _upper(M.A, tol) and _lower(M.B, tol) and _upper(M.B, tol)
    )


def is_real_embedded(M, tol=TOL):
    _square(M)
    return inf_norm(M.B - M.A.T) <= tol


# -- JSON matrix-pair format ------------------------------------------------

def _encode(X, complex_field):
    if complex_field:
        return [[[float(np.real(v)), float(np.imag(v))] for v in row] for row in X]
    cast = int if np.issubdtype(X.dtype, np.integer) else float
    return [[cast(v) for v in row] for row in X]


def _decode(rows, complex_field):
    if complex_field:
        return np.array([[complex(v[0], v[1]) if isinstance(v, list) else complex(v) for v in row] for row in rows])
    arr = np.array(rows)
    if arr.dtype == object or arr.ndim != 2:
        raise ValueError("real field matrix must be a rectangular array of numbers")
    return arr


def to_json_dict(M):
    field = "complex" if M.is_complex else "real"
    return {"field": field, "A": _encode(M.A, field == "complex"), "B": _encode(M.B, field == "complex")}


def from_json_dict(data):
    """Read ``{"field": "real"|"complex", "A": ..., "B": ...}``.

    A missing ``B`` defaults to ``A^T``, i.e. the real/complex embedding.
    """
    field = data.get("field", "real")
    if field not in ("real", "complex"):
        raise ValueError(f"unknown field {field!r}")
    if "A" not in data:
        raise ValueError("matrix pair needs an 'A' entry")
    A = _decode(data["A"], field == "complex")
    B = _decode(data["B"], field == "complex") if "B" in data else A.T.copy()
    return DoubleMatrix(A, B)
