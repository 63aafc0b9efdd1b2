"""Coverage checker for a classification of linear fractional transformations over the double numbers.

An LFT ``z -> (a z + b) / (c z + d)`` over the double numbers is a 2x2 double
matrix up to a non-zero-divisor scalar.  Write ``T = U S V^*`` with ``U``,
``V`` unitary ("motions").  The classical classification allows ``S`` to be
one of four axial-inversion families.  By the Jordan SVD, ``U S V^*`` and
``S`` share the middle factor ``[J, J]``, so coverage reduces to comparing
Jordan invariants.

Scaling ``M`` by a double scalar ``(p, q)`` scales ``J`` by ``sqrt(p q)``.  A
diagonal invariant ``diag(l1, l2)`` is therefore determined by
``w = (l1 / l2)**2`` up to ``w <-> 1/w`` (squaring absorbs the sign of each
square root).  Against the four families:

1. ``[[0, -k], [1, 0]]``                   -> ``diag(|k|, 1)``: ``w`` real positive
2. ``[[j, -1], [3, j]]``                   -> ``J_2(2)``, a single matrix
3. ``[[(1-a) j, 1+a], [-(1+a), (1-a) j]]`` -> ``diag(z, conj z)``: ``|w| = 1``
4. ``[[0, k j], [1, 0]]``                  -> ``diag(1, i k)``: ``w`` real negative

A scaled Jordan block ``c J_2(mu)`` is not a Jordan matrix, so the second
family covers the literal invariant ``J_2(2)`` and nothing else.  In
particular ``[J_2(1), J_2(1)]`` is not covered.  The replacement family
``[[k, 1+j], [1-j, k]]`` is ``[A, A]`` with ``A = [[k, 2], [0, k]]``, whose
invariant is ``J_2(|k|)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParam, Singular
from .jordan_svd import jordan_svd
from .matrices import DoubleMatrix
from .real_linalg import in_half_plane
from .scalars import DoubleScalar

#: Tolerance on eigenvalue ratios when matching invariants.
MATCH_TOL = 1e-6

KINDS = ("First", "Second", "Third", "Fourth")


@dataclass(frozen=True)
class InversionSpec:
    """One member of an axial-inversion family: ``kind`` plus its parameter."""

    kind: str
    param: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParam(f"unknown inversion kind {self.kind!r}")
        if self.kind == "Second":
            if self.param is not None:
                raise InvalidParam("the second kind is a single matrix and takes no parameter")
        elif self.param is None or not math.isfinite(self.param):
            raise InvalidParam(f"{self.kind} needs a finite real parameter")
        if self.kind == "Third" and self.param < 0:
            raise InvalidParam(f"Third needs alpha >= 0, got {self.param}")

    @classmethod
    def first(cls, k):
        return cls("First", k)

    @classmethod
    def second(cls):
        return cls("Second")

    @classmethod
    def third(cls, alpha):
        return cls("Third", alpha)

    @classmethod
    def fourth(cls, k):
        return cls("Fourth", k)

    def __str__(self):
        if self.kind == "Second":
            return "Second"
        name = "alpha" if self.kind == "Third" else "k"
        return f"{self.kind}({name}={self.param:g})"


def inversion_matrix(spec):
    """The literal 2x2 double matrix of an axial inversion."""
    j = DoubleScalar(0, 1)
    if spec.kind == "First":
        rows = [[0, -spec.param], [1, 0]]
    elif spec.kind == "Second":
        rows = [[j, -1], [3, j]]
    elif spec.kind == "Third":
        a = spec.param
        rows = [[(1 - a) * j, 1 + a], [-(1 + a), (1 - a) * j]]
    else:
        rows = [[0, spec.param * j], [1, 0]]
    return DoubleMatrix.from_scalars(rows)


def proposed_matrix(k):
    """Member ``[[k, 1+j], [1-j, k]]`` of the replacement for the second family."""
    return DoubleMatrix.from_scalars([[k, DoubleScalar(1, 1)], [DoubleScalar(1, -1), k]])


@dataclass
class JInvariant:
    """Jordan invariant of a 2x2 double matrix.

    ``blocks`` is the half-plane Jordan structure of the middle factor.
    ``normalized`` fixes the projective scale of a diagonal invariant (first
    eigenvalue 1).  ``w`` is the squared eigenvalue ratio, the projective
    invariant of a diagonal ``J``; it is ``None`` for a single 2x2 block.
    """

    blocks: list
    normalized: list
    w: complex | None = None

    @property
    def is_diagonal(self):
        return self.w is not None

    def matches(self, other, tol=MATCH_TOL):
        if self.is_diagonal != other.is_diagonal:
            return False
        if self.is_diagonal:
            return _same_ratio(self.w, other.w, tol)
        return abs(self.blocks[0][0] - other.blocks[0][0]) <= tol * max(1.0, abs(self.blocks[0][0]))

    def describe(self):
        if not self.is_diagonal:
            lam = self.blocks[0][0]
            return f"J_2({_fmt_complex(lam)})"
        return "diag({})".format(", ".join(_fmt_complex(lam) for lam, _ in self.blocks))

    def as_dict(self):
        return {
            "blocks": [[_complex_pair(lam), k] for lam, k in self.blocks],
            "normalized": [[_complex_pair(lam), k] for lam, k in self.normalized],
            "w": None if self.w is None else _complex_pair(self.w),
            "text": self.describe(),
        }


def _clean(x, scale=1.0):
    x = complex(x)
    re = 0.0 if abs(x.real) <= 1e-12 * scale else x.real
    im = 0.0 if abs(x.imag) <= 1e-12 * scale else x.imag
    return complex(re, im)


def _complex_pair(x):
    x = complex(x)
    return [float(f"{x.real:.12g}"), float(f"{x.imag:.12g}")]


def _fmt_complex(x):
    x = complex(x)
    if x.imag == 0:
        return f"{x.real:.6g}"
    if x.real == 0:
        return f"{x.imag:.6g}i"
    return f"{x.real:.6g}{x.imag:+.6g}i"


def _same_ratio(w1, w2, tol):
    # invariant up to w <-> 1/w
    return abs(w1 - w2) <= tol * max(1.0, abs(w2)) or abs(w1 * w2 - 1) <= tol * max(1.0, abs(w1 * w2))


def jordan_invariant(S):
    """Projective Jordan invariant of the middle factor of ``S``'s Jordan SVD."""
    if S.shape != (2, 2):
        raise ValueError(f"LFT matrices are 2x2, got {S.shape}")
    s = jordan_svd(S.complexify())
    blocks = [(_clean(lam, max(1.0, abs(lam))), k) for lam, k in s.blocks]
    if len(blocks) == 1:
        return JInvariant(blocks, list(blocks), None)
    (l1, _), (l2, _) = blocks
    if l1 == 0 or l2 == 0:
        raise Singular("zero eigenvalue in the Jordan invariant")
    r = l2 / l1
    r = r if in_half_plane(r) else -r
    w = _clean((l1 / l2) ** 2, max(1.0, abs((l1 / l2) ** 2)))
    return JInvariant(blocks, [(1 + 0j, 1), (_clean(r), 1)], w)


def _family_kinds(inv, tol):
    kinds = []
    if inv.is_diagonal:
        w = inv.w
        real = abs(w.imag) <= tol * max(1.0, abs(w))
        if real and w.real > 0:
            kinds.append("First")
        if abs(abs(w) - 1) <= tol:
            kinds.append("Third")
        if real and w.real < 0:
            kinds.append("Fourth")
    else:
        lam = inv.blocks[0][0]
        if abs(lam - 2) <= tol * 2:
            kinds.append("Second")
    return sorted(kinds, key=KINDS.index)


@dataclass
class Verdict:
    covered: bool
    kind: str | None
    kinds: tuple = ()
    invariant: JInvariant | None = field(default=None, repr=False)

    def __str__(self):
        return f"Covered({self.kind})" if self.covered else "NotCovered"


def classify(M, tol=MATCH_TOL):
    """Which axial-inversion family (if any) has the same Jordan invariant as ``M``.

    ``kind`` is the first match in the order First, Second, Third, Fourth;
    ``kinds`` lists every match (the families overlap, e.g. ``Third(1)`` and
    ``First(1)``).
    """
    inv = jordan_invariant(M)
    kinds = tuple(_family_kinds(inv, tol))
    return Verdict(bool(kinds), kinds[0] if kinds else None, kinds, inv)


def proposed_family_covers(M, tol=MATCH_TOL):
    """Coverage when the second family is replaced by ``[[k, 1+j], [1-j, k]]``, ``k`` real.

    The replacement's invariants are exactly ``J_2(c)`` for real ``c > 0``.
    """
    inv = jordan_invariant(M)
    if inv.is_diagonal:
        return bool(_family_kinds(inv, tol))
    lam = inv.blocks[0][0]
    return abs(lam.imag) <= tol * max(1.0, abs(lam)) and lam.real > 0


def counterexample():
    """``[J_2(1), J_2(1)]``, i.e. the LFT ``(2z + (1+j)) / ((1-j) z + 2)`` up to scale."""
    J0 = np.array([[1, 1], [0, 1]])
    return DoubleMatrix(J0, J0.copy())


#: Representative parameters shown by :func:`demo`.
DEMO_SPECS = (
    InversionSpec.first(3),
    InversionSpec.second(),
    InversionSpec.third(0.5),
    InversionSpec.fourth(1),
)


def third_kind_eigenvalues(alpha):
    """Closed-form Jordan eigenvalues of the third family (half-plane roots)."""
    z1 = cmath.sqrt(-2j * alpha**2 + 4 * alpha + 2j)
    z2 = cmath.sqrt(2j * alpha**2 + 4 * alpha - 2j)
    return z1, z2


def demo():
    """Invariants of the four families, then the counterexample.

    Returns a JSON-ready dict; :func:`format_demo` renders it as text.
    """
    families = []
    for spec in DEMO_SPECS:
        inv = jordan_invariant(inversion_matrix(spec))
        families.append({"family": str(spec), "invariant": inv.as_dict()})
    M = counterexample()
    verdict = classify(M)
    return {
        "families": families,
        "counterexample": {
            "matrix": "[J_2(1), J_2(1)]",
            "invariant": verdict.invariant.as_dict(),
            "verdict": str(verdict),
            "proposed_covers": proposed_family_covers(M),
        },
    }


def format_demo(result):
    lines = ["Jordan invariants of the axial-inversion families:"]
    for fam in result["families"]:
        lines.append(f"  {fam['family']:<16} J = {fam['invariant']['text']}")
    ce = result["counterexample"]
    lines.append(f"Counterexample {ce['matrix']}: J = {ce['invariant']['text']}")
    lines.append(f"  classification: {ce['verdict']}")
    lines.append(f"  covered by [[k, 1+j], [1-j, k]] family: {ce['proposed_covers']}")
    return "\n".join(lines)
