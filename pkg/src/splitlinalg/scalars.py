"""Double numbers ``a + bj`` (j**2 = +1) and double-complex numbers (tessarines).

Both types share one implementation: the coefficients may be real or complex,
and every operation is carried out on the pair of coordinates.  The
idempotent basis ``e = (1+j)/2``, ``e* = (1-j)/2`` turns multiplication into a
componentwise product::

    a + bj = p e + q e*,   p = a + b,  q = a - b

Conjugation negates the j-part and therefore swaps ``p`` and ``q``.  It never
conjugates complex coefficients.
"""

from __future__ import annotations

import cmath
import math
import numbers
import re
import sys
from dataclasses import dataclass

from .errors import DomainError, ZeroDivisor

#: Absolute tolerance on idempotent components for zero-divisor detection.
ZERO_DIVISOR_TOL = 1e-12


def _is_complex(x):
    return isinstance(x, complex) or (
        isinstance(x, numbers.Complex) and not isinstance(x, numbers.Real)
    )


def _make(a, b):
    if _is_complex(a) or _is_complex(b):
        return DoubleComplexScalar(complex(a), complex(b))
    return DoubleScalar(a, b)


def _coerce(x):
    if isinstance(x, DoubleScalar):
        return x
    if isinstance(x, numbers.Number):
        return _make(x, 0 * x)
    return None


@dataclass(frozen=True, eq=False)
class DoubleScalar:
    """The double number ``a + b j``."""

    a: numbers.Number = 0
    b: numbers.Number = 0

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    # -- idempotent view -------------------------------------------------
    @property
    def p(self):
        """Coefficient of ``e = (1+j)/2``."""
        return self.a + self.b

    @property
    def q(self):
        """Coefficient of ``e* = (1-j)/2``."""
        return self.a - self.b

    def idempotent(self):
        return self.p, self.q

    @classmethod
    def from_idempotent(cls, p, q):
        if isinstance(p, numbers.Integral) and isinstance(q, numbers.Integral) and (p + q) % 2 == 0:
            return _make((p + q) // 2, (p - q) // 2)
        return _make((p + q) / 2, (p - q) / 2)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _make(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _make(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return _make(-self.a, -self.b)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _make(self.a * other.a + self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        return DoubleScalar.from_idempotent(self.p ** n, self.q ** n)

    def conj(self):
        return _make(self.a, -self.b)

    def is_zero_divisor(self, tol=ZERO_DIVISOR_TOL):
        """True for 0 and for every nonzero element with a vanishing component."""
        return abs(self.p) <= tol or abs(self.q) <= tol

    def inv(self, tol=ZERO_DIVISOR_TOL):
        p, q = self.idempotent()
        if abs(p) <= tol or abs(q) <= tol:
            raise ZeroDivisor(f"{self} is a zero divisor")
        return DoubleScalar.from_idempotent(1 / p, 1 / q)

    def __abs__(self):
        return scabs(self)

    def __str__(self):
        return format_scalar(self)


class DoubleComplexScalar(DoubleScalar):
    """The double-complex number ``w + z j`` with complex ``w`` and ``z``."""

    def __init__(self, w=0j, z=0j):
        super().__init__(complex(w), complex(z))

    @property
    def w(self):
        return self.a

    @property
    def z(self):
        return self.b

    def __repr__(self):
        return f"DoubleComplexScalar(w={self.a!r}, z={self.b!r})"


#: The unit ``j`` and the idempotents ``e``, ``e*``.
j = DoubleScalar(0, 1)
e = DoubleScalar(0.5, 0.5)
e_star = DoubleScalar(0.5, -0.5)


def mul(x, y):
    return _coerce(x) * _coerce(y)


def inv(x, tol=ZERO_DIVISOR_TOL):
    return _coerce(x).inv(tol)


def conj(x):
    return _coerce(x).conj()


def idempotent(x):
    """Return ``(p, q)`` with ``x = p e + q e*``."""
    return _coerce(x).idempotent()


def from_idempotent(p, q):
    return DoubleScalar.from_idempotent(p, q)


def scabs(x):
    """Split absolute value ``sqrt(|p| |q|)``; zero exactly on zero divisors."""
    p, q = _coerce(x).idempotent()
    p, q = abs(p), abs(q)
    prod = p * q
    lost = prod == 0 and p != 0 and q != 0
    if lost or 0 < prod < sys.float_info.min or math.isinf(prod):
        # the product under- or overflowed: take the roots separately
        return math.sqrt(p) * math.sqrt(q)
    return math.sqrt(prod)


def apply_analytic(f, x):
    """Lift a scalar function to double numbers by acting on each idempotent component.

    Equivalent to ``(f(a+b) + f(a-b))/2 + j (f(a+b) - f(a-b))/2``.
    """
    p, q = _coerce(x).idempotent()
    try:
        fp, fq = f(p), f(q)
    except (ValueError, ArithmeticError) as exc:
        raise DomainError(f"function undefined at a component of {x}: {exc}") from exc
    for v in (fp, fq):
        if isinstance(v, numbers.Number) and cmath.isnan(complex(v)):
            raise DomainError(f"function undefined at a component of {x}")
    return DoubleScalar.from_idempotent(fp, fq)


# -- text form -------------------------------------------------------------

def _fmt_real(x):
    if isinstance(x, numbers.Integral):
        return str(int(x))
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.12g}"


def _fmt_component(x):
    if _is_complex(x):
        x = complex(x)
        im = x.imag
        sign = "-" if im < 0 or (im == 0 and math.copysign(1, im) < 0) else "+"
        return f"({_fmt_real(x.real)}{sign}{_fmt_real(abs(im))}i)"
    return _fmt_real(x)


def format_scalar(x):
    """Render as ``a+bj`` / ``a-bj``; complex coefficients appear as ``(re+imi)``."""
    x = _coerce(x)
    a = _fmt_component(x.a)
    if _is_complex(x.b):
        return f"{a}+{_fmt_component(x.b)}j"
    b = x.b
    sign = "-" if b < 0 else "+"
    return f"{a}{sign}{_fmt_real(abs(b))}j"


_REAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")


def _parse_component(text):
    text = text.strip()
    sign = 1
    if text[:1] in "+-" and text[1:2] == "(":
        sign = -1 if text[0] == "-" else 1
        text = text[1:]
    if text.startswith("(") and text.endswith(")"):
        inner = text[1:-1].replace("i", "j")
        try:
            return sign * complex(inner)
        except ValueError:
            raise ValueError(f"bad complex component {text!r}") from None
    if not _REAL.match(text):
        raise ValueError(f"bad real component {text!r}")
    if re.fullmatch(r"[+-]?\d+", text):
        return int(text)
    return float(text)


def parse_scalar(text):
    """Parse the grammar produced by :func:`format_scalar`.

    Also accepts the short forms ``3``, ``j``, ``-j`` and ``2j``.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith("j"):
        return _coerce(_parse_component(s))
    body = s[:-1]
    split, depth = None, 0
    for k, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and k > 0 and body[k - 1] not in "eE(":
            split = k
    if split is None:
        a_text, b_text = "", body
    else:
        a_text, b_text = body[:split], body[split:]
    a = _parse_component(a_text) if a_text else 0
    if b_text in ("", "+"):
        b = 1
    elif b_text == "-":
        b = -1
    else:
        b = _parse_component(b_text)
    return _make(a, b)
