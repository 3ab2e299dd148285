"""Exact scalars: complex rationals and pi-graded surd multiples.

Two scalar types carry all bit-exact identities in this package:

* ``ExactComplex`` -- a complex number with rational real and imaginary
  parts, a field.
* ``PiScalar`` -- a value of the form ``coef * sqrt(root) * pi**(pihalf/2)``
  with ``coef`` an ExactComplex, ``root`` a squarefree positive integer and
  ``pihalf`` an integer.  Values of equal grade (same root and pihalf) form
  a module over the complex rationals; products are always defined.  This is
  exactly what is needed for quantities like 2*pi, pi/2, pi**3, 1/sqrt(2*pi).

Arithmetic against ``float``/``complex`` degrades to floating point, so the
exact types can be dropped into numeric code without ceremony.
"""
from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["ExactComplex", "PiScalar", "PI", "as_exact"]


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected a rational value, got {type(x).__name__}")


def _square_split(n: int) -> tuple[int, int]:
    """Return (s, r) with n = s*s*r and r squarefree, for n > 0."""
    s, r, p = 1, n, 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            s *= p
        p += 1 if p == 2 else 2
    return s, r


class ExactComplex:
    """Complex number with rational parts; supports exact field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _fraction(re))
        object.__setattr__(self, "im", _fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("ExactComplex is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def coerce(x) -> "ExactComplex":
        if isinstance(x, ExactComplex):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactComplex(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactComplex")

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- ring/field ops ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactComplex(other)
        if isinstance(other, ExactComplex):
            return ExactComplex(self.re + other.re, self.im + other.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, ExactComplex)):
            return self + (-ExactComplex.coerce(other))
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactComplex(other) - self
        if isinstance(other, (float, complex)):
            return other - complex(self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactComplex(self.re * other, self.im * other)
        if isinstance(other, ExactComplex):
            return ExactComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return ExactComplex(self.re / other, self.im / other)
        if isinstance(other, ExactComplex):
            d = other.abs2()
            if not d:
                raise ZeroDivisionError("division by zero")
            return (self * other.conj()) / d
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactComplex(other) / self
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out, base = ExactComplex(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ----------------------------------------------------------

    def conj(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    # -- conversions ---------------------------------------------------------

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __float__(self) -> float:
        if self.im:
            raise ValueError("not a real value")
        return float(self.re)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactComplex(other)
        if isinstance(other, ExactComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return f"ExactComplex({self.re})"
        return f"ExactComplex({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = ExactComplex(0)
ONE = ExactComplex(1)
I = ExactComplex(0, 1)


def as_exact(x) -> ExactComplex:
    """Coerce ints, Fractions, strings "p/q" and ExactComplex to ExactComplex."""
    if isinstance(x, str):
        return ExactComplex(Fraction(x))
    return ExactComplex.coerce(x)


class PiScalar:
    """``coef * sqrt(root) * pi**(pihalf/2)`` in canonical form.

    Addition requires equal grade (root, pihalf); multiplication and division
    are total.  ``sqrt`` is defined for nonnegative real values with root 1
    and even pihalf, which covers every norm arising here.
    """

    __slots__ = ("coef", "root", "pihalf")

    def __init__(self, coef=0, root: int = 1, pihalf: int = 0):
        if not isinstance(coef, ExactComplex):
            coef = ExactComplex.coerce(coef)
        if not isinstance(root, int) or root <= 0:
            raise ValueError("root must be a positive integer")
        if coef.is_zero():
            root, pihalf = 1, 0
        else:
            s, root = _square_split(root)
            coef = coef * s
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "pihalf", pihalf)

    def __setattr__(self, *a):
        raise AttributeError("PiScalar is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def coerce(x) -> "PiScalar":
        if isinstance(x, PiScalar):
            return x
        if isinstance(x, (int, Fraction, ExactComplex)):
            return PiScalar(ExactComplex.coerce(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to PiScalar")

    @staticmethod
    def pi(power: int = 1) -> "PiScalar":
        return PiScalar(1, 1, 2 * power)

    # -- predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.coef.is_zero()

    def is_real(self) -> bool:
        return self.coef.is_real()

    def is_rational(self) -> bool:
        """True if the value lies in Q (grade zero and real)."""
        return self.root == 1 and self.pihalf == 0 and self.coef.is_real()

    def as_fraction(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coef.re

    def __bool__(self):
        return not self.is_zero()

    # -- ring ops -----------------------------------------------------------------

    def _compatible(self, other: "PiScalar"):
        if self.is_zero() or other.is_zero():
            return
        if self.root != other.root or self.pihalf != other.pihalf:
            raise ValueError(
                f"cannot add pi-scalars of different grade: {self} vs {other}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction, ExactComplex)):
            other = PiScalar.coerce(other)
        if isinstance(other, PiScalar):
            self._compatible(other)
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            return PiScalar(self.coef + other.coef, self.root, self.pihalf)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return PiScalar(-self.coef, self.root, self.pihalf)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, ExactComplex, PiScalar)):
            return self + (-PiScalar.coerce(other))
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction, ExactComplex)):
            return PiScalar.coerce(other) - self
        if isinstance(other, (float, complex)):
            return other - complex(self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactComplex)):
            return PiScalar(self.coef * other, self.root, self.pihalf)
        if isinstance(other, PiScalar):
            return PiScalar(
                self.coef * other.coef,
                self.root * other.root,
                self.pihalf + other.pihalf,
            )
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, ExactComplex)):
            return PiScalar(self.coef / ExactComplex.coerce(other), self.root, self.pihalf)
        if isinstance(other, PiScalar):
            if other.is_zero():
                raise ZeroDivisionError("division by zero")
            # 1/sqrt(r) = sqrt(r)/r
            coef = self.coef / (other.coef * other.root)
            return PiScalar(coef, self.root * other.root, self.pihalf - other.pihalf)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, ExactComplex)):
            return PiScalar.coerce(other) / self
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def conj(self) -> "PiScalar":
        return PiScalar(self.coef.conj(), self.root, self.pihalf)

    def abs2(self) -> "PiScalar":
        return PiScalar(self.coef.abs2() * self.root, 1, 2 * self.pihalf)

    def sqrt(self) -> "PiScalar":
        """Exact square root of a nonnegative rational multiple of pi**m."""
        if self.is_zero():
            return PiScalar(0)
        if not self.coef.is_real() or self.coef.re < 0:
            raise ValueError("sqrt requires a nonnegative real pi-scalar")
        if self.root != 1 or self.pihalf % 2:
            raise ValueError(f"sqrt of {self} is outside the pi-surd carrier")
        q = self.coef.re
        s, r = _square_split(q.numerator * q.denominator)
        return PiScalar(Fraction(s, q.denominator), r, self.pihalf // 2)

    # -- conversions ---------------------------------------------------------------

    def __float__(self) -> float:
        if not self.coef.is_real():
            raise ValueError("not a real value")
        return float(self.coef.re) * math.sqrt(self.root) * math.pi ** (self.pihalf / 2)

    def __complex__(self) -> complex:
        scale = math.sqrt(self.root) * math.pi ** (self.pihalf / 2)
        return complex(self.coef) * scale

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ExactComplex)):
            other = PiScalar.coerce(other)
        if isinstance(other, PiScalar):
            return (
                self.coef == other.coef
                and self.root == other.root
                and self.pihalf == other.pihalf
            )
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coef)
        return hash((self.coef, self.root, self.pihalf))

    def __repr__(self):
        return f"PiScalar({self.coef!r}, root={self.root}, pihalf={self.pihalf})"

    def __str__(self):
        parts = [str(self.coef) if self.coef != 1 or (self.root == 1 and not self.pihalf) else ""]
        if self.root != 1:
            parts.append(f"sqrt({self.root})")
        if self.pihalf:
            parts.append("pi" if self.pihalf == 2 else f"pi^({self.pihalf}/2)")
        return "*".join(p for p in parts if p) or "1"


PI = PiScalar.pi()
