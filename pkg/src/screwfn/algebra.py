"""Polynomial, rational-function and 2x2 matrix-polynomial arithmetic.

Coefficients are ExactComplex (exact mode), PiScalar (pi-graded exact mode)
or plain complex (float mode); the mode is inferred on construction and
mixed inputs degrade exactly once, never silently per-operation.  Root
finding is the only intrinsically floating-point operation: companion-matrix
eigenvalues polished by Newton iteration.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import ExactComplex, PiScalar

__all__ = [
    "Polynomial",
    "RationalFunction",
    "MatrixPolynomial",
    "PartialFractions",
    "poly_eval",
    "sharp",
    "ab_split",
    "roots",
    "rational_roots",
    "hb_test",
    "partial_fractions",
    "solve_exact",
]


def _promote(coeffs):
    """Normalize a coefficient list to a single scalar mode."""
    cs = list(coeffs)
    if any(isinstance(c, (float, complex)) for c in cs):
        return [complex(c) for c in cs], "float"
    if any(isinstance(c, PiScalar) for c in cs):
        return [PiScalar.coerce(c) for c in cs], "pi"
    return [ExactComplex.coerce(c) for c in cs], "exact"


def _is_zero_scalar(c) -> bool:
    if isinstance(c, (ExactComplex, PiScalar)):
        return c.is_zero()
    return c == 0


class Polynomial:
    """Polynomial stored by ascending-degree coefficients, trailing zeros stripped."""

    __slots__ = ("coeffs", "mode")

    def __init__(self, coeffs=()):
        cs, mode = _promote(coeffs)
        while cs and _is_zero_scalar(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *a):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial((1,))

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial((0, 1))

    @staticmethod
    def monomial(k: int, coeff=1) -> "Polynomial":
        return Polynomial((0,) * k + (coeff,))

    # -- basic structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        if self.mode == "float":
            return 0j
        if self.mode == "pi":
            return PiScalar(0)
        return ExactComplex(0)

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero() or other.is_zero():
                return Polynomial.zero()
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Polynomial(out)
        return Polynomial([c * other for c in self.coeffs])

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, scalar):
        return Polynomial([c / scalar for c in self.coeffs])

    def __pow__(self, n: int):
        out, base = Polynomial.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    # -- evaluation -----------------------------------------------------------

    def __call__(self, z):
        """Horner evaluation; exact when coefficients and z are exact."""
        if isinstance(z, (float, complex)) or self.mode == "float":
            zc = complex(z)
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * zc + complex(c)
            return acc
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        if isinstance(acc, int):
            acc = ExactComplex(acc)
        return acc

    # -- calculus ---------------------------------------------------------------

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Polynomial":
        prepend = [0j] if self.mode == "float" else [ExactComplex(0)]
        return Polynomial(prepend + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def integrate(self, a, b):
        """Definite integral over [a, b]; exact for exact bounds."""
        F = self.antiderivative()
        return F(b) - F(a)

    # -- transforms ----------------------------------------------------------------

    def conj_coeffs(self) -> "Polynomial":
        return Polynomial([c.conj() if hasattr(c, "conj") else c.conjugate() for c in self.coeffs])

    def reflect(self) -> "Polynomial":
        """p(-z)."""
        return Polynomial([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def is_even(self) -> bool:
        return self.reflect() == self

    def is_odd(self) -> bool:
        return self.reflect() == -self

    def is_real(self) -> bool:
        return all(
            c.is_real() if isinstance(c, (ExactComplex, PiScalar)) else c.imag == 0
            for c in self.coeffs
        )

    def even_part_coeffs(self) -> "Polynomial":
        """q with p(z) = q(z^2) + z*r(z^2); returns q."""
        return Polynomial(self.coeffs[0::2])

    def odd_part_coeffs(self) -> "Polynomial":
        """r with p(z) = q(z^2) + z*r(z^2); returns r."""
        return Polynomial(self.coeffs[1::2])

    # -- division (field coefficients) ------------------------------------------------

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.mode == "pi" or other.mode == "pi":
            raise TypeError("division not supported for pi-graded coefficients")
        if self.mode == "float" or other.mode == "float":
            q, r = np.polydiv(
                np.array([complex(c) for c in reversed(self.coeffs)] or [0j]),
                np.array([complex(c) for c in reversed(other.coeffs)]),
            )
            return Polynomial(list(q[::-1])), Polynomial(list(r[::-1]))
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.coeffs[-1]
        quot = [ExactComplex(0)] * max(len(rem) - dd, 0)
        while len(rem) - 1 >= dd and rem:
            k = len(rem) - 1 - dd
            c = rem[-1] / lead
            quot[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
            while rem and _is_zero_scalar(rem[-1]):
                rem.pop()
        return Polynomial(quot), Polynomial(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self / self.leading()

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd over the exact complex rationals."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    # -- display -------------------------------------------------------------------------

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if _is_zero_scalar(c):
                continue
            cs = str(c)
            if k == 0:
                terms.append(cs)
            elif k == 1:
                terms.append(f"({cs})*z")
            else:
                terms.append(f"({cs})*z^{k}")
        return " + ".join(terms)


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial([x])


def poly_eval(p: Polynomial, z, mode: str = "exact"):
    """Evaluate p at z.  mode="exact" demands exact inputs; "float" coerces."""
    if mode == "float":
        return p(complex(z))
    if mode == "exact":
        if isinstance(z, (float, complex)):
            raise TypeError("exact evaluation requires an exact argument")
        return p(ExactComplex.coerce(z) if isinstance(z, (int, Fraction)) else z)
    raise ValueError(f"unknown mode {mode!r}")


def sharp(p: Polynomial) -> Polynomial:
    """p#(z) = conj(p(conj z)): coefficient-wise conjugation."""
    return p.conj_coeffs()


def ab_split(E: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Split E = A - iB into real polynomials A = (E+E#)/2, B = i(E-E#)/2."""
    Es = sharp(E)
    A = (E + Es) / ExactComplex(2)
    B = (E - Es) / ExactComplex(2) * ExactComplex(0, 1)
    return A, B


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------

def roots(p: Polynomial, tol: float = 1e-12) -> list[complex]:
    """All roots with multiplicity: companion-matrix eigenvalues + Newton polish."""
    if p.degree < 1:
        raise ValueError("no roots: polynomial must have degree >= 1")
    desc = np.array([complex(c) for c in reversed(p.coeffs)])
    raw = np.roots(desc)
    dp = p.derivative()
    scale = max(abs(complex(c)) for c in p.coeffs)
    polished = []
    for a in raw:
        a = complex(a)
        for _ in range(60):
            fa = p(a)
            if abs(fa) <= 0.5 * tol * scale:
                break
            da = dp(a)
            if da == 0:
                break
            step = fa / da
            a -= step
            if abs(step) < 1e-17 * max(1.0, abs(a)):
                break
        polished.append(a)
    bad = [a for a in polished if abs(p(a)) >= tol * scale]
    if bad:
        raise RuntimeError(f"root polishing failed to reach residual {tol}: {bad}")
    return polished


def rational_roots(p: Polynomial) -> tuple[list[Fraction], Polynomial]:
    """Exact rational roots (with multiplicity) of a real-rational polynomial.

    Returns (roots, remainder) with p = remainder * prod(z - r); the remainder
    has no rational roots.  Falls back to no extraction for complex input.
    """
    if p.is_zero() or not p.is_real():
        return [], p
    found: list[Fraction] = []
    cur = p
    # factor out z^k
    while not cur.is_zero() and _is_zero_scalar(cur.coeffs[0]):
        found.append(Fraction(0))
        cur = Polynomial(cur.coeffs[1:])
    while cur.degree >= 1:
        den_lcm = 1
        for c in cur.coeffs:
            den_lcm = den_lcm * c.re.denominator // math.gcd(den_lcm, c.re.denominator)
        ints = [int(c.re * den_lcm) for c in cur.coeffs]
        a0, an = abs(ints[0]), abs(ints[-1])
        if a0 == 0 or a0 > 10**12 or an > 10**12:
            break
        hit = None
        for pnum in _divisors(a0):
            for qden in _divisors(an):
                for sgn in (1, -1):
                    cand = Fraction(sgn * pnum, qden)
                    if cur(ExactComplex(cand)).is_zero():
                        hit = cand
                        break
                if hit is not None:
                    break
            if hit is not None:
                break
        if hit is None:
            break
        found.append(hit)
        cur = cur.divmod(Polynomial([-hit, 1]))[0]
    return found, cur


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def hb_test(E: Polynomial, tol: float = 1e-12) -> bool:
    """True iff every root of E lies strictly in the open lower half-plane."""
    if E.degree < 1:
        raise ValueError("hb_test requires degree >= 1")
    return all(a.imag < -tol for a in roots(E, tol=min(tol, 1e-12)))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Reduced num/den.  Exact mode keeps den monic after gcd reduction."""

    __slots__ = ("num", "den", "mode")

    def __init__(self, num, den=Polynomial((1,)), reduce: bool = True):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        mode = "float" if "float" in (num.mode, den.mode) else "exact"
        if mode == "exact" and reduce:
            g = num.gcd(den)
            if not g.is_zero() and g.degree >= 1:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead = den.leading()
            num, den = num / lead, den / lead
        elif mode == "float":
            lead = den.leading()
            num, den = num / lead, den / lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _binop(self, other, f):
        other = other if isinstance(other, RationalFunction) else RationalFunction(_as_poly(other))
        return f(other)

    def __add__(self, other):
        return self._binop(
            other,
            lambda o: RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self._binop(other, lambda o: self + (-o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self._binop(other, lambda o: RationalFunction(self.num * o.num, self.den * o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = other if isinstance(other, RationalFunction) else RationalFunction(_as_poly(other))
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_odd(self) -> bool:
        """Q(-z) == -Q(z), exactly."""
        return self.num.reflect() * self.den == -(self.den.reflect() * self.num)

    def is_real(self) -> bool:
        return self.num.is_real() and self.den.is_real()

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        return f"({self.num}) / ({self.den})"


@dataclass(frozen=True)
class PartialFractions:
    poles: list[complex]
    residues: list[complex]
    polynomial_part: Polynomial


def partial_fractions(r: RationalFunction, tol: float = 1e-12) -> PartialFractions:
    """Decompose r = polynomial_part + sum residue_k/(z - pole_k), simple poles only."""
    quot, rem = r.num.divmod(r.den)
    if r.den.degree < 1:
        return PartialFractions([], [], quot)
    if r.mode == "exact" and r.den.gcd(r.den.derivative()).degree >= 1:
        raise ValueError("unsupported multiplicity: poles must be simple")
    poles = roots(r.den, tol=tol)
    for i in range(len(poles)):
        for j in range(i + 1, len(poles)):
            if abs(poles[i] - poles[j]) < 1e-6:
                raise ValueError("unsupported multiplicity: poles must be simple")
    dden = r.den.derivative()
    residues = [complex(rem(a)) / complex(dden(a)) for a in poles]
    return PartialFractions(poles, residues, quot)


# ---------------------------------------------------------------------------
# 2x2 matrix polynomials
# ---------------------------------------------------------------------------

class MatrixPolynomial:
    """2x2 matrix with Polynomial entries."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(_as_poly(e) for e in row) for row in entries)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("expected a 2x2 entry array")
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, *a):
        raise AttributeError("MatrixPolynomial is immutable")

    @staticmethod
    def identity() -> "MatrixPolynomial":
        return MatrixPolynomial([[Polynomial.one(), Polynomial.zero()],
                                 [Polynomial.zero(), Polynomial.one()]])

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    @property
    def degree(self) -> int:
        return max(e.degree for row in self.entries for e in row)

    def __mul__(self, other):
        if isinstance(other, MatrixPolynomial):
            a, b = self.entries, other.entries
            return MatrixPolynomial(
                [
                    [
                        a[i][0] * b[0][j] + a[i][1] * b[1][j]
                        for j in range(2)
                    ]
                    for i in range(2)
                ]
            )
        return MatrixPolynomial([[e * other for e in row] for row in self.entries])

    __rmul__ = __mul__

    def __add__(self, other):
        return MatrixPolynomial(
            [[self.entries[i][j] + other.entries[i][j] for j in range(2)] for i in range(2)]
        )

    def __sub__(self, other):
        return MatrixPolynomial(
            [[self.entries[i][j] - other.entries[i][j] for j in range(2)] for i in range(2)]
        )

    def det(self) -> Polynomial:
        a, b = self.entries[0]
        c, d = self.entries[1]
        return a * d - b * c

    def __call__(self, z):
        return [[e(z) for e in row] for row in self.entries]

    def coeff_matrix(self, k: int):
        """2x2 scalar matrix of the z^k coefficients."""
        return [[self.entries[i][j].coeff(k) for j in range(2)] for i in range(2)]

    def __eq__(self, other):
        if not isinstance(other, MatrixPolynomial):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"MatrixPolynomial({[[str(e) for e in row] for row in self.entries]})"


def matpoly_mul(a: MatrixPolynomial, b: MatrixPolynomial) -> MatrixPolynomial:
    return a * b


def matpoly_det(a: MatrixPolynomial) -> Polynomial:
    return a.det()


def matpoly_eval(a: MatrixPolynomial, z):
    return a(z)


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Solve an (possibly overdetermined) rational linear system exactly.

    Returns (solution, status) with status one of "unique", "inconsistent",
    "underdetermined"; solution is None unless status == "unique".
    """
    m, n = len(rows), len(rows[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        scale = aug[r][col]
        aug[r] = [x / scale for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n]:
            return None, "inconsistent"
    if len(pivots) < n:
        return None, "underdetermined"
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = aug[i][n]
    return sol, "unique"
