"""Discrete measures, Nevanlinna functions and meromorphic inner functions.

The correspondence chain implemented here, for rational data:

    measure tau  <-->  Q(z) = a z + b + sum m*(1/(g-z) - g/(1+g^2))
    Q  <-->  Theta = (i-Q)/(i+Q)          (Cayley pair)
    Theta = E#/E with E Hermite-Biehler   (when Theta is rational inner)
    level set {A=0} with masses 2*pi/|Theta'|, and tau = mu/pi.

Measures with rational support and pi-rational masses are kept exact;
irrational support degrades to floating point per point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Polynomial,
    RationalFunction,
    ab_split,
    hb_test,
    rational_roots,
    roots,
    sharp,
)
from .exact import PI, ExactComplex, PiScalar

__all__ = [
    "DiscreteMeasure",
    "NevanlinnaData",
    "q_from_measure",
    "measure_from_q",
    "cayley_q_to_theta",
    "cayley_theta_to_q",
    "theta_to_e",
    "level_set_masses",
    "tau_from_mu",
]

_IMAG_POLE_TOL = 1e-9


def _point_float(p) -> float:
    return float(p)


class DiscreteMeasure:
    """Finitely many support points with positive masses.

    Points are Fractions (exact) or floats; masses are PiScalars (exact,
    possibly pi-graded) or floats.  Points are stored strictly increasing.
    """

    __slots__ = ("points", "masses")

    def __init__(self, points, masses):
        pts = list(points)
        ms = list(masses)
        if len(pts) != len(ms):
            raise ValueError("points and masses must have equal length")
        pairs = sorted(zip(pts, ms), key=lambda pm: _point_float(pm[0]))
        for (p1, _), (p2, _) in zip(pairs, pairs[1:]):
            if _point_float(p1) == _point_float(p2):
                raise ValueError("support points must be distinct")
        norm_pts, norm_ms = [], []
        for p, m in pairs:
            if isinstance(p, int):
                p = Fraction(p)
            if not isinstance(p, (Fraction, float)):
                raise TypeError(f"unsupported point type {type(p).__name__}")
            if isinstance(m, (int, Fraction, ExactComplex)):
                m = PiScalar.coerce(m)
            if isinstance(m, PiScalar):
                if not m.is_real() or not (m.coef.re > 0):
                    raise ValueError("masses must be positive")
            elif isinstance(m, float):
                if not m > 0:
                    raise ValueError("masses must be positive")
            else:
                raise TypeError(f"unsupported mass type {type(m).__name__}")
            norm_pts.append(p)
            norm_ms.append(m)
        object.__setattr__(self, "points", tuple(norm_pts))
        object.__setattr__(self, "masses", tuple(norm_ms))

    def __setattr__(self, *a):
        raise AttributeError("DiscreteMeasure is immutable")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(zip(self.points, self.masses))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.points) and all(
            isinstance(m, PiScalar) for m in self.masses
        )

    def float_points(self) -> list[float]:
        return [_point_float(p) for p in self.points]

    def float_masses(self) -> list[float]:
        return [float(m) for m in self.masses]

    def mass_at(self, point):
        for p, m in self:
            if isinstance(p, Fraction) and isinstance(point, (int, Fraction)):
                if p == point:
                    return m
            elif _point_float(p) == _point_float(point):
                return m
        raise KeyError(f"no mass at {point}")

    def scale(self, factor) -> "DiscreteMeasure":
        return DiscreteMeasure(self.points, [m * factor for m in self.masses])

    def total_mass(self):
        if not self.masses:
            return PiScalar(0)
        acc = self.masses[0]
        for m in self.masses[1:]:
            acc = acc + m
        return acc

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return self.points == other.points and self.masses == other.masses

    def __repr__(self):
        body = ", ".join(f"{p}: {m}" for p, m in self)
        return f"DiscreteMeasure({{{body}}})"


@dataclass(frozen=True)
class NevanlinnaData:
    """Herglotz representation data: Q(z) = a z + b + integral term over the measure."""

    a: Fraction | float
    b: Fraction | float
    measure: DiscreteMeasure

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("linear coefficient a must be nonnegative")


def q_from_measure(d: NevanlinnaData) -> RationalFunction:
    """Assemble Q(z) = a z + b + sum m*(1/(g-z) - g/(1+g^2)) exactly."""
    if not d.measure.is_exact:
        raise TypeError("q_from_measure requires an exact measure")
    a = Fraction(d.a) if not isinstance(d.a, Fraction) else d.a
    b = Fraction(d.b) if not isinstance(d.b, Fraction) else d.b
    q = RationalFunction(Polynomial([ExactComplex(b), ExactComplex(a)]))
    for g, m in d.measure:
        mf = m.as_fraction()
        term = RationalFunction(Polynomial([ExactComplex(mf)]), Polynomial([ExactComplex(g), ExactComplex(-1)]))
        shift = mf * g / (1 + g * g)
        q = q + term - RationalFunction(Polynomial([ExactComplex(shift)]))
    return q


def _herglotz_sample_check(Q: RationalFunction, samples: int = 24) -> None:
    import random

    rng = random.Random(0)
    for _ in range(samples):
        z = complex(rng.uniform(-4, 4), rng.uniform(0.2, 4))
        try:
            v = Q(z)
        except ZeroDivisionError:
            continue
        if v.imag < -1e-9:
            raise ValueError(f"not Herglotz: Im Q({z}) = {v.imag}")


def measure_from_q(Q: RationalFunction) -> NevanlinnaData:
    """Invert the Herglotz representation of a real rational Q with simple real poles.

    Masses are minus the residues; a is the degree-excess slope; b = Re Q(i).
    Exact whenever the poles are rational, floating point otherwise.
    """
    num, den = Q.num, Q.den
    if num.degree > den.degree + 1:
        raise ValueError("not Herglotz: growth exceeds a linear term")
    _herglotz_sample_check(Q)

    if Q.mode == "exact":
        a = ExactComplex(0)
        if num.degree == den.degree + 1:
            a = num.leading() / den.leading()
            if not a.is_real() or a.re < 0:
                raise ValueError("not Herglotz: leading behavior not a nonnegative real slope")
        rats, rest = rational_roots(den)
        if rest.degree < 1:
            if len(set(rats)) != len(rats):
                raise ValueError("not Herglotz: repeated pole")
            dden = den.derivative()
            pts, ms = [], []
            for g in rats:
                res = num(ExactComplex(g)) / dden(ExactComplex(g))
                mass = -res
                if not mass.is_real() or not (mass.re > 0):
                    raise ValueError(f"not Herglotz: extracted mass {mass} at {g} not positive")
                pts.append(g)
                ms.append(PiScalar(mass))
            qi = Q(ExactComplex(0, 1))
            b = qi.re
            data = NevanlinnaData(a.re, b, DiscreteMeasure(pts, ms))
            if q_from_measure(data) != Q:
                raise ValueError("not Herglotz: representation does not reconstruct Q")
            return data

    # floating-point fallback, also used for exact Q with irrational poles
    poles = roots(den) if den.degree >= 1 else []
    for p in poles:
        if abs(p.imag) > _IMAG_POLE_TOL:
            raise ValueError(f"not real-meromorphic Herglotz: pole at {p}")
    for i in range(len(poles)):
        for j in range(i + 1, len(poles)):
            if abs(poles[i] - poles[j]) < 1e-8:
                raise ValueError("not Herglotz: repeated pole")
    dden = den.derivative()
    pts, ms = [], []
    for p in poles:
        res = complex(num(p)) / complex(dden(p))
        mass = -res
        if abs(mass.imag) > 1e-9 or mass.real <= 0:
            raise ValueError(f"not Herglotz: extracted mass {mass} at {p.real} not positive")
        pts.append(p.real)
        ms.append(mass.real)
    af = 0.0
    if num.degree == den.degree + 1:
        lead = complex(num.leading()) / complex(den.leading())
        if abs(lead.imag) > 1e-9 or lead.real < 0:
            raise ValueError("not Herglotz: leading behavior not a nonnegative real slope")
        af = lead.real
    b = Q(1j).real
    return NevanlinnaData(af, b, DiscreteMeasure(pts, ms))


def cayley_q_to_theta(Q: RationalFunction) -> RationalFunction:
    """Theta = (i - Q)/(i + Q)."""
    i = ExactComplex(0, 1)
    num = Q.den * i - Q.num
    den = Q.den * i + Q.num
    if den.is_zero():
        raise ZeroDivisionError("degenerate Cayley transform: i + Q vanishes identically")
    return RationalFunction(num, den)


def cayley_theta_to_q(theta: RationalFunction) -> RationalFunction:
    """Q = i (1 - Theta)/(1 + Theta)."""
    i = ExactComplex(0, 1)
    num = (theta.den - theta.num) * i
    den = theta.den + theta.num
    if den.is_zero():
        raise ZeroDivisionError("degenerate Cayley transform: 1 + Theta vanishes identically")
    return RationalFunction(num, den)


def theta_to_e(theta: RationalFunction, tol: float = 1e-12) -> Polynomial:
    """Recover E with Theta = E#/E exactly, E in the Hermite-Biehler class.

    The stored denominator is monic, so the numerator equals sharp(den) only
    up to a unimodular constant c; the returned E is a unimodular multiple of
    the denominator chosen so the identity holds with no constant at all.
    """
    if theta.mode != "exact":
        raise TypeError("theta_to_e requires exact coefficients")
    num, den = theta.num, theta.den
    if den.degree == 0:
        if num.degree != 0:
            raise ValueError("not inner of HB form: degree mismatch")
        c = num.leading() / den.leading()
        if c * c.conj() != ExactComplex(1):
            raise ValueError("not inner of HB form: constant not unimodular")
        return Polynomial.one()
    if num.degree != den.degree:
        raise ValueError("not inner of HB form: degree mismatch")
    if not hb_test(den, tol=tol):
        raise ValueError("denominator not Hermite-Biehler")
    ds = sharp(den)
    c = num.leading() / ds.leading()
    if num != ds * c:
        raise ValueError("not inner of HB form: numerator is not unimodular * sharp(denominator)")
    if c * c.conj() != ExactComplex(1):
        raise ValueError("not inner of HB form: constant not unimodular")
    if c == ExactComplex(-1):
        return den * ExactComplex(0, 1)
    mu = ExactComplex(1) + c.conj()
    E = den * mu / (1 + c.re)
    return E


def level_set_masses(E: Polynomial, tol: float = 1e-12) -> DiscreteMeasure:
    """Masses 2*pi/|Theta'(g)| = pi*|B(g)/A'(g)| on the level set {A = 0}.

    Rational zeros of A get exact pi-rational masses; the rest are floats.
    """
    if E.degree < 1:
        raise ValueError("level_set_masses requires degree >= 1")
    if not hb_test(E, tol=tol):
        raise ValueError("E is not in the Hermite-Biehler class")
    A, B = ab_split(E)
    dA = A.derivative()
    if A.degree < 1:
        return DiscreteMeasure([], [])
    rats, rest = rational_roots(A)
    if len(set(rats)) != len(rats):
        raise ValueError("non-simple real zero of A")
    pts: list[Fraction | float] = []
    ms: list[PiScalar | float] = []
    for g in rats:
        ge = ExactComplex(g)
        d = dA(ge)
        if d.is_zero():
            raise ValueError("non-simple real zero of A")
        ratio = (B(ge) / d).re
        ms.append(PI * abs(ratio))
        pts.append(g)
    if rest.degree >= 1:
        for r in roots(rest, tol=max(tol, 1e-12)):
            if abs(r.imag) > _IMAG_POLE_TOL:
                # complex zeros of A are not level-set points
                continue
            x = r.real
            d = complex(dA(complex(x)))
            if abs(d) < 1e-12:
                raise ValueError("non-simple real zero of A")
            pts.append(x)
            ms.append(math.pi * abs(complex(B(complex(x))) / d))
    return DiscreteMeasure(pts, ms)


def tau_from_mu(mu: DiscreteMeasure) -> DiscreteMeasure:
    """tau = mu / pi."""
    ms = [m / PI if isinstance(m, PiScalar) else m / math.pi for m in mu.masses]
    return DiscreteMeasure(mu.points, ms)
