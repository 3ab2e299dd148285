"""Transfer matrices, their rank-one factorization and canonical systems.

A transfer matrix W(z) = [[A,B],[C,D]] of real polynomials with W(0) = I,
det W = 1 and the J-contractivity sample conditions factors as a product of
elementary factors I - z M_k J with M_k real symmetric PSD of rank one.
Peeling the factors off the right (using (MJ)^2 = 0, so (I - zMJ)^{-1} is
I + zMJ) yields the step Hamiltonian whose fundamental solution restores
W exactly: segment k has length alpha_k + gamma_k and direction given by
the normalized projector M_k/(alpha_k + gamma_k).

All factorization arithmetic is exact rational; only the J-contractivity
inequalities are sampled in floating point.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import MatrixPolynomial, Polynomial, solve_exact
from .exact import ExactComplex

__all__ = [
    "TransferMatrix",
    "ElementaryFactor",
    "Segment",
    "Hamiltonian",
    "ValidationReport",
    "validate_transfer",
    "bezout_complete",
    "peel_factor",
    "factorize",
    "fundamental_solution",
    "solution_rows_affine",
    "regular_points",
    "subspace_chain",
    "ChainEntry",
    "w0_matrix",
]


def w0_matrix() -> MatrixPolynomial:
    """The worked-example transfer matrix [[1-2z^2, 4z], [z^3-z, 1-2z^2]]."""
    return MatrixPolynomial(
        [
            [Polynomial([1, 0, -2]), Polynomial([0, 4])],
            [Polynomial([0, -1, 0, 1]), Polynomial([1, 0, -2])],
        ]
    )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[str, ...]


def validate_transfer(W: MatrixPolynomial, samples: int = 40, seed: int = 0,
                      tol: float = 1e-10) -> ValidationReport:
    """Exact checks W(0)=I and det W=1, plus sampled J-contractivity bounds."""
    failures = []
    w0 = W.coeff_matrix(0)
    ident = [[ExactComplex(1), ExactComplex(0)], [ExactComplex(0), ExactComplex(1)]]
    if [[w0[i][j] for j in range(2)] for i in range(2)] != ident:
        failures.append("W(0) != I")
    if W.det() != Polynomial.one():
        failures.append("det W != 1")
    rng = random.Random(seed)
    A, B = W.entries[0]
    C, D = W.entries[1]
    for _ in range(samples):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3))
        a, b = complex(A(z)), complex(B(z))
        c, d = complex(C(z)), complex(D(z))
        if (a * d.conjugate() - b * c.conjugate()).real < 1 - tol:
            failures.append(f"Re[A conj(D) - B conj(C)] < 1 at z={z}")
            break
    for _ in range(samples):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3))
        a, b = complex(A(z)), complex(B(z))
        c, d = complex(C(z)), complex(D(z))
        twoi = z - z.conjugate()
        if ((b * a.conjugate() - a * b.conjugate()) / twoi).real < -tol:
            failures.append(f"(B conj(A) - A conj(B))/(z - conj z) < 0 at z={z}")
            break
        if ((d * c.conjugate() - c * d.conjugate()) / twoi).real < -tol:
            failures.append(f"(D conj(C) - C conj(D))/(z - conj z) < 0 at z={z}")
            break
    return ValidationReport(not failures, tuple(failures))


@dataclass(frozen=True)
class TransferMatrix:
    """A validated J-inner matrix polynomial."""

    W: MatrixPolynomial

    @staticmethod
    def from_matrix(W: MatrixPolynomial, samples: int = 40, seed: int = 0) -> "TransferMatrix":
        report = validate_transfer(W, samples=samples, seed=seed)
        if not report.ok:
            raise ValueError("not a transfer matrix: " + "; ".join(report.failures))
        return TransferMatrix(W)


def _xgcd(a: Polynomial, b: Polynomial):
    """Extended Euclid: (g, u, v) with u*a + v*b = g."""
    r0, r1 = a, b
    u0, u1 = Polynomial.one(), Polynomial.zero()
    v0, v1 = Polynomial.zero(), Polynomial.one()
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return r0, u0, v0


def bezout_complete(
    C: Polynomial, D: Polynomial, validate: bool = True
) -> tuple[Polynomial, Polynomial]:
    """Minimal-degree real (A, B) with A*D - B*C = 1 completing a transfer matrix.

    Requires C odd, D even (both real) and gcd(C, D) constant; the completed
    matrix [[A,B],[C,D]] must pass the J-inner sample checks unless
    validate=False, which returns the bare extended-Euclid solution.  Pairs
    whose ratio D/C is not Herglotz have no J-inner completion at all, so the
    error is surfaced rather than searching the solution family.
    """
    if not (C.is_real() and C.is_odd()):
        raise ValueError("C must be a real odd polynomial")
    if not (D.is_real() and D.is_even()):
        raise ValueError("D must be a real even polynomial")
    g, u, v = _xgcd(D, C)
    if g.degree != 0:
        raise ValueError("C, D not coprime")
    u, v = u / g.leading(), v / g.leading()
    # general solution (u + pC, v - pD); reduce u below deg C
    if C.degree >= 1 and u.degree >= C.degree:
        p, u = u.divmod(C)
        v = v + p * D
    A = u
    B = -v
    check = A * D - B * C
    if check != Polynomial.one():
        raise ValueError("Bezout completion failed to satisfy A*D - B*C = 1")
    if C.degree >= 1 and not (A.degree < C.degree and B.degree < D.degree):
        raise ValueError("no minimal-degree completion exists")
    if validate:
        W = MatrixPolynomial([[A, B], [C, D]])
        report = validate_transfer(W)
        if not report.ok:
            raise ValueError("completion not J-inner: " + "; ".join(report.failures))
    return A, B


@dataclass(frozen=True)
class ElementaryFactor:
    """Real symmetric PSD rank-one matrix [[alpha, beta], [beta, gamma]]."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        if self.alpha < 0 or self.gamma < 0 or self.alpha * self.gamma != self.beta**2:
            raise ValueError("elementary factor must be PSD with zero determinant")
        if self.alpha == 0 and self.gamma == 0:
            raise ValueError("elementary factor must be nonzero")

    @property
    def trace(self) -> Fraction:
        return self.alpha + self.gamma

    def matrix_j(self):
        """M J as a rational 2x2 matrix, J = [[0,-1],[1,0]]."""
        return [[self.beta, -self.alpha], [self.gamma, -self.beta]]


def _real_fraction(x: ExactComplex) -> Fraction:
    if not x.is_real():
        raise ValueError("matrix is not real")
    return x.re


def peel_factor(W: MatrixPolynomial) -> tuple[MatrixPolynomial, ElementaryFactor]:
    """Strip the rightmost elementary factor: W = V * (I - z M J), deg V = deg W - 1."""
    r = W.degree
    if r < 1:
        raise ValueError("nothing to peel: degree must be >= 1")
    try:
        Wr = [[_real_fraction(x) for x in row] for row in W.coeff_matrix(r)]
        Wr1 = [[_real_fraction(x) for x in row] for row in W.coeff_matrix(r - 1)]
    except ValueError as exc:
        raise ValueError(f"not factorable: {exc}") from exc
    # unknowns (alpha, beta, gamma) through X = MJ = [[beta,-alpha],[gamma,-beta]]
    rows, rhs = [], []
    for i in range(2):
        # (Wk * X)[i][0] = Wk[i][0]*beta + Wk[i][1]*gamma
        # (Wk * X)[i][1] = -Wk[i][0]*alpha - Wk[i][1]*beta
        rows.append([Fraction(0), Wr1[i][0], Wr1[i][1]])
        rhs.append(-Wr[i][0])
        rows.append([-Wr1[i][0], -Wr1[i][1], Fraction(0)])
        rhs.append(-Wr[i][1])
        rows.append([Fraction(0), Wr[i][0], Wr[i][1]])
        rhs.append(Fraction(0))
        rows.append([-Wr[i][0], -Wr[i][1], Fraction(0)])
        rhs.append(Fraction(0))
    sol, status = solve_exact(rows, rhs)
    if status == "inconsistent":
        raise ValueError("not factorable: matrix is not of canonical-product form")
    if status == "underdetermined":
        raise ValueError("not factorable: ambiguous elementary factor")
    alpha, beta, gamma = sol
    try:
        M = ElementaryFactor(alpha, beta, gamma)
    except ValueError as exc:
        raise ValueError(f"not factorable: {exc}") from exc
    inv = MatrixPolynomial(
        [
            [Polynomial([1, beta]), Polynomial([0, -alpha])],
            [Polynomial([0, gamma]), Polynomial([1, -beta])],
        ]
    )
    V = W * inv
    if V.degree != r - 1:
        raise ValueError("not factorable: degree did not drop after peeling")
    return V, M


@dataclass(frozen=True)
class Segment:
    """Indivisible interval: exact length and normalized rank-one direction."""

    length: Fraction
    proj: tuple[Fraction, Fraction, Fraction]  # (cos^2, cos*sin, sin^2)
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        pa, pb, pc = self.proj
        if self.length <= 0:
            raise ValueError("segment length must be positive")
        if pa + pc != 1 or pa < 0 or pc < 0 or pa * pc != pb**2:
            raise ValueError("segment direction must be a rank-one projector")

    @property
    def theta(self) -> float:
        pa, pb, pc = self.proj
        if pc == 0:
            return 0.0
        if pa == 0:
            return math.pi / 2
        t = math.atan2(math.sqrt(float(pc)), math.sqrt(float(pa)))
        return t if pb > 0 else math.pi - t

    def matrix(self):
        pa, pb, pc = self.proj
        return [[pa, pb], [pb, pc]]


class Hamiltonian:
    """Ordered list of indivisible segments with exact breakpoints."""

    __slots__ = ("segments", "breakpoints")

    def __init__(self, segments):
        segs = tuple(segments)
        for s1, s2 in zip(segs, segs[1:]):
            if s1.proj == s2.proj:
                raise ValueError("adjacent segments must have distinct types")
        bps = [Fraction(0)]
        for s in segs:
            bps.append(bps[-1] + s.length)
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "breakpoints", tuple(bps))

    def __setattr__(self, *a):
        raise AttributeError("Hamiltonian is immutable")

    def __len__(self):
        return len(self.segments)

    @property
    def total_length(self) -> Fraction:
        return self.breakpoints[-1]

    def trace_integral(self) -> Fraction:
        """Integral of tr H; finite means limit circle at both endpoints."""
        return sum((s.length * (s.proj[0] + s.proj[2]) for s in self.segments), Fraction(0))

    def segment_at(self, t: Fraction) -> int:
        if not 0 <= t <= self.total_length:
            raise ValueError(f"t={t} outside [0, {self.total_length}]")
        for k in range(len(self.segments)):
            if t <= self.breakpoints[k + 1]:
                return k
        return len(self.segments) - 1

    def __eq__(self, other):
        if not isinstance(other, Hamiltonian):
            return NotImplemented
        return self.segments == other.segments

    def __repr__(self):
        body = ", ".join(f"({s.length}, theta={s.theta:.6g})" for s in self.segments)
        return f"Hamiltonian([{body}])"


def factorize(W: MatrixPolynomial, samples: int = 40, seed: int = 0) -> Hamiltonian:
    """Full rank-one factorization of a transfer matrix into its step Hamiltonian."""
    report = validate_transfer(W, samples=samples, seed=seed)
    if not report.ok:
        raise ValueError("not a transfer matrix: " + "; ".join(report.failures))
    factors = []
    V = W
    while V.degree >= 1:
        V, M = peel_factor(V)
        factors.append(M)
    if V != MatrixPolynomial.identity():
        raise ValueError("not factorable: residual matrix is not the identity")
    factors.reverse()
    for prev, cur in zip(factors, factors[1:]):
        sep = cur.alpha * prev.gamma + cur.gamma * prev.alpha - 2 * cur.beta * prev.beta
        if sep <= 0:
            raise ValueError("consecutive factors of equal type")
    segments = []
    for M in factors:
        tr = M.trace
        segments.append(Segment(tr, (M.alpha / tr, M.beta / tr, M.gamma / tr)))
    return Hamiltonian(segments)


def _as_time(t) -> Fraction:
    if isinstance(t, Fraction):
        return t
    if isinstance(t, int):
        return Fraction(t)
    if isinstance(t, float):
        return Fraction(t)
    raise TypeError(f"unsupported time value {t!r}")


def _segment_factor(seg: Segment, delta: Fraction) -> MatrixPolynomial:
    """I - z*delta*P*J for the segment's normalized projector P."""
    pa, pb, pc = seg.proj
    return MatrixPolynomial(
        [
            [Polynomial([1, -delta * pb]), Polynomial([0, delta * pa])],
            [Polynomial([0, -delta * pc]), Polynomial([1, delta * pb])],
        ]
    )


def fundamental_solution(H: Hamiltonian, t, z=None):
    """W(t, z) with W(0, z) = I; symbolic in z when z is None.

    Piecewise product of the segment factors; exact matrix polynomial for
    exact t, coefficient-wise.
    """
    tf = _as_time(t)
    if not 0 <= tf <= H.total_length:
        raise ValueError(f"t={t} outside [0, {H.total_length}]")
    W = MatrixPolynomial.identity()
    for k, seg in enumerate(H.segments):
        lo, hi = H.breakpoints[k], H.breakpoints[k + 1]
        if tf <= lo:
            break
        delta = min(tf, hi) - lo
        W = W * _segment_factor(seg, delta)
    if z is None:
        return W
    if isinstance(z, (int, Fraction)):
        z = ExactComplex(z)
    return W(z)


def solution_rows_affine(H: Hamiltonian, row: str = "bottom"):
    """Per-segment affine representation of a solution row.

    Returns a list of ((R0_first, R0_second), (R1_first, R1_second)) with

        row(t, z) = R0(z) + (t - t_{k-1}) * R1(z)   on segment k,

    R0 the row of W(t_{k-1}, z) and R1 = -z * R0 * P_k J.  The bottom row is
    the (C, D) pair used by the worked example's Weyl transform; "top" gives
    (A, B).
    """
    idx = 0 if row == "top" else 1
    out = []
    W = MatrixPolynomial.identity()
    zpoly = Polynomial.x()
    for seg in H.segments:
        r0 = (W.entries[idx][0], W.entries[idx][1])
        pa, pb, pc = seg.proj
        # R1 = -z * (R0 . P J) with PJ = [[pb, -pa], [pc, -pb]]
        r1_first = -(r0[0] * pb + r0[1] * pc) * zpoly
        r1_second = (r0[0] * pa + r0[1] * pb) * zpoly
        out.append((r0, (r1_first, r1_second)))
        W = W * _segment_factor(seg, seg.length)
    return out


def regular_points(H: Hamiltonian) -> list[Fraction]:
    """Segment breakpoints: the points not interior to an indivisible interval."""
    return list(H.breakpoints)


@dataclass(frozen=True)
class ChainEntry:
    t: Fraction
    E: Polynomial
    dim: int


def subspace_chain(H: Hamiltonian) -> list[ChainEntry]:
    """The de Branges subspace chain E(t, z) = C(t, z) - i D(t, z) at regular points."""
    out = []
    for t in H.breakpoints:
        W = fundamental_solution(H, t)
        C, D = W.entries[1]
        E = C - D * ExactComplex(0, 1)
        out.append(ChainEntry(t, E, max(E.degree, 0)))
    return out
