"""De Branges spaces of polynomials.

For a Hermite-Biehler polynomial E of degree n the space is the set of
polynomials of degree < n with inner product

    <p, q> = sum over the level set {A = 0} of p(g) conj(q(g)) w(g),
    w(g) = mu(g) / |E(g)|^2,

the sampling form of the embedding into L^2(mu) via p -> p/E.  For the
worked cubic every |E(g)| equals 1 so w coincides with the raw level-set
masses; in general the |E|^2 weight is what makes the reproducing-kernel
identities below hold, and the moment table is built from w for the same
reason.

Inner products, moments, Hankel determinants, Gram-Schmidt bases and the
eigenbases of the self-adjoint extensions of multiplication by z are exact
(pi-graded surds) whenever the level set is rational; otherwise they run in
floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import Polynomial, hb_test, ab_split, rational_roots, roots
from .exact import ExactComplex, PiScalar
from .spectra import DiscreteMeasure, level_set_masses

__all__ = [
    "HermiteBiehlerFrame",
    "MomentTable",
    "Eigenbasis",
    "inner_product",
    "moments",
    "kernel_ab",
    "kernel_moment",
    "gram_schmidt_basis",
    "s_theta",
    "s_theta_in_space",
    "extension_eigenbasis",
    "sl2_transform",
    "boundary_value",
    "e0_frame",
]


@dataclass(frozen=True)
class HermiteBiehlerFrame:
    """A certified Hermite-Biehler polynomial with its split and level-set measure."""

    E: Polynomial
    A: Polynomial
    B: Polynomial
    mu: DiscreteMeasure

    @staticmethod
    def from_e(E: Polynomial, tol: float = 1e-12) -> "HermiteBiehlerFrame":
        if not hb_test(E, tol=tol):
            raise ValueError("E is not in the Hermite-Biehler class")
        A, B = ab_split(E)
        return HermiteBiehlerFrame(E, A, B, level_set_masses(E, tol=tol))

    @property
    def dim(self) -> int:
        return self.E.degree


def e0_frame() -> HermiteBiehlerFrame:
    """The worked example E(z) = z^3 + 2iz^2 - z - i."""
    i = ExactComplex(0, 1)
    E = Polynomial([-i, ExactComplex(-1), i * 2, ExactComplex(1)])
    return HermiteBiehlerFrame.from_e(E)


def _weights(frame: HermiteBiehlerFrame):
    """(point, mu(g)/|E(g)|^2) pairs; exact where the point is rational."""
    out = []
    for g, m in frame.mu:
        if isinstance(g, Fraction) and isinstance(m, PiScalar):
            e = frame.E(ExactComplex(g))
            out.append((g, m / e.abs2()))
        else:
            gf = float(g)
            out.append((gf, float(m) / abs(complex(frame.E(complex(gf)))) ** 2))
    return out


def inner_product(frame: HermiteBiehlerFrame, p: Polynomial, q: Polynomial):
    """<p, q> over the level set; exact PiScalar when all data is exact."""
    n = frame.dim
    if p.degree >= n or q.degree >= n:
        raise ValueError(f"not a member of H(E): degree must be < {n}")
    exact = frame.mu.is_exact and p.mode != "float" and q.mode != "float"
    if exact:
        total = PiScalar(0)
        for g, w in _weights(frame):
            ge = ExactComplex(g)
            total = total + p(ge) * q(ge).conj() * w
        return total
    total = 0j
    for g, w in _weights(frame):
        gf = complex(float(g))
        total += complex(p(gf)) * np.conj(complex(q(gf))) * float(w)
    return total


@dataclass(frozen=True)
class MomentTable:
    """Moments m_0..m_{2n-2} of the sampling weights and leading Hankel determinants."""

    moments: tuple
    hankel: tuple


def _det_fractions(M: list[list[Fraction]]) -> Fraction:
    n = len(M)
    M = [row[:] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] * inv
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def moments(frame: HermiteBiehlerFrame) -> MomentTable:
    n = frame.dim
    ws = _weights(frame)
    exact = all(isinstance(g, Fraction) for g, _ in ws)
    if exact:
        ms = []
        for k in range(2 * n - 1):
            acc = PiScalar(0)
            for g, w in ws:
                acc = acc + w * (g**k)
            ms.append(acc)
        hankels = []
        for k in range(n):
            mat = [[_pi_rational(ms[i + j]) for j in range(k + 1)] for i in range(k + 1)]
            hankels.append(PiScalar(_det_fractions(mat), 1, 2 * (k + 1)))
        return MomentTable(tuple(ms), tuple(hankels))
    ms = [sum(float(w) * float(g) ** k for g, w in ws) for k in range(2 * n - 1)]
    hankels = [
        float(np.linalg.det(np.array([[ms[i + j] for j in range(k + 1)] for i in range(k + 1)])))
        for k in range(n)
    ]
    return MomentTable(tuple(ms), tuple(hankels))


def _pi_rational(x: PiScalar) -> Fraction:
    """Coefficient of a grade-(pi) PiScalar, treating 0 as compatible."""
    if x.is_zero():
        return Fraction(0)
    if x.root != 1 or x.pihalf != 2 or not x.is_real():
        raise ValueError(f"expected a rational multiple of pi, got {x}")
    return x.coef.re


def kernel_ab(frame: HermiteBiehlerFrame, z: complex, w: complex) -> complex:
    """K(z,w) = (conj(A(z)) B(w) - A(w) conj(B(z))) / (pi (w - conj z))."""
    z, w = complex(z), complex(w)
    A, B = frame.A, frame.B
    az, bz = complex(A(z)), complex(B(z))
    denom = w - z.conjugate()
    if abs(denom) < 1e-13:
        dA, dB = A.derivative(), B.derivative()
        return (np.conj(az) * complex(dB(w)) - complex(dA(w)) * np.conj(bz)) / math.pi
    return (np.conj(az) * complex(B(w)) - complex(A(w)) * np.conj(bz)) / (math.pi * denom)


def kernel_moment(frame: HermiteBiehlerFrame, z: complex, w: complex) -> complex:
    """Bordered-determinant form of the reproducing kernel from the moment table."""
    n = frame.dim
    table = moments(frame)
    ms = [float(m) for m in table.moments]
    hn1 = float(table.hankel[n - 1])
    M = np.zeros((n + 1, n + 1), dtype=complex)
    M[0, 1:] = [complex(w) ** j for j in range(n)]
    for i in range(1, n + 1):
        M[i, 0] = np.conj(complex(z)) ** (i - 1)
        M[i, 1:] = ms[i - 1 : i - 1 + n]
    return complex(-np.linalg.det(M) / hn1)


def gram_schmidt_basis(frame: HermiteBiehlerFrame) -> list[Polynomial]:
    """Orthonormal basis of H(E) by the determinant form of Gram-Schmidt."""
    n = frame.dim
    monos = [Polynomial.monomial(k) for k in range(n)]
    gram = [[inner_product(frame, monos[i], monos[j]) for j in range(n)] for i in range(n)]
    if frame.mu.is_exact:
        C = [[_pi_rational(gram[i][j]) for j in range(n)] for i in range(n)]
        dets = [Fraction(1)]
        for k in range(1, n + 1):
            d = _det_fractions([row[:k] for row in C[:k]])
            if d <= 0:
                raise ValueError("Gram matrix is not positive definite")
            dets.append(d)
        basis = []
        for k in range(n):
            coeffs = []
            for j in range(k + 1):
                cols = [c for c in range(k + 1) if c != j]
                minor = [[C[r][c] for c in cols] for r in range(k)]
                mj = _det_fractions(minor) if k else Fraction(1)
                coeffs.append(PiScalar((-1) ** (k + j) * mj, 1, 2 * k))
            norm = PiScalar(dets[k] * dets[k + 1], 1, 2 * (2 * k + 1)).sqrt()
            basis.append(Polynomial([c / norm for c in coeffs]))
        return basis
    C = np.array([[complex(g).real for g in row] for row in gram])
    dets = [1.0] + [float(np.linalg.det(C[:k, :k])) for k in range(1, n + 1)]
    if any(d <= 0 for d in dets):
        raise ValueError("Gram matrix is not positive definite")
    basis = []
    for k in range(n):
        coeffs = []
        for j in range(k + 1):
            cols = [c for c in range(k + 1) if c != j]
            minor = C[np.ix_(range(k), cols)] if k else np.zeros((0, 0))
            mj = float(np.linalg.det(minor)) if k else 1.0
            coeffs.append((-1) ** (k + j) * mj)
        norm = math.sqrt(dets[k] * dets[k + 1])
        basis.append(Polynomial([complex(c / norm) for c in coeffs]))
    return basis


def _snap_trig(x: float):
    for target in (0, 1, -1):
        if abs(x - target) < 1e-15:
            return Fraction(target)
    return x


def _cos_sin(theta: float):
    return _snap_trig(math.cos(theta)), _snap_trig(math.sin(theta))


def s_theta(frame: HermiteBiehlerFrame, theta: float) -> Polynomial:
    """S_theta = e^{i theta} E - e^{-i theta} E#; exact at the axis angles."""
    c, s = _cos_sin(theta)
    from .algebra import sharp

    if isinstance(c, Fraction) and isinstance(s, Fraction):
        u = ExactComplex(c, s)
        return frame.E * u - sharp(frame.E) * u.conj()
    u = complex(c, s)
    return frame.E * u - sharp(frame.E) * np.conj(u)


def _s_theta_real(frame: HermiteBiehlerFrame, theta: float) -> Polynomial:
    """S_theta / (2i) = A sin(theta) - B cos(theta), a real polynomial."""
    c, s = _cos_sin(theta)
    return frame.A * s - frame.B * c


def _effective_degree(p: Polynomial) -> int:
    if p.mode != "float":
        return p.degree
    if p.is_zero():
        return -1
    scale = max(abs(complex(c)) for c in p.coeffs)
    deg = p.degree
    while deg >= 0 and abs(complex(p.coeffs[deg])) <= 1e-12 * scale:
        deg -= 1
    return deg


def s_theta_in_space(frame: HermiteBiehlerFrame, theta: float) -> bool:
    """S_theta lies in H(E) iff its degree drops below deg E; at most one theta."""
    return _effective_degree(_s_theta_real(frame, theta)) < frame.dim


@dataclass(frozen=True)
class Eigenbasis:
    eigenvalues: tuple
    eigenfunctions: tuple
    normalized: tuple


def extension_eigenbasis(frame: HermiteBiehlerFrame, theta: float) -> Eigenbasis:
    """Eigenbasis of the self-adjoint extension at angle theta.

    Eigenfunctions are (A sin - B cos)/(z - g) over the real zeros g; when
    S_theta itself lies in H(E) it is appended (eigenvalue None) so the
    output always spans the space.
    """
    P = _s_theta_real(frame, theta)
    in_space = _effective_degree(P) < frame.dim
    evs: list = []
    funcs: list[Polynomial] = []
    rats, rest = rational_roots(P)
    if len(set(rats)) != len(rats):
        raise ValueError("zeros of S_theta must be simple")
    for g in sorted(rats):
        evs.append(g)
        funcs.append(P.divmod(Polynomial([ExactComplex(-g), ExactComplex(1)]))[0])
    if rest.degree >= 1:
        for r in sorted(roots(rest), key=lambda v: v.real):
            if abs(r.imag) > 1e-9:
                raise ValueError(f"nonreal zero {r} of S_theta")
            evs.append(r.real)
            funcs.append(P.divmod(Polynomial([complex(-r.real), 1.0 + 0j]))[0])
    order = np.argsort([float(e) for e in evs])
    evs = [evs[i] for i in order]
    funcs = [funcs[i] for i in order]
    if in_space and not P.is_zero():
        evs.append(None)
        funcs.append(P)
    normalized = []
    for f in funcs:
        nrm2 = inner_product(frame, f, f)
        if isinstance(nrm2, PiScalar):
            normalized.append(f / nrm2.sqrt())
        else:
            normalized.append(f / math.sqrt(nrm2.real))
    return Eigenbasis(tuple(evs), tuple(funcs), tuple(normalized))


def boundary_value(frame: HermiteBiehlerFrame, f: Polynomial, x):
    """f(x)/E(x) on the real line; exact for rational x and exact f."""
    if isinstance(x, (int, Fraction)) and f.mode != "float":
        xe = ExactComplex(x)
        return f(xe) / frame.E(xe)
    xf = complex(float(x))
    return complex(f(xf)) / complex(frame.E(xf))


def sl2_transform(frame: HermiteBiehlerFrame, M) -> HermiteBiehlerFrame:
    """Apply M in SL2(Q) to (A, B); the reproducing kernel is unchanged."""
    rows = [[Fraction(M[i][j]) for j in range(2)] for i in range(2)]
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if det != 1:
        raise ValueError(f"matrix must have determinant 1 exactly, got {det}")
    A2 = frame.A * ExactComplex(rows[0][0]) + frame.B * ExactComplex(rows[0][1])
    B2 = frame.A * ExactComplex(rows[1][0]) + frame.B * ExactComplex(rows[1][1])
    E2 = A2 - B2 * ExactComplex(0, 1)
    return HermiteBiehlerFrame.from_e(E2)
