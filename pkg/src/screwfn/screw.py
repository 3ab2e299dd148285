"""Screw functions from spectral data and the Hilbert space they generate.

A screw function with discrete spectral data (g(0), drift c, measure tau)
evaluates as

    g(t) = g(0) + i c t - tau({0}) t^2/2
           + sum_{g != 0} m * [ (exp(i t g) - 1)/g^2 - i t / (g (1 + g^2)) ]

and induces the kernel G(t,s) = g(t-s) - g(t) - g(-s) + g(0), nonnegative
definite exactly when the data is admissible.  Compactly supported test
functions with vanishing integral embed isometrically into L^2(tau) via

    Phi1(phi, z) = integral phi(t) (exp(izt) - 1)/z dt,

which is the identity every quadrature check below exercises.

Test functions are uniform-grid sampled; all their integrals use composite
Simpson rule, so quadrature-limited identities hold to ~1e-8 on smooth data
while measure-side sums are exact up to the same sampling error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .algebra import RationalFunction
from .spectra import DiscreteMeasure

__all__ = [
    "ScrewFunctionData",
    "TestFunction",
    "eval_screw",
    "kernel_g",
    "chord_length",
    "pd_check",
    "PdReport",
    "phi1",
    "inner_product_Hg",
    "InnerProductComparison",
    "laplace_check",
    "g0_data",
    "random_test_function",
    "aligned_test_function",
]

MIN_GRID = 513  # composite Simpson needs an odd point count; >= 512 samples


@dataclass(frozen=True)
class ScrewFunctionData:
    """A screw function given by g(0), a real drift and a discrete spectral measure."""

    g0: float | Fraction
    c: float | Fraction
    tau: DiscreteMeasure

    def mass_at_zero(self) -> float:
        for p, m in self.tau:
            if float(p) == 0.0:
                return float(m)
        return 0.0


def g0_data() -> ScrewFunctionData:
    """The data of g(t) = -t^2/2 + cos(t) - 1: unit mass at 0, half masses at +-1."""
    tau = DiscreteMeasure(
        [Fraction(-1), Fraction(0), Fraction(1)],
        [Fraction(1, 2), Fraction(1), Fraction(1, 2)],
    )
    return ScrewFunctionData(Fraction(0), Fraction(0), tau)


def eval_screw(g: ScrewFunctionData, t):
    """Evaluate g at t (scalar or ndarray); complex valued."""
    t = np.asarray(t, dtype=float)
    out = np.full(t.shape, complex(float(g.g0)), dtype=complex)
    out += 1j * float(g.c) * t
    for p, m in g.tau:
        gamma, mass = float(p), float(m)
        if gamma == 0.0:
            out -= mass * t * t / 2.0
        else:
            out += mass * (
                (np.exp(1j * t * gamma) - 1.0) / gamma**2
                - 1j * t / (gamma * (1.0 + gamma**2))
            )
    return out if out.shape else complex(out)


def kernel_g(g: ScrewFunctionData, t, s):
    """G(t,s) = g(t-s) - g(t) - g(-s) + g(0); supports broadcasting."""
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    val = eval_screw(g, t - s) - eval_screw(g, t) - eval_screw(g, -s) + complex(float(g.g0))
    return val if np.ndim(val) else complex(val)


def chord_length(g: ScrewFunctionData, t: float) -> float:
    """sqrt(G(t,t)), the chordal length of the associated screw line."""
    d = kernel_g(g, t, t)
    if d.real < -1e-10:
        raise ValueError(f"kernel not nonnegative at t={t}: G(t,t)={d.real}")
    return math.sqrt(max(d.real, 0.0))


@dataclass(frozen=True)
class PdReport:
    min_eigenvalue: float
    passed: bool


def pd_check(g: ScrewFunctionData, grid, tol: float = 1e-9) -> PdReport:
    """Minimum eigenvalue of the Hermitian part of [G(t_i, t_j)] on the grid."""
    ts = np.asarray(list(grid), dtype=float)
    if len(np.unique(ts)) != len(ts):
        raise ValueError("grid points must be distinct")
    G = kernel_g(g, ts[:, None], ts[None, :])
    H = (G + G.conj().T) / 2.0
    lam = float(np.linalg.eigvalsh(H).min())
    return PdReport(lam, lam >= -tol)


# ---------------------------------------------------------------------------
# sampled test functions
# ---------------------------------------------------------------------------

def _simpson_weights(n: int, h: float) -> np.ndarray:
    if n < 3 or n % 2 == 0:
        raise ValueError("Simpson rule needs an odd number of points >= 3")
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


class TestFunction:
    """Complex samples on a uniform grid over a compact support, zero at the ends."""

    __slots__ = ("grid", "samples", "support", "_weights")

    def __init__(self, samples, support):
        lo, hi = float(support[0]), float(support[1])
        if not lo < hi:
            raise ValueError("empty support")
        samples = np.asarray(samples, dtype=complex)
        if samples.ndim != 1 or len(samples) < MIN_GRID or len(samples) % 2 == 0:
            raise ValueError(f"need an odd number >= {MIN_GRID} of samples")
        if samples[0] != 0 or samples[-1] != 0:
            raise ValueError("test function must vanish at the support endpoints")
        grid = np.linspace(lo, hi, len(samples))
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "support", (lo, hi))
        object.__setattr__(self, "_weights", _simpson_weights(len(samples), grid[1] - grid[0]))

    def __setattr__(self, *a):
        raise AttributeError("TestFunction is immutable")

    @staticmethod
    def from_callable(f, support, n: int = 2049) -> "TestFunction":
        lo, hi = float(support[0]), float(support[1])
        ts = np.linspace(lo, hi, n)
        vals = np.asarray([f(t) for t in ts], dtype=complex)
        vals[0] = vals[-1] = 0.0
        return TestFunction(vals, support)

    def quad(self, values: np.ndarray) -> complex:
        return complex(np.sum(self._weights * values))

    def integral(self) -> complex:
        return self.quad(self.samples)

    def fourier(self, z: complex) -> complex:
        """phi-hat(z) = integral phi(t) exp(izt) dt."""
        return self.quad(self.samples * np.exp(1j * complex(z) * self.grid))

    def fourier_derivative_at_zero(self) -> complex:
        return self.quad(self.samples * 1j * self.grid)

    def zero_mean(self) -> "TestFunction":
        """Project onto vanishing integral by subtracting a fixed bump multiple."""
        total = self.integral()
        if total == 0:
            return self
        lo, hi = self.support
        u = (2.0 * self.grid - (lo + hi)) / (hi - lo)
        bump = (1.0 - u * u) ** 2
        scale = total / self.quad(bump)
        return TestFunction(self.samples - scale * bump, self.support)

    def __add__(self, other: "TestFunction") -> "TestFunction":
        if self.support != other.support or len(self.samples) != len(other.samples):
            raise ValueError("incompatible test functions")
        return TestFunction(self.samples + other.samples, self.support)

    def __mul__(self, scalar) -> "TestFunction":
        return TestFunction(self.samples * complex(scalar), self.support)

    __rmul__ = __mul__


def phi1(phi: TestFunction, z: complex) -> complex:
    """Phi1(phi, z) = integral phi(t) (exp(izt) - 1)/z dt; the z=0 limit is i t."""
    z = complex(z)
    if z == 0:
        return phi.fourier_derivative_at_zero()
    return phi.quad(phi.samples * (np.exp(1j * z * phi.grid) - 1.0) / z)


def random_test_function(rng: np.random.Generator, support=(-3.0, 3.0), n: int = 2049) -> TestFunction:
    """Smooth random zero-mean test function: windowed random trig polynomial."""
    lo, hi = support
    ts = np.linspace(lo, hi, n)
    u = (2.0 * ts - (lo + hi)) / (hi - lo)
    window = (1.0 - u * u) ** 2
    vals = np.zeros(n, dtype=complex)
    for k in range(1, 4):
        a = rng.normal() + 1j * rng.normal()
        b = rng.normal() + 1j * rng.normal()
        vals += a * np.cos(k * ts) + b * np.sin(k * ts)
    vals += rng.normal() + 1j * rng.normal()
    return TestFunction(vals * window, support).zero_mean()


def aligned_test_function(d0, v1, vm1, support=(-3.0, 3.0), n: int = 4097) -> TestFunction:
    """Zero-mean test function with prescribed (phi-hat'(0), phi-hat(1), phi-hat(-1)).

    Solves a 4x4 linear system over the windowed monomial family w(t)*t^j.
    """
    lo, hi = support
    ts = np.linspace(lo, hi, n)
    u = (2.0 * ts - (lo + hi)) / (hi - lo)
    window = (1.0 - u * u) ** 2
    basis = [window * ts**j for j in range(4)]
    probe = TestFunction(np.zeros(n), support)

    def functionals(vals):
        f = TestFunction(vals.astype(complex), support)
        return [
            f.integral(),
            f.fourier_derivative_at_zero(),
            f.fourier(1.0),
            f.fourier(-1.0),
        ]

    M = np.array([functionals(b) for b in basis], dtype=complex).T
    rhs = np.array([0.0, d0, v1, vm1], dtype=complex)
    coef = np.linalg.solve(M, rhs)
    vals = sum(c * b for c, b in zip(coef, basis))
    del probe
    return TestFunction(vals, support)


@dataclass(frozen=True)
class InnerProductComparison:
    via_kernel: complex
    via_measure: complex

    @property
    def difference(self) -> float:
        return abs(self.via_kernel - self.via_measure)


def inner_product_Hg(
    g: ScrewFunctionData, phi_1: TestFunction, phi_2: TestFunction
) -> InnerProductComparison:
    """<phi_1, phi_2> two ways: kernel double integral and measure-side sum.

    The agreement of the two is the isometry of the embedding into L^2(tau);
    it is quadrature-limited, not exact.
    """
    tgrid, sgrid = phi_2.grid, phi_1.grid
    K = kernel_g(g, tgrid[:, None], sgrid[None, :])
    inner_s = K @ (phi_1._weights * phi_1.samples)
    via_kernel = complex(np.sum(phi_2._weights * np.conj(phi_2.samples) * inner_s))

    via_measure = 0j
    for p, m in g.tau:
        gamma = float(p)
        via_measure += phi1(phi_1, gamma) * np.conj(phi1(phi_2, gamma)) * float(m)
    return InnerProductComparison(via_kernel, complex(via_measure))


def laplace_check(
    g: ScrewFunctionData, Q: RationalFunction, z: complex, T: float = 80.0
) -> float:
    """| integral_0^T g(t) e^{izt} dt + (i/z^2) Q(z) |, valid for Im z > 0.

    T must be large enough that the tail (polynomial growth of g against
    e^{-Im z * t}) is below the target tolerance; T = 80 covers Im z >= 1/2
    at 1e-8 for the data used here.
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("laplace_check requires Im z > 0")

    def integrand_re(t):
        return (eval_screw(g, t) * np.exp(1j * z * t)).real

    def integrand_im(t):
        return (eval_screw(g, t) * np.exp(1j * z * t)).imag

    re, _ = integrate.quad(integrand_re, 0.0, T, limit=400, epsabs=1e-12, epsrel=1e-12)
    im, _ = integrate.quad(integrand_im, 0.0, T, limit=400, epsabs=1e-12, epsrel=1e-12)
    lhs = complex(re, im)
    rhs = -(1j / z**2) * complex(Q(z))
    return abs(lhs - rhs)
