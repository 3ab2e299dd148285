"""screwfn: screw functions, spectral measures, de Branges spaces and canonical systems.

The package walks the full correspondence chain for rational / discrete
spectral data

    screw function g  <->  spectral measure tau  <->  Nevanlinna function Q
    <->  inner function Theta  <->  Hermite-Biehler E  <->  de Branges space
    <->  structure Hamiltonian H  <->  canonical system  <->  Weyl transform

and verifies the closed-form identities of the three-point worked example
(E = z^3 + 2iz^2 - z - i) exactly, in complex-rational and pi-graded surd
arithmetic.  Infinite-dimensional behavior is exercised through the
Paley-Wiener family at configurable truncation.
"""

from .exact import ExactComplex, PiScalar, PI
from .algebra import Polynomial, RationalFunction, MatrixPolynomial

__all__ = [
    "ExactComplex",
    "PiScalar",
    "PI",
    "Polynomial",
    "RationalFunction",
    "MatrixPolynomial",
]

__version__ = "0.1.0"
