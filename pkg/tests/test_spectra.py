import math
from fractions import Fraction

import numpy as np
import pytest

from screwfn.algebra import Polynomial, RationalFunction, sharp
from screwfn.exact import PI, ExactComplex, PiScalar
from screwfn.spectra import (
    DiscreteMeasure,
    NevanlinnaData,
    cayley_q_to_theta,
    cayley_theta_to_q,
    level_set_masses,
    measure_from_q,
    q_from_measure,
    tau_from_mu,
    theta_to_e,
)

I = ExactComplex(0, 1)
E0 = Polynomial([-I, -1, 2 * I, 1])
Q0 = RationalFunction(Polynomial([1, 0, -2]), Polynomial([0, -1, 0, 1]))
TAU0 = DiscreteMeasure([Fraction(-1), Fraction(0), Fraction(1)],
                       [Fraction(1, 2), Fraction(1), Fraction(1, 2)])


def random_hb_cubic(rng) -> Polynomial:
    """Exact cubic with all roots in the open lower half-plane."""
    E = Polynomial.one()
    for _ in range(3):
        re = Fraction(int(rng.integers(-8, 9)), 8)
        im = Fraction(int(rng.integers(1, 9)), 8)
        E = E * Polynomial([ExactComplex(-re, im), ExactComplex(1)])
    return E


def test_q_from_measure_reproduces_q0():
    assert q_from_measure(NevanlinnaData(Fraction(0), Fraction(0), TAU0)) == Q0


def test_q_from_measure_constant_and_single_point():
    empty = DiscreteMeasure([], [])
    assert q_from_measure(NevanlinnaData(Fraction(0), Fraction(5), empty)) == RationalFunction(
        Polynomial([5])
    )
    one = DiscreteMeasure([Fraction(2)], [Fraction(3)])
    got = q_from_measure(NevanlinnaData(Fraction(0), Fraction(0), one))
    # 3/(2-z) - 6/5
    expect = RationalFunction(Polynomial([3]), Polynomial([2, -1])) - RationalFunction(
        Polynomial([Fraction(6, 5)])
    )
    assert got == expect


def test_measure_from_q_inverts_q0_exactly():
    d = measure_from_q(Q0)
    assert d.a == 0 and d.b == 0
    assert d.measure == TAU0


def test_measure_from_q_linear():
    d = measure_from_q(RationalFunction(Polynomial([0, 1])))
    assert d.a == 1 and d.b == 0 and len(d.measure) == 0


def test_measure_from_q_tan_like_truncation():
    # truncated lattice sum (1/r) sum 1/(g_n - z) with float poles
    r, N = 1.0, 3
    gs = [(math.pi / (2 * r)) * (2 * n - 1) for n in range(-N + 1, N + 1)]
    num = Polynomial([0.0])
    den = Polynomial([1.0])
    for g in gs:
        den = den * Polynomial([-g, 1.0])
    for g in gs:
        term = Polynomial([-1.0 / r])
        for h in gs:
            if h != g:
                term = term * Polynomial([-h, 1.0])
        num = num + term
    d = measure_from_q(RationalFunction(num, den, reduce=False))
    assert np.allclose(sorted(d.measure.float_points()), sorted(gs), atol=1e-9)
    assert np.allclose(d.measure.float_masses(), [1.0 / r] * len(gs), atol=1e-9)


def test_measure_from_q_rejects_complex_poles():
    with pytest.raises(ValueError, match="Herglotz"):
        measure_from_q(RationalFunction(Polynomial([1.0]), Polynomial([1.0, 0.0, 1.0]), reduce=False))


def test_measure_from_q_rejects_negative_mass():
    # -1/(0 - z) = 1/z has residue +1 at 0, so the extracted mass is negative
    with pytest.raises(ValueError, match="not Herglotz"):
        measure_from_q(RationalFunction(Polynomial([1]), Polynomial([0, 1])))


def test_roundtrip_measure_q_measure_exact():
    rng = np.random.default_rng(5)
    for _ in range(5):
        pts = sorted(rng.choice(np.arange(-6, 7), size=3, replace=False))
        measure = DiscreteMeasure(
            [Fraction(int(p)) for p in pts],
            [Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9))) for _ in pts],
        )
        data = NevanlinnaData(Fraction(int(rng.integers(0, 3))), Fraction(int(rng.integers(-3, 4))), measure)
        back = measure_from_q(q_from_measure(data))
        assert back.a == data.a and back.b == data.b and back.measure == data.measure


def test_herglotz_sampling_property():
    rng = np.random.default_rng(6)
    Q = q_from_measure(NevanlinnaData(Fraction(1, 3), Fraction(-2), TAU0))
    for _ in range(100):
        z = complex(rng.uniform(-4, 4), rng.uniform(0.05, 4))
        assert complex(Q(z)).imag >= -1e-12


def test_cayley_q0_gives_theta0():
    theta = cayley_q_to_theta(Q0)
    assert theta == RationalFunction(sharp(E0), E0)


def test_cayley_trivial_and_inverse_pair():
    assert cayley_q_to_theta(RationalFunction(Polynomial([0]))) == RationalFunction(Polynomial([1]))
    assert cayley_theta_to_q(cayley_q_to_theta(Q0)) == Q0
    theta = cayley_q_to_theta(Q0)
    assert cayley_q_to_theta(cayley_theta_to_q(theta)) == theta


def test_theta_to_e_recovers_e0():
    assert theta_to_e(cayley_q_to_theta(Q0)) == E0


def test_theta_to_e_degenerate_and_errors():
    assert theta_to_e(RationalFunction(Polynomial([1]))) == Polynomial.one()
    with pytest.raises(ValueError, match="Hermite-Biehler"):
        theta_to_e(RationalFunction(Polynomial([I, 1]), Polynomial([-I, 1])))
    with pytest.raises(ValueError, match="not inner"):
        theta_to_e(RationalFunction(Polynomial([1, 1]), E0))


def test_theta_to_e_roundtrip_random_hb():
    rng = np.random.default_rng(7)
    for _ in range(5):
        E = random_hb_cubic(rng)
        theta = RationalFunction(sharp(E), E)
        back = theta_to_e(theta)
        ratio = back.leading() / E.leading()
        assert back == E * ratio
        assert ratio * ratio.conj() == ExactComplex(1)
        assert RationalFunction(sharp(back), back) == theta


def test_theta_modulus_properties():
    rng = np.random.default_rng(8)
    theta = cayley_q_to_theta(Q0)
    for _ in range(50):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.02, 3))
        assert abs(complex(theta.num(z)) / complex(theta.den(z))) < 1
        x = rng.uniform(-4, 4)
        assert abs(abs(complex(theta.num(x)) / complex(theta.den(x))) - 1) < 1e-10


def test_level_set_masses_e0():
    mu = level_set_masses(E0)
    assert mu.mass_at(0) == PI
    assert mu.mass_at(1) == PI / 2
    assert mu.mass_at(-1) == PI / 2
    assert len(mu) == 3 and mu.is_exact


def test_level_set_masses_degree_one():
    # E = z + i has A = z, B = -1: single level point 0 with mass pi*|B(0)|/|A'(0)|
    E = Polynomial([I, 1])
    mu = level_set_masses(E)
    assert len(mu) == 1 and mu.mass_at(0) == PI


def test_level_set_masses_match_numeric_theta_derivative():
    rng = np.random.default_rng(9)
    for _ in range(4):
        E = random_hb_cubic(rng)
        mu = level_set_masses(E)
        Es = sharp(E)
        h = 1e-6
        for p, m in mu:
            x = float(p)
            dtheta = (complex(Es(x + h)) / complex(E(x + h)) - complex(Es(x - h)) / complex(E(x - h))) / (2 * h)
            assert abs(float(m) - 2 * math.pi / abs(dtheta)) < 1e-6


def test_tau_from_mu():
    mu = level_set_masses(E0)
    assert tau_from_mu(mu) == TAU0
    assert tau_from_mu(DiscreteMeasure([], [])) == DiscreteMeasure([], [])
    back = tau_from_mu(mu).scale(PI)
    assert back == mu


def test_total_mass_matches_zeroth_moment_for_e0():
    # |E0| = 1 on its level set, so the raw masses integrate like the weights
    from screwfn.debranges import e0_frame, moments

    mu = level_set_masses(E0)
    assert mu.total_mass() == PI * 2
    assert moments(e0_frame()).moments[0] == PI * 2


def test_measure_validation():
    with pytest.raises(ValueError, match="distinct"):
        DiscreteMeasure([Fraction(0), Fraction(0)], [Fraction(1), Fraction(1)])
    with pytest.raises(ValueError, match="positive"):
        DiscreteMeasure([Fraction(0)], [Fraction(-1)])
