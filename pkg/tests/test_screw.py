import math
from fractions import Fraction

import numpy as np
import pytest

from screwfn.algebra import Polynomial, RationalFunction
from screwfn.screw import (
    ScrewFunctionData,
    TestFunction,
    aligned_test_function,
    chord_length,
    eval_screw,
    g0_data,
    inner_product_Hg,
    kernel_g,
    laplace_check,
    pd_check,
    phi1,
    random_test_function,
)
from screwfn.spectra import DiscreteMeasure

G0 = g0_data()
Q0 = RationalFunction(Polynomial([1, 0, -2]), Polynomial([0, -1, 0, 1]))


def g0_closed_form(t):
    return -t * t / 2 + np.cos(t) - 1


def test_eval_matches_closed_form_at_spot_points():
    for t in (0.5, 1.0, 2.0):
        assert abs(eval_screw(G0, t) - g0_closed_form(t)) < 1e-12


def test_eval_matches_closed_form_on_grid():
    ts = np.linspace(-10, 10, 1000)
    assert np.max(np.abs(eval_screw(G0, ts) - g0_closed_form(ts))) < 1e-12


def test_eval_at_zero_returns_g0():
    data = ScrewFunctionData(Fraction(3, 7), Fraction(0), DiscreteMeasure([], []))
    assert eval_screw(data, 0.0) == pytest.approx(3 / 7)


def test_eval_pure_drift():
    data = ScrewFunctionData(Fraction(0), Fraction(1), DiscreteMeasure([], []))
    assert eval_screw(data, 2.0) == pytest.approx(2j)


def test_hermitian_symmetry():
    rng = np.random.default_rng(0)
    data = ScrewFunctionData(
        Fraction(0), Fraction(2, 3),
        DiscreteMeasure([Fraction(-2), Fraction(1, 2)], [Fraction(1, 3), Fraction(5, 4)]),
    )
    for _ in range(50):
        t = rng.uniform(-8, 8)
        assert abs(eval_screw(data, -t) - np.conj(eval_screw(data, t))) < 1e-12


def test_kernel_vanishes_on_axes():
    for t in (0.3, 1.0, -2.5):
        assert abs(kernel_g(G0, t, 0.0)) < 1e-14
        assert abs(kernel_g(G0, 0.0, t)) < 1e-14


def test_kernel_at_pi_pi():
    assert kernel_g(G0, math.pi, math.pi) == pytest.approx(4 + math.pi**2, abs=1e-12)


def test_kernel_hermitian():
    rng = np.random.default_rng(1)
    data = ScrewFunctionData(
        Fraction(0), Fraction(1, 5),
        DiscreteMeasure([Fraction(-1), Fraction(3)], [Fraction(1), Fraction(2)]),
    )
    for _ in range(20):
        t, s = rng.uniform(-5, 5, 2)
        assert abs(kernel_g(data, t, s) - np.conj(kernel_g(data, s, t))) < 1e-12


def test_chord_length_closed_form():
    for t in (0.25, 1.5, 4.0):
        assert chord_length(G0, t) == pytest.approx(math.sqrt(t * t + 2 - 2 * math.cos(t)))
    assert chord_length(G0, 0.0) == 0.0


def test_chord_length_linear_asymptote():
    for t in (50.0, 200.0):
        assert chord_length(G0, t) / t == pytest.approx(1.0, abs=1e-3)


def test_pd_check_g0_grid():
    rep = pd_check(G0, np.linspace(-6, 6, 50))
    assert rep.passed and rep.min_eigenvalue >= -1e-9


def test_pd_check_single_point():
    rep = pd_check(G0, [1.3])
    assert rep.passed and rep.min_eigenvalue == pytest.approx(kernel_g(G0, 1.3, 1.3).real)


def test_pd_check_detects_non_screw_data():
    # g(t) = +t^2 is not a screw function; build its kernel by hand on {1, 2}
    def bad_kernel(t, s):
        return (t - s) ** 2 - t * t - s * s

    G = np.array([[bad_kernel(t, s) for s in (1.0, 2.0)] for t in (1.0, 2.0)])
    lam = np.linalg.eigvalsh((G + G.T) / 2).min()
    assert lam < -1e-9
    # 2x2 determinant oracle: eigenvalue signs follow det and trace
    assert np.linalg.det(G) < 0 or np.trace(G) < 0


def test_pd_check_random_valid_measures():
    rng = np.random.default_rng(2)
    for _ in range(3):
        pts = sorted(rng.choice(np.arange(-5, 6), size=3, replace=False))
        data = ScrewFunctionData(
            Fraction(0), Fraction(0),
            DiscreteMeasure([Fraction(int(p)) for p in pts],
                            [Fraction(int(rng.integers(1, 5)), 2) for _ in pts]),
        )
        assert pd_check(data, np.linspace(-4, 4, 30)).passed


def test_phi1_zero_function():
    phi = TestFunction(np.zeros(513), (-1.0, 1.0))
    for z in (0.0, 1.0, 2j):
        assert phi1(phi, z) == 0


def test_phi1_is_fourier_over_z_for_zero_mean():
    rng = np.random.default_rng(3)
    phi = random_test_function(rng)
    assert abs(phi.integral()) < 1e-14
    for z in (0.7, -1.3, 2.1):
        assert abs(phi1(phi, z) - phi.fourier(z) / z) < 1e-10


def test_phi1_at_zero_matches_finite_difference():
    rng = np.random.default_rng(4)
    phi = random_test_function(rng)
    h = 1e-5
    fd = (phi.fourier(h) - phi.fourier(-h)) / (2 * h)
    assert abs(phi1(phi, 0.0) - fd) < 1e-8


def test_inner_product_two_ways_agree():
    rng = np.random.default_rng(5)
    for _ in range(3):
        phi_a = random_test_function(rng, n=1025)
        phi_b = random_test_function(rng, n=1025)
        cmp1 = inner_product_Hg(G0, phi_a, phi_b)
        assert cmp1.difference < 1e-6


def test_inner_product_zero():
    phi0 = TestFunction(np.zeros(513), (-3.0, 3.0))
    out = inner_product_Hg(G0, phi0, phi0)
    assert out.via_kernel == 0 and out.via_measure == 0


def test_inner_product_aligned_unit():
    phi = aligned_test_function(1.0, 0.0, 0.0)
    out = inner_product_Hg(G0, phi, phi)
    assert abs(out.via_measure - 1.0) < 1e-10
    assert abs(out.via_kernel - 1.0) < 1e-6


def test_isometry_on_many_random_functions():
    # one shared grid lets the weighted kernel matrix be assembled once
    rng = np.random.default_rng(6)
    probe = random_test_function(rng, n=1025)
    ts = probe.grid
    kw = probe._weights[:, None] * kernel_g(G0, ts[:, None], ts[None, :]) * probe._weights[None, :]
    for k in range(20):
        phi = probe if k == 0 else random_test_function(rng, n=1025)
        via_kernel = complex(np.conj(phi.samples) @ (kw @ phi.samples))
        via_measure = sum(
            abs(phi1(phi, float(p))) ** 2 * float(m) for p, m in G0.tau
        )
        assert abs(via_kernel - via_measure) < 1e-6


def test_laplace_identity():
    for z in (2j, 1 + 1j):
        assert laplace_check(G0, Q0, z, T=80.0) < 1e-8


def test_laplace_zero_data():
    zero = ScrewFunctionData(Fraction(0), Fraction(0), DiscreteMeasure([], []))
    assert laplace_check(zero, RationalFunction(Polynomial([0])), 2j, T=10.0) < 1e-14


def test_laplace_requires_upper_half_plane():
    with pytest.raises(ValueError):
        laplace_check(G0, Q0, 1.0 - 1j)


def test_test_function_validation():
    with pytest.raises(ValueError, match="odd number"):
        TestFunction(np.zeros(100), (-1, 1))
    bad = np.ones(513)
    with pytest.raises(ValueError, match="vanish"):
        TestFunction(bad, (-1, 1))


def test_zero_mean_projection():
    ts = np.linspace(-2, 2, 1025)
    vals = np.exp(-(ts**2))
    vals[0] = vals[-1] = 0
    phi = TestFunction(vals, (-2.0, 2.0)).zero_mean()
    assert abs(phi.integral()) < 1e-14
