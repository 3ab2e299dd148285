"""Acceptance suite: every closed-form identity of the worked example and the
truncated Paley-Wiener family, each at its stated tolerance.

Run with `pytest -s tests/test_acceptance.py` to see one line per criterion.
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from screwfn.algebra import Polynomial, RationalFunction
from screwfn.canonical import factorize, fundamental_solution, w0_matrix
from screwfn.classical import (
    idd_charfn_check,
    idd_density,
    levy_triplet,
    mean_periodic_checks,
    q_substitute,
    stieltjes_string,
    string_solve,
    titchmarsh_weyl,
)
from screwfn.debranges import (
    boundary_value,
    e0_frame,
    extension_eigenbasis,
    gram_schmidt_basis,
    inner_product,
    kernel_ab,
    kernel_moment,
    moments,
    s_theta_in_space,
)
from screwfn.exact import PI, ExactComplex, PiScalar
from screwfn.paleywiener import (
    PWFrame,
    pw_basis_gram,
    pw_ode_residual,
    pw_truncated_norm_defect,
    pw_weyl_is_fourier,
    tan_partial_fraction,
)
from screwfn.screw import eval_screw, g0_data, kernel_g, laplace_check, pd_check
from screwfn.spectra import DiscreteMeasure, measure_from_q
from screwfn.weyl import (
    StepVector,
    diagram_check,
    inverse_weyl,
    l2h_inner,
    screw_line_S,
    weyl_transform,
)

I = ExactComplex(0, 1)
Q0 = RationalFunction(Polynomial([1, 0, -2]), Polynomial([0, -1, 0, 1]))
FR = e0_frame()
H0 = factorize(w0_matrix())
G0 = g0_data()
TAU0 = DiscreteMeasure([Fraction(-1), Fraction(0), Fraction(1)],
                       [Fraction(1, 2), Fraction(1), Fraction(1, 2)])


def report(criterion: str, ok: bool, detail: str = ""):
    line = f"[acceptance] {criterion}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


def test_criterion_01_spectral_measure():
    d = measure_from_q(Q0)
    ok = d.a == 0 and d.b == 0 and d.measure == TAU0
    report("01 spectral measure inversion, exact", ok)


def test_criterion_02_level_set_masses():
    mu = FR.mu
    ok = (
        mu.mass_at(0) == PI
        and mu.mass_at(1) == PI / 2
        and mu.mass_at(-1) == PI / 2
        and len(mu) == 3
        and mu.is_exact
    )
    report("02 level-set masses in pi-rational arithmetic, exact", ok)


def test_criterion_03_inner_product_tables():
    monos = [Polynomial.monomial(k) for k in range(3)]
    expect = [[2, 0, 1], [0, 1, 0], [1, 0, 1]]
    ok = all(
        inner_product(FR, monos[i], monos[j]) == PI * expect[i][j]
        for i in range(3)
        for j in range(3)
    )
    q0, q1, q2 = gram_schmidt_basis(FR)
    ok &= q0 == Polynomial([PiScalar(Fraction(1, 2), 2, -1)])          # 1/sqrt(2 pi)
    ok &= q1 == Polynomial([PiScalar(0), PiScalar(1, 1, -1)])           # z/sqrt(pi)
    ok &= q2 == Polynomial(
        [PiScalar(Fraction(-1, 2), 2, -1), PiScalar(0), PiScalar(1, 2, -1)]
    )                                                                   # (2z^2-1)/sqrt(2 pi)
    mt = moments(FR)
    ok &= mt.moments[0] == PI * 2 and mt.hankel[2] == PiScalar(1, 1, 6)
    report("03 inner-product table, Gram-Schmidt basis, moments, exact", ok)


def test_criterion_04_kernel_forms_agree():
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(20):
        z = complex(rng.normal(), rng.normal())
        w = complex(rng.normal(), rng.normal())
        worst = max(worst, abs(kernel_ab(FR, z, w) - kernel_moment(FR, z, w)))
    report("04 kernel forms agree at 20 random points", worst < 1e-10, f"max dev {worst:.2e}")


def test_criterion_05_multiplication_extensions():
    hits = [th for th in np.linspace(0, math.pi, 360, endpoint=False) if s_theta_in_space(FR, th)]
    ok = hits == [0.0]
    eb = extension_eigenbasis(FR, math.pi / 2)
    ok &= list(eb.eigenvalues) == [Fraction(-1), Fraction(0), Fraction(1)]
    Fm1, F0, F1 = eb.normalized
    ok &= F0 == Polynomial([PiScalar(-1, 1, -1), PiScalar(0), PiScalar(1, 1, -1)])
    ok &= F1 == Polynomial(
        [PiScalar(0), PiScalar(Fraction(1, 2), 2, -1), PiScalar(Fraction(1, 2), 2, -1)]
    )
    ok &= Fm1 == Polynomial(
        [PiScalar(0), PiScalar(Fraction(-1, 2), 2, -1), PiScalar(Fraction(1, 2), 2, -1)]
    )
    ok &= all(inner_product(FR, F, F) == PiScalar(1) for F in eb.normalized)
    ok &= boundary_value(FR, F0, 0) == PiScalar(ExactComplex(0, -1), 1, -1)      # -i/sqrt(pi)
    ok &= boundary_value(FR, F1, 1) == PiScalar(ExactComplex(0, -1), 2, -1)      # -i sqrt(2/pi)
    ok &= boundary_value(FR, Fm1, -1) == PiScalar(ExactComplex(0, -1), 2, -1)
    report("05 unique S_theta membership and pi/2 eigenbasis, exact", ok)


def test_criterion_06_factorization():
    W0 = w0_matrix()
    ok = [(s.length, s.theta) for s in H0.segments] == [
        (Fraction(1, 2), math.pi / 2),
        (Fraction(4), 0.0),
        (Fraction(1, 2), math.pi / 2),
    ]
    ok &= fundamental_solution(H0, 5) == W0
    Wq = fundamental_solution(H0, Fraction(1, 4))
    ok &= Wq.entries[1][0] == Polynomial([0, Fraction(-1, 4)])
    ok &= Wq.entries[1][1] == Polynomial.one()
    W2 = fundamental_solution(H0, 2)
    ok &= W2.entries[1][0] == Polynomial([0, Fraction(-1, 2)])
    ok &= W2.entries[1][1] == Polynomial([1, 0, Fraction(-3, 4)])
    W475 = fundamental_solution(H0, 4.75)
    ok &= W475.entries[1][0] == Polynomial([0, Fraction(-3, 4), 0, Fraction(1, 2)])
    ok &= W475.entries[1][1] == Polynomial([1, 0, -2])
    ok &= W475.entries[0][0] == Polynomial([1, 0, -1])
    ok &= W475.entries[0][1] == Polynomial([0, 4])
    report("06 factorization and fundamental solution tables, exact", ok)


def test_criterion_07_weyl_images():
    half = PiScalar(Fraction(1, 2), 1, -2)
    imgs = [weyl_transform(H0, StepVector.basis_vector(H0, k)) for k in range(3)]
    ok = imgs[0] == Polynomial([half])                                  # 1/(2 pi)
    ok &= imgs[1] == Polynomial([PiScalar(0), PiScalar(-2, 1, -2)])     # -2z/pi
    ok &= imgs[2] == Polynomial([half, PiScalar(0), PiScalar(-1, 1, -2)])  # (1-2z^2)/(2 pi)
    eb = extension_eigenbasis(FR, math.pi / 2)
    invs = [inverse_weyl(FR, H0, F) for F in eb.normalized]
    # eq-image check: F0 -> -sqrt(pi) [C(.,0); D(.,0)] is the constant (0, -sqrt(pi))
    for f, g in invs[1].components:
        ok &= f.is_zero() and g == Polynomial([PiScalar(-1, 1, 1)])
    ok &= all(
        l2h_inner(H0, invs[i], invs[j]) == (PiScalar(1) if i == j else PiScalar(0))
        for i in range(3)
        for j in range(3)
    )
    ok &= all(
        weyl_transform(H0, inv) == Polynomial(list(F.coeffs))
        for inv, F in zip(invs, eb.normalized)
    )
    report("07 Weyl images, inverse images, orthonormality, exact", ok)


def test_criterion_08_screw_line_gram():
    ts = np.linspace(-5, 5, 20)
    vecs = [screw_line_S(FR, t) for t in ts]
    worst = 0.0
    for i, t in enumerate(ts):
        for j, s in enumerate(ts):
            worst = max(worst, abs(vecs[i].inner(vecs[j]) - math.pi * kernel_g(G0, t, s)))
    report("08 screw-line Gram identity on 20x20 grid", worst < 1e-12, f"max dev {worst:.2e}")


def test_criterion_09_positive_definiteness():
    rep = pd_check(G0, np.linspace(-6, 6, 50))
    report(
        "09 kernel Gram matrix positivity on 50 points",
        rep.min_eigenvalue >= -1e-9,
        f"min eig {rep.min_eigenvalue:.2e}",
    )


def test_criterion_10_laplace_identity():
    worst = max(laplace_check(G0, Q0, z, T=80.0) for z in (2j, 1 + 1j, -1 + 2j))
    report("10 Laplace transform identity at three points", worst < 1e-8, f"max {worst:.2e}")


def test_criterion_11_diagram_closure():
    rep = diagram_check(G0, FR, H0, n_samples=20, seed=0, tol=1e-6)
    worst = max(
        rep.isometry_kernel_vs_measure,
        rep.isometry_measure_vs_model,
        rep.isometry_model_vs_restriction,
        rep.square_phi1_vs_restriction,
        rep.triangle_weyl_l0_vs_model,
    )
    detail = (
        f"max residual {worst:.2e}; measured basis Gram constant "
        f"{rep.basis_gram_constant:.12f} (offdiag {rep.basis_gram_offdiag:.1e})"
    )
    report("11 isometry and commutation diagram over 20 test functions", rep.passed, detail)


def test_criterion_12_krein_string():
    q0 = q_substitute(Q0)
    s = stieltjes_string(q0)
    ok = s.L == math.inf
    ok &= s.masses == ((Fraction(0), Fraction(1, 2)), (Fraction(4), Fraction(1, 2)))
    phi4, psi4 = string_solve(s, None, 4)
    ok &= phi4 == Polynomial([1, -2]) and psi4 == Polynomial([4])
    ok &= titchmarsh_weyl(s) == q0
    report("12 Krein string expansion, solutions and round trip, exact", ok)


def test_criterion_13_levy():
    trip = levy_triplet(G0)
    ok = trip.a == 1 and trip.b == 0
    ok &= trip.nu == DiscreteMeasure([Fraction(-1), Fraction(1)], [Fraction(1, 2), Fraction(1, 2)])
    xs = np.linspace(-12, 12, 4097)
    dens = idd_density(trip, xs)
    w = np.ones(len(xs))
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    w *= (xs[1] - xs[0]) / 3
    norm_err = abs(float(np.sum(w * dens)) - 1.0)
    ok &= norm_err < 1e-8
    char_res = idd_charfn_check(G0, [0.0, 1.0, 2.0])
    ok &= all(r < 1e-6 for r in char_res)
    report(
        "13 Levy triplet, density normalization, characteristic function",
        ok,
        f"norm err {norm_err:.2e}, charfn max {max(char_res):.2e}",
    )


def test_criterion_14_mean_periodicity():
    rep = mean_periodic_checks()
    ok = (
        rep.convolution_residual < 1e-8
        and rep.one_sided_residual < 1e-8
        and rep.fourier_carleman_residual < 1e-8
    )
    report("14 mean periodicity identities", ok, f"max {rep.max_residual():.2e}")


def test_criterion_15_paley_wiener():
    frame = PWFrame(1.0, 50)
    G = pw_basis_gram(frame, 50)
    gram_dev = float(np.max(np.abs(G - np.eye(101))))
    ok = gram_dev < 0.02

    wf = pw_weyl_is_fourier(PWFrame(1.0, 10), [0.3, -1.0, 0.5, 2.0], [1.0, 0.25, -0.75, 0.125])
    ok &= wf.transform_residual < 1e-8

    rng = np.random.default_rng(0)
    ode_worst = max(
        pw_ode_residual(1.0, rng.uniform(0, 1), complex(rng.normal(), rng.normal()))
        for _ in range(10)
    )
    ok &= ode_worst < 1e-6

    z = 0.3 + 0.4j
    e1 = abs(tan_partial_fraction(1.0, z, 100) - np.tan(z))
    e2 = abs(tan_partial_fraction(1.0, z, 200) - np.tan(z))
    ok &= 1.5 < e1 / e2 < 2.5
    d1 = pw_truncated_norm_defect(frame, 0, 60.0)
    d2 = pw_truncated_norm_defect(frame, 0, 120.0)
    ok &= 1.5 < d1 / d2 < 2.5
    report(
        "15 Paley-Wiener truncation checks",
        ok,
        f"gram dev {gram_dev:.2e}, weyl-fourier {wf.transform_residual:.2e}, "
        f"ode {ode_worst:.2e}, halving ratios {e1/e2:.2f}/{d1/d2:.2f}",
    )
