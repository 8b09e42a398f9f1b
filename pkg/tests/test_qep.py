import math
from fractions import Fraction

import pytest

from pencilspace import (
    FreeBlocks,
    Matrix,
    QuadPoly2P,
    QuadSystem2P,
    delta_operators,
    kron,
    linearize_system,
    singularity_check,
    spectrum_pencil,
    spectrum_quadratic,
    standard_blocks,
    standard_linearization,
    verify_eigenpair,
    verify_spectral_equality,
)
from pencilspace.errors import HypothesisViolatedError, NonGenericSystemError
from pencilspace.qep import DeltaOps, LinearSystem2P
from pencilspace.scalars import GaussianRational

from conftest import rand_quad

CIRCLE = QuadPoly2P.scalar(a20=1, a02=1, a00=-1)
LINE = QuadPoly2P.scalar(a10=1, a01=-1)
CIRCLE_LINE = QuadSystem2P(CIRCLE, LINE)

# Bilinear system with the exact rational eigenpair (lam, mu) = (1, 3):
# q1 = (lam - 1)(mu - 2), q2 = (lam + 1)(mu - 3).
RATIONAL_EIG = QuadSystem2P(
    QuadPoly2P.scalar(a11=1, a10=-2, a01=-1, a00=2),
    QuadPoly2P.scalar(a11=1, a10=-3, a01=1, a00=-3),
)


def admissible_scalar_system(rng):
    """Random scalar system that admits the resultant route."""
    while True:
        q1 = rand_quad(rng, 1, complex_prob=0.0)
        q2 = rand_quad(rng, 1, complex_prob=0.0)
        f = q1.as_polymatrix()[0, 0]
        g = q2.as_polymatrix()[0, 0]
        if f.degree_in("mu") < 1 or g.degree_in("mu") < 1:
            continue
        try:
            report = spectrum_quadratic(QuadSystem2P(q1, q2), tol=1e-9)
        except NonGenericSystemError:
            continue
        return QuadSystem2P(q1, q2), report


def test_linearize_system_defaults_to_standard(rng):
    lin = linearize_system(CIRCLE_LINE)
    assert lin.l1 == standard_linearization(CIRCLE)
    assert lin.l2 == standard_linearization(LINE)
    assert lin.cert1.verified and lin.cert2.verified


def test_linearize_system_certifies_both(rng):
    system = QuadSystem2P(rand_quad(rng, 1), rand_quad(rng, 2))
    lin = linearize_system(system, alpha1=2, alpha2=Fraction(1, 3))
    assert lin.cert1.kind == lin.cert2.kind == "unimodular-pair"
    assert lin.alpha1 == GaussianRational(2)


def test_linearize_system_rejects_singular_z(rng):
    q2 = rand_quad(rng, 2)
    bad = FreeBlocks(
        2,
        Matrix.zeros(6, 2),
        Matrix.vstack([q2.a10, Matrix.zeros(2, 2), Matrix.zeros(2, 2)]),
        Matrix.vstack([q2.a01, Matrix.zeros(2, 2), Matrix.zeros(2, 2)]),
    )
    with pytest.raises(HypothesisViolatedError):
        linearize_system(QuadSystem2P(rand_quad(rng, 1), q2), blocks2=bad)


def test_linearize_system_rejects_bad_y1(rng):
    q1 = rand_quad(rng, 1)
    blocks = standard_blocks(q1)
    bad = FreeBlocks(
        1,
        Matrix.column([0, 1, 0]),
        blocks.z1,
        blocks.z2,
    )
    with pytest.raises(HypothesisViolatedError):
        linearize_system(QuadSystem2P(q1, rand_quad(rng, 1)), blocks1=bad)


def test_delta_sizes(rng):
    system = QuadSystem2P(rand_quad(rng, 1), rand_quad(rng, 2))
    delta = delta_operators(linearize_system(system))
    size = 3 * 1 * 3 * 2
    for op in (delta.delta0, delta.delta1, delta.delta2):
        assert op.shape == (size, size)


def test_delta_bilinearity_identity():
    # With C1 = B1 the first operator collapses to B1 kron (C2 - B2).
    lin = linearize_system(CIRCLE_LINE)
    forced = LinearSystem2P(
        type(lin.l1)(lin.l1.m, lin.l1.lam_coeff, lin.l1.lam_coeff, lin.l1.const),
        lin.l2,
        lin.alpha1,
        lin.alpha2,
        lin.cert1,
        lin.cert2,
    )
    delta = delta_operators(forced)
    expected = kron(lin.l1.lam_coeff, lin.l2.mu_coeff - lin.l2.lam_coeff)
    assert delta.delta0 == expected


def test_delta_linearity_random(rng):
    lin = linearize_system(QuadSystem2P(rand_quad(rng, 1), rand_quad(rng, 1)))
    scaled = LinearSystem2P(
        lin.l1.scale(3), lin.l2, lin.alpha1, lin.alpha2, lin.cert1, lin.cert2
    )
    d1 = delta_operators(lin)
    d2 = delta_operators(scaled)
    assert d2.delta0 == d1.delta0.scale(3)
    assert d2.delta1 == d1.delta1.scale(3)


def test_delta0_singular_for_constructed_class(rng):
    for _ in range(6):
        n1, n2 = rng.choice(((1, 1), (1, 2), (2, 2)))
        system = QuadSystem2P(rand_quad(rng, n1), rand_quad(rng, n2))
        report = singularity_check(delta_operators(linearize_system(system)))
        assert report.singular
        assert report.det0 == GaussianRational(0)


def test_identity_delta0_nonsingular():
    eye = Matrix.identity(9)
    report = singularity_check(DeltaOps(eye, eye, eye))
    assert not report.singular
    assert report.det0 == GaussianRational(1)


def test_spectrum_circle_line():
    report = spectrum_quadratic(CIRCLE_LINE, tol=1e-9)
    assert report.bezout_bound == 4
    assert len(report.points) == 2
    r = 1 / math.sqrt(2)
    (p_minus, p_plus) = report.points
    assert abs(p_minus.lam - (-r)) < 1e-8 and abs(p_minus.mu - (-r)) < 1e-8
    assert abs(p_plus.lam - r) < 1e-8 and abs(p_plus.mu - r) < 1e-8


def test_spectrum_identical_components_is_non_generic():
    with pytest.raises(NonGenericSystemError):
        spectrum_quadratic(QuadSystem2P(CIRCLE, CIRCLE))


def test_spectrum_zero_determinant_is_non_generic():
    zero_q = QuadPoly2P(1, *(Matrix.zeros(1, 1) for _ in range(6)))
    with pytest.raises(NonGenericSystemError):
        spectrum_quadratic(QuadSystem2P(zero_q, LINE))


def test_spectrum_with_shared_lambda_values():
    # Circle against mu^2 = lam: the intersections come in (+mu, -mu) pairs
    # sharing lam, so the resultant has double roots; the square-free
    # reduction keeps the root iteration on simple roots.
    parabola = QuadPoly2P.scalar(a02=1, a10=-1)
    system = QuadSystem2P(CIRCLE, parabola)
    report = spectrum_quadratic(system, tol=1e-9)
    assert len(report.points) == 4
    golden = (math.sqrt(5) - 1) / 2
    lam_values = sorted({round(p.lam.real, 6) for p in report.points})
    assert lam_values == [round(-golden - 1, 6), round(golden, 6)]
    for p in report.points:
        if p.lam.real > 0:
            assert abs(abs(p.mu.real) - math.sqrt(golden)) < 1e-8
        else:
            assert abs(abs(p.mu.imag) - math.sqrt(golden + 1)) < 1e-8


def test_spectrum_respects_bezout_bound(rng):
    done = 0
    while done < 8:
        system, report = admissible_scalar_system(rng)
        assert len(report.points) <= 4
        assert report.generic
        done += 1


def test_spectrum_pencil_zero_determinant_is_non_generic():
    lin = linearize_system(CIRCLE_LINE)
    zero = Matrix.zeros(3, 3)
    degenerate = LinearSystem2P(
        lin.l1,
        type(lin.l2)(3, zero, zero, zero),
        lin.alpha1,
        lin.alpha2,
        lin.cert1,
        lin.cert2,
    )
    with pytest.raises(NonGenericSystemError):
        spectrum_pencil(degenerate)


def test_spectrum_pencil_matches_quadratic(rng):
    lin = linearize_system(CIRCLE_LINE)
    report = spectrum_pencil(lin, tol=1e-9)
    quad = spectrum_quadratic(CIRCLE_LINE, tol=1e-9)
    assert report.bezout_bound == 9
    assert len(report.points) == len(quad.points)
    for a, b in zip(report.points, quad.points):
        assert abs(a.lam - b.lam) < 1e-8 and abs(a.mu - b.mu) < 1e-8


def test_spectral_equality_certified(rng):
    report = verify_spectral_equality(CIRCLE_LINE, linearize_system(CIRCLE_LINE))
    assert report.equal
    assert not report.unmatched_q and not report.unmatched_l


def test_spectral_equality_detects_constant_replacement():
    lin = linearize_system(CIRCLE_LINE)
    constant = type(lin.l2)(
        lin.l2.m,
        Matrix.zeros(3, 3),
        Matrix.zeros(3, 3),
        Matrix.identity(3),
    )
    broken = LinearSystem2P(
        lin.l1, constant, lin.alpha1, lin.alpha2, lin.cert1, lin.cert2
    )
    report = verify_spectral_equality(CIRCLE_LINE, broken)
    assert not report.equal
    assert len(report.unmatched_q) == 2
    assert not report.sigma_l.points


def test_spectral_equality_trivially_empty():
    # lam*mu = -1 against lam*mu = -2 share no zeros at all; both spectra
    # are empty and the equality report agrees on empty.
    system = QuadSystem2P(
        QuadPoly2P.scalar(a11=1, a00=1), QuadPoly2P.scalar(a11=1, a00=2)
    )
    lin = linearize_system(system)
    report = verify_spectral_equality(system, lin)
    assert report.equal
    assert not report.sigma_q.points and not report.sigma_l.points


def test_verify_eigenpair_exact_zero_residuals():
    lin = linearize_system(RATIONAL_EIG)
    x = Matrix.column([1])
    report = verify_eigenpair(RATIONAL_EIG, lin, 1, 3, x, x)
    assert report.passed
    for check in report.checks:
        assert check.exact_zero, check.name
        assert check.norm == 0.0


def test_verify_eigenpair_homogeneous_in_x():
    lin = linearize_system(RATIONAL_EIG)
    x = Matrix.column([5])
    report = verify_eigenpair(RATIONAL_EIG, lin, 1, 3, x, x)
    assert report.passed
    assert all(c.exact_zero for c in report.checks)


def test_verify_eigenpair_rejects_non_eigenvalue():
    lin = linearize_system(RATIONAL_EIG)
    x = Matrix.column([1])
    report = verify_eigenpair(RATIONAL_EIG, lin, 2, 7, x, x)
    assert not report.passed
    assert not report.checks[0].passed  # Q1 residual fails


def test_verify_eigenpair_rejects_zero_vector():
    lin = linearize_system(RATIONAL_EIG)
    with pytest.raises(ValueError):
        verify_eigenpair(RATIONAL_EIG, lin, 1, 3, Matrix.column([0]), Matrix.column([1]))


def test_eigenvalue_forces_pencil_kernel_exactly(rng):
    # Whenever Q_i x_i = 0 exactly, the pencil annihilates Lambda kron x_i.
    lin = linearize_system(RATIONAL_EIG)
    x = Matrix.column([Fraction(2, 3)])
    report = verify_eigenpair(RATIONAL_EIG, lin, 1, 3, x, x)
    assert report.checks[2].exact_zero and report.checks[3].exact_zero
