"""Quadratic two-parameter eigenvalue problems at desk scale.

A system is a pair of quadratics (Q1, Q2); its spectrum is the set of
common zeros of the two determinant polynomials, bounded by Bezout's count
4*n1*n2 in the generic case.  Linearizing each component with an
alpha*e1-ansatz member yields a pair of 3n x 3n pencils whose operator
determinants (Delta0, Delta1, Delta2) couple the problem into generalized
eigenvalue equations Delta1 z = lam Delta0 z, Delta2 z = mu Delta0 z --
but Delta0 is always exactly singular for this class, so spectra here are
computed by resultants plus root iteration and the Delta equations are
verified on known eigenpairs instead of solved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bipoly import BiPoly
from .construct import LinearizationCertificate, certify_scaled_e1
from .errors import (
    ConvergenceError,
    HypothesisViolatedError,
    NonGenericSystemError,
    ShapeError,
)
from .matrices import Matrix, kron
from .pencil import Pencil2P, QuadPoly2P
from .polymatrix import exact_det_poly
from .roots import durand_kerner, unipoly_roots
from .resultants import sylvester_resultant
from .scalars import GaussianRational, ScalarLike
from .space import FreeBlocks, generate_member

DEFAULT_SPECTRUM_TOL = 1e-9


@dataclass(frozen=True)
class QuadSystem2P:
    """A pair of quadratic two-parameter matrix polynomials."""

    q1: QuadPoly2P
    q2: QuadPoly2P

    @property
    def bezout_bound(self) -> int:
        return 4 * self.q1.n * self.q2.n


@dataclass(frozen=True)
class LinearSystem2P:
    """A pair of certified pencils linearizing a system, with their ansatz
    scalars alpha1, alpha2 (ansatz vectors alpha_i * e1)."""

    l1: Pencil2P
    l2: Pencil2P
    alpha1: GaussianRational
    alpha2: GaussianRational
    cert1: LinearizationCertificate
    cert2: LinearizationCertificate


@dataclass(frozen=True)
class DeltaOps:
    """The operator-determinant triple of a linearized system."""

    delta0: Matrix
    delta1: Matrix
    delta2: Matrix


@dataclass(frozen=True)
class SingularityReport:
    det0: GaussianRational
    singular: bool


@dataclass(frozen=True)
class SpectrumPoint:
    lam: complex
    mu: complex
    residual: float


@dataclass(frozen=True)
class SpectrumReport:
    """Finite common zeros of a determinant pair, sorted lexicographically."""

    points: tuple[SpectrumPoint, ...]
    bezout_bound: int
    generic: bool


def standard_blocks(q: QuadPoly2P) -> FreeBlocks:
    """The free blocks that make generate_member reproduce the standard
    linearization at ansatz e1: Y1 = 0, Z1 = [A10; 0; -I], Z2 = [A01; -I; 0]."""
    n = q.n
    eye = Matrix.identity(n)
    zero = Matrix.zeros(n, n)
    return FreeBlocks(
        n,
        Matrix.zeros(3 * n, n),
        Matrix.vstack([q.a10, zero, -eye]),
        Matrix.vstack([q.a01, -eye, zero]),
    )


def _check_component_blocks(blocks: FreeBlocks, label: str) -> None:
    n = blocks.n
    if not blocks.sub("y1", 1).is_zero() or not blocks.sub("y1", 2).is_zero():
        raise HypothesisViolatedError(f"{label}: Y1 must have the form [Y11; 0; 0]")
    z_block = Matrix.from_blocks(
        [
            [blocks.sub("z1", 1), blocks.sub("z2", 1)],
            [blocks.sub("z1", 2), blocks.sub("z2", 2)],
        ]
    )
    if not z_block.det():
        raise HypothesisViolatedError(f"{label}: lower 2n x 2n Z block is singular")


def linearize_system(
    system: QuadSystem2P,
    alpha1: ScalarLike = 1,
    alpha2: ScalarLike = 1,
    blocks1: Optional[FreeBlocks] = None,
    blocks2: Optional[FreeBlocks] = None,
) -> LinearSystem2P:
    """Linearize both components with ansatz alpha_i * e1 and certify them.

    Blocks default to the standard-linearization choice per component.
    Block hypotheses (Y1 = [Y11; 0; 0], nonsingular lower Z block) raise
    HypothesisViolatedError when violated.
    """
    alpha1 = GaussianRational.coerce(alpha1)
    alpha2 = GaussianRational.coerce(alpha2)
    pencils = []
    certs = []
    for q, alpha, blocks, label in (
        (system.q1, alpha1, blocks1, "component 1"),
        (system.q2, alpha2, blocks2, "component 2"),
    ):
        if blocks is None:
            blocks = standard_blocks(q)
        _check_component_blocks(blocks, label)
        pencil = generate_member(q, (alpha, 0, 0), blocks)
        certs.append(certify_scaled_e1(pencil, q, alpha))
        pencils.append(pencil)
    return LinearSystem2P(pencils[0], pencils[1], alpha1, alpha2, certs[0], certs[1])


def delta_operators(lin: LinearSystem2P) -> DeltaOps:
    """The exact Kronecker combinations of the pencil coefficients.

    With L_i = A^(i) + lam B^(i) + mu C^(i) (constant, lam, mu coefficients):
      Delta0 = B1 kron C2 - C1 kron B2
      Delta1 = C1 kron A2 - A1 kron C2
      Delta2 = A1 kron B2 - B1 kron A2
    Each is square of size 3n1 * 3n2.
    """
    a1, b1, c1 = lin.l1.const, lin.l1.lam_coeff, lin.l1.mu_coeff
    a2, b2, c2 = lin.l2.const, lin.l2.lam_coeff, lin.l2.mu_coeff
    return DeltaOps(
        delta0=kron(b1, c2) - kron(c1, b2),
        delta1=kron(c1, a2) - kron(a1, c2),
        delta2=kron(a1, b2) - kron(b1, a2),
    )


def singularity_check(delta: DeltaOps) -> SingularityReport:
    """Exact singularity verdict on Delta0 (fraction-free determinant)."""
    det0 = delta.delta0.det()
    return SingularityReport(det0=det0, singular=not det0)


def _common_zeros(
    f: BiPoly, g: BiPoly, bound: int, tol: float
) -> SpectrumReport:
    """Finite common zeros of two bivariate polynomials.

    lam candidates are the roots of the Sylvester resultant eliminating mu;
    mu candidates at each lam come from the mu-coefficients of f (falling
    back to g when f collapses there), accepted when both residuals pass
    and deduplicated within 10*tol in the max metric.
    """
    if f.is_zero() or g.is_zero():
        raise NonGenericSystemError("a determinant polynomial is identically zero")
    if f.is_constant() or g.is_constant():
        # A nonzero constant determinant has no zeros at all.
        return SpectrumReport(points=(), bezout_bound=bound, generic=True)
    resultant = sylvester_resultant(f, g, "mu")
    if resultant.is_zero():
        raise NonGenericSystemError(
            "resultant vanishes identically (common factor: infinitely many zeros)"
        )
    root_tol = min(tol, 1e-12)
    if resultant.degree() < 1:
        lam_candidates: list[complex] = []
    else:
        # The square-free part has the same roots without multiplicity, so
        # the simultaneous iteration never stalls on repeated-root clusters.
        lam_candidates = unipoly_roots(resultant.square_free_part(), tol=root_tol)

    scale_f = 1.0 + f.max_abs_coeff()
    scale_g = 1.0 + g.max_abs_coeff()
    f_mu = f.coeffs_in("mu")
    g_mu = g.coeffs_in("mu")

    def mu_candidates(lam0: complex) -> list[complex]:
        for coeffs, scale in ((f_mu, scale_f), (g_mu, scale_g)):
            values = [c.eval_complex(lam0, 0.0) for c in coeffs]
            while values and abs(values[-1]) <= 1e-12 * scale:
                values.pop()
            if len(values) >= 2:
                try:
                    return durand_kerner(values, tol=root_tol)
                except ConvergenceError as stalled:
                    # A tangency (double mu root) limits float accuracy; the
                    # residual filter below decides what survives.
                    return stalled.best
        return []

    accepted: list[SpectrumPoint] = []
    for lam0 in lam_candidates:
        for mu0 in mu_candidates(lam0):
            res = max(
                abs(f.eval_complex(lam0, mu0)) / scale_f,
                abs(g.eval_complex(lam0, mu0)) / scale_g,
            )
            if res < tol:
                accepted.append(SpectrumPoint(lam0, mu0, res))

    accepted.sort(key=lambda p: (p.lam.real, p.lam.imag, p.mu.real, p.mu.imag))
    deduped: list[SpectrumPoint] = []
    for point in accepted:
        match = next(
            (
                k
                for k, kept in enumerate(deduped)
                if max(abs(kept.lam - point.lam), abs(kept.mu - point.mu)) < 10 * tol
            ),
            None,
        )
        if match is None:
            deduped.append(point)
        elif point.residual < deduped[match].residual:
            deduped[match] = point
    deduped.sort(key=lambda p: (p.lam.real, p.lam.imag, p.mu.real, p.mu.imag))
    return SpectrumReport(
        points=tuple(deduped),
        bezout_bound=bound,
        generic=len(deduped) <= bound,
    )


def spectrum_quadratic(
    system: QuadSystem2P, tol: float = DEFAULT_SPECTRUM_TOL
) -> SpectrumReport:
    """The spectrum {(lam, mu) : det Q1 = det Q2 = 0} with bound 4*n1*n2."""
    f = exact_det_poly(system.q1.as_polymatrix())
    g = exact_det_poly(system.q2.as_polymatrix())
    return _common_zeros(f, g, system.bezout_bound, tol)


def spectrum_pencil(
    lin: LinearSystem2P, tol: float = DEFAULT_SPECTRUM_TOL
) -> SpectrumReport:
    """The spectrum {(lam, mu) : det L1 = det L2 = 0} with bound m1*m2."""
    f = exact_det_poly(lin.l1.as_polymatrix())
    g = exact_det_poly(lin.l2.as_polymatrix())
    return _common_zeros(f, g, lin.l1.m * lin.l2.m, tol)


@dataclass(frozen=True)
class SpectralMatchReport:
    """Bidirectional matching of the quadratic and pencil spectra."""

    sigma_q: SpectrumReport
    sigma_l: SpectrumReport
    unmatched_q: tuple[SpectrumPoint, ...]
    unmatched_l: tuple[SpectrumPoint, ...]
    equal: bool


def verify_spectral_equality(
    system: QuadSystem2P, lin: LinearSystem2P, tol: float = DEFAULT_SPECTRUM_TOL
) -> SpectralMatchReport:
    """Match the two finite spectra within tolerance 10*tol per coordinate.

    Certified linearizations must leave both unmatched lists empty.
    """
    sigma_q = spectrum_quadratic(system, tol)
    sigma_l = spectrum_pencil(lin, tol)

    available = list(sigma_l.points)
    unmatched_q = []
    for point in sigma_q.points:
        hit = next(
            (
                k
                for k, cand in enumerate(available)
                if max(abs(cand.lam - point.lam), abs(cand.mu - point.mu)) < 10 * tol
            ),
            None,
        )
        if hit is None:
            unmatched_q.append(point)
        else:
            available.pop(hit)
    return SpectralMatchReport(
        sigma_q=sigma_q,
        sigma_l=sigma_l,
        unmatched_q=tuple(unmatched_q),
        unmatched_l=tuple(available),
        equal=not unmatched_q and not available,
    )


@dataclass(frozen=True)
class ResidualCheck:
    """One residual of the eigenpair verification.

    For exact rational inputs the computation is exact, so ``exact_zero``
    is decisive; ``norm`` is the float magnitude for display, and ``passed``
    compares it against tol times the check's scale (scale = (1 + largest
    entry of the evaluated operator) * max(1, largest entry of the vector)).
    """

    name: str
    norm: float
    exact_zero: bool
    passed: bool


@dataclass(frozen=True)
class EigenpairReport:
    checks: tuple[ResidualCheck, ...]
    passed: bool


def _residual(name: str, operator: Matrix, vector: Matrix, tol: float,
              expected: Optional[Matrix] = None) -> ResidualCheck:
    value = operator @ vector
    if expected is not None:
        value = value - expected
    exact = value.is_zero()
    norm = 0.0 if exact else value.max_abs()
    scale = (1.0 + operator.max_abs()) * max(1.0, vector.max_abs())
    return ResidualCheck(name=name, norm=norm, exact_zero=exact, passed=norm < tol * scale)


def verify_eigenpair(
    system: QuadSystem2P,
    lin: LinearSystem2P,
    lam: ScalarLike,
    mu: ScalarLike,
    x1: Matrix,
    x2: Matrix,
    tol: float = DEFAULT_SPECTRUM_TOL,
) -> EigenpairReport:
    """Check a claimed eigenpair through every layer, exactly.

    Verifies Q_i(lam,mu) x_i = 0, L_i(lam,mu) w_i = 0 for w_i the stacked
    (lam x_i, mu x_i, x_i), and the coupled equations
    Delta1 z = lam Delta0 z, Delta2 z = mu Delta0 z for z = w1 kron w2.
    """
    lam = GaussianRational.coerce(lam)
    mu = GaussianRational.coerce(mu)
    for x, q, label in ((x1, system.q1, "x1"), (x2, system.q2, "x2")):
        if x.cols != 1 or x.rows != q.n:
            raise ShapeError(f"{label} must be a {q.n} x 1 column")
        if x.is_zero():
            raise ValueError(f"{label} must be nonzero")
    w1 = Matrix.vstack([x1.scale(lam), x1.scale(mu), x1])
    w2 = Matrix.vstack([x2.scale(lam), x2.scale(mu), x2])
    z = kron(w1, w2)
    delta = delta_operators(lin)
    checks = (
        _residual("Q1(lam,mu) x1", system.q1.eval(lam, mu), x1, tol),
        _residual("Q2(lam,mu) x2", system.q2.eval(lam, mu), x2, tol),
        _residual("L1(lam,mu) w1", lin.l1.eval(lam, mu), w1, tol),
        _residual("L2(lam,mu) w2", lin.l2.eval(lam, mu), w2, tol),
        _residual(
            "Delta1 z - lam Delta0 z",
            delta.delta1,
            z,
            tol,
            expected=(delta.delta0 @ z).scale(lam),
        ),
        _residual(
            "Delta2 z - mu Delta0 z",
            delta.delta2,
            z,
            tol,
            expected=(delta.delta0 @ z).scale(mu),
        ),
    )
    return EigenpairReport(checks=checks, passed=all(c.passed for c in checks))
