"""Simultaneous polynomial root finding (Durand-Kerner iteration).

This is the one floating-point kernel in the package.  All roots of a
complex-coefficient polynomial are iterated together from perturbed-circle
initial points; the iteration stops when the largest relative correction
drops below the tolerance.  Output order is lexicographic by
(real, imaginary) so downstream reports are deterministic.
"""

from __future__ import annotations

import cmath
from typing import Sequence

import numpy as np

from .bipoly import UniPoly
from .errors import ConvergenceError, DegreeError

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 500


def durand_kerner(
    coeffs: Sequence[complex],
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> list[complex]:
    """All complex roots (with multiplicity) of sum_k coeffs[k] * x^k.

    coeffs is ascending with a nonzero leading coefficient and degree >= 1.
    Raises ConvergenceError (carrying the best iterate) if the maximum
    relative correction max |dz| / max(1, |z|) stays above tol for
    max_iter sweeps.
    """
    if len(coeffs) < 2:
        raise DegreeError("root finding requires degree >= 1")
    lead = complex(coeffs[-1])
    if lead == 0:
        raise DegreeError("leading coefficient must be nonzero")
    monic = np.array([complex(c) / lead for c in coeffs], dtype=complex)
    degree = len(monic) - 1

    radius = max(1.0, 1.0 + max(abs(c) for c in monic[:-1]))
    # Perturbed circle: an irrational-ish angular offset avoids symmetric
    # stalls (e.g. real polynomials with conjugate root pairs).
    z = np.array(
        [radius * cmath.exp(2j * cmath.pi * k / degree + 0.4j) for k in range(degree)],
        dtype=complex,
    )

    powers = np.arange(degree + 1)
    for _ in range(max_iter):
        values = (z[:, None] ** powers[None, :]) @ monic
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = diff.prod(axis=1)
        # A collision of iterates would produce a zero denominator; nudge.
        collided = denom == 0
        if collided.any():
            z = z + np.where(collided, 1e-6 * (1 + 1j), 0)
            continue
        correction = values / denom
        z = z - correction
        rel = np.abs(correction) / np.maximum(1.0, np.abs(z))
        if rel.max() < tol:
            return sorted(map(complex, z), key=lambda w: (w.real, w.imag))
    raise ConvergenceError(
        f"Durand-Kerner did not converge in {max_iter} iterations "
        f"(last max relative correction {rel.max():.3e})",
        sorted(map(complex, z), key=lambda w: (w.real, w.imag)),
    )


def unipoly_roots(
    p: UniPoly,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> list[complex]:
    """Roots of an exact univariate polynomial, sorted lexicographically."""
    if p.degree() < 1:
        raise DegreeError("root finding requires degree >= 1")
    return durand_kerner(p.to_complex_coeffs(), tol=tol, max_iter=max_iter)
