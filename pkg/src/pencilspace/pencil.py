"""Quadratic two-parameter matrix polynomials and linear pencils.

A quadratic object is six n x n coefficient matrices; its value at
(lam, mu) is lam^2*A20 + mu^2*A02 + lam*mu*A11 + lam*A10 + mu*A01 + A00.
A pencil is three m x m matrices: the lam coefficient, the mu coefficient
and the constant term.  Pencils attached to a quadratic have m = 3n and
are handled as 3 x 3 grids of n x n blocks.

Box-addition is the shifted-overlap sum that turns the three pencil
coefficients into a 3n x 6n matrix; a pencil satisfies the ansatz identity
L(lam,mu) * (Lambda kron I_n) = v kron Q(lam,mu), Lambda = (lam, mu, 1)^T,
exactly when its box-addition equals v kron [A20 A11 A02 A10 A01 A00].
"""

from __future__ import annotations

from dataclasses import dataclass

from .bipoly import BiPoly
from .errors import ShapeError
from .matrices import Matrix, kron
from .polymatrix import PolyMatrix
from .scalars import GaussianRational, ScalarLike

# Canonical ordering of the six coefficient blocks in the target row.
COEFF_ORDER = ("a20", "a11", "a02", "a10", "a01", "a00")


@dataclass(frozen=True)
class QuadPoly2P:
    """A quadratic two-parameter matrix polynomial with exact coefficients."""

    n: int
    a20: Matrix
    a11: Matrix
    a02: Matrix
    a10: Matrix
    a01: Matrix
    a00: Matrix

    def __post_init__(self):
        for name in COEFF_ORDER:
            m = getattr(self, name)
            if m.shape != (self.n, self.n):
                raise ShapeError(
                    f"coefficient {name} has shape {m.shape}, expected {(self.n, self.n)}"
                )

    @staticmethod
    def scalar(a20=0, a11=0, a02=0, a10=0, a01=0, a00=0) -> "QuadPoly2P":
        """Convenience constructor for the n = 1 case."""
        return QuadPoly2P(
            1, *(Matrix([[v]]) for v in (a20, a11, a02, a10, a01, a00))
        )

    def coefficients(self) -> tuple[Matrix, ...]:
        return tuple(getattr(self, name) for name in COEFF_ORDER)

    def coefficient_row(self) -> Matrix:
        """The n x 6n row [A20 A11 A02 A10 A01 A00]."""
        return Matrix.hstack(self.coefficients())

    def eval(self, lam: ScalarLike, mu: ScalarLike) -> Matrix:
        lam = GaussianRational.coerce(lam)
        mu = GaussianRational.coerce(mu)
        return (
            self.a20.scale(lam * lam)
            + self.a02.scale(mu * mu)
            + self.a11.scale(lam * mu)
            + self.a10.scale(lam)
            + self.a01.scale(mu)
            + self.a00
        )

    def as_polymatrix(self) -> PolyMatrix:
        lam, mu = BiPoly.lam(), BiPoly.mu()
        weights = (lam * lam, lam * mu, mu * mu, lam, mu, BiPoly.constant(1))
        out = PolyMatrix.zeros(self.n, self.n)
        for weight, coeff in zip(weights, self.coefficients()):
            out = out + PolyMatrix.from_scalar(coeff).scale(weight)
        return out

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.coefficients())


@dataclass(frozen=True)
class Pencil2P:
    """A linear two-parameter pencil lam*A1 + mu*A2 + A3 of size m x m."""

    m: int
    lam_coeff: Matrix
    mu_coeff: Matrix
    const: Matrix

    def __post_init__(self):
        for name in ("lam_coeff", "mu_coeff", "const"):
            mat = getattr(self, name)
            if mat.shape != (self.m, self.m):
                raise ShapeError(
                    f"pencil coefficient {name} has shape {mat.shape}, "
                    f"expected {(self.m, self.m)}"
                )

    @property
    def block_size(self) -> int:
        if self.m % 3:
            raise ShapeError(f"pencil size {self.m} is not divisible by 3")
        return self.m // 3

    def eval(self, lam: ScalarLike, mu: ScalarLike) -> Matrix:
        lam = GaussianRational.coerce(lam)
        mu = GaussianRational.coerce(mu)
        return self.lam_coeff.scale(lam) + self.mu_coeff.scale(mu) + self.const

    def as_polymatrix(self) -> PolyMatrix:
        return (
            PolyMatrix.from_scalar(self.lam_coeff).scale(BiPoly.lam())
            + PolyMatrix.from_scalar(self.mu_coeff).scale(BiPoly.mu())
            + PolyMatrix.from_scalar(self.const)
        )

    def transform(self, m3: Matrix) -> "Pencil2P":
        """Left-multiply all three coefficients by m3 kron I_n."""
        if m3.shape != (3, 3):
            raise ShapeError("block transformation must be 3 x 3")
        op = kron(m3, Matrix.identity(self.block_size))
        return Pencil2P(
            self.m, op @ self.lam_coeff, op @ self.mu_coeff, op @ self.const
        )

    def __add__(self, other: "Pencil2P") -> "Pencil2P":
        return Pencil2P(
            self.m,
            self.lam_coeff + other.lam_coeff,
            self.mu_coeff + other.mu_coeff,
            self.const + other.const,
        )

    def __sub__(self, other: "Pencil2P") -> "Pencil2P":
        return Pencil2P(
            self.m,
            self.lam_coeff - other.lam_coeff,
            self.mu_coeff - other.mu_coeff,
            self.const - other.const,
        )

    def scale(self, scalar: ScalarLike) -> "Pencil2P":
        return Pencil2P(
            self.m,
            self.lam_coeff.scale(scalar),
            self.mu_coeff.scale(scalar),
            self.const.scale(scalar),
        )


def lambda_kron_identity(n: int) -> PolyMatrix:
    """The 3n x n polynomial matrix (lam, mu, 1)^T kron I_n."""
    lam = PolyMatrix.identity(n).scale(BiPoly.lam())
    mu = PolyMatrix.identity(n).scale(BiPoly.mu())
    return PolyMatrix.from_blocks([[lam], [mu], [PolyMatrix.identity(n)]])


def box_add(x: Matrix, y: Matrix, z: Matrix) -> Matrix:
    """Shifted-overlap block sum of three 3n x 3n matrices into 3n x 6n.

    With block columns X = [X1 X2 X3] etc., the six output block columns
    are X1, X2+Y1, Y2, X3+Z1, Y3+Z2, Z3.
    """
    if not (x.shape == y.shape == z.shape) or x.rows != x.cols:
        raise ShapeError("box addition requires three square matrices of equal size")
    if x.rows % 3:
        raise ShapeError(f"size {x.rows} is not divisible by 3")
    n = x.rows // 3
    col = lambda m, j: m.submatrix(range(3 * n), range(j * n, (j + 1) * n))
    return Matrix.hstack(
        [
            col(x, 0),
            col(x, 1) + col(y, 0),
            col(y, 1),
            col(x, 2) + col(z, 0),
            col(y, 2) + col(z, 1),
            col(z, 2),
        ]
    )


def box_add_pencil(pencil: Pencil2P) -> Matrix:
    return box_add(pencil.lam_coeff, pencil.mu_coeff, pencil.const)


def standard_linearization(q: QuadPoly2P) -> Pencil2P:
    """The 3n x 3n companion-style linearization with ansatz e1."""
    n = q.n
    eye = Matrix.identity(n)
    zero = Matrix.zeros(n, n)
    a1 = Matrix.from_blocks(
        [[q.a20, q.a11, zero], [zero, zero, zero], [zero, zero, eye]]
    )
    a2 = Matrix.from_blocks(
        [[zero, q.a02, zero], [zero, zero, eye], [zero, zero, zero]]
    )
    a3 = Matrix.from_blocks(
        [[q.a10, q.a01, q.a00], [zero, -eye, zero], [-eye, zero, zero]]
    )
    return Pencil2P(3 * n, a1, a2, a3)


def apply_to_lambda(pencil: Pencil2P) -> PolyMatrix:
    """The exact 3n x n product L(lam,mu) * (Lambda kron I_n)."""
    n = pencil.block_size
    return pencil.as_polymatrix() @ lambda_kron_identity(n)


def ansatz_target(q: QuadPoly2P, v) -> PolyMatrix:
    """The 3n x n polynomial matrix v kron Q(lam,mu)."""
    v_col = Matrix.column(v)
    return PolyMatrix.from_scalar(v_col).kron(q.as_polymatrix())


@dataclass(frozen=True)
class CorrespondenceReport:
    """Both sides of the eigenvector correspondence identity at a point."""

    left: Matrix
    right: Matrix
    exact: bool
    max_residual: float


def eigenvector_correspondence(
    q: QuadPoly2P,
    pencil: Pencil2P,
    v,
    lam: ScalarLike,
    mu: ScalarLike,
    x: Matrix,
) -> CorrespondenceReport:
    """Check L(lam,mu) * (Lambda kron x) = v kron (Q(lam,mu) x) exactly.

    v is the pencil's known ansatz vector; x must be a nonzero n x 1
    column.  In particular Q(lam,mu) x = 0 forces the pencil to annihilate
    Lambda kron x.
    """
    if x.cols != 1 or x.rows != q.n:
        raise ShapeError(f"eigenvector must be {q.n} x 1")
    if x.is_zero():
        raise ValueError("eigenvector must be nonzero")
    lam = GaussianRational.coerce(lam)
    mu = GaussianRational.coerce(mu)
    w = Matrix.vstack([x.scale(lam), x.scale(mu), x])
    left = pencil.eval(lam, mu) @ w
    right = kron(Matrix.column(v), q.eval(lam, mu) @ x)
    diff = left - right
    return CorrespondenceReport(
        left=left,
        right=right,
        exact=diff.is_zero(),
        max_residual=0.0 if diff.is_zero() else diff.max_abs(),
    )
