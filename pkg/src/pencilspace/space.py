"""The vector space of candidate linearizations attached to a quadratic.

Membership of a pencil is decided through box-addition: the pencil belongs
to the space iff its box-add equals v kron [A20 A11 A02 A10 A01 A00] for
some ansatz vector v in C^3.  Every member is generated from v plus three
free 3n x n blocks (Y1, Z1, Z2); the v = 0 members form the kernel of the
ansatz map.  The space has dimension 9n^2 + 3 whenever the coefficient row
is nonzero, certified here by an exact rank witness rather than asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .bipoly import BiPoly
from .errors import HypothesisViolatedError, ShapeError
from .matrices import Matrix, kron
from .pencil import Pencil2P, QuadPoly2P, box_add_pencil
from .polymatrix import PolyMatrix
from .scalars import GaussianRational

Vector3 = tuple[GaussianRational, GaussianRational, GaussianRational]


@dataclass(frozen=True)
class FreeBlocks:
    """The free parameters (Y1, Z1, Z2) of a member, each 3n x n."""

    n: int
    y1: Matrix
    z1: Matrix
    z2: Matrix

    def __post_init__(self):
        expected = (3 * self.n, self.n)
        for name in ("y1", "z1", "z2"):
            if getattr(self, name).shape != expected:
                raise ShapeError(
                    f"block {name} has shape {getattr(self, name).shape}, "
                    f"expected {expected}"
                )

    @staticmethod
    def zero(n: int) -> "FreeBlocks":
        z = Matrix.zeros(3 * n, n)
        return FreeBlocks(n, z, z, z)

    def sub(self, name: str, block_row: int) -> Matrix:
        """The n x n sub-block of one free block (block_row in 0..2)."""
        full = getattr(self, name)
        return full.submatrix(
            range(block_row * self.n, (block_row + 1) * self.n), range(self.n)
        )


def coerce_vector3(v: Sequence) -> Vector3:
    values = tuple(GaussianRational.coerce(c) for c in v)
    if len(values) != 3:
        raise ShapeError("ansatz vector must have exactly 3 entries")
    return values


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of the membership test.

    ``ambiguous`` flags the degenerate Q = 0 case, where the identity holds
    for every v (kernel pencils) and no canonical ansatz exists; the zero
    vector is reported then.
    """

    is_member: bool
    v: Optional[Vector3]
    ambiguous: bool = False

    def __bool__(self) -> bool:
        return self.is_member


NOT_MEMBER = MembershipResult(False, None)


def membership(pencil: Pencil2P, q: QuadPoly2P) -> MembershipResult:
    """Recover the ansatz vector of a pencil, or report non-membership.

    Solves block-row-wise: each block row i of the box-add must equal
    v_i times the coefficient row; v_i is read off the first nonzero
    coefficient block and then all six block columns are verified exactly.
    """
    n = q.n
    if pencil.m != 3 * n:
        raise ShapeError(f"pencil size {pencil.m} does not match 3n = {3 * n}")
    b = box_add_pencil(pencil)
    coeffs = q.coefficients()
    pivot = next(
        (
            (j, r, c)
            for j, block in enumerate(coeffs)
            for r in range(n)
            for c in range(n)
            if block[r, c]
        ),
        None,
    )
    if pivot is None:
        # Zero coefficient row: the identity degenerates; any v works when
        # the box-add vanishes, no v works otherwise.
        if b.is_zero():
            zero = GaussianRational(0)
            return MembershipResult(True, (zero, zero, zero), ambiguous=True)
        return MembershipResult(False, None, ambiguous=True)
    j0, r0, c0 = pivot
    denominator = coeffs[j0][r0, c0]
    v = tuple(
        b[i * n + r0, j0 * n + c0] / denominator for i in range(3)
    )
    for i in range(3):
        for j, block in enumerate(coeffs):
            for r in range(n):
                for c in range(n):
                    if b[i * n + r, j * n + c] != v[i] * block[r, c]:
                        return NOT_MEMBER
    return MembershipResult(True, v)


def generate_member(q: QuadPoly2P, v: Sequence, blocks: FreeBlocks) -> Pencil2P:
    """The member with ansatz v and free blocks (Y1, Z1, Z2).

    Coefficients are
      A1 = [v kron A20 | -Y1 + v kron A11 | -Z1 + v kron A10]
      A2 = [Y1 | v kron A02 | -Z2 + v kron A01]
      A3 = [Z1 | Z2 | v kron A00]
    and membership of the result returns v (for nonzero Q).
    """
    n = q.n
    if blocks.n != n:
        raise ShapeError(f"blocks sized for n = {blocks.n}, quadratic has n = {n}")
    v = coerce_vector3(v)
    v_col = Matrix.column(v)
    vk = lambda m: kron(v_col, m)
    a1 = Matrix.hstack([vk(q.a20), -blocks.y1 + vk(q.a11), -blocks.z1 + vk(q.a10)])
    a2 = Matrix.hstack([blocks.y1, vk(q.a02), -blocks.z2 + vk(q.a01)])
    a3 = Matrix.hstack([blocks.z1, blocks.z2, vk(q.a00)])
    return Pencil2P(3 * n, a1, a2, a3)


def kernel_member(n: int, blocks: FreeBlocks) -> Pencil2P:
    """A member of the kernel of the ansatz map.

    Coefficients are A1 = [0 | -Y1 | -Z1], A2 = [Y1 | 0 | -Z2],
    A3 = [Z1 | Z2 | 0]; both the box-add and the Lambda-product of the
    result vanish identically.
    """
    if blocks.n != n:
        raise ShapeError(f"blocks sized for n = {blocks.n}, requested n = {n}")
    zero = Matrix.zeros(3 * n, n)
    a1 = Matrix.hstack([zero, -blocks.y1, -blocks.z1])
    a2 = Matrix.hstack([blocks.y1, zero, -blocks.z2])
    a3 = Matrix.hstack([blocks.z1, blocks.z2, zero])
    return Pencil2P(3 * n, a1, a2, a3)


@dataclass(frozen=True)
class DimensionSummary:
    """Dimension of the space plus the exact rank witness that certifies it."""

    n: int
    dimension: int
    witness_rank: int
    degenerate: bool

    @property
    def verified(self) -> bool:
        return self.witness_rank == self.dimension


def _vectorize(pencil: Pencil2P) -> list[GaussianRational]:
    out = []
    for mat in (pencil.lam_coeff, pencil.mu_coeff, pencil.const):
        for i in range(mat.rows):
            out.extend(mat.row_entries(i))
    return out


def space_dimension(q: QuadPoly2P) -> DimensionSummary:
    """Certified dimension 9n^2 + 3 of the space attached to q.

    The witness stacks the vectorized pencils of the canonical parameter
    directions (three ansatz directions with zero blocks, plus the unit
    directions of Y1, Z1, Z2) and confirms their exact rank by elimination.
    For the all-zero quadratic the ansatz directions collapse into the
    kernel and the dimension degenerates to 9n^2.
    """
    n = q.n
    degenerate = q.is_zero()
    rows = []
    if not degenerate:
        zero_blocks = FreeBlocks.zero(n)
        for i in range(3):
            e = [0, 0, 0]
            e[i] = 1
            rows.append(_vectorize(generate_member(q, e, zero_blocks)))
    zero = Matrix.zeros(3 * n, n)
    for which in ("y1", "z1", "z2"):
        for r in range(3 * n):
            for c in range(n):
                unit = Matrix(
                    [
                        [1 if (i == r and j == c) else 0 for j in range(n)]
                        for i in range(3 * n)
                    ]
                )
                blocks = FreeBlocks(
                    n,
                    unit if which == "y1" else zero,
                    unit if which == "z1" else zero,
                    unit if which == "z2" else zero,
                )
                rows.append(_vectorize(kernel_member(n, blocks)))
    witness_rank = Matrix(rows).rank()
    dimension = 9 * n * n if degenerate else 9 * n * n + 3
    return DimensionSummary(n, dimension, witness_rank, degenerate)


@dataclass(frozen=True)
class SingleParamPencil:
    """A 2n x 2n one-parameter pencil lam*X1 + X3 (the mu = 0 reduction)."""

    n: int
    lam_coeff: Matrix
    const: Matrix
    v: tuple[GaussianRational, GaussianRational]

    def eval(self, lam) -> Matrix:
        return self.lam_coeff.scale(lam) + self.const


def reduce_mu_zero(pencil: Pencil2P, q: QuadPoly2P) -> SingleParamPencil:
    """Carve the one-parameter pencil obtained by setting mu = 0.

    Requires a member built with Y1 = 0.  Blocks rows 1-2 and columns
    {1, 3} of (A1, A3) give X1 = [v' kron A20 | -Z1' + v' kron A10] and
    X3 = [Z1' | v' kron A00] with v' the first two ansatz entries and Z1'
    the top 2n x n part of Z1; the result satisfies
    (lam*X1 + X3) ((lam,1)^T kron I_n) = v' kron (lam^2 A20 + lam A10 + A00).
    """
    result = membership(pencil, q)
    if not result:
        raise HypothesisViolatedError("pencil is not a member of the space")
    n = q.n
    y1 = pencil.mu_coeff.submatrix(range(3 * n), range(n))
    if not y1.is_zero():
        raise HypothesisViolatedError("reduction requires Y1 = 0")
    rows = range(2 * n)
    cols = list(range(n)) + list(range(2 * n, 3 * n))
    x1 = Matrix([[pencil.lam_coeff[i, j] for j in cols] for i in rows])
    x3 = Matrix([[pencil.const[i, j] for j in cols] for i in rows])
    reduced = SingleParamPencil(n, x1, x3, (result.v[0], result.v[1]))
    _check_single_param_identity(reduced, q)
    return reduced


def _check_single_param_identity(reduced: SingleParamPencil, q: QuadPoly2P) -> None:
    n = reduced.n
    lam = BiPoly.lam()
    pencil_poly = PolyMatrix.from_scalar(reduced.lam_coeff).scale(lam) + PolyMatrix.from_scalar(
        reduced.const
    )
    stack = PolyMatrix.from_blocks(
        [[PolyMatrix.identity(n).scale(lam)], [PolyMatrix.identity(n)]]
    )
    single = (
        PolyMatrix.from_scalar(q.a20).scale(lam * lam)
        + PolyMatrix.from_scalar(q.a10).scale(lam)
        + PolyMatrix.from_scalar(q.a00)
    )
    target = PolyMatrix.from_scalar(Matrix.column(reduced.v)).kron(single)
    if pencil_poly @ stack != target:
        raise HypothesisViolatedError(
            "reduced pencil fails the one-parameter ansatz identity"
        )
