"""Shared helpers: seeded random instances and the worked example fixtures."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from pencilspace import FreeBlocks, Matrix, QuadPoly2P
from pencilspace.scalars import GaussianRational


def rand_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice((1, 1, 1, 2, 3)))


def rand_gr(rng: random.Random, complex_prob: float = 0.25) -> GaussianRational:
    im = rand_fraction(rng) if rng.random() < complex_prob else 0
    return GaussianRational(rand_fraction(rng), im)


def rand_matrix(rng: random.Random, rows: int, cols: int, complex_prob: float = 0.25) -> Matrix:
    return Matrix(
        [[rand_gr(rng, complex_prob) for _ in range(cols)] for _ in range(rows)]
    )


def rand_quad(rng: random.Random, n: int, complex_prob: float = 0.25) -> QuadPoly2P:
    return QuadPoly2P(n, *(rand_matrix(rng, n, n, complex_prob) for _ in range(6)))


def rand_blocks(rng: random.Random, n: int, complex_prob: float = 0.25) -> FreeBlocks:
    return FreeBlocks(
        n, *(rand_matrix(rng, 3 * n, n, complex_prob) for _ in range(3))
    )


def rand_nonzero_gr(rng: random.Random) -> GaussianRational:
    while True:
        value = rand_gr(rng)
        if value:
            return value


def example_quad(n: int = 2) -> QuadPoly2P:
    """A fixed concrete quadratic used for the worked-example tests."""
    if n == 1:
        return QuadPoly2P.scalar(a20=2, a11=1, a02=-1, a10=3, a01=-2, a00=1)
    if n == 2:
        return QuadPoly2P(
            2,
            Matrix([[1, 2], [0, 1]]),
            Matrix([[0, 1], [1, 0]]),
            Matrix([[2, 0], [1, 1]]),
            Matrix([[1, 0], [2, 1]]),
            Matrix([[0, 2], [1, 3]]),
            Matrix([[3, 1], [0, 2]]),
        )
    raise ValueError("example fixtures exist for n = 1 and n = 2 only")


def worked_example_blocks(q: QuadPoly2P) -> FreeBlocks:
    """The free blocks that generate the worked (1,1,2)-ansatz member:
    Y1 = [-A20; -A00+A11; A02], Z1 = [-A01; A10; -I+2A10], Z2 = [0; A01; A01]."""
    n = q.n
    eye = Matrix.identity(n)
    return FreeBlocks(
        n,
        Matrix.vstack([-q.a20, -q.a00 + q.a11, q.a02]),
        Matrix.vstack([-q.a01, q.a10, -eye + q.a10.scale(2)]),
        Matrix.vstack([Matrix.zeros(n, n), q.a01, q.a01]),
    )


def worked_example_pencil(q: QuadPoly2P):
    """The worked (1,1,2)-ansatz member written out entry-for-entry.

    This is an independent oracle: the nine blocks of each coefficient are
    spelled out rather than generated, so generate_member can be checked
    against it.
    """
    from pencilspace import Pencil2P

    n = q.n
    eye = Matrix.identity(n)
    zero = Matrix.zeros(n, n)
    two = lambda m: m.scale(2)
    a1 = Matrix.from_blocks(
        [
            [q.a20, q.a11 + q.a20, q.a10 + q.a01],
            [q.a20, q.a00, zero],
            [two(q.a20), two(q.a11) - q.a02, eye],
        ]
    )
    a2 = Matrix.from_blocks(
        [
            [-q.a20, q.a02, q.a01],
            [q.a11 - q.a00, q.a02, zero],
            [q.a02, two(q.a02), q.a01],
        ]
    )
    a3 = Matrix.from_blocks(
        [
            [-q.a01, zero, q.a00],
            [q.a10, q.a01, q.a00],
            [-eye + two(q.a10), q.a01, two(q.a00)],
        ]
    )
    return Pencil2P(3 * n, a1, a2, a3)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
