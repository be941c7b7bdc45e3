"""Rank-r quadratic space with Gram matrix and Fujiki constant.

This is the numerical backbone: a nondegenerate symmetric bilinear form on a
rank-r rational vector space (the degree-2 classes), together with the Fujiki
constant c that governs all top intersections of degree-2 classes through

    integral(a*b*c*d) = c * [(a,b)(c,d) + (a,c)(b,d) + (a,d)(b,c)].

Gram matrices are arbitrary rational symmetric invertible; nothing assumes an
orthonormal basis.  Default rank is 23 with the identity Gram and c = 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalars import ONE, ZERO, Scalar, ScalarLike, ssum

Vec2 = tuple[Scalar, ...]
FracMatrix = tuple[tuple[Fraction, ...], ...]

DEFAULT_RANK = 23


class DimensionMismatchError(ValueError):
    pass


class SingularGramError(ValueError):
    pass


def invert_matrix(rows: Sequence[Sequence[Fraction]]) -> FracMatrix:
    """Exact inverse by Gauss-Jordan elimination over Q."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularGramError("matrix is singular over Q")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


class BBSpace:
    """Beauville-Bogomolov quadratic space: rank, Gram matrix, Fujiki constant."""

    def __init__(self, rank: int = DEFAULT_RANK,
                 gram: Sequence[Sequence[Fraction | int]] | None = None,
                 fujiki: Fraction | int = 1):
        if rank < 1:
            raise ValueError("rank must be a positive integer")
        if gram is None:
            gram = [[Fraction(int(i == j)) for j in range(rank)] for i in range(rank)]
        if len(gram) != rank or any(len(row) != rank for row in gram):
            raise DimensionMismatchError("Gram matrix must be rank x rank")
        g = tuple(tuple(Fraction(x) for x in row) for row in gram)
        for i in range(rank):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self.rank = rank
        self.gram: FracMatrix = g
        self.fujiki = Fraction(fujiki)
        if self.fujiki <= 0:
            raise ValueError("Fujiki constant must be positive")
        self.gram_inv: FracMatrix = invert_matrix(g)

    # -- vectors --------------------------------------------------------

    def vector(self, entries: Sequence[ScalarLike]) -> Vec2:
        if len(entries) != self.rank:
            raise DimensionMismatchError(
                f"vector length {len(entries)} != rank {self.rank}")
        return tuple(Scalar.of(x) for x in entries)

    def zero_vector(self) -> Vec2:
        return tuple(ZERO for _ in range(self.rank))

    def basis_vector(self, i: int) -> Vec2:
        return tuple(ONE if j == i else ZERO for j in range(self.rank))

    def symbolic_vector(self, prefix: str) -> Vec2:
        """Vector of fresh indeterminates, for 'all divisor classes' proofs."""
        return tuple(Scalar.var(f"{prefix}{i+1}") for i in range(self.rank))

    # -- the form ---------------------------------------------------------

    def bb_pair(self, x: Vec2, y: Vec2) -> Scalar:
        if len(x) != self.rank or len(y) != self.rank:
            raise DimensionMismatchError("bb_pair arguments must match rank")
        total = ZERO
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            row = self.gram[i]
            partial = ssum(row[j] * y[j] for j in range(self.rank)
                           if row[j] and not y[j].is_zero())
            total = total + xi * partial
        return total

    def fujiki4(self, a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> Scalar:
        """Four-point Fujiki form: fully symmetric extension of 3c(a,a)^2."""
        ab, cd = self.bb_pair(a, b), self.bb_pair(c, d)
        ac, bd = self.bb_pair(a, c), self.bb_pair(b, d)
        ad, bc = self.bb_pair(a, d), self.bb_pair(b, c)
        return (ab * cd + ac * bd + ad * bc) * self.fujiki

    def dual_tensor(self) -> FracMatrix:
        """Coefficient matrix of the dual class of the form: G^{-1}."""
        return self.gram_inv

    # -- misc ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, BBSpace) and self.rank == other.rank
                and self.gram == other.gram and self.fujiki == other.fujiki)

    def __repr__(self) -> str:
        return f"BBSpace(rank={self.rank}, fujiki={self.fujiki})"
