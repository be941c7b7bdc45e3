"""Rational cohomology ring of a K3[2]-type hyperkahler fourfold.

The ring is modeled as H0 + H2 + Sym^2(H2) + H6 + H8 with all products
determined by the quadratic space: rank r, Gram matrix G and Fujiki constant
c.  Degree-6 classes are stored in "hat" coordinates, i.e. the class with hat
vector v is  (1/((r+2)c)) * b * v  where b is the dual class of the form in
degree 4.  With this convention the dual-class pushforward on degree 6 is
literally the identity on coordinates, and the Poincare pairing between
degrees 2 and 6 is the bilinear form itself.

Degree 8 is normalized on the generator of integral 1, so ``integrate`` reads
off the top coefficient directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .quadspace import BBSpace, DimensionMismatchError, Vec2
from .scalars import ONE, ZERO, Scalar, ScalarLike, ssum

ScalarMatrix = tuple[tuple[Scalar, ...], ...]

DEGREES = (0, 2, 4, 6, 8)


class UnsupportedDegreeError(ValueError):
    pass


class SpaceMismatchError(ValueError):
    pass


def _zero_matrix(r: int) -> ScalarMatrix:
    row = tuple(ZERO for _ in range(r))
    return tuple(row for _ in range(r))


class CohClass:
    """Graded class with components in degrees 0, 2, 4, 6, 8."""

    __slots__ = ("ring", "h0", "h2", "h4", "h6", "h8")

    def __init__(self, ring: "CohRing", h0: Scalar, h2: Vec2,
                 h4: ScalarMatrix, h6: Vec2, h8: Scalar):
        self.ring = ring
        self.h0 = h0
        self.h2 = h2
        self.h4 = h4
        self.h6 = h6
        self.h8 = h8

    def component(self, degree: int) -> "CohClass":
        ring = self.ring
        if degree == 0:
            return ring.from_h0(self.h0)
        if degree == 2:
            return ring.from_h2(self.h2)
        if degree == 4:
            return ring.from_h4(self.h4)
        if degree == 6:
            return ring.from_h6_hat(self.h6)
        if degree == 8:
            return ring.from_h8(self.h8)
        raise UnsupportedDegreeError(f"no component of degree {degree}")

    def degrees(self) -> list[int]:
        out = []
        if not self.h0.is_zero():
            out.append(0)
        if any(x for x in self.h2):
            out.append(2)
        if any(x for row in self.h4 for x in row):
            out.append(4)
        if any(x for x in self.h6):
            out.append(6)
        if not self.h8.is_zero():
            out.append(8)
        return out

    def is_zero(self) -> bool:
        return not self.degrees()

    def __add__(self, other: "CohClass") -> "CohClass":
        self.ring.check_same(other.ring)
        return CohClass(
            self.ring,
            self.h0 + other.h0,
            tuple(a + b for a, b in zip(self.h2, other.h2)),
            tuple(tuple(a + b for a, b in zip(r1, r2))
                  for r1, r2 in zip(self.h4, other.h4)),
            tuple(a + b for a, b in zip(self.h6, other.h6)),
            self.h8 + other.h8,
        )

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-other)

    def __neg__(self) -> "CohClass":
        return self.scale(-1)

    def scale(self, c: ScalarLike) -> "CohClass":
        c = Scalar.of(c)
        return CohClass(
            self.ring,
            self.h0 * c,
            tuple(x * c for x in self.h2),
            tuple(tuple(x * c for x in row) for row in self.h4),
            tuple(x * c for x in self.h6),
            self.h8 * c,
        )

    def __mul__(self, other: "CohClass") -> "CohClass":
        return self.ring.cup(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohClass):
            return NotImplemented
        return (self.h0 == other.h0 and self.h2 == other.h2
                and self.h4 == other.h4 and self.h6 == other.h6
                and self.h8 == other.h8)

    def __repr__(self) -> str:
        degs = self.degrees()
        return f"CohClass(degrees={degs or '0'})"


@dataclass
class LefschetzReport:
    """Equivalence witnesses for the 'a is Lefschetz' criterion."""

    pairing_nonzero: bool
    square_invertible: bool
    fourth_invertible: bool
    kernel_witness: tuple | None

    @property
    def equivalent(self) -> bool:
        return self.pairing_nonzero == self.square_invertible == self.fourth_invertible

    @property
    def status(self) -> str:
        return "PASS" if self.equivalent else "FAIL"


class CohRing:
    """Cup-product structure over a fixed quadratic space."""

    def __init__(self, space: BBSpace):
        self.space = space
        r = space.rank
        self._zero_h2 = space.zero_vector()
        self._zero_h4 = _zero_matrix(r)
        # basis of Sym^2: pairs (i, j) with i <= j
        self.sym_pairs = [(i, j) for i in range(r) for j in range(i, r)]

    # -- constructors ---------------------------------------------------

    def check_same(self, other: "CohRing") -> None:
        if self.space != other.space:
            raise SpaceMismatchError("classes live over different spaces")

    def zero(self) -> CohClass:
        return CohClass(self, ZERO, self._zero_h2, self._zero_h4, self._zero_h2, ZERO)

    def unit(self) -> CohClass:
        return self.from_h0(ONE)

    def top(self) -> CohClass:
        """Generator of the top degree with integral 1."""
        return self.from_h8(ONE)

    def from_h0(self, c: ScalarLike) -> CohClass:
        z = self.zero()
        return CohClass(self, Scalar.of(c), z.h2, z.h4, z.h6, ZERO)

    def from_h2(self, v: Sequence[ScalarLike]) -> CohClass:
        z = self.zero()
        return CohClass(self, ZERO, self.space.vector(v), z.h4, z.h6, ZERO)

    def from_h4(self, mat: Sequence[Sequence[ScalarLike]]) -> CohClass:
        r = self.space.rank
        if len(mat) != r or any(len(row) != r for row in mat):
            raise DimensionMismatchError("h4 matrix must be rank x rank")
        m = tuple(tuple(Scalar.of(x) for x in row) for row in mat)
        for i in range(r):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError("h4 matrix must be symmetric")
        z = self.zero()
        return CohClass(self, ZERO, z.h2, m, z.h6, ZERO)

    def from_h6_hat(self, v: Sequence[ScalarLike]) -> CohClass:
        z = self.zero()
        return CohClass(self, ZERO, z.h2, z.h4, self.space.vector(v), ZERO)

    def from_h8(self, c: ScalarLike) -> CohClass:
        z = self.zero()
        return CohClass(self, ZERO, z.h2, z.h4, z.h6, Scalar.of(c))

    def bclass(self) -> CohClass:
        """The degree-4 dual class of the form: Sym^2 coefficients G^{-1}."""
        return self.from_h4(self.space.gram_inv)

    # -- products ---------------------------------------------------------

    def _sym_product(self, x: Vec2, y: Vec2) -> ScalarMatrix:
        r = self.space.rank
        return tuple(
            tuple((x[i] * y[j] + x[j] * y[i]) / 2 for j in range(r))
            for i in range(r)
        )

    def _hat_of_h2_times_h4(self, a: Vec2, q: ScalarMatrix) -> Vec2:
        # hat coordinates of (degree-2 a) * (degree-4 q):
        #   c * (2*q*G*a + tr(G*q)*a), the unique v with (v,d) equal to the
        #   Fujiki pairing of q against a and d for every d.
        space = self.space
        r = space.rank
        g = space.gram
        ga = [ssum(g[i][j] * a[j] for j in range(r) if g[i][j] and a[j])
              for i in range(r)]
        qga = [ssum(q[i][j] * ga[j] for j in range(r) if q[i][j] and ga[j])
               for i in range(r)]
        trgq = ssum(g[i][j] * q[j][i] for i in range(r) for j in range(r)
                    if g[i][j] and q[j][i])
        return tuple((qga[i] * 2 + trgq * a[i]) * space.fujiki for i in range(r))

    def _int_h4_h4(self, q1: ScalarMatrix, q2: ScalarMatrix) -> Scalar:
        # integral of the product of two degree-4 classes:
        #   c * (tr(G q1) tr(G q2) + 2 tr(G q1 G q2))
        space = self.space
        r = space.rank
        g = space.gram
        tr1 = ssum(g[i][j] * q1[j][i] for i in range(r) for j in range(r)
                   if g[i][j] and q1[j][i])
        tr2 = ssum(g[i][j] * q2[j][i] for i in range(r) for j in range(r)
                   if g[i][j] and q2[j][i])
        gq1 = [[ssum(g[i][k] * q1[k][j] for k in range(r) if g[i][k] and q1[k][j])
                for j in range(r)] for i in range(r)]
        gq2 = [[ssum(g[i][k] * q2[k][j] for k in range(r) if g[i][k] and q2[k][j])
                for j in range(r)] for i in range(r)]
        tr12 = ssum(gq1[i][j] * gq2[j][i] for i in range(r) for j in range(r)
                    if gq1[i][j] and gq2[j][i])
        return (tr1 * tr2 + tr12 * 2) * space.fujiki

    def cup(self, x: CohClass, y: CohClass) -> CohClass:
        self.check_same(x.ring)
        self.check_same(y.ring)
        space = self.space
        r = space.rank
        h0 = x.h0 * y.h0
        h2 = list(self._zero_h2)
        h4 = [list(row) for row in self._zero_h4]
        h6 = list(self._zero_h2)
        h8 = ZERO

        def add_vec(target, vec, c=None):
            for i, v in enumerate(vec):
                if v.is_zero():
                    continue
                target[i] = target[i] + (v if c is None else v * c)

        # scalar components scale everything
        if not x.h0.is_zero():
            add_vec(h2, y.h2, x.h0)
            for i in range(r):
                for j in range(r):
                    if y.h4[i][j]:
                        h4[i][j] = h4[i][j] + x.h0 * y.h4[i][j]
            add_vec(h6, y.h6, x.h0)
            h8 = h8 + x.h0 * y.h8
        if not y.h0.is_zero():
            add_vec(h2, x.h2, y.h0)
            for i in range(r):
                for j in range(r):
                    if x.h4[i][j]:
                        h4[i][j] = h4[i][j] + y.h0 * x.h4[i][j]
            add_vec(h6, x.h6, y.h0)
            h8 = h8 + y.h0 * x.h8

        x2 = any(v for v in x.h2)
        y2 = any(v for v in y.h2)
        x4 = any(v for row in x.h4 for v in row)
        y4 = any(v for row in y.h4 for v in row)
        x6 = any(v for v in x.h6)
        y6 = any(v for v in y.h6)

        if x2 and y2:
            prod = self._sym_product(x.h2, y.h2)
            for i in range(r):
                for j in range(r):
                    if prod[i][j]:
                        h4[i][j] = h4[i][j] + prod[i][j]
        if x2 and y4:
            add_vec(h6, self._hat_of_h2_times_h4(x.h2, y.h4))
        if y2 and x4:
            add_vec(h6, self._hat_of_h2_times_h4(y.h2, x.h4))
        if x2 and y6:
            h8 = h8 + space.bb_pair(x.h2, y.h6)
        if y2 and x6:
            h8 = h8 + space.bb_pair(y.h2, x.h6)
        if x4 and y4:
            h8 = h8 + self._int_h4_h4(x.h4, y.h4)
        # degree > 8 products vanish

        return CohClass(self, h0, tuple(h2), tuple(tuple(row) for row in h4),
                        tuple(h6), h8)

    def integrate(self, x: CohClass) -> Scalar:
        return x.h8

    # -- named operators ---------------------------------------------------

    def B_push(self, x: CohClass) -> CohClass:
        """Pushforward along the dual class of the form.

        Degree 6 (hat coordinates v) maps to the degree-2 vector v; this is
        the inverse of cupping with b/((r+2)c).  Degree-4 input is
        annihilated: the relevant bidegree component vanishes, matching the
        vanishing of the corresponding correspondence action.
        """
        if not x.h0.is_zero() or any(v for v in x.h2) or not x.h8.is_zero():
            raise UnsupportedDegreeError(
                "B_push is defined on classes concentrated in degree 4 or 6")
        return self.from_h2(x.h6)

    def e_a(self, a: Vec2, x: CohClass) -> CohClass:
        """Cup product with the degree-2 class a."""
        return self.cup(self.from_h2(a), x)

    def f_tilde(self, a: Vec2, x: CohClass) -> CohClass:
        """Denominator-cleared Lefschetz-dual operator for the class a.

        Acts degree by degree: 0 in degree 0; 4(a,.)[X] on degree 2;
        (2/c) B_push(a * .) on degree 4; (2/c) a * B_push(.) on degree 6;
        (4/((r+2)c)) (integral) b*a on degree 8.
        """
        space = self.space
        if len(a) != space.rank:
            raise DimensionMismatchError("operator class must match rank")
        c = space.fujiki
        out = self.zero()
        # degree 2 -> 0
        if any(v for v in x.h2):
            out = out + self.from_h0(space.bb_pair(a, x.h2) * 4)
        # degree 4 -> 2: (2/c) * hat(a * q)
        if any(v for row in x.h4 for v in row):
            hat = self._hat_of_h2_times_h4(a, x.h4)
            out = out + self.from_h2(tuple(v * 2 / c for v in hat))
        # degree 6 -> 4: (2/c) * a * B_push = (2/c) * sym(a, hat coords)
        if any(v for v in x.h6):
            prod = self._sym_product(a, x.h6)
            out = out + self.from_h4(
                tuple(tuple(v * 2 / c for v in row) for row in prod))
        # degree 8 -> 6: (4/((r+2)c)) (int) * b * a, with hat(b*a) = (r+2)c a
        if not x.h8.is_zero():
            out = out + self.from_h6_hat(tuple(x.h8 * v * 4 for v in a))
        return out

    def grading(self, x: CohClass) -> CohClass:
        """Multiplication by (k - 4) on the degree-k component."""
        return CohClass(
            self,
            x.h0 * -4,
            tuple(v * -2 for v in x.h2),
            self._zero_h4,
            tuple(v * 2 for v in x.h6),
            x.h8 * 4,
        )

    # -- basis / coordinates (shared with the Kunneth layer) ---------------

    def dim(self, degree: int) -> int:
        r = self.space.rank
        if degree in (0, 8):
            return 1
        if degree in (2, 6):
            return r
        if degree == 4:
            return r * (r + 1) // 2
        raise UnsupportedDegreeError(f"degree {degree}")

    def basis(self, degree: int) -> Iterator[CohClass]:
        r = self.space.rank
        if degree == 0:
            yield self.unit()
        elif degree == 2:
            for i in range(r):
                yield self.from_h2(self.space.basis_vector(i))
        elif degree == 4:
            for (i, j) in self.sym_pairs:
                mat = [[ZERO] * r for _ in range(r)]
                if i == j:
                    mat[i][i] = ONE
                else:
                    mat[i][j] = mat[j][i] = Scalar.of(Fraction(1, 2))
                yield self.from_h4(mat)
        elif degree == 6:
            for i in range(r):
                yield self.from_h6_hat(self.space.basis_vector(i))
        elif degree == 8:
            yield self.top()
        else:
            raise UnsupportedDegreeError(f"degree {degree}")

    def coords(self, x: CohClass, degree: int) -> tuple[Scalar, ...]:
        if degree == 0:
            return (x.h0,)
        if degree == 2:
            return x.h2
        if degree == 4:
            return tuple(
                x.h4[i][i] if i == j else x.h4[i][j] * 2
                for (i, j) in self.sym_pairs)
        if degree == 6:
            return x.h6
        if degree == 8:
            return (x.h8,)
        raise UnsupportedDegreeError(f"degree {degree}")

    def from_coords(self, coords: Sequence[ScalarLike], degree: int) -> CohClass:
        coords = [Scalar.of(c) for c in coords]
        if degree == 0:
            return self.from_h0(coords[0])
        if degree == 2:
            return self.from_h2(coords)
        if degree == 4:
            r = self.space.rank
            mat = [[ZERO] * r for _ in range(r)]
            for c, (i, j) in zip(coords, self.sym_pairs):
                if i == j:
                    mat[i][i] = c
                else:
                    mat[i][j] = mat[j][i] = c / 2
            return self.from_h4(mat)
        if degree == 6:
            return self.from_h6_hat(coords)
        if degree == 8:
            return self.from_h8(coords[0])
        raise UnsupportedDegreeError(f"degree {degree}")

    def pairing_matrix(self, degree: int):
        """Integration pairing between bases of complementary degrees.

        Entry [p][q] is the integral of basis(8-degree)[p] * basis(degree)[q];
        numeric, so exact Fraction arithmetic throughout.
        """
        g = self.space.gram
        c = self.space.fujiki
        r = self.space.rank
        if degree in (0, 8):
            return ((Fraction(1),),)
        if degree in (2, 6):
            return g
        if degree == 4:
            pairs = self.sym_pairs
            out = []
            for (i, j) in pairs:
                row = []
                for (k, l) in pairs:
                    # integral of (e_i e_j)(e_k e_l) via the four-point form
                    val = g[i][j] * g[k][l] + g[i][k] * g[j][l] + g[i][l] * g[j][k]
                    row.append(c * val)
                out.append(tuple(row))
            return tuple(out)
        raise UnsupportedDegreeError(f"degree {degree}")

    # -- Lefschetz criterion -----------------------------------------------

    def verify_lefschetz_equiv(self, a: Vec2) -> LefschetzReport:
        """Check (a,a) != 0 <=> e_a^2: H2->H6 invertible <=> e_a^4: H0->H8 nonzero."""
        space = self.space
        for v in a:
            if not v.is_constant():
                raise ValueError("rank checks need numeric (non-symbolic) input")
        pairing = space.bb_pair(a, a)
        nonzero = not pairing.is_zero()
        # e_a^2 on H2 in hat coordinates, column by column over the basis
        r = space.rank
        cols = []
        for j in range(r):
            beta = space.basis_vector(j)
            img = self.e_a(a, self.e_a(a, self.from_h2(beta)))
            cols.append([x.constant_value() for x in img.h6])
        mat = [[cols[j][i] for j in range(r)] for i in range(r)]
        kernel = _kernel_vector(mat)
        square_invertible = kernel is None
        fourth = space.fujiki4(a, a, a, a)
        fourth_invertible = not fourth.is_zero()
        return LefschetzReport(
            pairing_nonzero=nonzero,
            square_invertible=square_invertible,
            fourth_invertible=fourth_invertible,
            kernel_witness=tuple(kernel) if kernel else None,
        )


def _kernel_vector(mat: list[list[Fraction]]) -> list[Fraction] | None:
    """A nonzero kernel vector of a square matrix over Q, or None if invertible."""
    n = len(mat)
    rows = [list(map(Fraction, row)) for row in mat]
    row = 0
    pivot_cols = []
    for col in range(n):
        pivot = next((r for r in range(row, n) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        inv = Fraction(1) / rows[row][col]
        rows[row] = [x * inv for x in rows[row]]
        for r2 in range(n):
            if r2 != row and rows[r2][col]:
                f = rows[r2][col]
                rows[r2] = [x - f * y for x, y in zip(rows[r2], rows[row])]
        pivot_cols.append(col)
        row += 1
    if row == n:
        return None
    free = next(c for c in range(n) if c not in pivot_cols)
    vec = [Fraction(0)] * n
    vec[free] = Fraction(1)
    for rr, pc in enumerate(pivot_cols):
        vec[pc] = -rows[rr][free]
    return vec
