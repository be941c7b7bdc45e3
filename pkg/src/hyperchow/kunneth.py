"""Cohomology of the self-product with correspondence calculus.

Classes on the product are stored sparsely by bidegree: the block at
bidegree (i, j) is a dict mapping basis-index pairs to Scalars, in the bases
of the single-factor model ring.  Correspondences act by pull-multiply-push;
composition is implemented through the operator model (act on a basis,
reassemble against the dual basis), which the auxiliary product lemma
equates with the triple-product definition - and that equation is itself
part of the test suite.
"""

from __future__ import annotations

from fractions import Fraction

from .cohring import CohClass, CohRing, SpaceMismatchError
from .quadspace import Vec2
from .scalars import ZERO, Scalar, ScalarLike

Block = dict[tuple[int, int], Scalar]
DEGREES = (0, 2, 4, 6, 8)


class KunnethClass:
    """Sparse bidegree-graded class on the self-product."""

    __slots__ = ("alg", "blocks")

    def __init__(self, alg: "KunnethAlgebra", blocks: dict[tuple[int, int], Block]):
        self.alg = alg
        self.blocks = {bd: blk for bd, blk in blocks.items() if blk}

    def is_zero(self) -> bool:
        return not self.blocks

    def __add__(self, other: "KunnethClass") -> "KunnethClass":
        self.alg.check_same(other.alg)
        blocks = {bd: dict(blk) for bd, blk in self.blocks.items()}
        for bd, blk in other.blocks.items():
            tgt = blocks.setdefault(bd, {})
            for key, val in blk.items():
                s = tgt.get(key, ZERO) + val
                if s.is_zero():
                    tgt.pop(key, None)
                else:
                    tgt[key] = s
        return KunnethClass(self.alg, {bd: b for bd, b in blocks.items() if b})

    def __sub__(self, other: "KunnethClass") -> "KunnethClass":
        return self + other.scale(-1)

    def __neg__(self) -> "KunnethClass":
        return self.scale(-1)

    def scale(self, c: ScalarLike) -> "KunnethClass":
        c = Scalar.of(c)
        if c.is_zero():
            return KunnethClass(self.alg, {})
        return KunnethClass(self.alg, {
            bd: {k: v * c for k, v in blk.items()}
            for bd, blk in self.blocks.items()
        })

    def __mul__(self, other: "KunnethClass") -> "KunnethClass":
        return self.alg.product(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KunnethClass):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self) -> str:
        return f"KunnethClass(bidegrees={sorted(self.blocks)})"


class KunnethAlgebra:
    """Product, pushforwards, diagonal and composition over a model ring."""

    def __init__(self, ring: CohRing):
        self.ring = ring
        self.space = ring.space
        r = self.space.rank
        self.sym_index = {pair: n for n, pair in enumerate(ring.sym_pairs)}
        self._pairing = {k: ring.pairing_matrix(k) for k in DEGREES}
        self._dual_coeffs: dict[int, tuple[tuple[Fraction, ...], ...]] = {}
        self._basis_cache: dict[int, list[CohClass]] = {}

    # -- plumbing ---------------------------------------------------------

    def check_same(self, other: "KunnethAlgebra") -> None:
        if self.space != other.space:
            raise SpaceMismatchError("classes live over different spaces")

    def zero(self) -> KunnethClass:
        return KunnethClass(self, {})

    def basis(self, degree: int) -> list[CohClass]:
        if degree not in self._basis_cache:
            self._basis_cache[degree] = list(self.ring.basis(degree))
        return self._basis_cache[degree]

    def dual_coeffs(self, degree: int):
        """Matrix C with dual(basis(degree)[q]) = sum_p C[p][q] basis(8-degree)[p]."""
        if degree in self._dual_coeffs:
            return self._dual_coeffs[degree]
        r = self.space.rank
        ginv = self.space.gram_inv
        if degree in (0, 8):
            out = ((Fraction(1),),)
        elif degree in (2, 6):
            out = ginv
        else:
            # closed-form inverse of the degree-4 intersection pairing:
            # dual of the class with matrix Q has matrix
            #   (1/(2c)) (G^-1 Q G^-1 - tr(G^-1 Q)/(r+2) G^-1)
            c = self.space.fujiki
            pairs = self.ring.sym_pairs
            n = len(pairs)
            cols = [[ginv[i][k] for i in range(r)] for k in range(r)]
            out_rows = [[Fraction(0)] * n for _ in range(n)]
            half = Fraction(1, 2) / c
            for q, (k, l) in enumerate(pairs):
                trq = ginv[k][l]
                for p, (i, j) in enumerate(pairs):
                    if k == l:
                        rij = cols[k][i] * cols[k][j]
                    else:
                        rij = (cols[k][i] * cols[l][j] + cols[l][i] * cols[k][j]) / 2
                    rij = half * (rij - trq / (r + 2) * ginv[i][j])
                    out_rows[p][q] = rij if i == j else 2 * rij
            out = tuple(tuple(row) for row in out_rows)
        self._dual_coeffs[degree] = out
        return out

    # -- constructors -------------------------------------------------------

    def tensor(self, x: CohClass, y: CohClass) -> KunnethClass:
        blocks: dict[tuple[int, int], Block] = {}
        for i in DEGREES:
            ci = self.ring.coords(x, i)
            if not any(ci):
                continue
            for j in DEGREES:
                cj = self.ring.coords(y, j)
                if not any(cj):
                    continue
                blk: Block = {}
                for p, vp in enumerate(ci):
                    if vp.is_zero():
                        continue
                    for q, vq in enumerate(cj):
                        if not vq.is_zero():
                            blk[(p, q)] = vp * vq
                if blk:
                    blocks[(i, j)] = blk
        return KunnethClass(self, blocks)

    def pull1(self, x: CohClass) -> KunnethClass:
        return self.tensor(x, self.ring.unit())

    def pull2(self, x: CohClass) -> KunnethClass:
        return self.tensor(self.ring.unit(), x)

    def bb_class(self) -> KunnethClass:
        """The Kunneth avatar of the form: sum (G^-1)_ij e_i (x) e_j."""
        ginv = self.space.gram_inv
        r = self.space.rank
        blk = {(i, j): Scalar.of(ginv[i][j]) for i in range(r) for j in range(r)
               if ginv[i][j]}
        return KunnethClass(self, {(2, 2): blk})

    # -- slot products -------------------------------------------------------

    def _slot_cup(self, d1: int, p: int, d2: int, q: int):
        """Expansion of basis(d1)[p] * basis(d2)[q] in the basis of d1+d2.

        Returns a list of (index, Fraction) pairs; empty when the product
        lands above the top degree.  All cases are O(1)-sparse.
        """
        if d1 > d2:
            return self._slot_cup(d2, q, d1, p)
        if d1 + d2 > 8:
            return []
        g = self.space.gram
        c = self.space.fujiki
        if d1 == 0:
            return [(q, Fraction(1))]
        if d1 == 2 and d2 == 2:
            key = (p, q) if p <= q else (q, p)
            return [(self.sym_index[key], Fraction(1))]
        if d1 == 2 and d2 == 4:
            i, j = self.ring.sym_pairs[q]
            # hat coordinates of e_p * (e_i e_j):
            #   c (2 E_ij G e_p + tr(G E_ij) e_p)
            out: dict[int, Fraction] = {}
            if i == j:
                out[i] = out.get(i, Fraction(0)) + 2 * c * g[i][p]
            else:
                out[i] = out.get(i, Fraction(0)) + c * g[j][p]
                out[j] = out.get(j, Fraction(0)) + c * g[i][p]
            out[p] = out.get(p, Fraction(0)) + c * g[i][j]
            return [(k, v) for k, v in out.items() if v]
        if d1 == 2 and d2 == 6:
            # Poincare pairing of degrees 2 and 6 is the form in hat coordinates
            val = g[p][q]
            return [(0, val)] if val else []
        if d1 == 4 and d2 == 4:
            i, j = self.ring.sym_pairs[p]
            k, l = self.ring.sym_pairs[q]
            val = g[i][j] * g[k][l] + g[i][k] * g[j][l] + g[i][l] * g[j][k]
            return [(0, c * val)] if val else []
        return []

    def product(self, x: KunnethClass, y: KunnethClass) -> KunnethClass:
        self.check_same(x.alg)
        self.check_same(y.alg)
        blocks: dict[tuple[int, int], Block] = {}
        for (i1, j1), blk1 in x.blocks.items():
            for (i2, j2), blk2 in y.blocks.items():
                if i1 + i2 > 8 or j1 + j2 > 8:
                    continue
                target = blocks.setdefault((i1 + i2, j1 + j2), {})
                for (p1, q1), v1 in blk1.items():
                    for (p2, q2), v2 in blk2.items():
                        left = self._slot_cup(i1, p1, i2, p2)
                        if not left:
                            continue
                        right = self._slot_cup(j1, q1, j2, q2)
                        if not right:
                            continue
                        v = v1 * v2
                        for (pi, ci) in left:
                            for (qi, cj) in right:
                                coeff = ci * cj
                                key = (pi, qi)
                                s = target.get(key, ZERO) + v * coeff
                                if s.is_zero():
                                    target.pop(key, None)
                                else:
                                    target[key] = s
        return KunnethClass(self, {bd: b for bd, b in blocks.items() if b})

    def transpose(self, x: KunnethClass) -> KunnethClass:
        return KunnethClass(self, {
            (j, i): {(q, p): v for (p, q), v in blk.items()}
            for (i, j), blk in x.blocks.items()
        })

    # -- push / act ------------------------------------------------------------

    def push2(self, x: KunnethClass) -> CohClass:
        """Integrate out the first factor: keep first-degree-8 components."""
        out = self.ring.zero()
        for (i, j), blk in x.blocks.items():
            if i != 8:
                continue
            coords = [ZERO] * self.ring.dim(j)
            for (p, q), v in blk.items():
                coords[q] = coords[q] + v
            out = out + self.ring.from_coords(coords, j)
        return out

    def push1(self, x: KunnethClass) -> CohClass:
        return self.push2(self.transpose(x))

    def act(self, gamma: KunnethClass, x: CohClass) -> CohClass:
        """Correspondence action push2(gamma * pull1(x)) without the product."""
        out = self.ring.zero()
        for k in DEGREES:
            coords = self.ring.coords(x, k)
            if not any(coords):
                continue
            pairing = self._pairing[k]
            # pairvec[p] = integral(basis(8-k)[p] * x_k)
            pairvec = [None] * len(pairing)
            for p, row in enumerate(pairing):
                total = ZERO
                for q, cq in enumerate(coords):
                    if row[q] and not cq.is_zero():
                        total = total + cq * row[q]
                pairvec[p] = total
            for (i, j), blk in gamma.blocks.items():
                if i != 8 - k:
                    continue
                coords_out = [ZERO] * self.ring.dim(j)
                touched = False
                for (p, q), v in blk.items():
                    if not pairvec[p].is_zero():
                        coords_out[q] = coords_out[q] + v * pairvec[p]
                        touched = True
                if touched:
                    out = out + self.ring.from_coords(coords_out, j)
        return out

    # -- diagonal and composition ------------------------------------------------

    def diagonal(self) -> KunnethClass:
        """Sum of basis (x) dual-basis over all degrees; the identity correspondence."""
        blocks: dict[tuple[int, int], Block] = {}
        for k in DEGREES:
            coeffs = self.dual_coeffs(k)
            blk: Block = {}
            for q in range(self.ring.dim(k)):
                for p in range(self.ring.dim(8 - k)):
                    v = coeffs[p][q]
                    if v:
                        blk[(p, q)] = Scalar.of(v)
            blocks[(8 - k, k)] = blk
        return KunnethClass(self, blocks)

    def compose(self, second: KunnethClass, first: KunnethClass) -> KunnethClass:
        """Correspondence with action second_* after first_*."""
        blocks: dict[tuple[int, int], Block] = {}
        for k in DEGREES:
            coeffs = self.dual_coeffs(k)
            for q, b in enumerate(self.basis(k)):
                image = self.act(second, self.act(first, b))
                if image.is_zero():
                    continue
                for m in image.degrees():
                    mcoords = self.ring.coords(image, m)
                    blk = blocks.setdefault((8 - k, m), {})
                    for p in range(self.ring.dim(8 - k)):
                        dual_pq = coeffs[p][q]
                        if not dual_pq:
                            continue
                        for t, mv in enumerate(mcoords):
                            if mv.is_zero():
                                continue
                            key = (p, t)
                            s = blk.get(key, ZERO) + mv * dual_pq
                            if s.is_zero():
                                blk.pop(key, None)
                            else:
                                blk[key] = s
        return KunnethClass(self, {bd: b for bd, b in blocks.items() if b})

    def delta_push(self, x: CohClass) -> KunnethClass:
        return self.product(self.diagonal(), self.pull1(x))

    def delta_pull(self, gamma: KunnethClass) -> CohClass:
        out = self.ring.zero()
        for (i, j), blk in gamma.blocks.items():
            for (p, q), v in blk.items():
                for (t, cv) in self._slot_cup(i, p, j, q):
                    out = out + self.ring.from_coords(
                        [cv * v if s == t else ZERO
                         for s in range(self.ring.dim(i + j))], i + j)
        return out

    def pairwise_image(self, gamma1: KunnethClass, gamma2: KunnethClass) -> KunnethClass:
        """(gamma1 x gamma2) applied to the diagonal class.

        Slotwise action on the diagonal: sum act(gamma1, b) (x) act(gamma2, dual b).
        """
        total = self.zero()
        for k in DEGREES:
            coeffs = self.dual_coeffs(k)
            duals = self.basis(8 - k)
            for q, b in enumerate(self.basis(k)):
                dual_b = self.ring.zero()
                for p in range(self.ring.dim(8 - k)):
                    if coeffs[p][q]:
                        dual_b = dual_b + duals[p].scale(coeffs[p][q])
                left = self.act(gamma1, dual_b)
                if left.is_zero():
                    continue
                right = self.act(gamma2, b)
                if right.is_zero():
                    continue
                total = total + self.tensor(left, right)
        return total

    # -- the explicit lifts -------------------------------------------------------

    def lift_F(self, a: Vec2) -> KunnethClass:
        """Degree-(3,3) lift of the cleared Lefschetz dual of a."""
        ring = self.ring
        c = self.space.fujiki
        r = self.space.rank
        ba = ring.cup(ring.bclass(), ring.from_h2(a))
        part1 = (self.pull1(ba) + self.pull2(ba)).scale(
            Fraction(4, r + 2) / c)
        asym = self.pull1(ring.from_h2(a)) + self.pull2(ring.from_h2(a))
        part2 = self.product(self.bb_class(), asym).scale(Fraction(2) / c)
        return part1 + part2

    def lift_H(self) -> KunnethClass:
        """Lift of the grading operator; scaled by 1/c so it lifts for all c."""
        ring = self.ring
        c = self.space.fujiki
        r = self.space.rank
        b = ring.bclass()
        b2 = ring.cup(b, b)
        part1 = (self.pull2(b2) - self.pull1(b2)).scale(
            Fraction(4, r * (r + 2)) / c)
        bsym = self.pull2(b) - self.pull1(b)
        part2 = self.product(self.bb_class(), bsym).scale(
            Fraction(2, r + 2) / c)
        return part1 + part2

    def lift_e(self, a: Vec2) -> KunnethClass:
        return self.delta_push(self.ring.from_h2(a))

    # -- identity verification ------------------------------------------------------

    def relation_residual(self, name: str, a: Vec2 | None = None,
                          b: Vec2 | None = None,
                          perturb: ScalarLike = 0) -> KunnethClass:
        """Left minus right of a named product identity; zero means PASS.

        ``perturb`` shifts one structural coefficient, as a mutation control.
        """
        ring = self.ring
        space = self.space
        r = space.rank
        if a is None:
            a = space.symbolic_vector("a")
        eps = Scalar.of(perturb)
        bcl = ring.bclass()
        B = self.bb_class()
        if name == "relCohom":
            qaa = space.bb_pair(a, a)
            asq = ring.cup(ring.from_h2(a), ring.from_h2(a))
            lhs = self.product(B, self.pull1(bcl)).scale(qaa)
            rhs = (self.product(B, self.pull1(asq)).scale(r + 2)
                   - self.tensor(ring.cup(bcl, ring.from_h2(a)),
                                 ring.from_h2(a)).scale(Scalar.of(2) + eps))
            return lhs - rhs
        if name == "relCohom2":
            lhs = self.product(
                self.product(B, self.pull1(bcl)),
                self.pull1(ring.from_h2(a))).scale(Scalar.of(r) + eps)
            rhs = self.tensor(ring.cup(bcl, bcl), ring.from_h2(a))
            return lhs - rhs
        if name == "relCohom3":
            lhs = self.product(self.product(B, B),
                               self.pull1(ring.from_h2(a))).scale(
                                   Scalar.of(r + 2) + eps)
            rhs = (self.product(B, self.tensor(bcl, ring.from_h2(a))).scale(2)
                   + self.tensor(ring.cup(bcl, ring.from_h2(a)), bcl))
            return lhs - rhs
        if name == "FaFb_commute":
            if b is None:
                b = space.symbolic_vector("b")
            fa, fb = self.lift_F(a), self.lift_F(b)
            return self.compose(fa, fb) - self.compose(fb, fa)
        raise ValueError(f"unknown identity {name!r}")

    def verify_identity(self, name: str, a: Vec2 | None = None,
                        b: Vec2 | None = None,
                        perturb: ScalarLike = 0) -> bool:
        return self.relation_residual(name, a, b, perturb).is_zero()
