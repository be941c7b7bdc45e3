"""Cup products, the dual-class pushforward, and the sl2 triple."""

import random
from fractions import Fraction

import pytest

from hyperchow.cohring import CohRing, UnsupportedDegreeError
from hyperchow.quadspace import BBSpace
from hyperchow.scalars import Scalar, rat

from test_quadspace import random_gram, random_vector


def rings(*ranks, seed=5, fujiki=1):
    rng = random.Random(seed)
    for r in ranks:
        space = random_gram(rng, r)
        space = BBSpace(r, space.gram, fujiki)
        yield CohRing(space), rng


def brute_force_b_squared(space):
    """Independent oracle for the dual-class self-intersection.

    Expands b = sum_ij (G^{-1})_ij e_i e_j and integrates the double sum with
    the four-point form directly, bypassing the cup-product code.
    """
    r = space.rank
    ginv = space.gram_inv
    total = Scalar.of(0)
    basis = [space.basis_vector(i) for i in range(r)]
    for i in range(r):
        for j in range(r):
            for k in range(r):
                for l in range(r):
                    if ginv[i][j] and ginv[k][l]:
                        total = total + space.fujiki4(
                            basis[i], basis[j], basis[k], basis[l]
                        ) * (ginv[i][j] * ginv[k][l])
    return total


def test_unit_law_and_linearity():
    ring, rng = next(rings(3))
    x = ring.from_h2(random_vector(rng, ring.space))
    assert ring.cup(ring.unit(), x) == x
    assert ring.cup(x, ring.unit()) == x
    assert (x + x).h2 == tuple(v * 2 for v in x.h2)


def test_dual_class_pairing_integral():
    # integral(b * g * g') = c (r+2) (g, g')
    for ring, rng in rings(2, 3, 5, seed=2, fujiki=Fraction(3, 7)):
        space = ring.space
        g1 = space.symbolic_vector("x")
        g2 = space.symbolic_vector("y")
        got = ring.integrate(
            ring.cup(ring.bclass(),
                     ring.cup(ring.from_h2(g1), ring.from_h2(g2))))
        want = space.bb_pair(g1, g2) * (space.rank + 2) * space.fujiki
        assert got == want


def test_dual_class_squared_against_double_sum_oracle():
    for ring, _ in rings(2, 3, seed=9, fujiki=Fraction(2, 3)):
        space = ring.space
        got = ring.integrate(ring.cup(ring.bclass(), ring.bclass()))
        assert got == brute_force_b_squared(space)
        assert got == rat(space.rank) * (space.rank + 2) * space.fujiki


def test_fourth_power_integral():
    # integral(a^4) = 3 c (a,a)^2 through cup products
    for ring, _ in rings(2, 3, seed=4, fujiki=Fraction(5, 4)):
        a = ring.space.symbolic_vector("a")
        aa = ring.cup(ring.from_h2(a), ring.from_h2(a))
        got = ring.integrate(ring.cup(aa, aa))
        q = ring.space.bb_pair(a, a)
        assert got == q * q * 3 * ring.space.fujiki


def test_graded_commutativity_and_associativity():
    ring, rng = next(rings(3, seed=13))
    classes = []
    space = ring.space
    for _ in range(3):
        x = (ring.from_h0(rng.randint(-3, 3))
             + ring.from_h2(random_vector(rng, space))
             + ring.cup(ring.from_h2(random_vector(rng, space)),
                        ring.from_h2(random_vector(rng, space)))
             + ring.from_h6_hat(random_vector(rng, space))
             + ring.from_h8(rng.randint(-3, 3)))
        classes.append(x)
    x, y, z = classes
    assert ring.cup(x, y) == ring.cup(y, x)
    assert ring.cup(ring.cup(x, y), z) == ring.cup(x, ring.cup(y, z))


def test_b_push_inverts_dual_multiplication():
    # cup with b/((r+2)c) then push equals the identity on degree 2
    for ring, rng in rings(2, 4, seed=21, fujiki=Fraction(4, 9)):
        space = ring.space
        beta = random_vector(rng, space)
        scaled = ring.bclass().scale(
            Fraction(1, 1) / ((space.rank + 2) * space.fujiki))
        pushed = ring.B_push(ring.cup(scaled, ring.from_h2(beta)))
        assert pushed == ring.from_h2(beta)


def test_b_push_formula_on_a_squared_beta():
    # pushforward of a^2 * beta is c(a,a) beta + 2c(a,beta) a
    ring, _ = next(rings(3, seed=1, fujiki=Fraction(7, 5)))
    space = ring.space
    a = space.symbolic_vector("a")
    beta = space.symbolic_vector("b")
    asq = ring.cup(ring.from_h2(a), ring.from_h2(a))
    pushed = ring.B_push(ring.cup(asq, ring.from_h2(beta)))
    c = space.fujiki
    qaa, qab = space.bb_pair(a, a), space.bb_pair(a, beta)
    want = ring.from_h2(tuple(qaa * bi * c + qab * ai * 2 * c
                              for ai, bi in zip(a, beta)))
    assert pushed == want


def test_b_push_degree4_vanishes_and_degree_guard():
    ring, rng = next(rings(3, seed=8))
    q = ring.cup(ring.from_h2(random_vector(rng, ring.space)),
                 ring.from_h2(random_vector(rng, ring.space)))
    assert ring.B_push(q).is_zero()
    assert ring.B_push(ring.zero()).is_zero()
    with pytest.raises(UnsupportedDegreeError):
        ring.B_push(ring.unit())


def all_basis(ring):
    for degree in (0, 2, 4, 6, 8):
        for b in ring.basis(degree):
            yield b


def test_sl2_relations_symbolic():
    # [e_a, f_a] = (a,a) h, [h, f_a] = -2 f_a, [h, e_a] = 2 e_a on every
    # graded piece, with fully symbolic a over random rational Gram matrices
    for ring, _ in rings(2, 3, seed=17, fujiki=Fraction(3, 2)):
        space = ring.space
        a = space.symbolic_vector("a")
        qaa = space.bb_pair(a, a)
        for x in all_basis(ring):
            ef = ring.e_a(a, ring.f_tilde(a, x)) - ring.f_tilde(a, ring.e_a(a, x))
            assert ef == ring.grading(x).scale(qaa)
            hf = ring.grading(ring.f_tilde(a, x)) - ring.f_tilde(a, ring.grading(x))
            assert hf == ring.f_tilde(a, x).scale(-2)
            he = ring.grading(ring.e_a(a, x)) - ring.e_a(a, ring.grading(x))
            assert he == ring.e_a(a, x).scale(2)


def test_f_tilde_case_values():
    ring, _ = next(rings(3, seed=30))
    space = ring.space
    a = space.symbolic_vector("a")
    beta = space.symbolic_vector("b")
    assert ring.f_tilde(a, ring.unit()).is_zero()
    got = ring.f_tilde(a, ring.from_h2(beta))
    assert got == ring.from_h0(space.bb_pair(a, beta) * 4)
    assert ring.f_tilde(a, ring.top()).h6 == tuple(v * 4 for v in a)


def test_f_tilde_linear_in_a():
    ring, rng = next(rings(3, seed=31))
    space = ring.space
    a, b = space.symbolic_vector("a"), space.symbolic_vector("b")
    ab = tuple(x + y for x, y in zip(a, b))
    for x in all_basis(ring):
        lhs = ring.f_tilde(ab, x)
        rhs = ring.f_tilde(a, x) + ring.f_tilde(b, x)
        assert lhs == rhs


def test_uniqueness_on_basis():
    # for numeric a with (a,a) != 0, any operator satisfying the commutation
    # relations agrees with f_a; probe by re-deriving f from e and h images
    ring, rng = next(rings(3, seed=40))
    space = ring.space
    a = space.vector([1, 2, 1])
    qaa = space.bb_pair(a, a)
    assert not qaa.is_zero()
    # the commutator pins f on degree 2: f(beta) = ([e,f] - 0)/qaa on H^0 part
    beta = space.vector([3, 1, 2])
    ef = ring.e_a(a, ring.f_tilde(a, ring.from_h2(beta))) - ring.f_tilde(
        a, ring.e_a(a, ring.from_h2(beta)))
    assert ef == ring.grading(ring.from_h2(beta)).scale(qaa)


def test_poincare_pairing_nondegenerate():
    from hyperchow.quadspace import invert_matrix
    ring, _ = next(rings(3, seed=50, fujiki=Fraction(5, 3)))
    for degree in (0, 2, 4, 6, 8):
        mat = ring.pairing_matrix(degree)
        invert_matrix(mat)  # raises if singular


def test_lefschetz_equivalence():
    space = BBSpace(2, [[1, 0], [0, -1]])
    ring = CohRing(space)
    good = ring.verify_lefschetz_equiv(space.vector([2, 1]))
    assert good.status == "PASS"
    assert good.pairing_nonzero and good.square_invertible and good.fourth_invertible
    zero = ring.verify_lefschetz_equiv(space.zero_vector())
    assert zero.status == "PASS"
    assert not (zero.pairing_nonzero or zero.square_invertible
                or zero.fourth_invertible)
    iso = ring.verify_lefschetz_equiv(space.vector([1, 1]))
    assert iso.status == "PASS"
    assert not iso.pairing_nonzero and not iso.square_invertible
    assert iso.kernel_witness is not None
    with pytest.raises(ValueError):
        ring.verify_lefschetz_equiv(space.symbolic_vector("a"))


def test_coords_roundtrip():
    ring, rng = next(rings(3, seed=60))
    for degree in (0, 2, 4, 6, 8):
        for b in ring.basis(degree):
            assert ring.from_coords(ring.coords(b, degree), degree) == b
