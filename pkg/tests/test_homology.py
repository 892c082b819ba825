import random

from kbsm.homology import (
    AElem,
    Lattice,
    a_canonicalize,
    a_generator,
    a_mul,
    divisibility_audit,
    smith_form,
)
from kbsm.ring import GaussRat, I, MINUS_I, MINUS_ONE, ONE

TORUS = Lattice.symplectic(1)


def test_canonicalize_examples():
    # omega(e1, 3 e1) = 0
    assert a_canonicalize((3, 0), TORUS) == (ONE, (1, 0))
    # i^omega((1,0), (1,2)) = i^2 = -1
    assert a_canonicalize((1, 2), TORUS) == (MINUS_ONE, (1, 0))
    assert a_canonicalize((0, 0), TORUS) == (ONE, (0, 0))


def test_product_examples():
    e1 = a_generator((1, 0), TORUS)
    e2 = a_generator((0, 1), TORUS)
    assert a_mul(e1, e2, TORUS) == AElem({(1, 1): MINUS_I})
    assert a_mul(e2, e1, TORUS) == AElem({(1, 1): I})
    assert a_mul(e1, e1, TORUS) == AElem({(0, 0): ONE})


def test_generators_square_to_one():
    for gamma in [(1, 0), (0, 1), (1, 1), (2, 3), (-1, 4)]:
        g = a_generator(gamma, TORUS)
        gg = a_mul(g, g, TORUS)
        assert gg == AElem({(0, 0): ONE}), gamma


def test_product_grading_and_associativity():
    rng = random.Random(42)
    for _ in range(300):
        gs = [tuple(rng.randrange(-4, 5) for _ in range(2)) for _ in range(3)]
        x, y, z = (a_generator(g, TORUS) for g in gs)
        left = a_mul(a_mul(x, y, TORUS), z, TORUS)
        right = a_mul(x, a_mul(y, z, TORUS), TORUS)
        assert left == right
        xy = a_mul(x, y, TORUS)
        (key,) = xy.terms
        assert key == tuple((a + b) % 2 for a, b in zip(gs[0], gs[1]))


def test_canonicalize_consistent_with_products():
    # [gamma] as a product of canonical generators reproduces the unit
    rng = random.Random(9)
    e1 = a_generator((1, 0), TORUS)
    e2 = a_generator((0, 1), TORUS)
    for _ in range(200):
        gamma = (rng.randrange(-6, 7), rng.randrange(-6, 7))
        direct = a_generator(gamma, TORUS)
        # build [gamma] = [a e1] [b e2] i^{omega correction}
        a, b = gamma
        prod = a_mul(a_generator((a, 0), TORUS), a_generator((0, b), TORUS), TORUS)
        # [a e1][b e2] = i^{-ab} [gamma], so [gamma] = i^{ab} [a e1][b e2]
        expected = prod.scale(GaussRat(0, 1) ** (a * b % 4))
        assert direct == expected, gamma


def test_smith_examples():
    assert smith_form([[1, 1], [0, 2]]).d == (1, 2)
    assert smith_form([[1, 1], [0, 3]]).d == (1, 3)
    assert smith_form([[1, 0], [0, 1]]).d == (1, 1)


def _det(mat):
    m = [list(r) for r in mat]
    n = len(m)
    from fractions import Fraction

    m = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            for c2 in range(col, n):
                m[r][c2] -= f * m[col][c2]
    return det


def test_smith_transforms_are_unimodular():
    rng = random.Random(17)
    for _ in range(60):
        rows = rng.randrange(1, 4)
        cols = rng.randrange(1, 4)
        m = [[rng.randrange(-6, 7) for _ in range(cols)] for _ in range(rows)]
        s = smith_form(m)
        assert abs(_det(s.u)) == 1
        assert abs(_det(s.v)) == 1
        # u m v equals the diagonal
        prod = [
            [
                sum(s.u[i][a] * m[a][b] * s.v[b][j] for a in range(rows) for b in range(cols))
                for j in range(cols)
            ]
            for i in range(rows)
        ]
        for i in range(rows):
            for j in range(cols):
                expected = s.d[i] if i == j and i < len(s.d) else 0
                assert prod[i][j] == expected
        # divisibility chain
        for a, b in zip(s.d, s.d[1:]):
            if a != 0:
                assert b % a == 0


def test_divisibility_audit_clean_case():
    rep = divisibility_audit(TORUS, [(1, 0)], [(1, 3)], bound=6)
    assert rep.hypothesis_ok
    assert rep.all_divisible
    assert set(rep.mod4_histogram) <= {0}
    assert rep.pairs_checked > 0


def test_divisibility_audit_two_torsion_witness():
    rep = divisibility_audit(TORUS, [(1, 0)], [(1, 2)], bound=3)
    assert not rep.hypothesis_ok
    assert any("2-torsion" in f for f in rep.hypothesis_failures)
    assert not rep.all_divisible
    assert any(w % 4 == 2 for _, _, w in rep.witnesses)


def test_divisibility_audit_empty_spans():
    rep = divisibility_audit(TORUS, [], [], bound=2)
    assert rep.hypothesis_ok
    assert rep.all_divisible
