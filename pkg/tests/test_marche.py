"""The twist-parameter isomorphism machinery: phi, psi, per-state identities,
and the commuting square at symbolic zeta."""

import itertools
import random

from conftest import TORUS, one_crossing_stack, punctured, small_square, trefoil
from kbsm.diagram import build_diagram, make_multicurve
from kbsm.ring import GaussRat, LaurentPoly, MINUS_I, ONE
from kbsm.sampling import random_diagram, suite
from kbsm.skein import (
    Skein,
    bracket,
    phi,
    psi,
    state_identities,
    verify_comm,
)


def mc(parts, bp=0, surface=TORUS):
    return make_multicurve(surface, parts, bp)


def test_phi_on_basis_elements():
    one = LaurentPoly.const(1)
    a = Skein.basis(TORUS, mc({(1, 1): 1}))
    out = phi(a)
    assert out.terms == {(mc({(1, 1): 1}), (1, 1)): LaurentPoly.const(-1)}

    empty = Skein.basis(TORUS, mc({}))
    assert phi(empty).terms == {(mc({}), (0, 0)): one}

    doubled = Skein.basis(TORUS, mc({(1, 1): 2}))
    assert phi(doubled).terms == {(mc({(1, 1): 2}), (0, 0)): one}


def test_phi_is_diagonal_and_injective_on_basis():
    curves = [
        mc({}),
        mc({(1, 0): 1}),
        mc({(0, 1): 2}),
        mc({(1, 1): 1}),
        mc({(1, -1): 3}),
        mc({(2, 1): 2}),
    ]
    images = []
    for c in curves:
        out = phi(Skein.basis(TORUS, c))
        assert out.is_diagonal()
        assert len(out.terms) == 1
        images.append(next(iter(out.terms)))
    assert len(set(images)) == len(images)


def test_psi_crossingless_matches_phi():
    from conftest import horizontal_loop

    d = build_diagram(TORUS, [horizontal_loop()])
    value = psi(d)
    assert value.coeff == GaussRat(-1)  # (-1)^1, no writhe
    assert value.lift == (1, 0)
    out = phi(Skein.basis(TORUS, mc({(1, 0): 1})))
    assert out.terms == {(mc({(1, 0): 1}), (1, 0)): LaurentPoly.const(-1)}


def test_psi_one_crossing_stack():
    d = one_crossing_stack()
    value = psi(d)
    # two components, writhe +1 under the positive orientations
    assert value.lift == (1, 1)
    assert value.coeff == MINUS_I


def test_psi_orientation_independence():
    rng = random.Random(12)
    diagrams = [one_crossing_stack(), trefoil()]
    for surface in (TORUS, punctured()):
        for _ in range(6):
            diagrams.append(random_diagram(rng, surface, max_crossings=5))
    for d in diagrams:
        values = set()
        for dirs in itertools.product((1, -1), repeat=d.ncomp):
            v = psi(d, dirs)
            values.add((v.coeff, v.lift))
        assert len(values) == 1, d


def test_state_identities_suite():
    for d in suite(23, 40, max_crossings=5):
        rep = state_identities(d)
        assert rep.ok, rep.failures[:2]


def test_verify_comm_empty_and_stack():
    empty = build_diagram(TORUS, [])
    assert verify_comm(empty)

    d = one_crossing_stack()
    check = verify_comm(d)
    assert check
    # both sides equal -i (z {(1,1)} + z^-1 {(1,-1)}) tensor [(1,1)]
    expected = {
        (mc({(1, 1): 1}), (1, 1)): LaurentPoly.zeta_pow(1, MINUS_I),
        (mc({(1, -1): 1}), (1, 1)): LaurentPoly.zeta_pow(-1, MINUS_I),
    }
    assert check.lhs.terms == expected


def test_verify_comm_trefoil():
    assert verify_comm(trefoil())


def test_verify_comm_randomized_suite():
    for d in suite(101, 60, max_crossings=5):
        check = verify_comm(d)
        assert check, check.witness
