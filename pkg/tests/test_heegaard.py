import random
from fractions import Fraction as F

import pytest

from kbsm import heegaard as hg
from kbsm.diagram import (
    DiagramError,
    Surface,
    build_diagram,
    make_multicurve,
    realize_multicurve,
)
from kbsm.homology import smith_form
from kbsm.ring import GaussRat, MINUS_I, MINUS_ONE
from kbsm.skein import bracket
from kbsm.diagram import stack

T = Surface("torus")

# light bounds keep the unit suite fast; the acceptance module runs the full
# criterion bounds
LIGHT = hg.SlideBounds(
    max_slope=1, winding_range=1, max_crossings=14, both_directions=False
)
QUOTIENT_BOUNDS = hg.SlideBounds(
    max_multiplicity=4,
    max_slope=1,
    max_copies=4,
    winding_range=0,
    max_crossings=16,
    quotient_max_crossings=12,
)


def curve(parts, level=0, variant=0):
    return realize_multicurve(make_multicurve(T, parts), T, level=level, variant=variant)


@pytest.fixture(scope="module")
def light_relations():
    return {
        "S3": hg.generate_relations(hg.S3, LIGHT),
        "L2": hg.generate_relations(hg.lens_space(2), LIGHT),
        "L3": hg.generate_relations(hg.lens_space(3), LIGHT),
    }


# -- first homology -----------------------------------------------------------


def test_manifold_h1_examples():
    s3 = hg.manifold_h1(hg.S3)
    assert s3.invariant_factors == () and s3.free_rank == 0
    assert not s3.two_torsion

    rp3 = hg.manifold_h1(hg.lens_space(2))
    assert rp3.invariant_factors == (2,)
    assert rp3.two_torsion

    l3 = hg.manifold_h1(hg.lens_space(3))
    assert l3.invariant_factors == (3,)
    assert not l3.two_torsion


def test_manifold_h1_matches_bruteforce():
    rng = random.Random(5)
    for _ in range(30):
        red = (rng.randrange(-3, 4), rng.randrange(-3, 4))
        blue = (rng.randrange(-3, 4), rng.randrange(-3, 4))
        import math

        if red == (0, 0) or blue == (0, 0):
            continue
        if math.gcd(*map(abs, red)) != 1 or math.gcd(*map(abs, blue)) != 1:
            continue
        try:
            h = hg.HeegaardData((red,), (blue,))
        except DiagramError:
            continue
        rep = hg.manifold_h1(h)
        det = abs(red[0] * blue[1] - red[1] * blue[0])
        if det == 0:
            assert rep.free_rank >= 1
        else:
            order = 1
            for d in rep.invariant_factors:
                order *= d
            assert order == det and rep.free_rank == 0


# -- slides -------------------------------------------------------------------


def test_elementary_slide_short_band():
    start = curve({(0, 1): 1})
    rel = hg.elementary_slide(start, hg.SlideSpec("red"), hg.S3)
    assert rel.result.ncross == 1
    from kbsm.diagram import OrientedDiagram, orient_data

    od = OrientedDiagram(rel.result, (1,) * rel.result.ncomp)
    assert abs(orient_data(od).writhe) == 1


def test_slide_class_additivity():
    start = curve({(0, 1): 1})
    for direction in (1, -1):
        rel = hg.elementary_slide(
            start, hg.SlideSpec("red", copy_dir=direction), hg.S3
        )
        total = [0, 0]
        for comp in rel.result.components:
            total[0] += comp.class_vec[0]
            total[1] += comp.class_vec[1]
        assert tuple(total) == (direction * 1, 1)


def test_slide_rejects_empty_start():
    empty = build_diagram(T, [])
    with pytest.raises(DiagramError, match="empty"):
        hg.compound_slide(empty, [hg.SlideSpec("red")], hg.S3)
    with pytest.raises(DiagramError, match="at least one band"):
        hg.compound_slide(curve({(0, 1): 1}), [], hg.S3)


def test_generated_relations_l3_use_even_copies(light_relations):
    rels = light_relations["L3"]
    assert rels
    for rel in rels:
        reds = sum(1 for color, _, _ in rel.used if color == "red")
        blues = sum(1 for color, _, _ in rel.used if color == "blue")
        assert reds % 2 == 0 and blues % 2 == 0
        assert rel.slide_class[0] % 2 == 0 and rel.slide_class[1] % 2 == 0


def test_generated_relations_l2_mixed_exists(light_relations):
    rels = light_relations["L2"]
    assert any(
        sum(1 for c, _, _ in rel.used if c == "red") == 1
        and sum(1 for c, _, _ in rel.used if c == "blue") == 1
        for rel in rels
    )


def test_generate_relations_empty_bounds():
    bounds = hg.SlideBounds(max_multiplicity=0, max_copies=0)
    assert hg.generate_relations(hg.S3, bounds) == []


def test_relation_starts_are_surface_null(light_relations):
    for rels in light_relations.values():
        for rel in rels:
            assert all(
                x % 2 == 0
                for x in rel.start_multicurve.class_vec(2)
            )


# -- linking numbers ------------------------------------------------------------


def _square(x0, y0, w, levels):
    pts = [
        (F(x0), F(y0)),
        (F(x0) + w, F(y0)),
        (F(x0) + w, F(y0) + w),
        (F(x0), F(y0) + w),
        (F(x0), F(y0)),
    ]
    return (pts, levels)


def test_lk2_split_pair():
    a = build_diagram(T, [_square(F(1, 8), F(1, 8), F(1, 8), 5)])
    b = build_diagram(T, [_square(F(5, 8), F(5, 8), F(1, 8), 0)])
    assert hg.lk2(a, b, hg.S3) == 0


def test_lk2_hopf_chart():
    above = build_diagram(
        T,
        [
            (
                [
                    (F(2, 16), F(2, 16)),
                    (F(8, 16), F(2, 16)),
                    (F(8, 16), F(4, 16)),
                    (F(2, 16), F(4, 16)),
                    (F(2, 16), F(2, 16)),
                ],
                [5, 5, -5, -5],
            )
        ],
    )
    below = build_diagram(
        T,
        [
            (
                [
                    (F(1, 16), F(1, 16)),
                    (F(5, 16), F(1, 16)),
                    (F(5, 16), F(5, 32)),
                    (F(1, 16), F(5, 32)),
                    (F(1, 16), F(1, 16)),
                ],
                0,
            )
        ],
    )
    assert hg.lk2(above, below, hg.S3) == 1
    assert hg.lk2(below, above, hg.S3) == 1  # symmetry for two null factors


def test_lk2_l2_example():
    above = curve({(1, 0): 1}, level=10)
    below = curve({(0, 1): 2}, level=0)
    assert hg.lk2(above, below, hg.lens_space(2)) == 0


# -- the signed product -----------------------------------------------------------


def test_k0_product_signs():
    h3 = hg.lens_space(3)
    x = curve({(1, 1): 1})
    y = curve({(1, 0): 1}, variant=1)
    stacked = stack(x, y)
    plain = {
        mc: c.eval_unit(MINUS_I) for mc, c in bracket(stacked).terms.items()
    }
    prod = hg.k0_product(x, y, h3, MINUS_I)
    got = {mc: c.eval_unit(GaussRat(1)) for mc, c in prod.terms.items()}
    # lk2((1,1),(1,0)) in L(3,1) is 1: one over-crossing, empty red part
    assert got == {mc: -v for mc, v in plain.items()}

    x2 = curve({(1, 0): 1})
    y2 = curve({(1, 1): 1}, variant=1)
    prod2 = hg.k0_product(x2, y2, h3, MINUS_I)
    stacked2 = stack(x2, y2)
    plain2 = {
        mc: c.eval_unit(MINUS_I) for mc, c in bracket(stacked2).terms.items()
    }
    got2 = {mc: c.eval_unit(GaussRat(1)) for mc, c in prod2.terms.items()}
    # lk2((1,0),(1,1)): one over-crossing plus one red-cap intersection
    assert got2 == plain2


def test_k0_product_commutes_and_ignores_representatives():
    h3 = hg.lens_space(3)
    pairs = [
        ({(1, 0): 1}, {(1, 1): 1}),
        ({(0, 1): 1}, {(1, 1): 1}),
        ({(1, 0): 2}, {(1, 0): 1}),
    ]
    for pa, pb in pairs:
        x = curve(pa)
        y = curve(pb, variant=1)
        p1 = hg.k0_product(x, y, h3, MINUS_I)
        p2 = hg.k0_product(y, x, h3, MINUS_I)
        assert p1 == p2, (pa, pb)
        x_alt = curve(pa, variant=4)
        p3 = hg.k0_product(x_alt, y, h3, MINUS_I)
        assert p1 == p3, (pa, pb)


def test_k0_product_triple_associative():
    from kbsm.skein import Skein

    h3 = hg.lens_space(3)
    a = Skein.basis(T, make_multicurve(T, {(1, 0): 1}))
    b = Skein.basis(T, make_multicurve(T, {(1, 1): 1}))
    c = Skein.basis(T, make_multicurve(T, {(0, 1): 1}))
    left = hg.k0_product_skein(hg.k0_product_skein(a, b, h3, MINUS_I), c, h3, MINUS_I)
    right = hg.k0_product_skein(a, hg.k0_product_skein(b, c, h3, MINUS_I), h3, MINUS_I)
    assert left == right


def test_k0_product_rejects_non_null():
    # in L(4,1) both attaching classes reduce to (1,0), so (0,1) is not null
    h4 = hg.lens_space(4)
    x = curve({(1, 0): 1})
    with pytest.raises(DiagramError, match="null"):
        hg.k0_product(x, curve({(0, 1): 1}, variant=1), h4, MINUS_I)
    with pytest.raises(DiagramError, match="null"):
        hg.lk2(curve({(0, 1): 1}), curve({(1, 0): 2}, variant=1), h4)


# -- audits -----------------------------------------------------------------------


def test_writhe_audit_no_torsion(light_relations):
    for name in ("S3", "L3"):
        h = hg.S3 if name == "S3" else hg.lens_space(3)
        rep = hg.writhe_mod4_audit(h, relations=light_relations[name])
        assert rep.pairing_agrees
        assert rep.all_divisible, rep.histogram
        assert not rep.h1.two_torsion


def test_writhe_audit_two_torsion_witness(light_relations):
    rep = hg.writhe_mod4_audit(hg.lens_space(2), relations=light_relations["L2"])
    assert rep.pairing_agrees
    assert rep.h1.two_torsion
    assert rep.witnesses(2), rep.histogram


def test_psi_on_relations(light_relations):
    rep = hg.psi_on_relations(hg.lens_space(3), relations=light_relations["L3"])
    assert rep.all_match
    for e in rep.entries:
        assert e.lift_start == (0, 0) and e.lift_result == (0, 0)

    rep2 = hg.psi_on_relations(hg.lens_space(2), relations=light_relations["L2"])
    bad = rep2.failures()
    assert bad
    for e in bad:
        # the twisted coefficient differs by exactly i^(-w) = -1
        assert e.coeff_result == -e.coeff_start


def test_psi_vacuous_on_empty_relations():
    rep = hg.psi_on_relations(hg.S3, relations=[])
    assert rep.all_match and not rep.entries


# -- quotients ---------------------------------------------------------------------


def test_quotient_s3_dimension_one():
    rels = hg.generate_relations(hg.S3, QUOTIENT_BOUNDS)
    cmp = hg.quotient_comparison(hg.S3, truncation=4, bounds=QUOTIENT_BOUNDS, relations=rels)
    assert cmp.at_minus_i.dimension == 1
    assert cmp.at_minus_one.dimension == 1
    assert cmp.phi_rows_match


def test_quotient_truncation_zero():
    pres = hg.truncated_quotient(hg.S3, MINUS_I, truncation=0, relations=[])
    assert pres.dimension == 1
    assert pres.relations_used == 0
    assert [mc.is_empty for mc in pres.basis] == [True]


def test_quotient_lens_spaces_match_across_units():
    for p in (3, 5):
        h = hg.lens_space(p)
        rels = hg.generate_relations(h, QUOTIENT_BOUNDS)
        cmp = hg.quotient_comparison(h, truncation=4, bounds=QUOTIENT_BOUNDS, relations=rels)
        assert cmp.dimensions_equal, p
        assert cmp.phi_rows_match, p


def test_quotient_l2_phi_rows_fail():
    h = hg.lens_space(2)
    rels = hg.generate_relations(h, QUOTIENT_BOUNDS)
    cmp = hg.quotient_comparison(h, truncation=4, bounds=QUOTIENT_BOUNDS, relations=rels)
    assert not cmp.phi_rows_match
