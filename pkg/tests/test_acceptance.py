"""Acceptance suite: one test per exit criterion, exact tolerances, timed.

Each test prints a single PASS/FAIL line (straight to the real stdout so the
lines survive pytest capture).  All checks are exact; the runtime targets are
asserted with a small grace factor so slow machines fail loudly rather than
silently degrading.
"""

import itertools
import json
import random
import sys
import time
from fractions import Fraction as F

import pytest

from kbsm import heegaard as hg
from kbsm.cli import main as cli_main
from kbsm.diagram import (
    OrientedDiagram,
    Surface,
    build_diagram,
    disjoint_union,
    euler_parity_check,
    make_multicurve,
    realize_multicurve,
    smooth_crossing,
)
from kbsm.homology import Lattice, a_canonicalize, a_generator, a_mul, divisibility_audit
from kbsm.ring import GaussRat, LaurentPoly, MINUS_I, i_power
from kbsm.sampling import suite
from kbsm.skein import bracket, state_identities, verify_comm

TORUS = Surface("torus")
SUITE_SEED = 2026
SUITE_SIZE = 200

AUDIT_BOUNDS = hg.SlideBounds(max_slope=2, max_crossings=24)
QUOTIENT_BOUNDS = hg.SlideBounds(
    max_multiplicity=4,
    max_slope=1,
    max_copies=4,
    winding_range=0,
    max_crossings=16,
    quotient_max_crossings=12,
)


def _report(number: int, label: str, ok: bool, seconds: float, budget: float):
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s / {budget:.0f}s) {label}\n"
    sys.__stdout__.write(line)
    sys.__stdout__.flush()


@pytest.fixture(scope="module")
def diagram_suite():
    return suite(SUITE_SEED, SUITE_SIZE, max_crossings=6)


@pytest.fixture(scope="module")
def audit_relations():
    return {
        "S3": hg.generate_relations(hg.S3, AUDIT_BOUNDS),
        "L2": hg.generate_relations(hg.lens_space(2), AUDIT_BOUNDS),
        "L3": hg.generate_relations(hg.lens_space(3), AUDIT_BOUNDS),
    }


def _far_loop(d):
    """A small square loop placed in empty surface area, disjoint from d."""
    if d.surface.kind == "disk":
        hi = max((v[0] for c in d.components for v in c.vertices), default=F(0))
        candidates = [(hi + 2, F(0))]
    else:
        candidates = [
            (F(num, den) + F(1, 997), F(num2, den) + F(1, 991))
            for den in (7, 11, 13, 17)
            for num in range(den)
            for num2 in range(den)
        ]
    for cx, cy in candidates:
        try:
            square = build_diagram(
                d.surface,
                [
                    (
                        [
                            (cx, cy),
                            (cx + F(1, 64), cy),
                            (cx + F(1, 64), cy + F(1, 64)),
                            (cx, cy + F(1, 64)),
                            (cx, cy),
                        ],
                        0,
                    )
                ],
            )
            return disjoint_union(d, square)
        except Exception:
            continue
    return None


def test_criterion_01_kauffman_and_loop_absorption(diagram_suite):
    budget = 30.0
    t0 = time.time()
    zeta = LaurentPoly.zeta_pow(1)
    zeta_inv = LaurentPoly.zeta_pow(-1)
    delta = LaurentPoly.loop_value()
    ok = True
    for i, d in enumerate(diagram_suite):
        br = bracket(d)
        if d.ncross:
            k = i % d.ncross
            plus = bracket(smooth_crossing(d, k, 1))
            minus = bracket(smooth_crossing(d, k, -1))
            if br != plus.scale_poly(zeta) + minus.scale_poly(zeta_inv):
                ok = False
                break
        if i % 4 == 0:
            with_loop = _far_loop(d)
            assert with_loop is not None
            if bracket(with_loop) != br.scale_poly(delta):
                ok = False
                break
    elapsed = time.time() - t0
    _report(1, "Kauffman relation and loop absorption, 200 diagrams", ok, elapsed, budget)
    assert ok
    assert elapsed < budget


def test_criterion_02_commuting_square(diagram_suite):
    budget = 60.0
    t0 = time.time()
    ok = True
    for d in diagram_suite:
        check = verify_comm(d)
        if not check:
            ok = False
            sys.__stdout__.write(f"  witness: {check.witness}\n")
            break
    elapsed = time.time() - t0
    _report(2, "twisted-parameter square at symbolic zeta, 200 diagrams", ok, elapsed, budget)
    assert ok
    assert elapsed < budget


def test_criterion_03_per_state_identities(diagram_suite):
    budget = 60.0
    t0 = time.time()
    ok = True
    for d in diagram_suite:
        ids = state_identities(d)
        if not ids.ok:
            ok = False
            break
        od = OrientedDiagram(d, (1,) * d.ncomp)
        for bits in range(1 << d.ncross):
            state = tuple(1 if (bits >> k) & 1 else -1 for k in range(d.ncross))
            if not euler_parity_check(d, od, state):
                ok = False
                break
        if not ok:
            break
    elapsed = time.time() - t0
    _report(3, "per-state smoothing identities and surface parity", ok, elapsed, budget)
    assert ok
    assert elapsed < budget


def test_criterion_04_twist_algebra():
    budget = 5.0
    t0 = time.time()
    lat = Lattice.symplectic(1)
    rng = random.Random(SUITE_SEED)
    ok = True
    for _ in range(1000):
        gs = [tuple(rng.randrange(-6, 7) for _ in range(2)) for _ in range(3)]
        x, y, z = (a_generator(g, lat) for g in gs)
        if a_mul(a_mul(x, y, lat), z, lat) != a_mul(x, a_mul(y, z, lat), lat):
            ok = False
            break
        if a_mul(x, x, lat).terms != {(0, 0): GaussRat(1)}:
            ok = False
            break
        (key,) = a_mul(x, y, lat).terms
        if key != tuple((a + b) % 2 for a, b in zip(gs[0], gs[1])):
            ok = False
            break
        unit, canon = a_canonicalize(gs[0], lat)
        if a_generator(gs[0], lat).terms != {canon: unit}:
            ok = False
            break
    elapsed = time.time() - t0
    _report(4, "twist algebra identities, 1000 random triples", ok, elapsed, budget)
    assert ok
    assert elapsed < budget


def test_criterion_05_divisibility_audit():
    budget = 5.0
    t0 = time.time()
    lat = Lattice.symplectic(1)
    clean3 = divisibility_audit(lat, [(1, 0)], [(1, 3)], bound=6)
    clean5 = divisibility_audit(lat, [(1, 0)], [(1, 5)], bound=6)
    torsion = divisibility_audit(lat, [(1, 0)], [(1, 2)], bound=4)
    ok = (
        clean3.hypothesis_ok
        and clean3.all_divisible
        and clean5.hypothesis_ok
        and clean5.all_divisible
        and not torsion.hypothesis_ok
        and any(w % 4 == 2 for _, _, w in torsion.witnesses)
    )
    elapsed = time.time() - t0
    _report(5, "pairing divisibility audit: Z/3, Z/5 clean; Z/2 witnessed", ok, elapsed, budget)
    assert ok
    assert elapsed < budget


def test_criterion_06_writhe_mod4(audit_relations):
    budget = 120.0
    t0 = time.time()
    rep_s3 = hg.writhe_mod4_audit(hg.S3, relations=audit_relations["S3"])
    rep_l3 = hg.writhe_mod4_audit(hg.lens_space(3), relations=audit_relations["L3"])
    rep_l2 = hg.writhe_mod4_audit(hg.lens_space(2), relations=audit_relations["L2"])
    ok = (
        len(audit_relations["S3"]) >= 50
        and len(audit_relations["L3"]) >= 50
        and rep_s3.all_divisible
        and rep_l3.all_divisible
        and rep_s3.pairing_agrees
        and rep_l3.pairing_agrees
        and rep_l2.pairing_agrees
        and bool(rep_l2.witnesses(2))
    )
    elapsed = time.time() - t0
    _report(
        6,
        f"writhe mod 4: S3 ({len(audit_relations['S3'])} slides), "
        f"L(3,1) ({len(audit_relations['L3'])}), L(2,1) witnesses "
        f"{len(rep_l2.witnesses(2))}",
        ok,
        elapsed,
        budget,
    )
    assert ok
    assert elapsed < budget


def test_criterion_07_twist_map_on_relations(audit_relations):
    budget = 120.0
    t0 = time.time()
    psi_rep = hg.psi_on_relations(hg.lens_space(3), relations=audit_relations["L3"])
    rels = hg.generate_relations(hg.lens_space(3), QUOTIENT_BOUNDS)
    cmp = hg.quotient_comparison(
        hg.lens_space(3), truncation=4, bounds=QUOTIENT_BOUNDS, relations=rels
    )
    ok = (
        psi_rep.all_match
        and all(e.lift_start == (0, 0) and e.lift_result == (0, 0) for e in psi_rep.entries)
        and cmp.phi_rows_match
    )
    elapsed = time.time() - t0
    _report(7, "twist map trivial on the L(3,1) relation span", ok, elapsed, budget)
    assert ok
    assert elapsed < budget


def test_criterion_08_truncated_quotients():
    budget = 120.0
    t0 = time.time()
    ok = True
    s3 = hg.quotient_comparison(hg.S3, truncation=4, bounds=QUOTIENT_BOUNDS)
    ok = ok and s3.at_minus_i.dimension == 1 and s3.at_minus_one.dimension == 1
    dims = {}
    for p in (3, 5):
        cmp = hg.quotient_comparison(hg.lens_space(p), truncation=4, bounds=QUOTIENT_BOUNDS)
        dims[p] = (cmp.at_minus_i.dimension, cmp.at_minus_one.dimension)
        ok = ok and cmp.dimensions_equal and cmp.phi_rows_match
    elapsed = time.time() - t0
    _report(
        8,
        f"truncated quotients: S3 dim 1; L(3,1) {dims[3]}, L(5,1) {dims[5]}",
        ok,
        elapsed,
        budget,
    )
    assert ok
    assert elapsed < budget


def test_criterion_09_product_well_defined():
    budget = 60.0
    t0 = time.time()
    h3 = hg.lens_space(3)
    pool = [
        {},
        {(1, 0): 1},
        {(0, 1): 1},
        {(1, 1): 1},
        {(1, -1): 1},
        {(1, 0): 2},
        {(0, 1): 2},
        {(2, 1): 1},
        {(1, 2): 1},
    ]
    rng = random.Random(SUITE_SEED + 9)
    ok = True
    for trial in range(50):
        pa = rng.choice(pool)
        pb = rng.choice(pool)
        x = realize_multicurve(make_multicurve(TORUS, pa), TORUS)
        y = realize_multicurve(make_multicurve(TORUS, pb), TORUS, variant=1)
        base = hg.k0_product(x, y, h3, MINUS_I)
        swapped = hg.k0_product(y, x, h3, MINUS_I)
        x_alt = realize_multicurve(
            make_multicurve(TORUS, pa), TORUS, variant=2 + (trial % 3)
        )
        perturbed = hg.k0_product(x_alt, y, h3, MINUS_I)
        if base != swapped or base != perturbed:
            ok = False
            sys.__stdout__.write(f"  failing pair: {pa} x {pb}\n")
            break
    elapsed = time.time() - t0
    _report(9, "signed product: commutativity and representative independence", ok, elapsed, budget)
    assert ok
    assert elapsed < budget


def test_criterion_10_determinism(tmp_path):
    budget = 120.0
    t0 = time.time()
    outs = []
    for run in (1, 2):
        path = tmp_path / f"comm{run}.json"
        assert cli_main(
            ["verify-comm", "--trials", "25", "--seed", "11", "--out", str(path)]
        ) == 0
        outs.append(path.read_bytes())
    heeg = tmp_path / "l2.json"
    heeg.write_text(json.dumps({"red": [[1, 0]], "blue": [[1, 2]]}))
    audits = []
    for run in (1, 2):
        path = tmp_path / f"audit{run}.json"
        assert cli_main(
            [
                "heegaard-audit",
                "--heegaard",
                str(heeg),
                "--max-slope",
                "1",
                "--out",
                str(path),
            ]
        ) == 0
        audits.append(path.read_bytes())
    ok = outs[0] == outs[1] and audits[0] == audits[1]
    elapsed = time.time() - t0
    _report(10, "byte-identical reports for identical config and seed", ok, elapsed, budget)
    assert ok
    assert elapsed < budget
