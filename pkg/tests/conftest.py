from fractions import Fraction

import pytest

from kbsm.diagram import Surface, build_diagram

F = Fraction


def pt(x, y):
    return (F(x), F(y))


TORUS = Surface("torus")
DISK = Surface("disk")


def punctured(px=F(1, 3), py=F(1, 7), cut=(1, 0)):
    return Surface("punctured_torus", (px, py), cut)


def horizontal_loop(y=F(1, 2), level=0, surface=TORUS):
    """A (1,0) curve at constant height."""
    return ([pt(0, y), pt(1, y)], level)


def vertical_loop(x=F(1, 3), level=0):
    """A (0,1) curve at constant x."""
    return ([pt(x, 0), pt(x, 1)], level)


def small_square(cx=F(1, 5), cy=F(1, 5), r=F(1, 16), level=0):
    return (
        [
            pt(cx - r, cy - r),
            pt(cx + r, cy - r),
            pt(cx + r, cy + r),
            pt(cx - r, cy + r),
            pt(cx - r, cy - r),
        ],
        level,
    )


def one_crossing_stack(surface=TORUS):
    """Slope (1,0) at level 1 over slope (0,1) at level 0: one crossing."""
    return build_diagram(surface, [horizontal_loop(level=1), vertical_loop(level=0)])


def trefoil(surface=DISK):
    """Closure of a three-crossing two-strand braid, all three crossings with
    the ascending strand over; an alternating trefoil diagram."""
    verts = [
        pt(0, 0),
        pt(F(1, 2), 0),
        pt(F(3, 2), 1),
        pt(F(5, 2), 0),
        pt(F(7, 2), 1),
        pt(4, 1),
        pt(4, 2),
        pt(-1, 2),
        pt(-1, 1),
        pt(0, 1),
        pt(F(1, 2), 1),
        pt(F(3, 2), 0),
        pt(F(5, 2), 1),
        pt(F(7, 2), 0),
        pt(4, 0),
        pt(4, -1),
        pt(-1, -1),
        pt(-1, 0),
        pt(0, 0),
    ]
    overrides = [
        {"component": 0, "crossing_index": k, "over": over}
        for k, over in _trefoil_over_flags()
    ]
    return build_diagram(surface, [(verts, 0)], self_overrides=overrides)


def _trefoil_over_flags():
    # the ascending (slope +1) strand passes over at every crossing; which of
    # the two strands at a crossing is "a" (the smaller (segment, parameter))
    # is computed here once by hand:
    #   crossing at x=1: segments 1 (up) and 10 (down): a = segment 1, up,
    #     so over = a -> True
    #   crossing at x=2: segments 2 (down) and 11 (up): a = segment 2, down,
    #     over is the up strand = b -> False
    #   crossing at x=3: segments 3 (up) and 12 (down): a = segment 3 -> True
    return [(0, True), (1, False), (2, True)]


@pytest.fixture
def torus():
    return TORUS


@pytest.fixture
def disk():
    return DISK
