"""Backend selection and the diagram-facing wrapper for the state-sum kernel.

The compiled kernel (`kbsm._statesum_c`) is used when importable and the
diagram's integer data fits in 64-bit accumulators; otherwise the pure-Python
twin runs.  Set KBSM_PURE=1 in the environment to force the fallback.
"""

from __future__ import annotations

import os

from . import _statesum_py
from .diagram import DISK, PUNCTURED_TORUS, Diagram

try:
    from . import _statesum_c
except ImportError:  # pragma: no cover - depends on the build environment
    _statesum_c = None

if os.environ.get("KBSM_PURE"):
    _statesum_c = None

BACKEND = "c" if _statesum_c is not None else "python"

_SAFE = 1 << 40  # headroom for 64-bit accumulation in the compiled kernel


def kernel_args(d: Diagram) -> tuple:
    skel = d.skeleton
    mode = {DISK: 0, PUNCTURED_TORUS: 2}.get(d.surface.kind, 1)
    return (
        skel.ncross,
        skel.pair_plus,
        skel.pair_minus,
        skel.port_arc,
        skel.port_end,
        [p for p, _ in skel.arc_ports],
        [q for _, q in skel.arc_ports],
        skel.arc_dx,
        skel.arc_dy,
        [a[0] for a in skel.arc_anchor0],
        [a[1] for a in skel.arc_anchor0],
        [a[0] for a in skel.arc_anchor1],
        [a[1] for a in skel.arc_anchor1],
        skel.arc_w,
        skel.arc_r,
        mode,
    )


def _fits_compiled(args) -> bool:
    for xs in args[7:15]:
        for x in xs:
            if abs(x) > _SAFE:
                return False
    return True


def bracket_counts(d: Diagram, force_backend: str | None = None) -> dict:
    """Aggregate all 2^cr states of a diagram.

    Returns {(c, t, slope p, slope q, multiplicity, boundary parallels):
    number of states}, covering only cycles that pass through crossings; the
    caller folds in crossing-free components.
    """
    args = kernel_args(d)
    backend = force_backend or BACKEND
    if backend == "c" and _statesum_c is not None and _fits_compiled(args):
        return _statesum_c.bracket_counts(*args)
    return _statesum_py.bracket_counts(*args)
