"""Exact Kauffman bracket skein algebras of low-genus surfaces and skein
modules of 3-manifolds given by genus-1 Heegaard data."""

from .ring import GaussRat, LaurentPoly, lp_eval, lp_mul, lp_twist
from .homology import Lattice, a_canonicalize, a_mul, smith_form
from .diagram import (
    Diagram,
    DiagramError,
    OrientedDiagram,
    SimpleMulticurve,
    Surface,
    build_diagram,
    canonical_multicurve,
    diagram_from_json,
    diagram_to_json,
    orient_data,
    realize_multicurve,
    resolve,
    stack,
    triviality,
)
from .skein import Skein, bracket, character_act, grade, phi, psi, skein_mul, verify_comm

__version__ = "0.1.0"

__all__ = [
    "GaussRat",
    "LaurentPoly",
    "lp_mul",
    "lp_twist",
    "lp_eval",
    "Lattice",
    "a_canonicalize",
    "a_mul",
    "smith_form",
    "Surface",
    "Diagram",
    "DiagramError",
    "OrientedDiagram",
    "SimpleMulticurve",
    "build_diagram",
    "resolve",
    "triviality",
    "orient_data",
    "stack",
    "canonical_multicurve",
    "realize_multicurve",
    "diagram_to_json",
    "diagram_from_json",
    "Skein",
    "bracket",
    "skein_mul",
    "grade",
    "character_act",
    "phi",
    "psi",
    "verify_comm",
    "__version__",
]
