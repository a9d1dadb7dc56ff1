"""refmon: a workbench for finitely presented commutative monoids.

Bounded word-problem oracle, exact arithmetic for two wild refinement
monoids, separated-graph and primitive-monoid presentations, and three-valued
property checkers.
"""

from .decisions import Decision, SearchBound
from .presentation import Presentation, Relation, make_presentation, parse_presentation
from .rewrite import ClassCache, decide_equal, decide_leq, enumerate_class, find_refinement
from .targets import INF, CertificateHom, build_certificate
from .wild import BarElem, Ideal, LadderElem, parse_elem, to_bar, truncation_presentation
from .words import GeneratorSet, ParseError, Word

__version__ = "0.1.0"

__all__ = [
    "BarElem",
    "CertificateHom",
    "ClassCache",
    "Decision",
    "GeneratorSet",
    "INF",
    "Ideal",
    "LadderElem",
    "ParseError",
    "Presentation",
    "Relation",
    "SearchBound",
    "Word",
    "build_certificate",
    "decide_equal",
    "decide_leq",
    "enumerate_class",
    "find_refinement",
    "make_presentation",
    "parse_elem",
    "parse_presentation",
    "to_bar",
    "truncation_presentation",
]
