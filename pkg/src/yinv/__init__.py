"""Exact invariants of surface-links presented by marked graph diagrams."""

from .algebra import BracketPoly, LaurentPoly, MultiPoly, parse_bracketpoly, parse_laurent, parse_multipoly
from .bracket import (
    COMPONENT_COUNT,
    KAUFFMAN,
    LinkEvaluator,
    double_bracket,
    kauffman_bracket,
    kauffman_bracket_skein,
    ll,
    ll_normalized,
    normalized_bracket,
)
from .diagram import (
    DiagramError,
    DomainError,
    MarkedGraphDiagram,
    ParseError,
    load_diagram,
    parse_diagram,
    self_writhe,
    serialize,
    validate,
    writhe,
)
from .evalring import ExtScalar, ModExtScalar, K_invariant, eval_phi, format_modular, reduce_mod, z_of
from .groebner import kauffman_basis, normal_form_invariant

__version__ = "0.1.0"
