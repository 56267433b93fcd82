import random

import pytest
from hypothesis import given, settings, strategies as st

from _gen import random_code
from yinv import catalog
from yinv.algebra import ALPHA, DELTA, BracketPoly, LaurentPoly, parse_bracketpoly
from yinv.bracket import (
    COMPONENT_COUNT,
    KAUFFMAN,
    LinkEvaluator,
    double_bracket,
    kauffman_bracket,
    kauffman_bracket_skein,
    ll,
    ll_normalized,
    normalized_bracket,
    thread_count,
)
from yinv.diagram import DiagramError, DomainError, MarkedGraphDiagram, disjoint_union, parse_diagram, self_writhe, writhe
from yinv.moves import MoveSite, apply_insertion

UNKNOT = parse_diagram("O")
LINKS = [e for e in catalog.CATALOG if not e.diagram.marked_vertices()]


def test_unknot_and_kink():
    assert kauffman_bracket(UNKNOT) == LaurentPoly.const(1)
    assert kauffman_bracket(apply_insertion(UNKNOT, MoveSite("O1+"))) == ALPHA
    assert kauffman_bracket(apply_insertion(UNKNOT, MoveSite("O1-"))) == ALPHA ** -1


def test_empty_diagram_has_no_bracket():
    with pytest.raises(DiagramError):
        kauffman_bracket(MarkedGraphDiagram(()))


@pytest.mark.parametrize("entry", LINKS, ids=lambda e: e.name)
def test_extra_circle_multiplies_by_delta(entry):
    L = entry.diagram.forget_orientation()
    assert kauffman_bracket(disjoint_union(L, UNKNOT)) == DELTA * kauffman_bracket(L)


@pytest.mark.parametrize("entry", LINKS, ids=lambda e: e.name)
def test_normalized_bracket_goldens(entry):
    from yinv.algebra import parse_laurent

    assert normalized_bracket(entry.diagram) == parse_laurent(entry.expected["normalized_bracket"])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 6))
def test_state_sum_matches_skein(seed, n):
    D = random_code(random.Random(seed), n, "XXXV")
    assert kauffman_bracket(D) == kauffman_bracket_skein(D)


def test_state_sum_matches_skein_on_catalog_resolutions():
    for e in catalog.CATALOG:
        D = e.diagram.forget_orientation()
        if D.marked_vertices():
            continue
        assert kauffman_bracket(D) == kauffman_bracket_skein(D)


def test_double_bracket_examples():
    assert double_bracket(catalog.get("2^1_1").diagram) == parse_bracketpoly("x^2 + 2*(-A^2 - A^-2)*x*y + y^2")
    assert double_bracket(catalog.get("2^{-1}_1").diagram) == parse_bracketpoly("-A^3*x - A^-3*y")
    tre = catalog.get("3_1").diagram.forget_orientation()
    assert double_bracket(tre) == BracketPoly.const(kauffman_bracket(tre))


@pytest.mark.parametrize("name", ["2^1_1", "6^{0,1}_1", "8_1", "8^{-1,-1}_1", "10_2"])
def test_fast_and_generic_paths_agree(name):
    D = catalog.get(name).diagram
    assert double_bracket(D, KAUFFMAN, fast=True) == double_bracket(D, KAUFFMAN, fast=False)


def test_component_count_evaluator():
    D = catalog.get("2^1_1").diagram
    # T_inf T_inf and T_0 T_0 give one circle, the mixed states two
    assert double_bracket(D, COMPONENT_COUNT) == parse_bracketpoly("x^2 + 2*A*x*y + y^2")
    assert ll(D, COMPONENT_COUNT) == double_bracket(D, COMPONENT_COUNT)


def test_evaluator_alpha_must_be_a_unit():
    with pytest.raises(ValueError):
        LinkEvaluator("bad", kauffman_bracket, LaurentPoly.const(2), DELTA)


@pytest.mark.parametrize("entry", [e for e in catalog.CATALOG if e.oriented and e.diagram.marked_vertices()],
                         ids=lambda e: e.name)
def test_consistency_of_the_two_normalizations(entry):
    D = entry.diagram
    sw = self_writhe(D)
    assert ll_normalized(D) == ll(D).scalar_mul(ALPHA ** int(sw - writhe(D)))


def test_ll_normalized_needs_orientation():
    with pytest.raises(DomainError):
        ll_normalized(catalog.get("2^1_1").diagram)


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("YINV_THREADS", "4")
    assert thread_count() == 4
    monkeypatch.setenv("YINV_THREADS", "junk")
    assert thread_count() == 1
    monkeypatch.delenv("YINV_THREADS")
    assert thread_count() == 1


def test_threaded_tally_is_identical(monkeypatch):
    D = catalog.get("10^1_1").diagram
    serial = ll(D)
    monkeypatch.setenv("YINV_THREADS", "4")
    assert ll(D) == serial
