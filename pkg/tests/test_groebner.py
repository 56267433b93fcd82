import pytest
from hypothesis import given, settings, strategies as st

from yinv import catalog
from yinv.algebra import MultiPoly, parse_multipoly as P
from yinv.groebner import (
    G16,
    GroebnerError,
    buchberger,
    is_groebner_basis,
    kauffman_basis,
    kauffman_ideal,
    normal_form_invariant,
    reduce,
    reduce_basis,
    s_polynomial,
)

monos = st.tuples(*[st.integers(0, 3)] * 4)
small = st.dictionaries(monos, st.integers(-4, 4), max_size=4).map(MultiPoly)


def test_examples_reduce():
    assert reduce(P("x - 1 + y"), G16).is_zero()
    assert reduce(P("x^2 + (-2*A^2 - 2*B^2)*x*y + y^2"), G16) == P("1")
    assert reduce(P("-A^3*x - B^3*y"), G16) == P("A + B")


def test_s_polynomials():
    f = P("A*B - 1")
    assert s_polynomial(f, f).is_zero()
    assert reduce(s_polynomial(f, P("A^2 + B^2 + 1")), G16).is_zero()
    assert reduce(s_polynomial(P("x"), P("y")), [P("x"), P("y")]).is_zero()
    with pytest.raises(GroebnerError):
        s_polynomial(MultiPoly(), f)


def test_single_generator():
    assert buchberger([P("x - 1 + y")]) == [P("x - 1 + y")]
    assert reduce_basis([P("2*x - 2 + 2*y")]) == [P("x - 1 + y")]


def test_reduced_basis_of_the_ideal():
    raw = buchberger(kauffman_ideal())
    assert is_groebner_basis(raw)
    assert set(reduce_basis(raw)) == set(G16)
    assert set(kauffman_basis()) == set(G16)
    assert reduce_basis(list(G16)) == list(kauffman_basis())


def test_basis_is_rendered_in_term_order():
    assert [str(g) for g in kauffman_basis()] == ["B^3 + A + B", "A^2 + B^2 + 1", "A*B - 1", "x + y - 1"]


def test_other_generating_set_gives_the_same_ideal():
    # the three state relations written with B, plus AB - 1
    alt = [P("(-A^2 - B^2)*x + y - 1"), P("x + (-A^2 - B^2)*y - 1"), P("(A^4 + 1 + B^4)*x*y"), P("A*B - 1")]
    G = reduce_basis(buchberger(alt))
    assert all(reduce(g, G16).is_zero() for g in G)
    assert all(reduce(g, G).is_zero() for g in G16)


def test_reduce_basis_rejects_non_bases():
    with pytest.raises(GroebnerError):
        reduce_basis([P("x*y - 1"), P("x^2 - y")])


@settings(max_examples=60, deadline=None)
@given(small)
def test_normal_form_is_idempotent(f):
    r = reduce(f, G16)
    assert reduce(r, G16) == r


@settings(max_examples=60, deadline=None)
@given(small, small, st.sampled_from(range(4)))
def test_ideal_members_do_not_change_normal_form(f, q, k):
    assert reduce(f + q * G16[k], G16) == reduce(f, G16)


@settings(max_examples=40, deadline=None)
@given(small, st.permutations(list(G16)))
def test_normal_form_does_not_depend_on_listing(f, G):
    assert reduce(f, G) == reduce(f, G16)


@pytest.mark.parametrize("name,mode,nf", [
    ("2^1_1", "unoriented", "1"),
    ("2^{-1}_1", "unoriented", "A + B"),
    ("6^{0,1}_1", "oriented", "1"),
    ("7^{0,-2}_1", "unoriented", "1"),
    ("8_1", "oriented", "1"),
])
def test_catalog_normal_forms(name, mode, nf):
    assert normal_form_invariant(catalog.get(name).diagram, mode) == P(nf)


def test_printed_virtual_polynomial_reduces_to_printed_form():
    printed = P("(-B^2 - A^2)*(x^2 + y^2) + (A^4 + A + 3 + B^2 + B^4)*x*y")
    assert str(reduce(printed, G16)) == "-B^2*y^2 - A*y^2 + B^2*y + A*y + 1"
