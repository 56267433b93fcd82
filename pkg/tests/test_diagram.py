import json

import pytest

from yinv import catalog
from yinv.diagram import (
    DiagramError,
    DomainError,
    MarkedGraphDiagram,
    Node,
    ParseError,
    T_INF,
    T_ZERO,
    components,
    from_json,
    is_admissible_heuristic,
    mirror,
    orient_by_propagation,
    parse_diagram,
    resolve,
    resolve_state,
    self_writhe,
    serialize,
    to_json,
    validate,
    writhe,
)

HOPF = "X[1,4,2,3] X[3,2,4,1]"


def test_parse_free_loop():
    D = parse_diagram("O")
    assert D.free_loops == 1 and D.nodes == ()


def test_parse_sphere_vertex():
    D = parse_diagram("M[1,2,2,1]")
    assert D.marked_vertices() == [0]
    assert validate(D) == []


def test_parse_hopf_and_components():
    D = parse_diagram(HOPF)
    assert validate(D) == []
    assert len(components(D)) == 2


def test_components_small_cases():
    assert len(components(parse_diagram("O"))) == 1
    assert len(components(catalog.get("3_1").diagram.forget_orientation())) == 1


def test_parse_comments_and_whitespace():
    D = parse_diagram("# two crossings\nX[1, 4, 2, 3]\n  X[3,2,4,1]  # done\n")
    assert serialize(D) == HOPF


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_diagram("X[1,2,3,4]\n  Q[1]")
    assert (info.value.line, info.value.col) == (2, 3)


@pytest.mark.parametrize("text", ["X[1,2,3]", "X[1,2,a,4]", "X[0,1,1,0]", "X[1,1,1,2]"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_diagram(text)


def test_validate_reports_single_occurrence():
    D = parse_diagram("X[1,2,7,3] X[3,2,4,1] O")
    assert "edge 7 occurs 1 time" in validate(D)


def test_validate_rejects_all_inward_vertex():
    D = MarkedGraphDiagram((Node("M", (1, 2, 2, 1)),), 0, {1: (0, 0), 2: (0, 1)})
    assert validate(D)  # edge 1 and 2 each also flow out somewhere, so only a bad pattern is possible
    bad = MarkedGraphDiagram(
        (Node("M", (1, 2, 3, 4)), Node("M", (1, 2, 3, 4))), 0, {1: (0, 0), 2: (0, 1), 3: (0, 2), 4: (0, 3)}
    )
    assert any("vertex" in p for p in validate(bad))


@pytest.mark.parametrize("entry", catalog.CATALOG, ids=lambda e: e.name)
def test_text_and_json_roundtrip(entry):
    D = entry.diagram
    assert parse_diagram(serialize(D)) == D
    assert from_json(to_json(D)) == D
    assert parse_diagram(to_json(D)) == D
    json.loads(to_json(D))


@pytest.mark.parametrize("entry", catalog.CATALOG, ids=lambda e: e.name)
def test_catalog_entries_validate(entry):
    assert validate(entry.diagram) == []


def test_resolve_sphere():
    D = parse_diagram("M[1,2,2,1]")
    assert resolve(D, "positive").free_loops == 1
    assert len(components(resolve(D, "positive"))) == 1


def test_resolve_torus_and_states():
    D = catalog.get("2^1_1").diagram
    # one circle each way, so chi = 1 + 1 - 2 = 0 as for a torus
    assert len(components(resolve(D, "positive"))) == 1
    assert len(components(resolve(D, "negative"))) == 1
    counts = [len(components(resolve_state(D, dict(zip(D.marked_vertices(), s)))))
              for s in ((T_INF, T_INF), (T_INF, T_ZERO), (T_ZERO, T_INF), (T_ZERO, T_ZERO))]
    assert counts == [1, 2, 2, 1]
    assert resolve_state(D, {i: T_INF for i in D.marked_vertices()}) == resolve(D, "positive")
    assert resolve_state(D, {i: T_ZERO for i in D.marked_vertices()}) == resolve(D, "negative")


def _same_diagram(D, E):
    return (D.nodes, D.free_loops, D.orientation) == (E.nodes, E.free_loops, E.orientation)


def test_resolve_without_vertices_is_identity():
    D = parse_diagram(HOPF)
    assert _same_diagram(resolve(D, "negative"), D)


def test_writhe_values():
    assert writhe(parse_diagram("O").with_orientation({})) == 0
    hopf = catalog.get("2^2_1").diagram
    # the recorded normalized bracket -A^10 - A^2 forces w = -2 in this convention
    assert writhe(hopf) == -2
    assert writhe(mirror(hopf)) == 2


def test_writhe_needs_orientation():
    with pytest.raises(DomainError):
        writhe(parse_diagram(HOPF))


def test_nonorientable_entry_cannot_be_oriented():
    D = catalog.get("7^{0,-2}_1").diagram
    for e in D.edges():
        occ = D.occurrences()[e]
        for head in occ:
            with pytest.raises(DiagramError):
                orient_by_propagation(D, {e: head})


@pytest.mark.parametrize("name,sw", [("2^1_1", 0), ("7^{0,-2}_1", 1), ("2^{-1}_1", 0)])
def test_self_writhe(name, sw):
    assert self_writhe(catalog.get(name).diagram) == sw


def test_admissibility_heuristic():
    assert is_admissible_heuristic(parse_diagram("M[1,2,2,1]")) == "yes"
    assert is_admissible_heuristic(catalog.get("2^1_1").diagram) != "no"
    # a vertex spliced into a trefoil: the positive resolution is the trefoil
    tre = catalog.get("3_1").diagram.forget_orientation()
    D = parse_diagram(serialize(tre) + " M[7,8,8,7]")
    assert is_admissible_heuristic(D) == "no"


def test_mirror_twice_is_the_same_drawing():
    from yinv.bracket import kauffman_bracket

    for e in catalog.CATALOG:
        D, M2 = e.diagram, mirror(mirror(e.diagram))
        for n, m in zip(D.nodes, M2.nodes):
            # X[a,b,c,d] and X[c,d,a,b] are the same crossing
            assert m.slots in (n.slots, n.slots[2:] + n.slots[:2])
        if not D.marked_vertices():
            assert kauffman_bracket(M2.forget_orientation()) == kauffman_bracket(D.forget_orientation())
