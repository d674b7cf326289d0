import pytest
from hypothesis import given, settings

from ordersheaf import (
    InteractionGraph,
    UnknownNameError,
    ValidationError,
    catalog_example,
    catalog_topology,
    check_sheaf_axioms,
    edge_overlap,
)
from ordersheaf.catalog import EXAMPLES, TOPOLOGIES, full_visibility_sheaf

from conftest import sheaves


def labels(sheaf, ids):
    return {sheaf.label(a) for a in ids}


def test_partial_visibility_overlaps():
    sheaf, _ = catalog_example("partial_visibility")
    assert labels(sheaf, edge_overlap(sheaf, ("V1", "V2"))) == {"B", "C"}
    assert labels(sheaf, edge_overlap(sheaf, ("V3", "V1"))) == {"A", "C"}
    assert labels(sheaf, edge_overlap(sheaf, ("V2", "V3"))) == {"C", "D"}


def test_full_visibility_overlap():
    sheaf, _ = catalog_example("condorcet_triangle")
    assert labels(sheaf, edge_overlap(sheaf, ("V2", "V1"))) == {"A", "B", "C"}


def test_unknown_edge():
    sheaf, _ = catalog_example("partial_visibility")
    with pytest.raises(UnknownNameError):
        edge_overlap(sheaf, ("V1", "V9"))
    graph = catalog_topology("P4")
    sheaf = full_visibility_sheaf(graph)
    with pytest.raises(UnknownNameError):
        edge_overlap(sheaf, ("V1", "V3"))


def test_graph_invariants():
    with pytest.raises(ValidationError):
        InteractionGraph(("a", "b"), (("a", "a"),))
    with pytest.raises(ValidationError):
        InteractionGraph(("a", "b"), (("a", "b"), ("b", "a")))
    with pytest.raises(ValidationError):
        InteractionGraph(("a",), (("a", "z"),))
    g = InteractionGraph(("x", "y", "z"), (("z", "x"), ("y", "x")))
    assert g.edges == (("x", "y"), ("x", "z"))


@pytest.mark.parametrize("name", EXAMPLES)
def test_catalog_profiles_match_visibility(name):
    sheaf, profile = catalog_example(name)
    sheaf.validate_profile(profile)
    for v in sheaf.graph.vertices:
        assert profile[v].domain == sheaf.visibility[v]
    for e in sheaf.graph.edges:
        assert check_sheaf_axioms(sheaf, e)


def test_catalog_configurations():
    sheaf, p = catalog_example("condorcet_triangle")
    assert [sheaf.format_order(p[v]) for v in ("V1", "V2", "V3")] == ["A>B>C", "B>C>A", "C>A>B"]
    sheaf, p = catalog_example("transitive_triangle")
    assert {sheaf.format_order(p[v]) for v in sheaf.graph.vertices} == {"A>B>C"}
    sheaf, p = catalog_example("partial_visibility")
    assert [sheaf.format_order(p[v]) for v in ("V1", "V2", "V3")] == ["A>B>C", "B>C>D", "C>D>A"]
    assert len(sheaf.graph.edges) == 3
    sheaf, p = catalog_example("complete_k4")
    assert sheaf.format_order(p["V4"]) == "A>B>C"
    assert len(sheaf.graph.edges) == 6
    with pytest.raises(UnknownNameError):
        catalog_example("nonsense")


@pytest.mark.parametrize(
    "name, n_vertices, n_edges",
    [("C3", 3, 3), ("C4", 4, 4), ("C5", 5, 5), ("K3", 3, 3), ("K4", 4, 6), ("P4", 4, 3), ("S4", 4, 3)],
)
def test_topologies(name, n_vertices, n_edges):
    g = catalog_topology(name)
    assert (len(g.vertices), len(g.edges)) == (n_vertices, n_edges)
    assert g.n_components() == 1


def test_path_and_star_shape():
    assert catalog_topology("P4").edges == (("V1", "V2"), ("V2", "V3"), ("V3", "V4"))
    degrees = {v: len(n) for v, n in catalog_topology("S4").neighbors().items()}
    assert sorted(degrees.values()) == [1, 1, 1, 3]
    with pytest.raises(UnknownNameError):
        catalog_topology("K9")
    assert set(TOPOLOGIES) == {"C3", "C4", "C5", "K3", "K4", "P4", "S4"}


def test_axioms_exhaustive_on_k3():
    sheaf, _ = catalog_example("condorcet_triangle")
    for e in sheaf.graph.edges:
        verdict = check_sheaf_axioms(sheaf, e)
        assert verdict.locality_ok and verdict.gluing_ok


@settings(max_examples=60, deadline=None)
@given(sheaves(max_alts=4, max_vertices=5))
def test_overlap_symmetric_and_axioms_hold(instance):
    sheaf, _ = instance
    for u, v in sheaf.graph.edges:
        assert edge_overlap(sheaf, (u, v)) == edge_overlap(sheaf, (v, u))
        assert check_sheaf_axioms(sheaf, (v, u))
