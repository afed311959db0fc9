"""
Tests for dependency graphs, hidden-atom grouping and loops.
"""

import pytest

from modsm.errors import CapExceeded
from modsm.graphs.dependency import DependencyMode, dep_graph, dep_h, sccs, to_dot
from modsm.graphs.loops import loops
from tests.programs import EVEN_LOOP, POSITIVE_LOOP, atoms, labels, module


class TestDepGraph:
    """Edges run from body atoms to heads."""

    def test_positive_edges(self):
        m = module(EVEN_LOOP)
        graph = dep_graph(m)
        assert {(labels([b]), labels([a])) for b, a in graph.edges} == {
            (frozenset("a"), frozenset("c"))
        }
        assert graph.vertices == atoms(m, "a", "b", "c")

    def test_negative_edges(self):
        m = module(EVEN_LOOP)
        graph = dep_graph(m, DependencyMode.POSITIVE_NEGATIVE)
        assert len(graph.edges) == 3

    def test_components_in_topological_order(self):
        m = module(EVEN_LOOP)
        positive = sccs(dep_graph(m))
        assert [labels(c) for c in positive] == [{"a"}, {"b"}, {"c"}]
        both = sccs(dep_graph(m, DependencyMode.POSITIVE_NEGATIVE))
        assert [labels(c) for c in both] == [{"a", "b"}, {"c"}]

    def test_module_graph_includes_unused_atoms(self):
        m = module("#input i. #output z. a :- not b.")
        assert atoms(m, "i", "z") <= dep_graph(m).vertices
        assert atoms(m, "i", "z").isdisjoint(dep_graph(m.rules).vertices)

    def test_restrict(self):
        m = module(EVEN_LOOP)
        graph = dep_graph(m, DependencyMode.POSITIVE_NEGATIVE).restrict(atoms(m, "a", "c"))
        assert len(graph.edges) == 1

    def test_dot(self):
        m = module("a :- b.")
        assert to_dot(dep_graph(m)) == 'digraph dependencies {\n  "a";\n  "b";\n  "b" -> "a";\n}\n'


class TestDepH:
    """Components linked by hidden atoms are grouped."""

    def test_hidden_links(self):
        m = module("#hidden h. x :- h. y :- h. h :- z.")
        partition = dep_h(m, sccs(dep_graph(m)).components)
        assert {labels(c) for c in partition} == {frozenset({"h", "x", "y"}), frozenset({"z"})}

    def test_no_hidden_atoms(self):
        m = module(EVEN_LOOP)
        components = sccs(dep_graph(m)).components
        assert dep_h(m, components).components == components


class TestLoops:
    """Loops of the positive dependency graph."""

    def test_two_atom_loop(self):
        assert {labels(loop) for loop in loops(module(POSITIVE_LOOP))} == {frozenset("ab")}

    def test_self_loop(self):
        assert {labels(loop) for loop in loops(module("a :- a."))} == {frozenset("a")}

    def test_overlapping_loops(self):
        found = loops(module("a :- b. b :- a. b :- c. c :- b."))
        assert {labels(loop) for loop in found} == {
            frozenset("ab"),
            frozenset("bc"),
            frozenset("abc"),
        }

    def test_acyclic(self):
        assert loops(module(EVEN_LOOP)) == frozenset()

    def test_cap(self):
        with pytest.raises(CapExceeded):
            loops(module(POSITIVE_LOOP), cap=2)
