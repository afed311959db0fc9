"""
Dependency Graphs
-----------------
Atom-level dependency graphs of modules and programs, their strongly
connected components, and the grouping of components that share hidden
atoms.

An edge ``(b, a)`` means the head ``a`` of some rule depends on the body
atom ``b``. Positive graphs use positive body atoms only; the
positive-negative variant adds negative body atoms.

Usage:
    from modsm.graphs.dependency import DependencyMode, dep_graph, sccs

    partition = sccs(dep_graph(m, DependencyMode.POSITIVE))
"""

from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property

from modsm.core.atoms import Atom, atom_key
from modsm.core.module import Module
from modsm.core.rules import Rule, rule_atoms
from modsm.graphs.scc import strongly_connected_components, topological_components


class DependencyMode(StrEnum):
    POSITIVE = "positive"
    POSITIVE_NEGATIVE = "positive-negative"


@dataclass(frozen=True)
class DepGraph:
    vertices: frozenset[Atom]
    edges: frozenset[tuple[Atom, Atom]]
    mode: DependencyMode = DependencyMode.POSITIVE

    @cached_property
    def adjacency(self) -> dict[Atom, tuple[Atom, ...]]:
        successors: dict[Atom, list[Atom]] = defaultdict(list)
        for b, a in self.edges:
            successors[b].append(a)
        return {v: tuple(sorted(successors.get(v, ()))) for v in self.vertices}

    def successors(self, atom: Atom) -> tuple[Atom, ...]:
        return self.adjacency.get(atom, ())

    def restrict(self, vertices: Iterable[Atom]) -> "DepGraph":
        """Subgraph induced by ``vertices``."""
        keep = frozenset(vertices)
        edges = frozenset((b, a) for b, a in self.edges if b in keep and a in keep)
        return DepGraph(keep, edges, self.mode)


@dataclass(frozen=True)
class SccPartition:
    """Disjoint components covering the graph, dependencies first."""

    components: tuple[frozenset[Atom], ...]

    @cached_property
    def owner(self) -> dict[Atom, int]:
        return {atom: i for i, component in enumerate(self.components) for atom in component}

    def component_of(self, atom: Atom) -> frozenset[Atom]:
        return self.components[self.owner[atom]]

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)


def rule_edges(rule: Rule, mode: DependencyMode) -> Iterable[tuple[Atom, Atom]]:
    body = rule.pos_atoms
    if mode is DependencyMode.POSITIVE_NEGATIVE:
        body = body | rule.neg_atoms
    for head in rule.heads:
        for b in body:
            yield b, head


def dep_graph(
    source: Module | Iterable[Rule], mode: DependencyMode = DependencyMode.POSITIVE
) -> DepGraph:
    """
    Dependency graph of a module (vertices Hb(P) = I u O u H) or of a bare
    rule collection (vertices Hb(R)).
    """
    mode = DependencyMode(mode)
    if isinstance(source, Module):
        rules, vertices = source.rules, source.atoms | source.rule_atoms
    else:
        rules = tuple(source)
        vertices = rule_atoms(rules)
    edges = frozenset(edge for rule in rules for edge in rule_edges(rule, mode))
    return DepGraph(frozenset(vertices), edges, mode)


def sccs(graph: DepGraph) -> SccPartition:
    """Components in topological order, ties broken by the smallest atom id."""
    ordered = topological_components(
        sorted(graph.vertices), graph.successors, key=lambda atom: atom.id
    )
    return SccPartition(tuple(ordered))


def dep_h(m: Module, components: Sequence[frozenset[Atom]]) -> SccPartition:
    """
    Group components that are tied together by hidden atoms.

    Two components are linked when a hidden atom of one occurs (positively
    or negatively) in the body of a rule whose head lies in the other. The
    links are symmetric, so the groups are the connected components of the
    link graph. Groups keep the order of their first member component.
    """
    owner: dict[Atom, int] = {}
    for i, component in enumerate(components):
        for atom in component:
            owner[atom] = i

    links: dict[int, set[int]] = defaultdict(set)
    for rule in m.rules:
        hidden_body = (rule.pos_atoms | rule.neg_atoms) & m.hidden
        if not hidden_body:
            continue
        for head in rule.heads:
            j = owner.get(head)
            if j is None:
                continue
            for h in hidden_body:
                i = owner.get(h)
                if i is not None and i != j:
                    links[i].add(j)
                    links[j].add(i)

    groups = strongly_connected_components(
        range(len(components)), lambda i: sorted(links.get(i, ()))
    )
    groups.sort(key=min)
    return SccPartition(
        tuple(frozenset().union(*(components[i] for i in group)) for group in groups)
    )


def to_dot(graph: DepGraph, name: str = "dependencies") -> str:
    """DOT text for debugging; negative-mode graphs do not mark edge polarity."""
    lines = [f"digraph {name} {{"]
    for atom in sorted(graph.vertices, key=atom_key):
        lines.append(f'  "{atom.label}";')
    for b, a in sorted(graph.edges, key=lambda e: (atom_key(e[0]), atom_key(e[1]))):
        lines.append(f'  "{b.label}" -> "{a.label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
