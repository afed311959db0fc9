"""
Mutual Dependence
-----------------
Detects positive recursion that crosses module boundaries: a strongly
connected component of the composition's positive dependency graph that
contains output atoms of two different modules.
"""

from collections.abc import Sequence

from modsm.algebra.compose import aligned, compose_all
from modsm.core.atoms import Atom
from modsm.core.module import Module
from modsm.graphs.dependency import DependencyMode, dep_graph, sccs


def shared_components(modules: Sequence[Module]) -> list[frozenset[Atom]]:
    """
    Components shared by the outputs of at least two modules, in
    topological order. The modules must be composable.
    """
    modules = aligned(list(modules))
    composed = compose_all(modules)
    owner = {atom: i for i, m in enumerate(modules) for atom in m.output}
    shared = []
    for component in sccs(dep_graph(composed, DependencyMode.POSITIVE)):
        if len(component) < 2:
            continue
        owners = {owner[a] for a in component if a in owner}
        if len(owners) > 1:
            shared.append(component)
    return shared


def shared_component(m1: Module, m2: Module) -> frozenset[Atom] | None:
    found = shared_components([m1, m2])
    return found[0] if found else None


def mutually_dependent(m1: Module, m2: Module) -> bool:
    return shared_component(m1, m2) is not None
