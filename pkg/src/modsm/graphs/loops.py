"""
Loop Enumeration
----------------
A loop is a non-empty atom set L such that every member reaches every
member (itself included) along a non-empty path of positive dependencies
that stays inside L. A singleton is a loop only with a self edge.

Enumeration is exponential in component size and guarded by
MODSM_LOOP_CAP on the number of atoms.
"""

import itertools
import logging
from collections.abc import Iterable

from modsm.config import ensure_within, get_loop_cap
from modsm.core.atoms import Atom
from modsm.core.module import Module
from modsm.core.rules import Rule
from modsm.graphs.dependency import DepGraph, DependencyMode, dep_graph, sccs
from modsm.graphs.scc import strongly_connected_components

logger = logging.getLogger(__name__)


def _is_loop(candidate: frozenset[Atom], graph: DepGraph) -> bool:
    def inside(atom: Atom) -> list[Atom]:
        return [w for w in graph.successors(atom) if w in candidate]

    if len(candidate) == 1:
        (atom,) = candidate
        return atom in graph.successors(atom)
    components = strongly_connected_components(sorted(candidate), inside)
    return len(components) == 1


def loops(source: Module | Iterable[Rule], cap: int | None = None) -> frozenset[frozenset[Atom]]:
    """All loops of the positive dependency graph."""
    graph = dep_graph(source, DependencyMode.POSITIVE)
    ensure_within("loop enumeration atoms", len(graph.vertices), get_loop_cap(cap))

    found: set[frozenset[Atom]] = set()
    for component in sccs(graph):
        members = sorted(component)
        for size in range(1, len(members) + 1):
            for subset in itertools.combinations(members, size):
                candidate = frozenset(subset)
                if _is_loop(candidate, graph):
                    found.add(candidate)
    logger.debug(f"Found {len(found)} loops over {len(graph.vertices)} atoms")
    return frozenset(found)
