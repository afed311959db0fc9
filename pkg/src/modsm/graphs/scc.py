"""
Strongly Connected Components
-----------------------------
Iterative Tarjan and a deterministic topological order over the
condensation. Vertices only need to be hashable; ties in the order are
broken by a caller-supplied key.

Usage:
    from modsm.graphs.scc import strongly_connected_components, topological_components

    comps = topological_components(vertices, successors, key=lambda v: v.id)
"""

import heapq
import itertools
from collections.abc import Callable, Hashable, Iterable
from typing import TypeVar

V = TypeVar("V", bound=Hashable)


def strongly_connected_components(
    vertices: Iterable[V], successors: Callable[[V], Iterable[V]]
) -> list[frozenset[V]]:
    """
    Tarjan's algorithm without recursion.

    Components come out in reverse topological order: every component is
    emitted after all components reachable from it.
    """
    index: dict[V, int] = {}
    lowlink: dict[V, int] = {}
    on_stack: set[V] = set()
    stack: list[V] = []
    counter = itertools.count()
    result: list[frozenset[V]] = []

    for root in vertices:
        if root in index:
            continue
        index[root] = lowlink[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(successors(root)))]
        while work:
            v, children = work[-1]
            advanced = False
            for w in children:
                if w not in index:
                    index[w] = lowlink[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                component = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.add(w)
                    if w == v:
                        break
                result.append(frozenset(component))
    return result


def topological_components(
    vertices: Iterable[V],
    successors: Callable[[V], Iterable[V]],
    key: Callable[[V], object],
) -> list[frozenset[V]]:
    """
    Components ordered so that every edge goes from an earlier component to a
    later one (or stays inside one). Among ready components the one with the
    smallest member key comes first (Kahn's algorithm over a heap).
    """
    vertices = list(vertices)
    components = strongly_connected_components(vertices, successors)
    owner: dict[V, int] = {}
    for i, component in enumerate(components):
        for v in component:
            owner[v] = i

    out_edges: list[set[int]] = [set() for _ in components]
    in_degree = [0] * len(components)
    for v in vertices:
        source = owner[v]
        for w in successors(v):
            target = owner[w]
            if target != source and target not in out_edges[source]:
                out_edges[source].add(target)
                in_degree[target] += 1

    min_key = [min(key(v) for v in component) for component in components]
    ready = [(min_key[i], i) for i in range(len(components)) if in_degree[i] == 0]
    heapq.heapify(ready)
    ordered: list[frozenset[V]] = []
    while ready:
        _, i = heapq.heappop(ready)
        ordered.append(components[i])
        for j in out_edges[i]:
            in_degree[j] -= 1
            if in_degree[j] == 0:
                heapq.heappush(ready, (min_key[j], j))
    return ordered
