"""
Module Composition
------------------
Composition of modules, compatibility of interpretations and the natural
join of model sets.

Composition unions the rules and signatures, turning inputs that the
other module defines into outputs. It is undefined when the modules share
outputs or when one module mentions the hidden atoms of the other.

Usage:
    from modsm.algebra.compose import compose, natural_join

    both = compose(p1, p2)
    joined = natural_join(stable_models(p1), stable_models(p2), p1, p2)
"""

import logging
from collections import defaultdict
from collections.abc import Iterable, Sequence

from modsm.core.atoms import Atom, Interpretation, ModelSet
from modsm.core.module import EMPTY_MODULE, Module, reintern
from modsm.errors import HiddenLeak, OutputClash

logger = logging.getLogger(__name__)


def aligned(modules: Sequence[Module]) -> list[Module]:
    """Move every module onto the symbol table of the first one."""
    if not modules:
        return []
    symbols = modules[0].symbols
    return [modules[0], *(reintern(m, symbols) for m in modules[1:])]


def _check_composable(m1: Module, m2: Module) -> None:
    clash = m1.output & m2.output
    if clash:
        raise OutputClash(clash)
    leak = (m1.hidden & m2.atoms) | (m2.hidden & m1.atoms)
    if leak:
        raise HiddenLeak(leak)


def compose(m1: Module, m2: Module) -> Module:
    """
    ``<R1 u R2, (I1 \\ O2) u (I2 \\ O1), O1 u O2, H1 u H2>``.

    Raises:
        OutputClash: the modules define a common output atom.
        HiddenLeak: a hidden atom of one module occurs in the other.
    """
    m1, m2 = aligned([m1, m2])
    _check_composable(m1, m2)
    return Module(
        m1.rules | m2.rules,
        (m1.input - m2.output) | (m2.input - m1.output),
        m1.output | m2.output,
        m1.hidden | m2.hidden,
        m1.symbols,
    )


def compose_all(modules: Iterable[Module]) -> Module:
    """
    Composition of a whole collection, checked in one pass.

    Same result as folding ``compose`` from the left, but each atom is
    looked up once instead of once per fold step.
    """
    modules = aligned(list(modules))
    if not modules:
        return EMPTY_MODULE
    if len(modules) == 1:
        return modules[0]

    defined_by: dict[Atom, int] = {}
    clash: set[Atom] = set()
    for i, m in enumerate(modules):
        for atom in m.output:
            if atom in defined_by:
                clash.add(atom)
            defined_by[atom] = i
    if clash:
        raise OutputClash(clash)

    owner: dict[Atom, int] = {}
    for i, m in enumerate(modules):
        for atom in m.hidden:
            owner[atom] = i
    seen_in: dict[Atom, set[int]] = defaultdict(set)
    for i, m in enumerate(modules):
        for atom in m.atoms:
            if atom in owner:
                seen_in[atom].add(i)
    leak = {atom for atom, users in seen_in.items() if users != {owner[atom]}}
    if leak:
        raise HiddenLeak(leak)

    rules = frozenset().union(*(m.rules for m in modules))
    inputs = frozenset().union(*(m.input for m in modules))
    outputs = frozenset().union(*(m.output for m in modules))
    hidden = frozenset().union(*(m.hidden for m in modules))
    logger.debug(f"Composed {len(modules)} modules into {len(rules)} rules")
    return Module(rules, inputs - outputs, outputs, hidden, modules[0].symbols)


def compatible(
    m1_model: Iterable[Atom], m2_model: Iterable[Atom], m1: Module, m2: Module
) -> bool:
    """M1 and M2 agree on the atoms visible to both modules."""
    return frozenset(m1_model) & m2.visible == frozenset(m2_model) & m1.visible


def compatible_all(models: Sequence[Iterable[Atom]], modules: Sequence[Module]) -> bool:
    """Pairwise compatibility of a collection."""
    models = [frozenset(model) for model in models]
    return all(
        compatible(models[i], models[j], modules[i], modules[j])
        for i in range(len(models))
        for j in range(i + 1, len(models))
    )


def natural_join(
    a1: Iterable[Interpretation], a2: Iterable[Interpretation], m1: Module, m2: Module
) -> ModelSet:
    """``{M1 u M2 | M1 in A1, M2 in A2, M1 and M2 compatible}`` as a hash join."""
    buckets: dict[frozenset[Atom], list[Interpretation]] = defaultdict(list)
    for model in a2:
        model = frozenset(model)
        buckets[model & m1.visible].append(model)
    joined = set()
    for model in a1:
        model = frozenset(model)
        for other in buckets.get(model & m2.visible, ()):
            joined.add(model | other)
    return frozenset(joined)


def natural_join_all(
    model_sets: Sequence[Iterable[Interpretation]], modules: Sequence[Module]
) -> ModelSet:
    """Join of several model sets, folded with the composed module so far."""
    if not modules:
        return frozenset({frozenset()})
    result = frozenset(frozenset(m) for m in model_sets[0])
    accumulated = modules[0]
    for models, m in zip(model_sets[1:], modules[1:], strict=True):
        result = natural_join(result, models, accumulated, m)
        accumulated = compose(accumulated, m)
    return result
