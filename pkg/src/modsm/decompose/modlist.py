"""
Module Decomposition
--------------------
Splits a module into submodules induced by the strongly connected
components of its dependency graph, and joins such lists back together.

Modes:
    pos            components of the positive dependency graph
    pos-hidden     positive components grouped by shared hidden atoms
    posneg-hidden  components of the positive-negative graph, grouped by
                   shared hidden atoms

Input atoms no rule mentions (and declared atoms no rule mentions) are
collected in a leading rule-free module so the join keeps the original
interface. Submodules are emitted dependencies first.

Usage:
    from modsm.decompose.modlist import decompose, recompose

    parts = decompose(m, "pos-hidden")
    assert recompose(parts.modules).output == m.output
"""

import logging
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum

from modsm.algebra.join import join_all
from modsm.core.atoms import Atom
from modsm.core.module import Module
from modsm.core.rules import ChoiceRule, Rule, rule_atoms
from modsm.errors import SignatureError
from modsm.graphs.dependency import DependencyMode, dep_graph, dep_h, sccs
from modsm.graphs.scc import topological_components

logger = logging.getLogger(__name__)


class DecompositionMode(StrEnum):
    POS = "pos"
    POS_HIDDEN = "pos-hidden"
    POSNEG_HIDDEN = "posneg-hidden"

    @property
    def dependency_mode(self) -> DependencyMode:
        if self is DecompositionMode.POSNEG_HIDDEN:
            return DependencyMode.POSITIVE_NEGATIVE
        return DependencyMode.POSITIVE

    @property
    def closes_hidden(self) -> bool:
        return self is not DecompositionMode.POS

    @property
    def label(self) -> str:
        """Short column label used in reports."""
        return {"pos": "+", "pos-hidden": "+h", "posneg-hidden": "±h"}[self.value]


def _project(rule: Rule, atoms: frozenset[Atom]) -> Rule | None:
    if isinstance(rule, ChoiceRule):
        heads = tuple(a for a in rule.heads if a in atoms)
        if not heads:
            return None
        if len(heads) == len(rule.heads):
            return rule
        return ChoiceRule(heads, rule.pos, rule.neg)
    return rule if rule.head in atoms else None


def rules_defining(m: Module, atoms: Iterable[Atom]) -> frozenset[Rule]:
    """
    R[D]: weight rules with heads in D and choice rules projected onto D.

    Raises:
        SignatureError: D contains input atoms.
    """
    atoms = frozenset(atoms)
    if atoms & m.input:
        raise SignatureError("Defined atoms must not be inputs", atoms & m.input)
    projected = (_project(rule, atoms) for rule in m.rules)
    return frozenset(rule for rule in projected if rule is not None)


def _submodule(
    m: Module, atoms: frozenset[Atom], rules: frozenset[Rule], expose_hidden: bool
) -> Module:
    mentioned = rule_atoms(rules) - atoms
    leaked = mentioned & m.hidden
    if leaked and not expose_hidden:
        raise SignatureError("Hidden atoms are used outside their submodule", leaked)
    return Module(
        rules,
        mentioned & (m.visible | leaked),
        atoms & m.output,
        atoms & m.hidden,
        m.symbols,
    )


def induced_submodule(m: Module, atoms: Iterable[Atom], expose_hidden: bool = False) -> Module:
    """
    ``<R[D], (Hb(R[D]) \\ D) n (I u O), D n O, D n H>``.

    Args:
        m: The module.
        atoms: The set D of defined atoms.
        expose_hidden: Turn hidden atoms of other submodules that R[D]
            mentions into inputs instead of failing.

    Raises:
        SignatureError: D contains input atoms, or R[D] mentions hidden
            atoms outside D and ``expose_hidden`` is off.
    """
    atoms = frozenset(atoms)
    return _submodule(m, atoms, rules_defining(m, atoms), expose_hidden)


@dataclass
class Decomposition:
    mode: DecompositionMode
    modules: list[Module] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    @property
    def rule_count(self) -> int:
        return rule_count(self.modules)


def _order_groups(m: Module, groups: Sequence[frozenset[Atom]]) -> list[frozenset[Atom]]:
    """
    Dependencies first over positive and negative edges; groups that depend
    on each other cyclically come out by smallest atom id.
    """
    owner = {atom: i for i, group in enumerate(groups) for atom in group}
    successors: dict[int, set[int]] = defaultdict(set)
    for rule in m.rules:
        body = rule.pos_atoms | rule.neg_atoms
        for head in rule.heads:
            j = owner.get(head)
            for b in body:
                i = owner.get(b)
                if i is not None and j is not None and i != j:
                    successors[i].add(j)
    min_id = [min(a.id for a in group) for group in groups]
    blocks = topological_components(
        range(len(groups)), lambda i: sorted(successors.get(i, ())), key=lambda i: min_id[i]
    )
    ordered = []
    for block in blocks:
        ordered.extend(groups[i] for i in sorted(block, key=lambda i: min_id[i]))
    return ordered


def decompose(
    m: Module, mode: DecompositionMode | str = DecompositionMode.POS_HIDDEN
) -> Decomposition:
    """
    Split ``m`` into the submodules induced by its (grouped) components.

    The leading module ``<{}, I \\ Hb(R), O \\ Hb(R), H \\ Hb(R)>`` is present
    only when one of its sets is non-empty.
    """
    mode = DecompositionMode(mode)
    result = Decomposition(mode)
    if mode is DecompositionMode.POS and m.hidden:
        message = (
            f"Mode pos on a module with {len(m.hidden)} hidden atoms: "
            "the submodules may not be joinable"
        )
        logger.warning(message)
        result.warnings.append(message)

    used = m.rule_atoms
    defined = used - m.input
    graph = dep_graph(m.rules, mode.dependency_mode).restrict(defined)
    components = sccs(graph).components
    if mode.closes_hidden:
        components = dep_h(m, components).components
    groups = _order_groups(m, components)

    by_head: dict[Atom, list[Rule]] = defaultdict(list)
    for rule in m.rules:
        for head in rule.heads:
            by_head[head].append(rule)

    unused = (m.input - used, m.output - used, m.hidden - used)
    if any(unused):
        result.modules.append(Module(frozenset(), *unused, m.symbols))
    for group in groups:
        candidates = {rule for atom in group for rule in by_head.get(atom, ())}
        projected = (_project(rule, group) for rule in candidates)
        rules = frozenset(rule for rule in projected if rule is not None)
        result.modules.append(_submodule(m, group, rules, expose_hidden=True))

    logger.info(
        f"Decomposed {len(m.rules)} rules into {len(result.modules)} modules (mode {mode})"
    )
    return result


def recompose(modules: Iterable[Module]) -> Module:
    """Join of a module list, e.g. the output of ``decompose``."""
    return join_all(list(modules))


def rule_count(modules: Iterable[Module]) -> int:
    return sum(len(m.rules) for m in modules)
