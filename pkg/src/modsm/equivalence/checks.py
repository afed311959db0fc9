"""
Equivalence Checks
------------------
Weak, visible and modular equivalence of modules by model enumeration,
the input generator module, the EVA property, and sampled checks of
modular equivalence under semantical joins with context modules.

Visible equivalence asks for a bijection between stable models that
preserves the visible part. Such a bijection exists exactly when every
visible projection occurs equally often on both sides, so the check
compares projection counters.

Usage:
    from modsm.equivalence.checks import modular_eq

    assert modular_eq(p, q, method="generator")
"""

import logging
from collections import Counter
from collections.abc import Iterable
from enum import StrEnum

from modsm.algebra.compose import aligned
from modsm.algebra.join import check_semantical_join, join_all
from modsm.core.atoms import Atom, ModelSet, SymbolTable
from modsm.core.module import Module
from modsm.core.rules import ChoiceRule
from modsm.decompose.modlist import rules_defining
from modsm.errors import CompositionUndefined, InterfaceMismatch, NonGroundInput
from modsm.semantics.stable import stable_models

logger = logging.getLogger(__name__)


class EquivalenceKind(StrEnum):
    WEAK = "weak"
    VISIBLE = "visible"
    MODULAR = "modular"


class ModularMethod(StrEnum):
    DIRECT = "direct"
    GENERATOR = "generator"


def weak_eq(p: Module, q: Module, cap: int | None = None) -> bool:
    """
    SM(p) = SM(q) for modules without inputs.

    Raises:
        NonGroundInput: either module has input atoms.
    """
    if p.input or q.input:
        raise NonGroundInput(p.input | q.input)
    p, q = aligned([p, q])
    return stable_models(p, cap=cap) == stable_models(q, cap=cap)


def projection_counts(models: ModelSet, visible: frozenset[Atom]) -> Counter:
    return Counter(model & visible for model in models)


def visible_eq(p: Module, q: Module, cap: int | None = None) -> bool:
    """Equal visible signatures and equal counts of every visible projection."""
    p, q = aligned([p, q])
    if p.visible != q.visible:
        return False
    left = projection_counts(stable_models(p, cap=cap), p.visible)
    right = projection_counts(stable_models(q, cap=cap), q.visible)
    return left == right


def generator_module(inputs: Iterable[Atom], symbols: SymbolTable | None = None) -> Module:
    """``<{{I} :- .}, {}, I, {}>``: one stable model per subset of I."""
    inputs = frozenset(inputs)
    symbols = symbols or SymbolTable()
    if not inputs:
        return Module(symbols=symbols)
    rules = frozenset({ChoiceRule(tuple(inputs))})
    return Module(rules, frozenset(), inputs, frozenset(), symbols)


def modular_eq(
    p: Module,
    q: Module,
    method: ModularMethod | str = ModularMethod.DIRECT,
    cap: int | None = None,
) -> bool:
    """
    Equal input signatures and visible equivalence.

    The generator method closes both modules with the input generator and
    compares the results; it needs identical input and output signatures.

    Raises:
        InterfaceMismatch: generator method on different interfaces.
    """
    method = ModularMethod(method)
    p, q = aligned([p, q])
    if method is ModularMethod.DIRECT:
        return p.input == q.input and visible_eq(p, q, cap)

    if p.input != q.input or p.output != q.output:
        raise InterfaceMismatch("Generator method needs equal input and output signatures")
    generator = generator_module(p.input, p.symbols)
    return visible_eq(join_all([p, generator]), join_all([q, generator]), cap)


def hidden_part(m: Module) -> Module:
    """``<R[H], I u O, H, {}>``: the rules defining hidden atoms."""
    return Module(rules_defining(m, m.hidden), m.visible, m.hidden, frozenset(), m.symbols)


def eva(m: Module, strict: bool = False, cap: int | None = None) -> bool:
    """
    Enough visible atoms for the hidden part ``<R[H], I u O, H, {}>``.

    The definition asks for exactly one stable model of the hidden part per
    visible interpretation N; that is ``strict=True``. The default accepts
    at most one model per N, so an N for which the hidden part has no model
    passes.

    Args:
        m: The module.
        strict: Demand exactly one model for every N.
        cap: Candidate cap for the enumeration.
    """
    part = hidden_part(m)
    counts = projection_counts(stable_models(part, cap=cap), m.visible)
    if any(count > 1 for count in counts.values()):
        return False
    return not strict or len(counts) == 2 ** len(m.visible)


# ── Context sampling ─────────────────────────────────────────────────────────


def find_distinguishing_context(
    p: Module, q: Module, contexts: Iterable[Module], cap: int | None = None
) -> Module | None:
    """
    First context R with both semantical joins defined whose results are
    not visibly equivalent. Contexts with an undefined join are skipped.
    """
    p, q = aligned([p, q])
    for i, context in enumerate(contexts):
        try:
            with_p = check_semantical_join(p, context, cap)
            with_q = check_semantical_join(q, context, cap)
        except CompositionUndefined:
            continue
        if not (with_p.defined and with_q.defined):
            continue
        if not visible_eq(with_p.composition, with_q.composition, cap):
            logger.info(f"Context #{i} distinguishes the modules")
            return context
    return None


def sem_modular_eq_sampled(
    p: Module, q: Module, contexts: Iterable[Module], cap: int | None = None
) -> bool:
    """
    Semantical modular equivalence restricted to the given contexts.

    Full equivalence quantifies over every context; ``modular_eq`` decides
    it. This check is a diagnostic sample of the definition.
    """
    p, q = aligned([p, q])
    if p.input != q.input:
        return False
    return find_distinguishing_context(p, q, contexts, cap) is None
