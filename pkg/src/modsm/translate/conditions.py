"""
Translation Conditions
----------------------
Executable checks that the normal-program translation is faithful once
hidden atoms are revealed, preserves joinability, and commutes with the
join of two modules.
"""

import logging
from dataclasses import dataclass

from modsm.algebra.compose import aligned
from modsm.algebra.join import join
from modsm.core.module import Module, reveal
from modsm.equivalence.checks import modular_eq
from modsm.errors import CompositionUndefined
from modsm.semantics.stable import stable_models
from modsm.translate.nlp import tr_nlp, translate_module

logger = logging.getLogger(__name__)


def revealed_faithful(m: Module, cap: int | None = None) -> bool:
    """``reveal(P, H)`` and ``reveal(Tr(P), H)`` are modularly equivalent."""
    return modular_eq(reveal(m, m.hidden), reveal(tr_nlp(m), m.hidden), cap=cap)


def strongly_faithful(m: Module, cap: int | None = None) -> bool:
    """
    Restricting stable models of Tr(P) to Hb(P) is a bijection onto SM(P),
    and each complement atom is true exactly when its choice head is false.
    """
    translation = translate_module(m)
    original = stable_models(m, cap=cap)
    translated = stable_models(translation.module, cap=cap)
    universe = m.atoms | m.rule_atoms
    projected = [model & universe for model in translated]
    if len(set(projected)) != len(projected) or set(projected) != original:
        return False
    return all(
        (bar in model) == (a not in model)
        for model in translated
        for a, bar in translation.complements.items()
    )


@dataclass(frozen=True)
class TranslationReport:
    faithful: tuple[bool, bool]
    joinable: bool
    modular: bool

    @property
    def holds(self) -> bool:
        return all(self.faithful) and self.joinable and self.modular


def check_translation_conditions(
    m1: Module, m2: Module, cap: int | None = None
) -> TranslationReport:
    """
    Check the translation conditions on a joinable pair.

    Raises:
        CompositionUndefined: ``m1`` and ``m2`` cannot be joined.
    """
    m1, m2 = aligned([m1, m2])
    joined = join(m1, m2)
    t1, t2 = tr_nlp(m1), tr_nlp(m2)
    try:
        translated_join = join(t1, t2)
    except CompositionUndefined as e:
        logger.info(f"Translated modules are not joinable: {e}")
        translated_join = None
    report = TranslationReport(
        faithful=(revealed_faithful(m1, cap), revealed_faithful(m2, cap)),
        joinable=translated_join is not None,
        modular=translated_join is not None and translated_join == tr_nlp(joined),
    )
    logger.debug(f"Translation conditions: {report}")
    return report
