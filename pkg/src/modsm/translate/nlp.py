"""
Normal Program Translation
--------------------------
Rewrites choice and weight rules into basic rules.

    {A} :- B, not C        a :- B, not C, not __not_a.   __not_a :- not a.
                           for every a in A
    a :- w <= {B=W, not C=V}
                           a :- B', not C'.  for every B' of B and C' of C
                           whose weights add up to at least w

The complement atom of a choice head ``a`` is the hidden atom
``__not_<label>``, interned in the module's symbol table so repeated
translations share it. Weight rules expand to exponentially many rules in
the worst case; the output is guarded by MODSM_RULE_CAP.

Usage:
    from modsm.translate.nlp import tr_nlp

    normal = tr_nlp(m)
    assert normal.is_normal
"""

import itertools
import logging
from collections.abc import Iterator
from dataclasses import dataclass, replace

from modsm.config import ensure_within, get_cap, get_rule_cap
from modsm.core.atoms import Atom
from modsm.core.module import Module
from modsm.core.rules import ChoiceRule, WeightedLiteral, WeightRule, basic
from modsm.errors import TranslationError

logger = logging.getLogger(__name__)

COMPLEMENT_PREFIX = "__not_"


@dataclass(frozen=True)
class Translation:
    module: Module
    complements: dict[Atom, Atom]


def complement_name(atom: Atom) -> str:
    return f"{COMPLEMENT_PREFIX}{atom.label}"


def _complement(m: Module, atom: Atom) -> Atom:
    name = complement_name(atom)
    existing = m.symbols.get(name)
    if existing is not None and existing in m.atoms | m.rule_atoms:
        raise TranslationError(f"Complement atom '{name}' already occurs in the module")
    return m.symbols.intern(name)


def _satisfying_bodies(rule: WeightRule, minimal: bool) -> Iterator[tuple[list[Atom], list[Atom]]]:
    literals: list[tuple[WeightedLiteral, bool]] = [(lit, False) for lit in rule.pos]
    literals += [(lit, True) for lit in rule.neg]
    for size in range(len(literals) + 1):
        for chosen in itertools.combinations(literals, size):
            total = sum(lit.weight for lit, _ in chosen)
            if total < rule.bound:
                continue
            if minimal and any(total - lit.weight >= rule.bound for lit, _ in chosen):
                continue
            yield (
                [lit.atom for lit, negated in chosen if not negated],
                [lit.atom for lit, negated in chosen if negated],
            )


def translate_module(m: Module, minimal: bool = False, cap: int | None = None) -> Translation:
    """
    Normal-program translation of ``m`` as ``<R', I, O, H u H'>``.

    Args:
        m: The module.
        minimal: Expand weight rules only into subset-minimal satisfying
            bodies instead of every satisfying body.
        cap: Maximum number of output rules (MODSM_RULE_CAP when None).

    Raises:
        TranslationError: a complement name is already used in Hb(m).
        CapExceeded: the expansion of a weight rule is too large.
    """
    rule_cap = get_rule_cap(cap)
    complements = {a: _complement(m, a) for a in sorted(m.choice_heads)}
    rules: set[WeightRule] = set()

    for rule in sorted(m.rules, key=str):
        if isinstance(rule, ChoiceRule):
            for head in rule.heads:
                bar = complements[head]
                rules.add(basic(head, rule.pos, [*rule.neg, bar]))
                rules.add(basic(bar, (), [head]))
        elif rule.is_basic:
            rules.add(rule)
        else:
            width = len(rule.pos) + len(rule.neg)
            ensure_within(f"body subsets of '{rule}'", 2**width, get_cap())
            for pos, neg in _satisfying_bodies(rule, minimal):
                rules.add(basic(rule.head, pos, neg))
                ensure_within(f"normal rules for '{rule}'", len(rules), rule_cap)
        ensure_within("normal rules", len(rules), rule_cap)

    logger.debug(f"Translated {len(m.rules)} rules into {len(rules)} normal rules")
    translated = replace(
        m, rules=frozenset(rules), hidden=m.hidden | frozenset(complements.values())
    )
    return Translation(translated, complements)


def tr_nlp(m: Module, minimal: bool = False, cap: int | None = None) -> Module:
    return translate_module(m, minimal, cap).module
