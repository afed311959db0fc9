"""
Completion and Loop Formulas
----------------------------
Clark completion of a normal module over its non-input atoms, loop
formulas of its positive loops, and the stable-model test built from the
two: M is stable iff M satisfies the completion and every loop formula.

Usage:
    from modsm.completion.clark import completion, loop_formulas, stable_by_lin_zhao

    print(completion(m))
    assert stable_by_lin_zhao(m, model) == is_stable(m, model)
"""

import logging
from collections import defaultdict
from collections.abc import Iterable

from modsm.completion.formula import (
    Formula,
    Iff,
    Implies,
    Not,
    Var,
    conj,
    disj,
    evaluate,
    literal,
)
from modsm.core.atoms import Atom
from modsm.core.module import Module
from modsm.core.rules import WeightRule
from modsm.errors import NonNormalRule
from modsm.graphs.loops import loops
from modsm.translate.nlp import translate_module

logger = logging.getLogger(__name__)


def _normal_rules(m: Module) -> list[WeightRule]:
    rules = sorted(m.rules, key=str)
    for rule in rules:
        if not (isinstance(rule, WeightRule) and rule.is_basic):
            raise NonNormalRule(rule)
    return rules


def body_formula(rule: WeightRule) -> Formula:
    """Conjunction of the body literals; an empty body is ``true``."""
    return conj(
        [literal(a) for a in sorted(rule.pos_atoms)]
        + [literal(a, negated=True) for a in sorted(rule.neg_atoms)]
    )


def completion_parts(m: Module) -> list[Iff]:
    """
    One equivalence per atom of O u H, ordered by atom id.

    Input atoms have no defining rules and are left unconstrained.

    Raises:
        NonNormalRule: the module has a choice or weight rule.
    """
    defining: dict[Atom, list[WeightRule]] = defaultdict(list)
    for rule in _normal_rules(m):
        defining[rule.head].append(rule)
    return [
        Iff(Var(atom), disj(body_formula(r) for r in defining.get(atom, ())))
        for atom in sorted(m.output | m.hidden)
    ]


def completion(m: Module) -> Formula:
    return conj(completion_parts(m))


def external_bodies(m: Module, loop: Iterable[Atom]) -> list[WeightRule]:
    """Rules defining an atom of the loop without a positive body atom in it."""
    loop = frozenset(loop)
    return [r for r in _normal_rules(m) if r.head in loop and not r.pos_atoms & loop]


def loop_formula(m: Module, loop: Iterable[Atom]) -> Formula:
    """``~(EB_1 | ... | EB_k) -> ~a_1 & ... & ~a_n`` for the loop ``{a_1..a_n}``."""
    loop = frozenset(loop)
    support = disj(body_formula(r) for r in external_bodies(m, loop))
    return Implies(Not(support), conj(literal(a, negated=True) for a in sorted(loop)))


def loop_formulas(m: Module, cap: int | None = None) -> list[Formula]:
    """
    Loop formulas of every loop, ordered by the loop's sorted atom ids.

    Raises:
        NonNormalRule: the module has a choice or weight rule.
        CapExceeded: too many atoms for loop enumeration.
    """
    _normal_rules(m)
    found = sorted(loops(m, cap), key=lambda loop: sorted(a.id for a in loop))
    return [loop_formula(m, loop) for loop in found]


def stable_by_lin_zhao(m: Module, model: Iterable[Atom], cap: int | None = None) -> bool:
    """
    Stable-model test through completion and loop formulas.

    Modules with choice or weight rules are translated to normal modules
    first; the model is extended with the complement of every choice head
    it leaves false.
    """
    model = frozenset(model)
    if not model <= m.atoms | m.rule_atoms:
        return False
    if not m.is_normal:
        translation = translate_module(m)
        extended = model | {bar for a, bar in translation.complements.items() if a not in model}
        return stable_by_lin_zhao(translation.module, extended, cap)

    if not all(evaluate(part, model) for part in completion_parts(m)):
        return False
    return all(evaluate(f, model) for f in loop_formulas(m, cap))


def completion_text(m: Module, cap: int | None = None) -> str:
    """Completion followed by loop formulas, one formula per line."""
    if not m.is_normal:
        m = translate_module(m).module
    lines = [f"% completion over {len(m.output | m.hidden)} atoms"]
    lines += [str(part) for part in completion_parts(m)]
    formulas = loop_formulas(m, cap)
    lines.append(f"% {len(formulas)} loop formulas")
    lines += [str(f) for f in formulas]
    logger.debug(f"Completion text: {len(lines) - 2} formulas")
    return "\n".join(lines) + "\n"
