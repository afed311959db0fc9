"""
Reduct and Least Models
-----------------------
Rule satisfaction, the input-aware reduct of a module, least models of
positive programs and classical models. These follow the definitions
literally; ``modsm.semantics.engine`` holds the compiled evaluator used
for enumeration.
"""

from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from modsm.config import ensure_within, get_cap
from modsm.core.atoms import Atom, Interpretation
from modsm.core.module import Module
from modsm.core.rules import ChoiceRule, Rule, WeightRule, basic


def body_weight(rule: WeightRule, model: Iterable[Atom]) -> int:
    """Weight of the body literals satisfied by ``model``."""
    model = model if isinstance(model, frozenset | set) else frozenset(model)
    satisfied = sum(lit.weight for lit in rule.pos if lit.atom in model)
    return satisfied + sum(lit.weight for lit in rule.neg if lit.atom not in model)


def satisfies(model: Iterable[Atom], rule: Rule) -> bool:
    """Classical satisfaction; choice rules are always satisfied."""
    if isinstance(rule, ChoiceRule):
        return True
    model = frozenset(model)
    return rule.head in model or body_weight(rule, model) < rule.bound


@dataclass(frozen=True)
class PositiveProgram:
    """Weight rules without negative literals."""

    rules: frozenset[WeightRule]

    def __post_init__(self):
        for rule in self.rules:
            if not isinstance(rule, WeightRule) or rule.neg:
                raise ValueError(f"Not a positive weight rule: {rule}")

    def __iter__(self) -> Iterator[WeightRule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)


def reduct(m: Module, model: Iterable[Atom], prune: bool = False) -> PositiveProgram:
    """
    Reduct of the module's rules with respect to ``model`` and the input
    signature: negative literals and input atoms are evaluated away.

    Args:
        m: The module.
        model: Interpretation over Hb(m).
        prune: Drop weight rules whose bound exceeds their remaining positive
            weight. Such rules never fire, so the least model is unchanged.
    """
    model = frozenset(model)
    inputs = m.input
    result: set[WeightRule] = set()
    for rule in m.rules:
        if isinstance(rule, ChoiceRule):
            if model & rule.neg_atoms:
                continue
            if not (rule.pos_atoms & inputs) <= model:
                continue
            body = rule.pos_atoms - inputs
            for head in rule.heads:
                if head in model:
                    result.add(basic(head, body))
            continue
        evaluated = sum(lit.weight for lit in rule.pos if lit.atom in inputs and lit.atom in model)
        evaluated += sum(lit.weight for lit in rule.neg if lit.atom not in model)
        bound = max(0, rule.bound - evaluated)
        pos = tuple(lit for lit in rule.pos if lit.atom not in inputs)
        if prune and bound > sum(lit.weight for lit in pos):
            continue
        result.add(WeightRule(rule.head, bound, pos))
    return PositiveProgram(frozenset(result))


def least_model(program: PositiveProgram | Iterable[WeightRule]) -> Interpretation:
    """Fixpoint of the one-step consequence operator, with weight counters."""
    rules = list(program)
    need = [rule.bound for rule in rules]
    watchers: dict[Atom, list[tuple[int, int]]] = defaultdict(list)
    for i, rule in enumerate(rules):
        for lit in rule.pos:
            if lit.weight:
                watchers[lit.atom].append((i, lit.weight))

    derived: set[Atom] = set()
    queue = [rules[i].head for i in range(len(rules)) if need[i] <= 0]
    while queue:
        atom = queue.pop()
        if atom in derived:
            continue
        derived.add(atom)
        for i, weight in watchers.get(atom, ()):
            need[i] -= weight
            if need[i] <= 0 and need[i] + weight > 0:
                queue.append(rules[i].head)
    return frozenset(derived)


def is_model(model: Iterable[Atom], rules: Iterable[Rule]) -> bool:
    model = frozenset(model)
    return all(satisfies(model, rule) for rule in rules)


def iter_subsets(atoms: Iterable[Atom]) -> Iterator[frozenset[Atom]]:
    """All subsets in binary-counter order over ascending atom ids."""
    ordered = sorted(atoms)
    for bits in range(2 ** len(ordered)):
        yield frozenset(a for i, a in enumerate(ordered) if bits >> i & 1)


def classical_models(m: Module, cap: int | None = None) -> frozenset[Interpretation]:
    """Interpretations over Hb(m) satisfying every rule (truth-table enumeration)."""
    atoms = m.atoms | m.rule_atoms
    ensure_within("classical model candidates", 2 ** len(atoms), get_cap(cap))
    return frozenset(M for M in iter_subsets(atoms) if is_model(M, m.rules))
