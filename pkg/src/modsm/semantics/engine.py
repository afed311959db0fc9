"""
Compiled Evaluator
------------------
Bitmask form of a module for fast stable-model tests. Only atoms that can
be true in a stable model are given bits: the input atoms and the rule
heads. Every other atom is false in every stable model, so enumeration
over the remaining bits visits candidates in the same binary-counter
order as enumeration over all of Hb.
"""

from dataclasses import dataclass

from modsm.core.atoms import Atom
from modsm.core.module import Module
from modsm.core.rules import ChoiceRule


@dataclass(slots=True)
class _CompiledRule:
    heads: tuple[int, ...]
    choice: bool
    bound: int
    pos_input: tuple[tuple[int, int], ...]
    pos_local: tuple[tuple[int, int], ...]
    neg: tuple[tuple[int, int], ...]
    neg_weight_false: int  # weight of negative literals on atoms without a bit


class CompiledModule:
    """A module compiled to bit positions over ``I u head(R)``."""

    def __init__(self, m: Module):
        self.module = m
        self.atoms: tuple[Atom, ...] = tuple(sorted(m.input | m.heads))
        self.index = {atom: i for i, atom in enumerate(self.atoms)}
        self.input_mask = sum(1 << self.index[a] for a in m.input)
        self.rules: list[_CompiledRule] = []
        self.watchers: list[list[tuple[int, int]]] = [[] for _ in self.atoms]

        for rule in sorted(m.rules, key=str):
            if isinstance(rule, ChoiceRule):
                literals_pos = [(a, 1) for a in rule.pos]
                literals_neg = [(a, 1) for a in rule.neg]
                heads = tuple(self.index[a] for a in rule.heads)
                bound = sum(1 for a in rule.pos if a not in m.input)
            else:
                literals_pos = [(lit.atom, lit.weight) for lit in rule.pos]
                literals_neg = [(lit.atom, lit.weight) for lit in rule.neg]
                heads = (self.index[rule.head],)
                bound = rule.bound
            pos_input = tuple(
                (self.index[a], w) for a, w in literals_pos if a in m.input and a in self.index
            )
            pos_local = tuple(
                (self.index[a], w)
                for a, w in literals_pos
                if a not in m.input and a in self.index and w > 0
            )
            neg = tuple((self.index[a], w) for a, w in literals_neg if a in self.index)
            neg_free = sum(w for a, w in literals_neg if a not in self.index)
            compiled = _CompiledRule(
                heads, isinstance(rule, ChoiceRule), bound, pos_input, pos_local, neg, neg_free
            )
            position = len(self.rules)
            self.rules.append(compiled)
            for bit, weight in pos_local:
                self.watchers[bit].append((position, weight))

    @property
    def size(self) -> int:
        return len(self.atoms)

    def to_model(self, mask: int) -> frozenset[Atom]:
        return frozenset(a for i, a in enumerate(self.atoms) if mask >> i & 1)

    def to_mask(self, model: frozenset[Atom]) -> int | None:
        """Mask of ``model``, or None when it contains an atom without a bit."""
        mask = 0
        for atom in model:
            bit = self.index.get(atom)
            if bit is None:
                return None
            mask |= 1 << bit
        return mask

    def is_stable_mask(self, mask: int) -> bool:
        """True iff M \\ I equals the least model of the reduct."""
        rules = self.rules
        need: list[int | None] = [None] * len(rules)
        stack: list[int] = []
        for r, rule in enumerate(rules):
            if rule.choice:
                if any(mask >> bit & 1 for bit, _ in rule.neg):
                    continue
                if any(not mask >> bit & 1 for bit, _ in rule.pos_input):
                    continue
                # one reduct rule per true head; all share the same body
                if not any(mask >> h & 1 for h in rule.heads):
                    continue
                remaining = rule.bound
            else:
                evaluated = rule.neg_weight_false
                evaluated += sum(w for bit, w in rule.neg if not mask >> bit & 1)
                evaluated += sum(w for bit, w in rule.pos_input if mask >> bit & 1)
                remaining = rule.bound - evaluated
            need[r] = remaining
            if remaining <= 0:
                stack.append(r)

        derived = 0
        while stack:
            r = stack.pop()
            for h in rules[r].heads:
                if rules[r].choice and not mask >> h & 1:
                    continue
                if derived >> h & 1:
                    continue
                if not mask >> h & 1:
                    return False
                derived |= 1 << h
                for watcher, weight in self.watchers[h]:
                    current = need[watcher]
                    if current is None:
                        continue
                    need[watcher] = current - weight
                    if current > 0 and current - weight <= 0:
                        stack.append(watcher)
        return derived == mask & ~self.input_mask

    def stable_masks(self, fixed: int = 0, free: int | None = None) -> list[int]:
        """
        Stable masks in counter order. ``free`` limits enumeration to the
        given bits, with the bits of ``fixed`` always set.
        """
        free = ((1 << self.size) - 1) if free is None else free
        bits = [i for i in range(self.size) if free >> i & 1]
        result = []
        for counter in range(1 << len(bits)):
            mask = fixed
            for j, bit in enumerate(bits):
                if counter >> j & 1:
                    mask |= 1 << bit
            if self.is_stable_mask(mask):
                result.append(mask)
        return result
