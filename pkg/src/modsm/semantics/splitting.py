"""
Splitting Sets
--------------
Bottom/top decomposition of a normal program along a splitting set U,
partial evaluation of the top part, and solutions.

A set U is a splitting set when every rule whose head is in U mentions
only atoms of U. The bottom is the set of those rules; the top holds the
rest. A solution is a pair <X, Y> with X a stable model of the bottom and
Y a stable model of the top partially evaluated with respect to X.

Usage:
    from modsm.semantics.splitting import Splitting

    split = Splitting(program, {a, b})
    for solution in split.solutions():
        print(solution.bottom, solution.top)
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from modsm.core.atoms import Atom, Interpretation, ModelSet, format_atoms, model_key
from modsm.core.module import Module
from modsm.core.rules import Rule, WeightRule, basic
from modsm.errors import NonGroundInput, NonNormalRule, NotSplittingSet, SignatureError
from modsm.semantics.stable import stable_models

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Solution:
    bottom: Interpretation
    top: Interpretation

    @property
    def model(self) -> Interpretation:
        return self.bottom | self.top

    def __str__(self) -> str:
        return f"<{format_atoms(self.bottom)}, {format_atoms(self.top)}>"


@dataclass(frozen=True)
class SplittingReport:
    """Outcome of comparing SM(P) with the models assembled from solutions."""

    stable: ModelSet
    assembled: ModelSet

    @property
    def missing(self) -> ModelSet:
        return self.stable - self.assembled

    @property
    def extra(self) -> ModelSet:
        return self.assembled - self.stable

    @property
    def holds(self) -> bool:
        return self.stable == self.assembled


def is_splitting_set(rules: Iterable[Rule], split: Iterable[Atom]) -> bool:
    split = frozenset(split)
    return all(
        rule.atoms <= split for rule in rules if any(h in split for h in rule.heads)
    )


class Splitting:
    """A normal program split along ``U``."""

    def __init__(self, program: Module | Iterable[Rule], split: Iterable[Atom]):
        if isinstance(program, Module):
            if program.input:
                raise NonGroundInput(program.input)
            self.program = program
        else:
            self.program = Module.from_program(program)
        self.split = frozenset(split)

        for rule in sorted(self.program.rules, key=str):
            if not (isinstance(rule, WeightRule) and rule.is_basic):
                raise NonNormalRule(rule)
        if not self.split <= self.universe:
            outside = self.split - self.universe
            raise SignatureError("Splitting set is not part of Hb(P)", outside)
        for rule in sorted(self.program.rules, key=str):
            if rule.head in self.split and not rule.atoms <= self.split:
                raise NotSplittingSet(rule)

    @cached_property
    def universe(self) -> frozenset[Atom]:
        return self.program.atoms | self.program.rule_atoms

    @cached_property
    def bottom(self) -> frozenset[WeightRule]:
        """b_U(P): the rules with heads in U."""
        return frozenset(r for r in self.program.rules if r.head in self.split)

    @cached_property
    def top(self) -> frozenset[WeightRule]:
        """t_U(P) = P \\ b_U(P)."""
        return self.program.rules - self.bottom

    def bottom_module(self) -> Module:
        return Module(self.bottom, frozenset(), self.split, frozenset(), self.program.symbols)

    def evaluate(self, assumed: Iterable[Atom]) -> frozenset[WeightRule]:
        """
        e_U(t_U(P), X): keep the top rules whose U-part agrees with X and
        drop their U-literals.
        """
        assumed = frozenset(assumed)
        result = set()
        for rule in self.top:
            pos, neg = rule.pos_atoms, rule.neg_atoms
            if not (pos & self.split) <= assumed or neg & self.split & assumed:
                continue
            result.add(basic(rule.head, pos - self.split, neg - self.split))
        return frozenset(result)

    def top_module(self, assumed: Iterable[Atom]) -> Module:
        return Module(
            self.evaluate(assumed),
            frozenset(),
            self.universe - self.split,
            frozenset(),
            self.program.symbols,
        )

    def solutions(self, cap: int | None = None) -> list[Solution]:
        """All solutions, ordered by bottom then top in counter order."""
        found = []
        for lower in sorted(stable_models(self.bottom_module(), cap=cap), key=model_key):
            uppers = stable_models(self.top_module(lower), cap=cap)
            for upper in sorted(uppers, key=model_key):
                found.append(Solution(lower, upper))
        logger.debug(f"Split along {format_atoms(self.split)}: {len(found)} solutions")
        return found

    def verify(self, cap: int | None = None) -> SplittingReport:
        """Compare SM(P) with the unions of all solutions."""
        stable = stable_models(self.program, cap=cap)
        assembled = frozenset(s.model for s in self.solutions(cap))
        return SplittingReport(stable, assembled)


def verify_splitting(
    program: Module | Iterable[Rule], split: Iterable[Atom], cap: int | None = None
) -> SplittingReport:
    return Splitting(program, split).verify(cap)