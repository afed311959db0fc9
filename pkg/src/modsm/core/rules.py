"""
Rules
-----
Canonical rule forms (weight rules and choice rules), the surface forms
that desugar into them, and helpers over rule sets.

A weight rule ``a <- w <= {B=W_B, not C=W_C}`` derives its head once the
weights of the satisfied body literals reach the bound. A choice rule
``{A} <- B, not C`` may derive any subset of its heads when the body holds.
Cardinality rules, basic rules, compute statements and both kinds of
integrity constraint (plain and weight-bodied) are sugar over these two.

Usage:
    from modsm.core.rules import Desugarer, basic, fact

    rules = Desugarer(symbols).desugar_all(surface_rules)
"""

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from modsm.core.atoms import Atom, SymbolTable, atom_key
from modsm.errors import DesugarError, UnsupportedFeature

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class WeightedLiteral:
    atom: Atom
    weight: int = 1


def _merge_literals(literals: Iterable[WeightedLiteral]) -> tuple[WeightedLiteral, ...]:
    """Merge duplicate atoms by summing weights; order by atom id."""
    totals: dict[Atom, int] = {}
    for literal in literals:
        if literal.weight < 0:
            raise DesugarError(f"Negative weight {literal.weight} on {literal.atom.label}")
        totals[literal.atom] = totals.get(literal.atom, 0) + literal.weight
    return tuple(WeightedLiteral(atom, totals[atom]) for atom in sorted(totals))


def _as_literals(items: Iterable[WeightedLiteral | Atom]) -> list[WeightedLiteral]:
    return [item if isinstance(item, WeightedLiteral) else WeightedLiteral(item) for item in items]


# ── Canonical rules ──────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class WeightRule:
    """``head <- bound <= {pos, not neg}``; bare atoms in pos/neg get weight 1."""

    head: Atom
    bound: int
    pos: tuple[WeightedLiteral, ...] = ()
    neg: tuple[WeightedLiteral, ...] = ()

    def __post_init__(self):
        if self.bound < 0:
            raise DesugarError(f"Negative bound {self.bound} in rule for {self.head.label}")
        object.__setattr__(self, "pos", _merge_literals(_as_literals(self.pos)))
        object.__setattr__(self, "neg", _merge_literals(_as_literals(self.neg)))

    @property
    def heads(self) -> tuple[Atom, ...]:
        return (self.head,)

    @property
    def pos_atoms(self) -> frozenset[Atom]:
        return frozenset(lit.atom for lit in self.pos)

    @property
    def neg_atoms(self) -> frozenset[Atom]:
        return frozenset(lit.atom for lit in self.neg)

    @property
    def atoms(self) -> frozenset[Atom]:
        return self.pos_atoms | self.neg_atoms | {self.head}

    @property
    def total_weight(self) -> int:
        return sum(lit.weight for lit in self.pos) + sum(lit.weight for lit in self.neg)

    @property
    def is_basic(self) -> bool:
        """All weights 1 and the bound equals the body size."""
        return (
            all(lit.weight == 1 for lit in self.pos)
            and all(lit.weight == 1 for lit in self.neg)
            and self.bound == len(self.pos) + len(self.neg)
        )

    @property
    def is_cardinality(self) -> bool:
        return all(lit.weight == 1 for lit in self.pos) and all(
            lit.weight == 1 for lit in self.neg
        )

    def map_atoms(self, f: Callable[[Atom], Atom]) -> "WeightRule":
        return WeightRule(
            f(self.head),
            self.bound,
            tuple(WeightedLiteral(f(lit.atom), lit.weight) for lit in self.pos),
            tuple(WeightedLiteral(f(lit.atom), lit.weight) for lit in self.neg),
        )

    def __str__(self) -> str:
        return format_rule(self)


@dataclass(frozen=True, slots=True)
class ChoiceRule:
    """``{heads} <- pos, not neg``."""

    heads: tuple[Atom, ...]
    pos: tuple[Atom, ...] = ()
    neg: tuple[Atom, ...] = ()

    def __post_init__(self):
        heads = tuple(sorted(set(self.heads)))
        if not heads:
            raise DesugarError("A choice rule needs at least one head atom")
        object.__setattr__(self, "heads", heads)
        object.__setattr__(self, "pos", tuple(sorted(set(self.pos))))
        object.__setattr__(self, "neg", tuple(sorted(set(self.neg))))

    @property
    def pos_atoms(self) -> frozenset[Atom]:
        return frozenset(self.pos)

    @property
    def neg_atoms(self) -> frozenset[Atom]:
        return frozenset(self.neg)

    @property
    def atoms(self) -> frozenset[Atom]:
        return frozenset(self.heads) | frozenset(self.pos) | frozenset(self.neg)

    is_basic = False

    def map_atoms(self, f: Callable[[Atom], Atom]) -> "ChoiceRule":
        return ChoiceRule(
            tuple(f(a) for a in self.heads),
            tuple(f(a) for a in self.pos),
            tuple(f(a) for a in self.neg),
        )

    def __str__(self) -> str:
        return format_rule(self)


Rule = WeightRule | ChoiceRule


def basic(head: Atom, pos: Iterable[Atom] = (), neg: Iterable[Atom] = ()) -> WeightRule:
    """``head <- pos, not neg`` as a weight rule with bound n+m."""
    pos = frozenset(pos)
    neg = frozenset(neg)
    return WeightRule(head, len(pos) + len(neg), tuple(pos), tuple(neg))


def fact(atom: Atom) -> WeightRule:
    """``atom.``, the weight rule ``atom <- 0 <= {}``."""
    return WeightRule(atom, 0)


def is_basic(rule: Rule) -> bool:
    return isinstance(rule, WeightRule) and rule.is_basic


# ── Rule set helpers ─────────────────────────────────────────


def rule_atoms(rules: Iterable[Rule]) -> frozenset[Atom]:
    """Hb(R): every atom occurring in the rules."""
    atoms: set[Atom] = set()
    for rule in rules:
        atoms.update(rule.atoms)
    return frozenset(atoms)


def head_atoms(rules: Iterable[Rule]) -> frozenset[Atom]:
    return frozenset(a for rule in rules for a in rule.heads)


def choice_heads(rules: Iterable[Rule]) -> frozenset[Atom]:
    return frozenset(a for rule in rules if isinstance(rule, ChoiceRule) for a in rule.heads)


def _literal_text(atom: Atom, negated: bool, weight: int | None = None) -> str:
    text = f"not {atom.label}" if negated else atom.label
    return text if weight is None else f"{text}={weight}"


def format_rule(rule: Rule) -> str:
    """Canonical text of one rule, terminated by a period."""
    if isinstance(rule, ChoiceRule):
        head = "{" + ", ".join(a.label for a in sorted(rule.heads, key=atom_key)) + "}"
        body = [_literal_text(a, False) for a in sorted(rule.pos, key=atom_key)]
        body += [_literal_text(a, True) for a in sorted(rule.neg, key=atom_key)]
        return f"{head} :- {', '.join(body)}." if body else f"{head}."

    head = rule.head.label
    pos = sorted(rule.pos, key=lambda lit: atom_key(lit.atom))
    neg = sorted(rule.neg, key=lambda lit: atom_key(lit.atom))
    if rule.is_basic:
        if not pos and not neg:
            return f"{head}."
        body = [_literal_text(lit.atom, False) for lit in pos]
        body += [_literal_text(lit.atom, True) for lit in neg]
        return f"{head} :- {', '.join(body)}."
    if rule.is_cardinality:
        body = [_literal_text(lit.atom, False) for lit in pos]
        body += [_literal_text(lit.atom, True) for lit in neg]
        return f"{head} :- {rule.bound} {{{', '.join(body)}}}."
    body = [_literal_text(lit.atom, False, lit.weight) for lit in pos]
    body += [_literal_text(lit.atom, True, lit.weight) for lit in neg]
    return f"{head} :- {rule.bound} <= {{{', '.join(body)}}}."


# ── Surface rules ────────────────────────────────────────────


@dataclass(frozen=True)
class CardinalityRule:
    head: Atom
    bound: int
    pos: tuple[Atom, ...] = ()
    neg: tuple[Atom, ...] = ()


@dataclass(frozen=True)
class BasicRule:
    head: Atom
    pos: tuple[Atom, ...] = ()
    neg: tuple[Atom, ...] = ()


@dataclass(frozen=True)
class IntegrityConstraint:
    """``<- pos, not neg``."""

    pos: tuple[Atom, ...] = ()
    neg: tuple[Atom, ...] = ()


@dataclass(frozen=True)
class WeightConstraint:
    """``<- bound <= {pos, not neg}``; bare atoms count with weight 1."""

    bound: int
    pos: tuple[WeightedLiteral | Atom, ...] = ()
    neg: tuple[WeightedLiteral | Atom, ...] = ()



@dataclass(frozen=True)
class ComputeStatement:
    """``compute {pos, not neg}``: pos must hold and neg must not."""

    pos: tuple[Atom, ...] = ()
    neg: tuple[Atom, ...] = ()


@dataclass(frozen=True)
class MinimizeStatement:
    literals: tuple[WeightedLiteral, ...] = ()


SurfaceRule = (
    WeightRule
    | ChoiceRule
    | CardinalityRule
    | BasicRule
    | IntegrityConstraint
    | WeightConstraint
    | ComputeStatement
    | MinimizeStatement
)


class Desugarer:
    """
    Turns surface rules into canonical ones for a single program.

    Integrity constraints share one nameless atom ``f`` per program:
    ``<- B, not C`` becomes ``f <- B, not C, not f``, which no stable
    model can satisfy while the body holds. A weight constraint
    ``<- w <= {B, not C}`` becomes ``f <- w+K <= {B, not C, not f=K}`` with
    ``K`` one more than the total body weight: ``not f`` tops the sum up
    while ``f`` is false and can never do so once ``f`` holds. The atom is
    allocated on first use and must be declared hidden by the caller.
    """

    def __init__(self, symbols: SymbolTable):
        self.symbols = symbols
        self.falsity: Atom | None = None

    def _falsity_atom(self) -> Atom:
        if self.falsity is None:
            self.falsity = self.symbols.fresh()
            logger.debug(f"Allocated integrity atom {self.falsity.label}")
        return self.falsity

    def desugar(self, rule: SurfaceRule) -> frozenset[Rule]:
        match rule:
            case WeightRule() | ChoiceRule():
                return frozenset({rule})
            case CardinalityRule(head=head, bound=bound, pos=pos, neg=neg):
                if bound < 0:
                    raise DesugarError(f"Negative bound {bound} in rule for {head.label}")
                return frozenset({WeightRule(head, bound, tuple(pos), tuple(neg))})
            case BasicRule(head=head, pos=pos, neg=neg):
                return frozenset({basic(head, pos, neg)})
            case IntegrityConstraint(pos=pos, neg=neg):
                f = self._falsity_atom()
                return frozenset({basic(f, pos, frozenset(neg) | {f})})
            case WeightConstraint(bound=bound, pos=pos, neg=neg):
                if bound < 0:
                    raise DesugarError(f"Negative bound {bound} in weight constraint")
                pos = _merge_literals(_as_literals(pos))
                neg = _merge_literals(_as_literals(neg))
                f = self._falsity_atom()
                k = sum(lit.weight for lit in pos + neg) + 1
                return frozenset({WeightRule(f, bound + k, pos, neg + (WeightedLiteral(f, k),))})
            case ComputeStatement(pos=pos, neg=neg):
                result: set[Rule] = set()
                for atom in pos:
                    result |= self.desugar(IntegrityConstraint(neg=(atom,)))
                for atom in neg:
                    result |= self.desugar(IntegrityConstraint(pos=(atom,)))
                return frozenset(result)
            case MinimizeStatement():
                raise UnsupportedFeature("minimize statements are not supported")
        raise DesugarError(f"Unknown rule form: {rule!r}")

    def desugar_all(self, rules: Iterable[SurfaceRule]) -> frozenset[Rule]:
        result: set[Rule] = set()
        for rule in rules:
            result |= self.desugar(rule)
        return frozenset(result)


def desugar(rule: SurfaceRule, symbols: SymbolTable | None = None) -> frozenset[Rule]:
    """Desugar one surface rule; constraints allocate their own integrity atom."""
    return Desugarer(symbols or SymbolTable()).desugar(rule)
