"""
Program Modules
---------------
A module is a quadruple of rules plus pairwise disjoint input, output and
hidden signatures. Input atoms are visible but never defined inside the
module; hidden atoms are private to it.

Usage:
    from modsm.core.module import Module, instantiate, validate_module

    m = Module(frozenset({basic(a, [b])}), input=frozenset({b}), output=frozenset({a}))
    assert not validate_module(m)
    m_b = instantiate(m, {b})
"""

from collections.abc import Iterable
from dataclasses import dataclass, field, replace
from functools import cached_property

from modsm.core.atoms import Atom, SymbolTable, format_atoms
from modsm.core.rules import (
    ChoiceRule,
    Rule,
    WeightRule,
    choice_heads,
    fact,
    head_atoms,
    rule_atoms,
)
from modsm.errors import InputMismatch, SignatureError


@dataclass(frozen=True)
class Module:
    """
    ``<R, I, O, H>``. The symbol table and the optional name do not take part
    in equality, so two modules are equal when their rules and signatures are.
    """

    rules: frozenset[Rule] = frozenset()
    input: frozenset[Atom] = frozenset()
    output: frozenset[Atom] = frozenset()
    hidden: frozenset[Atom] = frozenset()
    symbols: SymbolTable = field(default_factory=SymbolTable, compare=False, repr=False)
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        for attr in ("rules", "input", "output", "hidden"):
            value = getattr(self, attr)
            if not isinstance(value, frozenset):
                object.__setattr__(self, attr, frozenset(value))

    @classmethod
    def from_program(cls, rules: Iterable[Rule], symbols: SymbolTable | None = None) -> "Module":
        """View a plain program P as ``<P, {}, Hb(P), {}>``."""
        rules = frozenset(rules)
        return cls(rules, frozenset(), rule_atoms(rules), frozenset(), symbols or SymbolTable())

    @cached_property
    def atoms(self) -> frozenset[Atom]:
        """Hb(P) = I u O u H."""
        return self.input | self.output | self.hidden

    @cached_property
    def visible(self) -> frozenset[Atom]:
        return self.input | self.output

    @cached_property
    def rule_atoms(self) -> frozenset[Atom]:
        return rule_atoms(self.rules)

    @cached_property
    def heads(self) -> frozenset[Atom]:
        return head_atoms(self.rules)

    @cached_property
    def choice_heads(self) -> frozenset[Atom]:
        return choice_heads(self.rules)

    @property
    def is_normal(self) -> bool:
        return all(isinstance(r, WeightRule) and r.is_basic for r in self.rules)

    def with_rules(self, rules: Iterable[Rule]) -> "Module":
        return replace(self, rules=frozenset(rules))

    def __str__(self) -> str:
        return (
            f"Module({self.name or '-'}: {len(self.rules)} rules, "
            f"I={format_atoms(self.input)}, O={format_atoms(self.output)}, "
            f"H={format_atoms(self.hidden)})"
        )


EMPTY_MODULE = Module()


@dataclass(frozen=True)
class Violation:
    """One failed well-formedness clause with its offending atoms (or rules)."""

    clause: int
    message: str
    atoms: frozenset[Atom] = frozenset()

    def __str__(self) -> str:
        suffix = f"={format_atoms(self.atoms)}" if self.atoms else ""
        return f"clause {self.clause}: {self.message}{suffix}"


def validate_module(m: Module) -> list[Violation]:
    """
    Check the four module clauses and return every violation found.

    1. every rule is a weight rule or a choice rule
    2. I, O and H are pairwise disjoint
    3. Hb(R) is covered by I u O u H
    4. no input atom occurs in a rule head
    """
    violations: list[Violation] = []
    for rule in m.rules:
        if not isinstance(rule, WeightRule | ChoiceRule):
            violations.append(Violation(1, f"not a basic constraint rule: {rule!r}"))
    for left, right, label in (
        (m.input, m.output, "I∩O"),
        (m.input, m.hidden, "I∩H"),
        (m.output, m.hidden, "O∩H"),
    ):
        overlap = left & right
        if overlap:
            violations.append(Violation(2, label, overlap))
    uncovered = m.rule_atoms - m.atoms
    if uncovered:
        violations.append(Violation(3, "Hb(R)\\(I∪O∪H)", uncovered))
    defined_inputs = m.heads & m.input
    if defined_inputs:
        violations.append(Violation(4, "head(R)∩I", defined_inputs))
    return violations


def instantiate(m: Module, actual: Iterable[Atom]) -> Module:
    """``P(A) = <R u {a. | a in A}, {}, I u O, H>`` for an actual input A."""
    actual = frozenset(actual)
    if not actual <= m.input:
        raise InputMismatch("Actual input is not part of the input signature", actual - m.input)
    return replace(
        m,
        rules=m.rules | {fact(a) for a in actual},
        input=frozenset(),
        output=m.input | m.output,
    )


def reveal(m: Module, atoms: Iterable[Atom]) -> Module:
    """Move hidden atoms to the output signature."""
    atoms = frozenset(atoms)
    if not atoms <= m.hidden:
        raise SignatureError("Only hidden atoms can be revealed", atoms - m.hidden)
    return replace(m, output=m.output | atoms, hidden=m.hidden - atoms)


def reintern(m: Module, symbols: SymbolTable) -> Module:
    """
    Rebuild ``m`` over another symbol table.

    Named atoms are looked up by name; nameless atoms get fresh ids so they
    cannot collide with the other table's anonymous atoms.
    """
    if m.symbols is symbols:
        return m
    mapping: dict[Atom, Atom] = {}

    def move(atom: Atom) -> Atom:
        target = mapping.get(atom)
        if target is None:
            target = symbols.intern(atom.name) if atom.name is not None else symbols.fresh()
            mapping[atom] = target
        return target

    for atom in sorted(m.atoms | m.rule_atoms):
        move(atom)
    return Module(
        frozenset(rule.map_atoms(move) for rule in m.rules),
        frozenset(map(move, m.input)),
        frozenset(map(move, m.output)),
        frozenset(map(move, m.hidden)),
        symbols,
        m.name,
    )


def rename_apart(m: Module, atoms: Iterable[Atom]) -> Module:
    """Give fresh nameless ids to the listed (hidden) atoms of ``m``."""
    targets = {atom: m.symbols.fresh() for atom in sorted(atoms)}
    if not targets:
        return m

    def move(atom: Atom) -> Atom:
        return targets.get(atom, atom)

    return Module(
        frozenset(rule.map_atoms(move) for rule in m.rules),
        frozenset(map(move, m.input)),
        frozenset(map(move, m.output)),
        frozenset(map(move, m.hidden)),
        m.symbols,
        m.name,
    )
