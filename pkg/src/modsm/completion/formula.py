"""
Propositional Formulas
----------------------
Small immutable formula trees over atoms, used for completions and loop
formulas. Empty conjunctions and disjunctions are kept as the constants
``Top`` and ``Bottom``.

Text form is ASCII infix: ``~`` ``&`` ``|`` ``->`` ``<->`` with ``true`` and
``false`` for the constants; compound operands are parenthesised.
"""

from collections.abc import Iterable
from dataclasses import dataclass

from modsm.core.atoms import Atom


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "false"


@dataclass(frozen=True)
class Var:
    atom: Atom

    def __str__(self) -> str:
        return self.atom.label


@dataclass(frozen=True)
class Not:
    operand: "Formula"

    def __str__(self) -> str:
        return f"~{_wrap(self.operand)}"


@dataclass(frozen=True)
class And:
    operands: tuple["Formula", ...]

    def __str__(self) -> str:
        return " & ".join(_wrap(f) for f in self.operands)


@dataclass(frozen=True)
class Or:
    operands: tuple["Formula", ...]

    def __str__(self) -> str:
        return " | ".join(_wrap(f) for f in self.operands)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"{_wrap(self.left)} -> {_wrap(self.right)}"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"{_wrap(self.left)} <-> {_wrap(self.right)}"


Formula = Top | Bottom | Var | Not | And | Or | Implies | Iff

TRUE = Top()
FALSE = Bottom()


def _wrap(f: Formula) -> str:
    if isinstance(f, Top | Bottom | Var | Not):
        return str(f)
    return f"({f})"


def conj(operands: Iterable[Formula]) -> Formula:
    operands = tuple(operands)
    if not operands:
        return TRUE
    if len(operands) == 1:
        return operands[0]
    return And(operands)


def disj(operands: Iterable[Formula]) -> Formula:
    operands = tuple(operands)
    if not operands:
        return FALSE
    if len(operands) == 1:
        return operands[0]
    return Or(operands)


def literal(atom: Atom, negated: bool = False) -> Formula:
    return Not(Var(atom)) if negated else Var(atom)


def evaluate(f: Formula, model: frozenset[Atom]) -> bool:
    """Truth value of ``f`` under the interpretation ``model``."""
    match f:
        case Top():
            return True
        case Bottom():
            return False
        case Var(atom):
            return atom in model
        case Not(operand):
            return not evaluate(operand, model)
        case And(operands):
            return all(evaluate(g, model) for g in operands)
        case Or(operands):
            return any(evaluate(g, model) for g in operands)
        case Implies(left, right):
            return not evaluate(left, model) or evaluate(right, model)
        case Iff(left, right):
            return evaluate(left, model) == evaluate(right, model)
    raise TypeError(f"Not a formula: {f!r}")


def formula_atoms(f: Formula) -> frozenset[Atom]:
    match f:
        case Var(atom):
            return frozenset({atom})
        case Not(operand):
            return formula_atoms(operand)
        case And(operands) | Or(operands):
            return frozenset().union(*(formula_atoms(g) for g in operands))
        case Implies(left, right) | Iff(left, right):
            return formula_atoms(left) | formula_atoms(right)
    return frozenset()
