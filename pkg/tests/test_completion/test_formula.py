"""
Tests for propositional formulas.
"""

from modsm.completion.formula import (
    FALSE,
    TRUE,
    And,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    conj,
    disj,
    evaluate,
    formula_atoms,
    literal,
)
from tests.programs import atoms, module


class TestFormula:
    """Construction, text and evaluation."""

    def test_empty_and_singleton(self):
        m = module("a.")
        a = Var(m.symbols.get("a"))
        assert conj([]) == TRUE
        assert disj([]) == FALSE
        assert conj([a]) == a
        assert disj([a]) == a

    def test_text(self):
        m = module("a. b. c.")
        a, b, c = (Var(m.symbols.get(n)) for n in "abc")
        formula = Iff(a, Or((b, Not(c))))
        assert str(formula) == "a <-> (b | ~c)"
        assert str(Implies(Not(Not(c)), And((Not(a), Not(b))))) == "~~c -> (~a & ~b)"
        assert str(Iff(b, FALSE)) == "b <-> false"

    def test_evaluate(self):
        m = module("a. b.")
        a, b = m.symbols.get("a"), m.symbols.get("b")
        formula = Implies(literal(a), conj([literal(b), literal(a)]))
        assert evaluate(formula, frozenset({a, b}))
        assert not evaluate(formula, frozenset({a}))
        assert evaluate(formula, frozenset())
        assert evaluate(Iff(literal(a, negated=True), literal(b)), frozenset({b}))

    def test_atoms(self):
        m = module("a. b. c.")
        a, b = (m.symbols.get(n) for n in "ab")
        assert formula_atoms(Implies(literal(a), disj([literal(b, True), TRUE]))) == atoms(
            m, "a", "b"
        )
