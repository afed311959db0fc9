"""
Tests for modules: well-formedness, instantiation, revealing and
moving modules between symbol tables.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modsm.core.atoms import SymbolTable
from modsm.core.module import (
    Module,
    instantiate,
    reintern,
    rename_apart,
    reveal,
    validate_module,
)
from modsm.core.rules import basic, fact
from modsm.errors import InputMismatch, ModuleValidationError, SignatureError
from modsm.synthetic import random_module
from tests.programs import atoms, module

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestValidateModule:
    """The four well-formedness clauses."""

    def test_valid_module(self):
        assert validate_module(module("#input b. a :- b.")) == []

    def test_overlapping_signatures(self):
        symbols = SymbolTable()
        a = symbols.intern("a")
        m = Module(frozenset(), frozenset({a}), frozenset({a}), frozenset(), symbols)
        violations = validate_module(m)
        assert [v.clause for v in violations] == [2]
        assert violations[0].atoms == {a}

    def test_uncovered_atom(self):
        symbols = SymbolTable()
        a, b = symbols.intern("a"), symbols.intern("b")
        m = Module(frozenset({basic(a, [b])}), frozenset(), frozenset({a}), frozenset(), symbols)
        assert [v.clause for v in validate_module(m)] == [3]

    def test_input_in_head(self):
        m = module("#input a. a :- b.", validate=False)
        violations = validate_module(m)
        assert [v.clause for v in violations] == [4]
        assert str(violations[0]) == "clause 4: head(R)∩I={a}"

    def test_parser_rejects_invalid_module(self):
        with pytest.raises(ModuleValidationError):
            module("#input a. a :- b.")

    @settings(deadline=None, max_examples=200)
    @given(seeds)
    def test_random_signatures(self, seed):
        rng = np.random.default_rng(seed)
        base = random_module(rng, atoms=6, rules=5, inputs=0, hidden=0)
        clean = rng.random() < 0.5
        sides: tuple[set, set, set] = (set(), set(), set())
        for atom in sorted(base.atoms):
            if clean and rng.random() < 0.9:
                sides[int(rng.integers(3))].add(atom)
                continue
            for side, present in zip(sides, rng.random(3) < 0.4, strict=True):
                if present:
                    side.add(atom)
        inputs, outputs, hidden = (frozenset(side) for side in sides)
        m = Module(base.rules, inputs, outputs, hidden, base.symbols)

        expected = set()
        if inputs & outputs or inputs & hidden or outputs & hidden:
            expected.add(2)
        mentioned = set()
        heads = set()
        for rule in base.rules:
            heads.update(rule.heads)
            mentioned.update(rule.heads, rule.pos_atoms, rule.neg_atoms)
        if mentioned - (inputs | outputs | hidden):
            expected.add(3)
        if heads & inputs:
            expected.add(4)
        assert {v.clause for v in validate_module(m)} == expected


class TestModuleOperations:
    """Instantiation, revealing and symbol table moves."""

    def test_instantiate(self):
        m = module("#input b, c. a :- b, not c.")
        b = atoms(m, "b")
        result = instantiate(m, b)
        assert result.input == frozenset()
        assert result.output == atoms(m, "a", "b", "c")
        assert fact(next(iter(b))) in result.rules

    def test_instantiate_rejects_non_input(self):
        m = module("#input b. a :- b.")
        with pytest.raises(InputMismatch):
            instantiate(m, atoms(m, "a"))

    def test_reveal(self):
        m = module("#hidden h. a :- h. h :- not a.")
        revealed = reveal(m, atoms(m, "h"))
        assert revealed.hidden == frozenset()
        assert revealed.output == atoms(m, "a", "h")
        with pytest.raises(SignatureError):
            reveal(m, atoms(m, "a"))

    def test_equality_ignores_table_and_name(self):
        m = module("#module P. a :- not b.")
        assert m == Module(m.rules, m.input, m.output, m.hidden)
        assert m.name == "P"

    def test_from_program(self):
        m = module("a :- not b.")
        program = Module.from_program(m.rules, m.symbols)
        assert program.input == frozenset()
        assert program.output == atoms(m, "a", "b")

    def test_reintern_by_name(self):
        m = module("a :- b. _h7 :- a. b :- not _h7.")
        target = SymbolTable()
        target.intern("b")
        target.intern("x")
        moved = reintern(m, target)
        assert moved.symbols is target
        assert target.get("b") in moved.output
        (nameless,) = moved.hidden
        assert nameless.name is None
        assert len(moved.rules) == 3

    def test_rename_apart(self):
        m = module("a :- _h4.\n_h4 :- not a.")
        renamed = rename_apart(m, m.hidden)
        assert renamed.hidden.isdisjoint(m.hidden)
        assert len(renamed.hidden) == 1
        assert renamed.output == m.output
