"""
Tests for the text format reader and printer.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modsm.core.rules import ChoiceRule, Desugarer, WeightedLiteral, WeightRule, basic
from modsm.errors import DesugarError, ParseError, UnsupportedFeature
from modsm.formats.text import parse_text, print_text, tokenize
from modsm.semantics.stable import stable_models
from modsm.synthetic import random_module
from tests.programs import atoms, label_sets, sets

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestTokenize:
    """Token positions are 1-based lines and columns."""

    def test_positions(self):
        tokens = tokenize("a :- b.\n  c.")
        assert [(t.text, t.line, t.column) for t in tokens] == [
            ("a", 1, 1),
            (":-", 1, 3),
            ("b", 1, 6),
            (".", 1, 7),
            ("c", 2, 3),
            (".", 2, 4),
        ]

    def test_comments_skipped(self):
        assert [t.text for t in tokenize("% note\na.")] == ["a", "."]

    def test_unexpected_character(self):
        with pytest.raises(ParseError) as excinfo:
            tokenize("a :- b; c.")
        assert (excinfo.value.line, excinfo.value.column) == (1, 7)


class TestParseText:
    """Headers, rule forms and signature defaults."""

    def test_headers(self):
        m = parse_text("#module P1.\n#input b.\n#output a.\na :- b.\n")
        assert m.name == "P1"
        assert m.input == atoms(m, "b")
        assert m.output == atoms(m, "a")
        a, b = m.symbols.get("a"), m.symbols.get("b")
        assert m.rules == {basic(a, [b])}

    def test_undeclared_atoms_are_outputs(self):
        m = parse_text("a :- not b.")
        assert m.output == atoms(m, "a", "b")
        assert m.input == frozenset()

    def test_rule_forms(self):
        m = parse_text("c :- 2 <= {a=1, not b=2}.\n{d, e} :- a.\nf :- 1 {a, b}.")
        a, b, c, d, e, f = (m.symbols.get(n) for n in "abcdef")
        assert m.rules == {
            WeightRule(c, 2, (WeightedLiteral(a, 1),), (WeightedLiteral(b, 2),)),
            ChoiceRule((d, e), (a,)),
            WeightRule(f, 1, (a, b)),
        }

    def test_constraint_atom_is_hidden(self):
        m = parse_text("{a}.\n:- a.")
        (falsity,) = m.hidden
        assert falsity.name is None
        assert basic(falsity, [m.symbols.get("a")], [falsity]) in m.rules

    def test_compute_statement(self):
        m = parse_text("{a}.\ncompute {a}.")
        (falsity,) = m.hidden
        a = m.symbols.get("a")
        assert basic(falsity, [], [a, falsity]) in m.rules

    def test_function_style_atoms(self):
        m = parse_text("#input arc(1,2). {hc(1,2)} :- arc(1,2).")
        assert m.symbols.get("hc(1,2)") in m.output

    def test_missing_period(self):
        with pytest.raises(ParseError) as excinfo:
            parse_text("a :- b\nc.")
        assert (excinfo.value.line, excinfo.value.column) == (2, 1)

    def test_unknown_directive(self):
        with pytest.raises(ParseError):
            parse_text("#show a.")

    def test_minimize_unsupported(self):
        with pytest.raises(UnsupportedFeature):
            parse_text("{a}.\nminimize {a}.")

    def test_cardinality_constraint(self):
        m = parse_text("#output a, b. {a, b}. :- 2 {a, b}.")
        assert label_sets(stable_models(m)) == sets("", "a", "b")

    def test_weight_constraint(self):
        m = parse_text("#output a, b, c. {a, b, c}. :- 3 <= {a=2, b=2, not c=1}.")
        assert label_sets(stable_models(m)) == sets("", "c", "a,c", "b,c")

    def test_constraint_with_zero_bound(self):
        assert stable_models(parse_text("{a}. :- 0 {a}.")) == frozenset()

    def test_choice_head_with_weight_body(self):
        with pytest.raises(ParseError) as excinfo:
            parse_text("a.\n{b} :- 1 {a}.")
        assert (excinfo.value.line, excinfo.value.column) == (2, 1)

    def test_invalid_utf8(self):
        with pytest.raises(ParseError) as excinfo:
            parse_text(b"a.\nb :- c\xff.")
        assert (excinfo.value.line, excinfo.value.column) == (2, 7)

    def test_desugar_error_keeps_position(self, monkeypatch):
        desugar = Desugarer.desugar

        def failing(self, rule):
            if isinstance(rule, ChoiceRule):
                raise DesugarError("rejected")
            return desugar(self, rule)

        monkeypatch.setattr(Desugarer, "desugar", failing)
        with pytest.raises(ParseError) as excinfo:
            parse_text("a.\n  {b} :- a.")
        assert (excinfo.value.line, excinfo.value.column) == (2, 3)


class TestPrintText:
    """Canonical printing."""

    def test_canonical_text(self):
        m = parse_text("{a}.\n:- a.\n")
        assert print_text(m) == b"#output a.\n#hidden _h2.\n_h2 :- a, not _h2.\n{a}.\n"

    def test_reparse(self):
        source = b"#module P1.\n#input b.\n#output a.\na :- b.\n"
        m = parse_text(source)
        assert print_text(m) == source
        assert parse_text(print_text(m)) == m

    def test_empty_module(self):
        assert print_text(parse_text("")) == b""


class TestRoundTrip:
    """Printing and parsing again gives the same module."""

    @settings(deadline=None, max_examples=200)
    @given(seeds)
    def test_random_modules(self, seed):
        m = random_module(np.random.default_rng(seed), atoms=8, rules=10, hidden=2)
        assert parse_text(print_text(m), m.symbols) == m
