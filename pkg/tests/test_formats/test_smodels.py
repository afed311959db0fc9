"""
Tests for the numeric smodels format.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modsm.core.rules import ChoiceRule, WeightedLiteral, WeightRule, basic
from modsm.errors import FormatError, UnsupportedFeature
from modsm.formats.smodels import decode_smodels, encode_rule, encode_smodels
from modsm.formats.text import parse_text
from modsm.synthetic import random_module

seeds = st.integers(min_value=0, max_value=2**32 - 1)

TRAILER = "0\n2 a\n3 b\n4 c\n0\nB+\n0\nB-\n0\n1\n"


def numeric(*rule_lines: str) -> str:
    return "\n".join(rule_lines) + "\n" + TRAILER


class TestDecodeSmodels:
    """Rule types and sections."""

    def test_basic_rule(self):
        m = decode_smodels(numeric("1 2 2 1 4 3"))
        a, b, c = (m.symbols.get(n) for n in "abc")
        assert (a.id, b.id, c.id) == (2, 3, 4)
        assert m.rules == {basic(a, [b], [c])}
        assert m.output == {a, b, c}

    def test_choice_rule(self):
        m = decode_smodels(numeric("3 1 2 1 0 3"))
        a, b = m.symbols.get("a"), m.symbols.get("b")
        assert m.rules == {ChoiceRule((a,), (b,))}

    def test_weight_rule(self):
        m = decode_smodels(numeric("5 2 2 2 1 4 3 2 1"))
        a, b, c = (m.symbols.get(n) for n in "abc")
        assert m.rules == {
            WeightRule(a, 2, (WeightedLiteral(b, 1),), (WeightedLiteral(c, 2),))
        }

    def test_constraint_rule(self):
        m = decode_smodels(numeric("2 2 2 0 1 3 4"))
        a, b, c = (m.symbols.get(n) for n in "abc")
        assert m.rules == {WeightRule(a, 1, (b, c))}

    def test_compute_section(self):
        data = "3 1 2 0 0\n0\n2 a\n0\nB+\n2\n0\nB-\n0\n1\n"
        m = decode_smodels(data)
        (falsity,) = m.hidden
        a = m.symbols.get("a")
        assert basic(falsity, [], [a, falsity]) in m.rules

    def test_unnamed_atoms_are_hidden(self):
        m = decode_smodels("1 2 1 1 7\n0\n2 a\n0\nB+\n0\nB-\n0\n1\n")
        (hidden,) = m.hidden
        assert hidden.id == 7

    def test_minimize_unsupported(self):
        with pytest.raises(UnsupportedFeature):
            decode_smodels(numeric("6 0 1 0 2 1"))

    def test_truncated(self):
        with pytest.raises(FormatError):
            decode_smodels("1 2 0 0\n0\n2 a\n0\nB+\n0\n")

    def test_trailing_numbers(self):
        with pytest.raises(FormatError):
            decode_smodels(numeric("1 2 0 0 9"))

    def test_name_given_twice(self):
        with pytest.raises(FormatError) as excinfo:
            decode_smodels("1 2 0 0\n1 3 0 0\n0\n2 a\n3 a\n0\nB+\n0\nB-\n0\n1\n")
        assert "line 5" in str(excinfo.value)

    def test_invalid_utf8(self):
        with pytest.raises(FormatError) as excinfo:
            decode_smodels(b"1 2 0 0\n0\n2 \xff\n0\nB+\n0\nB-\n0\n1\n")
        assert "line 3" in str(excinfo.value)


class TestEncodeSmodels:
    """Numeric encoding keeps atom ids and the module interface."""

    def test_encode_rule(self):
        m = parse_text("c :- 2 <= {a=1, not b=2}.")
        (rule,) = m.rules
        a, b, c = (m.symbols.get(n) for n in "abc")
        assert encode_rule(rule) == [5, c.id, 2, 2, 1, b.id, a.id, 2, 1]

    def test_interface_header(self):
        m = parse_text("#input b. a :- b.")
        data = encode_smodels(m).decode()
        assert data.splitlines()[:2] == ["% modsm-iface input=1 output= hidden=", "1 2 1 0 1"]
        assert decode_smodels(data) == m

    def test_plain_program_has_no_header(self):
        m = parse_text("a :- not b.")
        assert not encode_smodels(m).startswith(b"%")


class TestRoundTrip:
    """Decoding an encoded module with a fresh table keeps its atom ids."""

    @settings(deadline=None, max_examples=200)
    @given(seeds)
    def test_random_modules(self, seed):
        m = random_module(np.random.default_rng(seed), atoms=8, rules=10, hidden=2)
        assert decode_smodels(encode_smodels(m)) == m
