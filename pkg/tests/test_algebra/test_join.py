"""
Tests for joins, the module theorem and the semantical join.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modsm.algebra.join import (
    check_classical_join,
    check_module_theorem,
    check_semantical_join,
    join,
    join_all,
    semantical_join,
)
from modsm.errors import CompositionUndefined, MutualDependence
from modsm.semantics.stable import stable_models
from modsm.synthetic import clause_modules, random_context, random_joinable_pair, random_module
from modsm.translate.nlp import tr_nlp
from tests.programs import (
    CHAIN_P,
    CHAIN_Q,
    CYCLE_LEFT,
    CYCLE_RIGHT,
    RING,
    label_sets,
    labels,
    module,
    sets,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestJoin:
    """Joins reject positive recursion across modules."""

    def test_mutual_dependence(self):
        with pytest.raises(MutualDependence) as excinfo:
            join(module(CYCLE_LEFT), module(CYCLE_RIGHT))
        assert labels(excinfo.value.component) == {"a", "b"}
        assert str(excinfo.value) == "MutualDependence: {a,b}"

    def test_negative_cycle_joins(self):
        joined = join_all([module(text) for text in RING])
        assert stable_models(joined) == frozenset()

    def test_chain_is_not_joinable(self):
        with pytest.raises(MutualDependence):
            join(module(CHAIN_P), module(CHAIN_Q))

    def test_acyclic(self):
        joined = join(module("#input b. a :- b."), module("{b}."))
        assert label_sets(stable_models(joined)) == sets("", "a,b")


class TestModuleTheorem:
    """SM of a join equals the natural join of the parts."""

    def test_ring(self):
        report = check_module_theorem(*(module(text) for text in RING))
        assert report.holds
        assert report.combined == frozenset()

    def test_workers(self):
        left, right = module("#input b. a :- b, not c. c :- not a."), module("{b}.")
        assert check_module_theorem(left, right, workers=2).holds

    @settings(deadline=None, max_examples=150)
    @given(seeds)
    def test_random_pairs(self, seed):
        left, right = random_joinable_pair(np.random.default_rng(seed), atoms=9, rules=9)
        report = check_module_theorem(left, right)
        assert report.holds, (report.missing, report.extra)

    @settings(deadline=None, max_examples=100)
    @given(seeds)
    def test_translated_pairs(self, seed):
        left, right = random_joinable_pair(np.random.default_rng(seed), atoms=6, rules=6)
        report = check_module_theorem(tr_nlp(left), tr_nlp(right))
        assert report.holds, (report.missing, report.extra)

    @settings(deadline=None, max_examples=30)
    @given(seeds)
    def test_classical_join(self, seed):
        left, right = random_joinable_pair(np.random.default_rng(seed), atoms=5, rules=5)
        assert check_classical_join(left, right).holds


class TestSemanticalJoin:
    """Witness search for the semantical join."""

    @settings(deadline=None, max_examples=100)
    @given(seeds)
    def test_join_implies_semantical_join(self, seed):
        rng = np.random.default_rng(seed)
        left, right = random_joinable_pair(rng, atoms=7, rules=7)
        assert check_semantical_join(left, right).defined

        m = random_module(rng, atoms=6, rules=6)
        context = random_context(rng, m)
        try:
            join(m, context)
        except CompositionUndefined:
            return
        assert check_semantical_join(m, context).defined

    def test_cycle_witness(self):
        report = check_semantical_join(module(CYCLE_LEFT), module(CYCLE_RIGHT))
        assert not report.defined
        assert [(w.pattern, labels(w.model)) for w in report.witnesses] == [(3, {"a", "b"})]
        assert str(report.witnesses[0]) == "pattern 3: {a,b}"

    def test_cycle_undefined(self):
        with pytest.raises(CompositionUndefined):
            semantical_join(module(CYCLE_LEFT), module(CYCLE_RIGHT))

    def test_chain_defined_without_join(self):
        both = semantical_join(module(CHAIN_P), module(CHAIN_Q))
        assert label_sets(stable_models(both)) == sets("a,b")

    def test_satisfiable_clauses(self):
        first, second = clause_modules([[1, 2], [-1]])
        report = check_semantical_join(first, second)
        assert not report.defined
        assert {w.pattern for w in report.witnesses} == {3}

    def test_unsatisfiable_clauses(self):
        first, second = clause_modules([[1], [-1]])
        assert check_semantical_join(first, second).defined
