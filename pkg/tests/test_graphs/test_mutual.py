"""
Tests for positive recursion across module boundaries.
"""

from modsm.graphs.mutual import mutually_dependent, shared_component, shared_components
from tests.programs import CHAIN_P, CHAIN_Q, CYCLE_LEFT, CYCLE_RIGHT, labels, module


class TestMutualDependence:
    """Shared components between module outputs."""

    def test_cycle(self):
        component = shared_component(module(CYCLE_LEFT), module(CYCLE_RIGHT))
        assert labels(component) == {"a", "b"}

    def test_cycle_through_negation_is_not_shared(self):
        left = module("#input b. a :- not b.")
        right = module("#input a. b :- not a.")
        assert not mutually_dependent(left, right)

    def test_chain(self):
        assert mutually_dependent(module(CHAIN_P), module(CHAIN_Q))

    def test_one_module_recursion(self):
        inner = module("a :- b. b :- a.")
        other = module("#input a. c :- a.")
        assert shared_components([inner, other]) == []
