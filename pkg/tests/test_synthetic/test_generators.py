"""
Tests for the synthetic module generators.
"""

import numpy as np
import pytest

from modsm.algebra.compose import compose
from modsm.algebra.join import join
from modsm.core.module import validate_module
from modsm.decompose.modlist import decompose, recompose
from modsm.synthetic import (
    clause_modules,
    hamiltonian_module,
    hamiltonian_reachability_module,
    layered_program,
    random_context,
    random_joinable_pair,
    random_module,
    random_normal_module,
    reachability_module,
)
from tests.programs import labels


class TestRandomModules:
    """Seeded random generation."""

    def test_valid_and_reproducible(self):
        first = random_module(np.random.default_rng(11), atoms=8, rules=12)
        second = random_module(np.random.default_rng(11), atoms=8, rules=12)
        assert validate_module(first) == []
        assert first == second
        assert labels(first.input) == {"i0", "i1"}
        assert labels(first.hidden) == {"h0"}

    def test_normal(self):
        m = random_normal_module(np.random.default_rng(3), atoms=6, rules=10)
        assert m.is_normal

    def test_joinable_pair(self):
        for seed in range(20):
            left, right = random_joinable_pair(np.random.default_rng(seed))
            join(left, right)

    def test_context_is_composable(self):
        rng = np.random.default_rng(5)
        m = random_module(rng)
        context = random_context(rng, m)
        assert validate_module(context) == []
        compose(m, context)


class TestFixedFamilies:
    """Hamiltonian cycle, reachability and clause modules."""

    def test_hamiltonian_signature(self):
        h3 = hamiltonian_module(3)
        assert h3.name == "H3"
        assert len(h3.input) == len(h3.output) == 9
        assert labels(h3.hidden) == {"c", "d"}
        assert validate_module(h3) == []

    def test_reachability_signature(self):
        r3 = reachability_module(3)
        assert labels(r3.output) == {"reached(1)", "reached(2)", "reached(3)"}
        assert labels(r3.hidden) == {"e"}

    def test_combined_signature(self):
        hr3 = hamiltonian_reachability_module(3)
        assert len(hr3.input) == 9
        assert len(hr3.output) == 12
        assert labels(hr3.hidden) == {"f"}

    def test_clause_modules(self):
        first, second = clause_modules([[1, -2], [2]])
        both = compose(first, second)
        assert labels(both.input) == {"v1", "v2"}
        assert labels(second.hidden) == {"sat1", "sat2"}


class TestLayeredProgram:
    """Large acyclic programs."""

    def test_small(self):
        m = layered_program(np.random.default_rng(0), 200)
        assert len(m.rules) == 200
        parts = decompose(m, "pos")
        assert all(len(p.rules) <= 1 for p in parts)
        assert recompose(parts.modules).rules == m.rules

    @pytest.mark.slow
    def test_million_rules(self):
        m = layered_program(np.random.default_rng(0), 1_000_000)
        parts = decompose(m, "posneg-hidden")
        assert parts.rule_count == 1_000_000
        assert len(recompose(parts.modules).rules) == 1_000_000
