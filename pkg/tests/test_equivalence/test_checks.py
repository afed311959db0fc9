"""
Tests for weak, visible and modular equivalence and the EVA property.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modsm.algebra.join import join
from modsm.core.atoms import SymbolTable
from modsm.equivalence.checks import (
    ModularMethod,
    eva,
    find_distinguishing_context,
    generator_module,
    hidden_part,
    modular_eq,
    projection_counts,
    sem_modular_eq_sampled,
    visible_eq,
    weak_eq,
)
from modsm.errors import CompositionUndefined, InterfaceMismatch, NonGroundInput
from modsm.semantics.stable import stable_models
from modsm.synthetic import (
    hamiltonian_module,
    hamiltonian_reachability_module,
    random_context,
    random_equivalent_pair,
    random_module,
    reachability_module,
)
from modsm.translate.nlp import tr_nlp
from tests.programs import labels, module

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture(scope="module")
def cycle_modules():
    h2 = hamiltonian_module(2)
    return h2, join(h2, reachability_module(2, h2.symbols)), hamiltonian_reachability_module(2)


class TestWeakEquivalence:
    """Equal stable models for programs without inputs."""

    def test_equivalent(self):
        p = module("#output a, b. a.")
        q = module("a :- not b. a :- b.")
        assert weak_eq(p, q)

    def test_not_strongly_equivalent(self):
        p = module("#output a, b. a. b :- a.")
        q = module("a :- not b. a :- b. b :- a.")
        assert not weak_eq(p, q)

    def test_inputs_rejected(self):
        with pytest.raises(NonGroundInput):
            weak_eq(module("#input b. a :- b."), module("a."))


class TestVisibleEquivalence:
    """Visible projections counted with multiplicity."""

    def test_hidden_difference(self):
        assert visible_eq(module("#hidden h. a :- h. h."), module("a."))

    def test_counts_matter(self):
        two = module("#hidden h. {h}. a.")
        one = module("a.")
        assert not visible_eq(two, one)
        (projection,) = projection_counts(stable_models(two), two.visible).values()
        assert projection == 2

    def test_different_signatures(self):
        assert not visible_eq(module("a."), module("#output b. a."))


class TestModularEquivalence:
    """Direct and generator methods."""

    def test_generator_models(self):
        m = module("#input x, y. a :- x.")
        generator = generator_module(m.input, m.symbols)
        assert len(stable_models(generator)) == 4
        assert stable_models(generator_module([])) == {frozenset()}

    def test_methods_agree(self):
        p = module("#input b. a :- b.")
        q = module("#input b. a :- b, not c. #hidden c. c :- not b, c.")
        assert modular_eq(p, q)
        assert modular_eq(p, q, ModularMethod.GENERATOR)

    def test_inputs_differ(self):
        assert not modular_eq(module("#input b. a :- b."), module("#input c. a :- c."))

    def test_generator_needs_same_interface(self):
        p = module("#input b. a :- b.")
        with pytest.raises(InterfaceMismatch):
            modular_eq(p, module("#input b. #output a, z. a :- b."), "generator")

    def test_hamiltonian_cycles(self, cycle_modules):
        _, joined, combined = cycle_modules
        models = stable_models(joined)
        assert len(models) == 4
        for model in models:
            assert {"hc(1,2)", "hc(2,1)", "reached(1)", "reached(2)"} <= labels(model)
        arcs = {frozenset(n for n in labels(x) if n.startswith("arc")) for x in models}
        assert arcs == {
            frozenset({"arc(1,2)", "arc(2,1)"}),
            frozenset({"arc(1,1)", "arc(1,2)", "arc(2,1)"}),
            frozenset({"arc(1,2)", "arc(2,1)", "arc(2,2)"}),
            frozenset({"arc(1,1)", "arc(1,2)", "arc(2,1)", "arc(2,2)"}),
        }
        assert visible_eq(combined, joined)
        assert modular_eq(combined, joined)
        assert modular_eq(combined, joined, ModularMethod.GENERATOR)

    @settings(deadline=None, max_examples=30)
    @given(seeds)
    def test_translation_pairs(self, seed):
        p, q = random_equivalent_pair(np.random.default_rng(seed), atoms=5, rules=5)
        assert modular_eq(p, q, ModularMethod.GENERATOR)

    @settings(deadline=None, max_examples=11)
    @given(st.integers(min_value=0, max_value=10))
    def test_generator_gives_every_subset(self, n):
        symbols = SymbolTable()
        inputs = frozenset(symbols.intern(f"x{k}") for k in range(n))
        models = stable_models(generator_module(inputs, symbols))
        assert len(models) == 2**n
        assert all(model <= inputs for model in models)

    @settings(deadline=None, max_examples=150)
    @given(seeds)
    def test_methods_agree_on_random_pairs(self, seed):
        rng = np.random.default_rng(seed)
        shape = {"atoms": 7, "rules": 7, "inputs": 2, "hidden": 1}
        p = random_module(rng, **shape)
        if rng.random() < 0.5:
            q = tr_nlp(p)
        else:
            q = random_module(rng, symbols=p.symbols, **shape)
        assert modular_eq(p, q) == modular_eq(p, q, ModularMethod.GENERATOR)

    @settings(deadline=None, max_examples=100)
    @given(seeds)
    def test_congruence_under_join(self, seed):
        rng = np.random.default_rng(seed)
        p, q = random_equivalent_pair(rng, atoms=6, rules=6)
        context = random_context(rng, p)
        try:
            with_p, with_q = join(p, context), join(q, context)
        except CompositionUndefined:
            return
        assert modular_eq(with_p, with_q)


class TestEva:
    """Enough visible atoms."""

    def test_hidden_part(self):
        m = module("#hidden h. h :- not a. a :- b.")
        part = hidden_part(m)
        assert labels(part.input) == {"a", "b"}
        assert labels(part.output) == {"h"}
        assert len(part.rules) == 1

    def test_no_hidden_atoms(self):
        assert eva(module("a :- not b."), strict=True)

    def test_free_hidden_choice(self):
        assert not eva(module("#hidden h. {h}. a."))

    def test_hamiltonian(self, cycle_modules):
        h2, _, _ = cycle_modules
        assert eva(h2)
        assert not eva(h2, strict=True)

    @settings(deadline=None, max_examples=150)
    @given(seeds)
    def test_visible_projection_is_injective(self, seed):
        m = random_module(np.random.default_rng(seed), atoms=7, rules=8, inputs=2, hidden=2)
        if eva(m):
            counts = projection_counts(stable_models(m), m.visible)
            assert all(count == 1 for count in counts.values())

    def test_interpretation_without_hidden_model(self):
        # {i} leaves the hidden part without a model, {} gives exactly one
        m = module("#input i. #hidden h. h :- i, not h.")
        assert eva(m)
        assert not eva(m, strict=True)


class TestSampledSemanticalEquivalence:
    """Context sampling."""

    def test_distinguishing_context(self):
        p = module("#input b. a :- b.")
        q = module("#input b. a.")
        contexts = [module("a."), module("b."), module("{b}.")]
        found = find_distinguishing_context(p, q, contexts)
        assert found is contexts[2]
        assert not sem_modular_eq_sampled(p, q, contexts)

    @settings(deadline=None, max_examples=20)
    @given(seeds)
    def test_translation_has_no_context(self, seed):
        rng = np.random.default_rng(seed)
        p, q = random_equivalent_pair(rng, atoms=5, rules=4)
        contexts = [random_context(rng, p) for _ in range(3)]
        assert sem_modular_eq_sampled(p, q, contexts)
