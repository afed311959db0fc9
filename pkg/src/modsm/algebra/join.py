"""
Module Join
-----------
The join of modules (composition without positive recursion between
them), executable checks of the module theorem, and the semantical join.

Usage:
    from modsm.algebra.join import check_module_theorem, join

    joined = join(h2, r2)
    report = check_module_theorem(h2, r2)
    assert report.holds
"""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from modsm.algebra.compose import aligned, compose, compose_all, natural_join, natural_join_all
from modsm.config import get_workers
from modsm.core.atoms import Interpretation, ModelSet, format_atoms, model_key
from modsm.core.module import Module
from modsm.errors import CompositionUndefined, MutualDependence
from modsm.graphs.mutual import shared_components
from modsm.semantics.reduct import classical_models
from modsm.semantics.stable import stable_models

logger = logging.getLogger(__name__)


def join(m1: Module, m2: Module) -> Module:
    """
    ``m1 (+) m2`` when the modules are not mutually dependent.

    Raises:
        CompositionUndefined: the composition itself is undefined.
        MutualDependence: an SCC contains outputs of both modules.
    """
    return join_all([m1, m2])


def join_all(modules: Sequence[Module]) -> Module:
    """
    Join of a collection. One global SCC pass over the composition finds
    any component shared by two modules, so the result equals the left
    fold of binary joins.
    """
    modules = aligned(list(modules))
    composed = compose_all(modules)
    shared = shared_components(modules)
    if shared:
        raise MutualDependence(shared[0])
    return composed


# ── Theorem checks ───────────────────────────────────────────────────────────


@dataclass(frozen=True)
class JoinReport:
    """Models of the combined module against the natural join of the parts."""

    combined: ModelSet
    joined: ModelSet

    @property
    def missing(self) -> list[Interpretation]:
        """In the natural join but not a model of the combination."""
        return sorted(self.joined - self.combined, key=model_key)

    @property
    def extra(self) -> list[Interpretation]:
        """Models of the combination that the natural join does not produce."""
        return sorted(self.combined - self.joined, key=model_key)

    @property
    def holds(self) -> bool:
        return self.combined == self.joined


def _models_of(modules: Sequence[Module], cap: int | None, workers: int | None) -> list[ModelSet]:
    workers = get_workers(workers)
    if workers > 1 and len(modules) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda m: stable_models(m, cap=cap), modules))
    return [stable_models(m, cap=cap) for m in modules]


def check_module_theorem(
    *modules: Module, cap: int | None = None, workers: int | None = None
) -> JoinReport:
    """
    Compare SM(P1 u ... u Pn) with SM(P1) |x| ... |x| SM(Pn).

    Raises:
        CompositionUndefined: the modules cannot be joined.
        CapExceeded: a model set is too large to enumerate.
    """
    modules = aligned(list(modules))
    joined_module = join_all(modules)
    parts = _models_of([joined_module, *modules], cap, workers)
    report = JoinReport(parts[0], natural_join_all(parts[1:], modules))
    logger.info(
        f"Module theorem over {len(modules)} modules: {len(report.combined)} models, "
        f"holds={report.holds}"
    )
    return report


def check_classical_join(m1: Module, m2: Module, cap: int | None = None) -> JoinReport:
    """The classical-model counterpart: CM(P1 u P2) against CM(P1) |x| CM(P2)."""
    m1, m2 = aligned([m1, m2])
    combined = compose(m1, m2)
    return JoinReport(
        classical_models(combined, cap),
        natural_join(classical_models(m1, cap), classical_models(m2, cap), m1, m2),
    )


# ── Semantical join ──────────────────────────────────────────────────────────


@dataclass(frozen=True)
class Witness:
    """
    An interpretation showing that SM(P1 (+) P2) and SM(P1) |x| SM(P2) differ.

    pattern 1: stable for the composition, but its P1 part is not stable for P1
    pattern 2: the same for P2
    pattern 3: both parts stable, the union not stable for the composition
    """

    pattern: int
    model: Interpretation

    def __str__(self) -> str:
        return f"pattern {self.pattern}: {format_atoms(self.model)}"


@dataclass(frozen=True)
class SemanticalJoinReport:
    composition: Module
    witnesses: tuple[Witness, ...]

    @property
    def defined(self) -> bool:
        return not self.witnesses


def check_semantical_join(
    m1: Module, m2: Module, cap: int | None = None
) -> SemanticalJoinReport:
    """
    Decide whether the semantical join of two composable modules is defined.

    The three witness patterns are searched over the stable model sets,
    which covers every interpretation of Hb(P1 (+) P2) that could witness one.
    """
    m1, m2 = aligned([m1, m2])
    combined = compose(m1, m2)
    sm_combined = stable_models(combined, cap=cap)
    sm1 = stable_models(m1, cap=cap)
    sm2 = stable_models(m2, cap=cap)

    witnesses = []
    for model in sorted(sm_combined, key=model_key):
        if model & m1.atoms not in sm1:
            witnesses.append(Witness(1, model))
        if model & m2.atoms not in sm2:
            witnesses.append(Witness(2, model))
    for model in sorted(natural_join(sm1, sm2, m1, m2) - sm_combined, key=model_key):
        witnesses.append(Witness(3, model))
    witnesses.sort(key=lambda w: (w.pattern, model_key(w.model)))
    return SemanticalJoinReport(combined, tuple(witnesses))


def semantical_join(m1: Module, m2: Module, cap: int | None = None) -> Module:
    """
    The composition when it preserves compositionality of stable models.

    Raises:
        CompositionUndefined: the composition is undefined or a witness exists.
    """
    report = check_semantical_join(m1, m2, cap)
    if not report.defined:
        first = report.witnesses[0]
        raise CompositionUndefined(f"Semantical join undefined ({first.pattern})", first.model)
    return report.composition
