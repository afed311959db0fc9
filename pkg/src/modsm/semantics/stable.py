"""
Stable Models
-------------
Stable-model tests and enumeration for modules.

Two enumeration strategies compute the same set:

    brute        every candidate over I u head(R)
    instantiate  for each actual input A, the instantiated module P(A)
                 over its own heads; independent inputs may run on
                 several worker threads

Results are always in binary-counter order over atom ids, independent of
scheduling.

Usage:
    from modsm.semantics.stable import stable_models

    models = stable_models(m, strategy="instantiate", workers=4)
"""

import heapq
import logging
from collections.abc import Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from enum import StrEnum

from modsm.config import ensure_within, get_cap, get_workers
from modsm.core.atoms import Atom, Interpretation, ModelSet, model_key
from modsm.core.module import Module, instantiate
from modsm.semantics.engine import CompiledModule
from modsm.semantics.reduct import iter_subsets, least_model, reduct

logger = logging.getLogger(__name__)


class Strategy(StrEnum):
    BRUTE = "brute"
    INSTANTIATE = "instantiate"


def is_stable(m: Module, model: Iterable[Atom]) -> bool:
    """M is stable iff M \\ I equals the least model of the reduct."""
    model = frozenset(model)
    if not model <= m.atoms | m.rule_atoms:
        return False
    return model - m.input == least_model(reduct(m, model))


def is_stable_instantiated(m: Module, model: Iterable[Atom]) -> bool:
    """Same test through P(M n I): M must be the least model of R^M plus the input facts."""
    model = frozenset(model)
    if not model <= m.atoms | m.rule_atoms:
        return False
    instantiated = instantiate(m, model & m.input)
    return model == least_model(reduct(instantiated, model))


def candidate_count(m: Module) -> int:
    return 2 ** len(m.input | m.heads)


def _brute(m: Module) -> list[Interpretation]:
    compiled = CompiledModule(m)
    return [compiled.to_model(mask) for mask in compiled.stable_masks()]


def _instantiated(m: Module, actual: frozenset[Atom]) -> list[Interpretation]:
    return _brute(instantiate(m, actual))


def iter_stable_models(
    m: Module,
    strategy: Strategy | str = Strategy.BRUTE,
    cap: int | None = None,
    workers: int | None = None,
) -> Iterator[Interpretation]:
    """
    Yield the stable models of ``m`` in canonical order.

    Raises:
        CapExceeded: when 2^|I u head(R)| exceeds the candidate cap.
    """
    strategy = Strategy(strategy)
    ensure_within("stable model candidates", candidate_count(m), get_cap(cap))
    if strategy is Strategy.BRUTE:
        yield from _brute(m)
        return

    inputs = list(iter_subsets(m.input))
    workers = get_workers(workers)
    if workers > 1 and len(inputs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(lambda a: _instantiated(m, a), inputs))
    else:
        batches = [_instantiated(m, a) for a in inputs]
    logger.debug(f"Instantiated {len(inputs)} input assignments on {workers} workers")
    yield from heapq.merge(*batches, key=model_key)


def stable_models(
    m: Module,
    strategy: Strategy | str = Strategy.BRUTE,
    cap: int | None = None,
    workers: int | None = None,
) -> ModelSet:
    return frozenset(iter_stable_models(m, strategy, cap, workers))
