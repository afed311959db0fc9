"""
Decomposition Report
--------------------
Times decomposition and recomposition of benchmark modules and tabulates
the results with pandas.

Columns of the summary table:
    instance  benchmark name
    na        atoms in Hb(P)
    nr        rules
    bt        decomposition mode (+, +h, ±h)
    nm        modules produced
    dt        decomposition time in seconds
    ct        recomposition time in seconds

The size distribution counts modules by their number of rules in the
buckets 1, 2, 3-4, 5-8, ..., 513-1024 and over 1024.

Usage:
    from modsm.decompose.report import benchmark, export_report

    summary, sizes = benchmark({"hr8": hamiltonian_reachability_module(8)})
    export_report(summary, "results/summary.parquet")
"""

import logging
import os
import time
from collections.abc import Iterable, Mapping

import numpy as np
import pandas as pd

from modsm.core.module import Module
from modsm.decompose.modlist import DecompositionMode, decompose, recompose
from modsm.errors import ModsmError

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ["instance", "na", "nr", "bt", "nm", "dt", "ct"]

# (0, 1], (1, 2], (2, 4], ..., (512, 1024], (1024, inf)
SIZE_EDGES = [0, *(2**k for k in range(11)), np.inf]
SIZE_LABELS = ["1", "2"] + [f"{2**k + 1}-{2 ** (k + 1)}" for k in range(1, 10)] + ["over 1024"]


def size_distribution(sizes: Iterable[int]) -> pd.Series:
    """Number of modules per rule-count bucket; rule-free modules are not counted."""
    series = pd.Series(list(sizes), dtype="int64")
    buckets = pd.cut(series[series > 0], bins=SIZE_EDGES, labels=SIZE_LABELS)
    return buckets.value_counts(sort=False).reindex(SIZE_LABELS, fill_value=0)


def benchmark(
    instances: Mapping[str, Module],
    modes: Iterable[DecompositionMode | str] = tuple(DecompositionMode),
) -> tuple[pd.DataFrame, pd.DataFrame]:
    """
    Decompose and recompose every instance in every mode.

    Returns:
        The summary table and the size distribution, one column per
        instance/mode pair.
    """
    modes = [DecompositionMode(mode) for mode in modes]
    rows = []
    distributions = {}
    for name, m in instances.items():
        for mode in modes:
            logger.info(f"Benchmarking {name} ({mode})...")
            started = time.perf_counter()
            parts = decompose(m, mode)
            decomposed = time.perf_counter()
            try:
                recompose(parts.modules)
                ct = time.perf_counter() - decomposed
            except ModsmError as e:
                logger.warning(f"  Recomposition of {name} ({mode}) failed: {e}")
                ct = np.nan
            rows.append(
                {
                    "instance": name,
                    "na": len(m.atoms | m.rule_atoms),
                    "nr": len(m.rules),
                    "bt": mode.label,
                    "nm": len(parts.modules),
                    "dt": decomposed - started,
                    "ct": ct,
                }
            )
            distributions[f"{name} {mode.label}"] = size_distribution(
                len(sub.rules) for sub in parts.modules
            )
            logger.info(f"  {len(parts.modules)} modules in {decomposed - started:.3f}s")

    summary = pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
    sizes = pd.DataFrame(distributions, index=SIZE_LABELS)
    sizes.index.name = "nr"
    return summary, sizes


def export_report(df: pd.DataFrame, path: str) -> str:
    """Write ``df`` as Parquet or CSV, chosen by the file extension."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    if path.endswith(".parquet"):
        df.to_parquet(path, index=df.index.name is not None)
    else:
        df.to_csv(path, index=df.index.name is not None)
    logger.info(f"Exported {len(df)} rows to {path}")
    return path
