import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from tqdm import tqdm

from gfclt import config, env
from gfclt.enums import TableMode
from gfclt.exceptions import EnumerationLimitError, SeriesOrderError
from gfclt.kernels import DefantKernel, make_defant_kernel
from gfclt.permlab._kernels import count_samples, count_with_first
from gfclt.permlab.table import DistTable

logger = logging.getLogger(__name__)


def _nonzero(counts: np.ndarray) -> dict:
    return {int(k): int(v) for k, v in enumerate(counts) if v}


def exact_distribution(n: int, progress: bool = False, threads: Optional[int] = None) -> DistTable:
    """Counts of des(s(pi)) + 1 over all of S_n; S_0 holds the empty permutation, whose value is 1"""
    limit = config["permlab"]["exact_max_n"]
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > limit:
        raise EnumerationLimitError(
            f"Exhaustive enumeration is limited to n <= {limit} ({math.factorial(limit):,} permutations); "
            f"use Monte Carlo sampling for n = {n}"
        )
    if n <= 1:
        return DistTable(n=n, counts={1: 1}, mode=TableMode.exact)

    def work(first: int) -> np.ndarray:
        counts = np.zeros(n + 2, dtype=np.int64)
        count_with_first(n, first, counts)
        return counts

    total = np.zeros(n + 2, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=env.threads(threads)) as pool:
        for counts in tqdm(pool.map(work, range(1, n + 1)), total=n, disable=not progress, desc=f"S_{n}"):
            total += counts
    return DistTable(n=n, counts=_nonzero(total), mode=TableMode.exact)


def _chunk_rows(n: int, samples: int) -> list:
    rows_per_chunk = max(1, config["permlab"]["mc_chunk_entries"] // max(1, n - 1))
    chunks = math.ceil(samples / rows_per_chunk)
    return [min(rows_per_chunk, samples - i * rows_per_chunk) for i in range(chunks)]


def mc_distribution(
    n: int, samples: int, seed: int, progress: bool = False, threads: Optional[int] = None
) -> DistTable:
    """
    Monte Carlo counts of des(s(pi_n)) + 1 for uniform pi_n. Samples are split into chunks of fixed size with one
    PCG64 stream per chunk spawned from ``seed``, so the table depends on (n, samples, seed) only.
    """
    if samples < 1:
        raise ValueError(f"Need at least one sample, got {samples}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return DistTable(n=n, counts={1: samples}, mode=TableMode.monte_carlo, seed=seed)

    rows = _chunk_rows(n, samples)
    streams = np.random.SeedSequence(seed).spawn(len(rows))
    highs = np.arange(n, 1, -1)
    logger.debug(f"Monte Carlo at n = {n}: {samples} samples in {len(rows)} chunks")

    def work(i: int) -> np.ndarray:
        rng = np.random.Generator(np.random.PCG64(streams[i]))
        draws = rng.integers(0, highs, size=(rows[i], n - 1), dtype=np.int64)
        counts = np.zeros(n + 2, dtype=np.int64)
        count_samples(n, draws, counts)
        return counts

    total = np.zeros(n + 2, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=env.threads(threads)) as pool:
        for counts in tqdm(pool.map(work, range(len(rows))), total=len(rows), disable=not progress, desc=f"n={n}"):
            total += counts
    return DistTable(n=n, counts=_nonzero(total), mode=TableMode.monte_carlo, seed=seed)


def series_distribution(n: int, kernel: Optional[DefantKernel] = None) -> DistTable:
    """Probabilities of des(s(pi_n)) + 1 read from column n of the Defant generating function"""
    kernel = make_defant_kernel() if kernel is None else kernel
    pgf = kernel.pgf_series()
    if not 0 <= n <= pgf.trunc_order:
        raise SeriesOrderError(f"Series tables reach n <= {pgf.trunc_order}, got {n}")

    column = pgf.coeffs[:, n].real
    probs = {m: float(p) for m, p in enumerate(column) if p > config["permlab"]["series_floor"]}
    return DistTable(n=n, counts=probs, mode=TableMode.series)
