"""
Higgledy-piggledy verification

Two independent decision paths:
- the strong-blocking scan over every (N-k)-subspace kappa
- the transversal search for an (N-k-1)-subspace meeting every element

Scans are split into enumeration work units; units are consumed in order
so the reported witness is always the lowest index, whatever the worker count.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import closing
from itertools import combinations

import numpy as np

from models.arrangement import Certificate
from models.projective_space import (
    Subspace,
    decode_rows,
    enumeration_units,
    gaussian_binomial,
    meet,
    pattern_table,
    span,
    subspace_at,
    subspace_count,
    subspace_index,
)
from settings import get_config, resolve_workers
from utils.constants import HIGPIG, NOT_HIGPIG, STRONG_SCAN, TRANSVERSAL_SCAN
from utils.exceptions import ArgumentOutOfRange, DimensionOutOfRange
from utils.helpers import elapsed_ms
from utils.kernels import first_transversal, first_transversal_through, first_unspanned

logger = logging.getLogger(__name__)

# Pairs considered when planning a pruned transversal search
PLAN_PAIR_LIMIT = 8


# Work units

def _pivot_arrays(pattern, n):
    pivots = np.array(pattern, dtype=np.int64)
    mask = np.zeros(n, dtype=np.bool_)
    mask[pivots] = True
    return pivots, mask


def _unit_tasks(space, d, kind, elems, chunk_size):
    units = enumeration_units(space, d, chunk_size)
    tables = tuple(space.field.tables)
    tasks = []
    for unit in units:
        pivots, mask = _pivot_arrays(unit.pattern, space.n)
        tasks.append((kind, pivots, mask, unit.start, unit.stop, space.q, space.n, elems, tables))
    return units, tasks


def _run_unit(task):
    kind, pivots, mask, start, stop, q, n, elems, tables = task
    kernel = first_unspanned if kind == "strong" else first_transversal
    return int(kernel(pivots, mask, start, stop, q, n, elems, *tables))


def _consume(tasks, runner, workers):
    """Yield task results in task order, in-process or through a process pool"""
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            yield runner(task)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        try:
            yield from pool.map(runner, tasks)
        finally:
            pool.shutdown(wait=False, cancel_futures=True)


def _scan(space, d, kind, elems, workers=None):
    """Lowest global index whose subspace triggers the kernel, and the scanned count"""
    chunk = get_config()["scan"]["chunk_size"]
    units, tasks = _unit_tasks(space, d, kind, elems, chunk)
    with closing(_consume(tasks, _run_unit, resolve_workers(workers))) as results:
        for unit, hit in zip(units, results):
            if hit >= 0:
                index = unit.base + hit
                return index, index + 1
    return None, subspace_count(space, d)


# Statistics

def coverage(arr):
    """Union of element point sets with the pairwise meet dimensions

    Args:
        arr (Arrangement): Arrangement to measure

    Returns:
        tuple: (frozenset of points, number of points, intersection-dimension matrix)
    """
    points = frozenset(arr.point_set())
    return points, len(points), arr.intersection_dims()


def _certificate(arr, verdict, method, witness, kind, scanned, start, strategy="full", advisory=None):
    _, size, dims = coverage(arr)
    return Certificate(
        verdict=verdict,
        method=method,
        witness=witness,
        witness_kind=kind,
        witness_index=subspace_index(witness) if witness is not None else None,
        covered_points=size,
        intersection_dims=dims,
        scanned=scanned,
        elapsed_ms=elapsed_ms(start),
        strategy=strategy,
        advisory=advisory,
    )


# Strong-blocking path

def verify_strong_blocking(arr, workers=None):
    """Scan every (N-k)-subspace kappa and check that its meets with the elements span it

    Args:
        arr (Arrangement): Arrangement to verify
        workers (int): Worker processes; affects speed only

    Returns:
        Certificate: HigPig, or NotHigPig with the lowest-index deficient kappa
    """
    start = time.perf_counter()
    space, d = arr.space, arr.N - arr.k
    index, scanned = _scan(space, d, "strong", arr.element_array(), workers)
    logger.info("Strong-blocking scan of %s: %d of %d %d-subspaces in %.0f ms",
                arr.describe(), scanned, subspace_count(space, d), d, elapsed_ms(start))
    if index is None:
        return _certificate(arr, HIGPIG, STRONG_SCAN, None, None, scanned, start)
    witness = subspace_at(space, d, index)
    return _certificate(arr, NOT_HIGPIG, STRONG_SCAN, witness, "deficient", scanned, start)


# Transversal path

def _pruning_plan(arr, d):
    """Cheapest element pair to prune through, with its estimated candidate count"""
    space, k, q = arr.space, arr.k, arr.q
    element_points = gaussian_binomial(k + 1, 1, q)
    best = None
    limit = min(len(arr), PLAN_PAIR_LIMIT)
    for i, j in combinations(range(limit), 2):
        common = meet(arr.elements[i], arr.elements[j])
        common_points = gaussian_binomial(common.rank, 1, q) if common.rank else 0
        work = common_points * gaussian_binomial(space.N, d, q)
        if d >= 1:
            work += (element_points - common_points) ** 2 * gaussian_binomial(space.N - 1, d - 1, q)
        if best is None or work < best[0]:
            best = (work, i, j)
    return best


def _pruned_bases(arr, d, i, j):
    """Points of e_i and e_j in common, then lines joining a point of e_i - e_j to one of e_j - e_i"""
    ei, ej = arr.elements[i], arr.elements[j]
    common = meet(ei, ej)
    bases = list(common.point_list) if common.rank else []
    if d >= 1:
        only_i = [P for P in ei.point_list if not ej.contains(P)]
        only_j = [P for P in ej.point_list if not ei.contains(P)]
        bases.extend(span([P, Q]) for P in only_i for Q in only_j)
    return bases


def _run_through(task):
    """Scan candidates through each base of a batch; (batch position, rows, checked) or (None, None, checked)"""
    bases, d, n, q, elems, tables = task
    checked = 0
    for position, (base_rows, free_cols) in enumerate(bases):
        b = base_rows.shape[0]
        t, nq = d + 1 - b, n - b
        patterns, sizes, _, _ = pattern_table(nq, t, q)
        for pattern, size in zip(patterns, sizes):
            pivots, mask = _pivot_arrays(pattern, nq)
            hit = int(first_transversal_through(base_rows, free_cols, pivots, mask, 0, size, q, elems, *tables))
            if hit >= 0:
                checked += hit + 1
                lifted = []
                for row in decode_rows(pattern, hit, nq, q):
                    vec = [0] * n
                    for col, value in zip(free_cols, row):
                        vec[int(col)] = value
                    lifted.append(vec)
                return position, [list(r) for r in base_rows.tolist()] + lifted, checked
            checked += size
    return None, None, checked


def _pruned_search(arr, d, i, j, workers):
    space = arr.space
    bases = _pruned_bases(arr, d, i, j)
    tables = tuple(space.field.tables)
    elems = arr.element_array()
    prepared = []
    for base in bases:
        free_cols = np.array([c for c in range(space.n) if c not in base.pivots], dtype=np.int64)
        prepared.append((base.matrix, free_cols))
    batch = max(1, len(prepared) // (4 * max(1, workers)))
    tasks = [(prepared[s:s + batch], d, space.n, space.q, elems, tables)
             for s in range(0, len(prepared), batch)]
    scanned = 0
    with closing(_consume(tasks, _run_through, workers)) as results:
        for _, rows, checked in results:
            scanned += checked
            if rows is not None:
                return Subspace.from_rows(space, rows), scanned
    return None, scanned


def transversal_search(arr, d=None, workers=None, strategy=None):
    """First transversal d-subspace with the search bookkeeping

    Args:
        arr (Arrangement): Elements to meet
        d (int): Transversal dimension, default N-k-1
        workers (int): Worker processes
        strategy (str): "auto", "full" or "pruned"; default from configuration

    Returns:
        dict: {"witness", "scanned", "strategy", "estimate", "full_count"}
    """
    space = arr.space
    d = arr.N - arr.k - 1 if d is None else d
    if not 0 <= d <= space.N - 1:
        raise DimensionOutOfRange(f"transversal dimension {d} outside [0, {space.N - 1}]")
    strategy = strategy or get_config()["scan"]["pruning"]
    workers = resolve_workers(workers)
    full_count = subspace_count(space, d)
    plan = _pruning_plan(arr, d) if len(arr) >= 2 else None
    use_pruned = plan is not None and (strategy == "pruned" or (strategy == "auto" and plan[0] < full_count))
    if use_pruned:
        logger.debug("Pruned transversal search through elements %d,%d: ~%d candidates vs %d",
                     plan[1], plan[2], plan[0], full_count)
        witness, scanned = _pruned_search(arr, d, plan[1], plan[2], workers)
        used = "pruned"
    else:
        index, scanned = _scan(space, d, "transversal", arr.element_array(), workers)
        witness = subspace_at(space, d, index) if index is not None else None
        used = "full"
    return {
        "witness": witness,
        "scanned": scanned,
        "strategy": used,
        "estimate": plan[0] if plan else full_count,
        "full_count": full_count,
    }


def find_transversal(arr, d=None, workers=None, strategy=None):
    """First d-subspace meeting every element of arr, or None"""
    return transversal_search(arr, d, workers, strategy)["witness"]


def transversal_enumeration(arr, d=None):
    """Yield every transversal d-subspace in enumeration order"""
    space = arr.space
    d = arr.N - arr.k - 1 if d is None else d
    units, tasks = _unit_tasks(space, d, "transversal", arr.element_array(), None)
    for unit, task in zip(units, tasks):
        kind, pivots, mask, start, stop, q, n, elems, tables = task
        while start < stop:
            hit = _run_unit((kind, pivots, mask, start, stop, q, n, elems, tables))
            if hit < 0:
                break
            yield subspace_at(space, d, unit.base + hit)
            start = hit + 1


# Dispatch

def _by_transversal(arr, workers, start):
    """Transversal verdict; above |K| = q a found transversal hands over to the strong scan"""
    result = transversal_search(arr, workers=workers)
    witness = result["witness"]
    if witness is None:
        return _certificate(arr, HIGPIG, TRANSVERSAL_SCAN, None, None, result["scanned"], start,
                            strategy=result["strategy"])
    if len(arr) <= arr.q:
        return _certificate(arr, NOT_HIGPIG, TRANSVERSAL_SCAN, witness, "transversal", result["scanned"],
                            start, strategy=result["strategy"])
    logger.debug("Transversal found with |K|=%d > q=%d, deciding by strong scan", len(arr), arr.q)
    certificate = verify_strong_blocking(arr, workers)
    certificate.advisory = {"transversal": witness.wire(), "transversal_index": subspace_index(witness)}
    return certificate


def is_higgledy_piggledy(arr, method="auto", workers=None):
    """Decide the higgledy-piggledy property

    Args:
        arr (Arrangement): Arrangement to certify
        method (str): "auto" (transversal when |K| <= q, strong scan otherwise), "strong" or "transversal"
        workers (int): Worker processes

    Returns:
        Certificate: Records the method that decided
    """
    start = time.perf_counter()
    if method not in ("auto", "strong", "transversal"):
        raise ArgumentOutOfRange(f"unknown verification method {method!r}")
    if not arr.elements:
        return _certificate(arr, NOT_HIGPIG, STRONG_SCAN, subspace_at(arr.space, arr.N - arr.k, 0),
                            "deficient", 1, start)
    if method == "strong" or (method == "auto" and len(arr) > arr.q):
        return verify_strong_blocking(arr, workers)
    return _by_transversal(arr, workers, start)


# Lower bounds

def lower_bound(N, k, q):
    """Smallest possible size of a higgledy-piggledy set of k-subspaces in PG(N,q)"""
    if not 0 <= k <= N - 1 or q < 2:
        raise ArgumentOutOfRange(f"need 0 <= k <= N-1 and q >= 2, got N={N}, k={k}, q={q}")
    first = (k + 1) + sum((N - k - 1) // i for i in range(1, k + 2))
    second = (N - k) + sum(k // i for i in range(1, N - k + 1))
    return min(q, max(first, second)) + 1


def lower_bound_vertices(N, k, q):
    if not 0 <= k <= N - 1 or q < 2:
        raise ArgumentOutOfRange(f"need 0 <= k <= N-1 and q >= 2, got N={N}, k={k}, q={q}")
    return min(q, sum((N - k + i) // (i + 1) for i in range(k + 1))) + 1


def lower_bound_lines(N, q):
    """Line-set bound N + floor(N/2) - floor((N-1)/q)"""
    if N < 1 or q < 2:
        raise ArgumentOutOfRange(f"need N >= 1 and q >= 2, got N={N}, q={q}")
    return N + N // 2 - (N - 1) // q
