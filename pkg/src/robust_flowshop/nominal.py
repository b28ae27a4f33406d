"""Deterministic permutation-flowshop machinery.

Jobs are numbered 1..n in the public API (matching the usual scheduling
convention); internally everything is 0-based numpy.  A schedule is a
permutation ``sigma`` of the job numbers, processed in that order on every
machine.  The makespan of a schedule equals the longest source-to-sink path
in the m-by-n grid digraph, and such a critical path is fully described by
the positions ``k_1 <= ... <= k_m = n`` where it drops from one machine row
to the next (the job at a crossing position runs on both rows).
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from .errors import InputError

# Inputs are validated so every path sum fits comfortably in int64.
_VALUE_BUDGET = 2**62


def as_processing_matrix(p) -> np.ndarray:
    """Validate and return an m-by-n matrix of nonnegative integer times."""
    arr = np.asarray(p)
    if arr.ndim != 2:
        raise InputError(f"processing matrix must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"processing matrix must be at least 1x1, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        rounded = np.rint(arr)
        if not np.array_equal(rounded, arr):
            raise InputError("processing times must be integers")
        arr = rounded
    arr = arr.astype(np.int64, copy=True)
    if (arr < 0).any():
        raise InputError("processing times must be nonnegative")
    if arr.size and int(arr.max()) * arr.size > _VALUE_BUDGET:
        raise InputError("processing times too large: m*n*max(p) must fit in 64 bits")
    arr.setflags(write=False)
    return arr


def as_permutation(sigma: Sequence[int], n: int) -> np.ndarray:
    """Validate a 1-based job permutation, returning 0-based indices."""
    arr = np.asarray(sigma, dtype=np.int64)
    if arr.shape != (n,):
        raise InputError(f"permutation must list exactly {n} jobs, got {arr.shape}")
    if not np.array_equal(np.sort(arr), np.arange(1, n + 1)):
        raise InputError("permutation must contain each job in 1..n exactly once")
    return arr - 1


def stable_order(keys) -> np.ndarray:
    """0-based indices sorting ``keys`` nondecreasingly, ties by index."""
    return np.argsort(np.asarray(keys), kind="stable")


def _makespan_rows(rows: Sequence[Sequence[int]], order) -> int:
    """Makespan recurrence on raw rows; ``order`` holds 0-based job indices."""
    m = len(rows)
    comp = [0] * m
    for j in order:
        prev = 0
        for i in range(m):
            c = comp[i]
            if prev > c:
                c = prev
            c += rows[i][j]
            comp[i] = c
            prev = c
    return comp[m - 1]


def compute_makespan(p, sigma: Sequence[int]) -> int:
    """Makespan of schedule ``sigma`` (1-based jobs) on matrix ``p``.

    Evaluates the classical completion-time recurrence
    ``C[i][j] = max(C[i][j-1], C[i-1][j]) + p[i][sigma(j)]`` with zero
    boundary terms and returns ``C[m][n]``, in exact integer arithmetic.
    """
    mat = as_processing_matrix(p)
    order = as_permutation(sigma, mat.shape[1])
    return int(_makespan_rows(mat.tolist(), order.tolist()))


def _makespan_many(mat: np.ndarray, perms0: np.ndarray) -> np.ndarray:
    """Makespans of many schedules at once.

    ``perms0`` is a (P, n) array of 0-based job indices, one schedule per
    row.  Vectorizes the recurrence across schedules; used by the brute
    force oracles and exhaustive tests.
    """
    m, n = mat.shape
    count = perms0.shape[0]
    comp = np.zeros((m, count), dtype=np.int64)
    zero = np.zeros(count, dtype=np.int64)
    for j in range(n):
        jobs = perms0[:, j]
        prev = zero  # read-only below, so sharing is safe
        for i in range(m):
            np.maximum(comp[i], prev, out=comp[i])
            comp[i] += mat[i, jobs]
            prev = comp[i]
    return comp[m - 1].copy()


def critical_tuples(m: int, n: int):
    """Yield all crossing tuples ``k_1 <= ... <= k_m = n`` (1-based), in
    lexicographic order."""
    for head in combinations_with_replacement(range(1, n + 1), m - 1):
        yield head + (n,)


def _tuple_value(prefixes: list[list[int]], k: tuple[int, ...]) -> int:
    """Path length of crossing tuple ``k`` given per-machine prefix sums of
    the sigma-ordered rows (``prefixes[i][t]`` = sum of first t entries)."""
    total = 0
    lo = 1
    for i, hi in enumerate(k):
        total += prefixes[i][hi] - prefixes[i][lo - 1]
        lo = hi
    return total


def makespan_by_tuples(p, sigma: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Makespan of ``sigma`` computed as the longest crossing-tuple path.

    Returns ``(value, k)`` where ``k`` is the lexicographically smallest
    maximizing tuple.  The value always equals :func:`compute_makespan`;
    the two are independent routes to the same number and are cross-checked
    in the test suite.

    Runs in O(n) for m <= 3 and enumerates all O(n^(m-1)) tuples otherwise.
    """
    mat = as_processing_matrix(p)
    m, n = mat.shape
    order = as_permutation(sigma, n)
    placed = mat[:, order]
    if m == 1:
        return int(placed[0].sum()), (n,)
    if m == 2:
        return _tuple_m2(placed[0], placed[1])
    if m == 3:
        return _tuple_m3(placed[0], placed[1], placed[2])
    prefixes = [np.concatenate(([0], np.cumsum(row))).tolist() for row in placed]
    best = -1
    best_k: tuple[int, ...] = ()
    for k in critical_tuples(m, n):
        v = _tuple_value(prefixes, k)
        if v > best:
            best, best_k = v, k
    return best, best_k


def _tuple_m2(a: np.ndarray, b: np.ndarray) -> tuple[int, tuple[int, int]]:
    n = len(a)
    pre_a = np.concatenate(([0], np.cumsum(a)))
    suf_b = np.concatenate((np.cumsum(b[::-1])[::-1], [0]))
    values = pre_a[1:] + suf_b[:-1]
    k1 = int(np.argmax(values))
    return int(values[k1]), (k1 + 1, n)


def _tuple_m3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> tuple[int, tuple[int, int, int]]:
    # value(k1,k2) = preA[k1] - preB[k1-1] + (preB[k2] + sufC[k2-1]); the
    # bracket depends on k2 alone, so a suffix-max over it gives the best k2
    # for every k1 in one O(n) pass.
    n = len(a)
    pre_a = np.concatenate(([0], np.cumsum(a)))
    pre_b = np.concatenate(([0], np.cumsum(b)))
    suf_c = np.concatenate((np.cumsum(c[::-1])[::-1], [0]))
    w = pre_b[1:] + suf_c[:-1]  # w[t] = bracket at k2 = t+1
    best_w = np.empty(n, dtype=np.int64)
    best_at = np.empty(n, dtype=np.int64)
    best_w[n - 1] = w[n - 1]
    best_at[n - 1] = n - 1
    for t in range(n - 2, -1, -1):
        if w[t] >= best_w[t + 1]:
            best_w[t] = w[t]
            best_at[t] = t
        else:
            best_w[t] = best_w[t + 1]
            best_at[t] = best_at[t + 1]
    head = pre_a[1:] - pre_b[:-1]
    totals = head + best_w
    k1 = int(np.argmax(totals))
    k2 = int(best_at[k1])
    return int(totals[k1]), (k1 + 1, k2 + 1, n)


def _check_ordering(row, pi, what: str) -> None:
    n = len(row)
    seen = sorted(pi)
    if seen != list(range(n)):
        raise InputError(f"{what} is not a permutation of the jobs")
    for a, b in zip(pi, pi[1:]):
        if row[a] > row[b]:
            raise InputError(f"{what} is not nondecreasing")


def _johnson_core(r1, r2, pi1, pi2) -> list[int]:
    """Johnson's rule given presorted orderings; 0-based, O(n)."""
    first = [j for j in pi1 if r1[j] <= r2[j]]
    first += [j for j in reversed(pi2) if r1[j] > r2[j]]
    return first


def johnson(p, pi1: Sequence[int] | None = None, pi2: Sequence[int] | None = None) -> tuple[int, ...]:
    """Optimal two-machine schedule by Johnson's rule.

    Jobs with ``p[0][j] <= p[1][j]`` come first in nondecreasing first-row
    order, the rest follow in nonincreasing second-row order (the reverse of
    the second ordering).  Given the two orderings the construction is O(n);
    without them they are computed by a stable sort.

    Parameters
    ----------
    p : array-like, shape (2, n)
        Processing times.
    pi1, pi2 : sequences of 1-based job numbers, optional
        Nondecreasing orderings of row 1 and row 2; rejected if unsorted.

    Returns
    -------
    tuple of int
        A makespan-optimal permutation, 1-based.
    """
    mat = as_processing_matrix(p)
    if mat.shape[0] != 2:
        raise InputError(f"johnson requires exactly 2 machines, got {mat.shape[0]}")
    r1, r2 = mat[0].tolist(), mat[1].tolist()
    if pi1 is None:
        o1 = stable_order(r1).tolist()
    else:
        o1 = (as_permutation(pi1, mat.shape[1])).tolist()
        _check_ordering(r1, o1, "pi1")
    if pi2 is None:
        o2 = stable_order(r2).tolist()
    else:
        o2 = (as_permutation(pi2, mat.shape[1])).tolist()
        _check_ordering(r2, o2, "pi2")
    return tuple(j + 1 for j in _johnson_core(r1, r2, o1, o2))


def _chen_core(r1, r2, r3, oq1, oq2) -> tuple[list[int], int]:
    """Three-machine 5/3-approximation; 0-based rows and orderings, O(n).
    Returns the chosen schedule and its makespan.

    Solves the aggregated two-machine instance (q1 = r1 + r2, q2 = r2 + r3)
    by Johnson's rule, then, when the machine-2 portion of the resulting
    critical path is heavy (more than two thirds of the machine-2 load), a
    repair permutation is built by splitting that heavy middle block at a
    threshold position ``l`` and rotating the blocks.  Output is whichever
    of the two schedules has the smaller makespan (ties keep the aggregated
    schedule).

    The split threshold reads: in the head-heavy branch, ``l`` is the
    smallest position with machine-2 prefix sum through ``l`` at least
    2/3 of the machine-2 total; in the tail-heavy branch the same with the
    suffix sum from ``l``.  Both scans stay within ``k1 < l < k2`` and are
    guaranteed to succeed when the heavy-middle condition holds; if not
    (defensively), the aggregated schedule is returned unchanged.
    """
    n = len(r1)
    q1 = [r1[j] + r2[j] for j in range(n)]
    q2 = [r2[j] + r3[j] for j in range(n)]
    sigma = _johnson_core(q1, q2, oq1, oq2)
    a = np.fromiter((r1[j] for j in sigma), np.int64, n)
    b = np.fromiter((r2[j] for j in sigma), np.int64, n)
    c = np.fromiter((r3[j] for j in sigma), np.int64, n)
    base_value, (k1, k2, _) = _tuple_m3(a, b, c)

    total2 = int(sum(r2))
    if k1 == k2:
        return sigma, base_value
    mid = int(b[k1:k2 - 1].sum())  # strictly between the crossings
    if 3 * (mid + min(int(b[k1 - 1]), int(b[k2 - 1]))) <= 2 * total2:
        return sigma, base_value

    head1 = int(a[:k1].sum())
    tail3 = int(c[k2 - 1:].sum())
    pre_b = np.concatenate(([0], np.cumsum(b)))
    pick = None
    if head1 >= tail3:
        for ell in range(k1 + 1, k2):
            if 3 * int(pre_b[ell]) >= 2 * total2:
                pick = ell
                break
    else:
        for ell in range(k1 + 1, k2):
            if 3 * int(pre_b[n] - pre_b[ell - 1]) >= 2 * total2:
                pick = ell
                break
    if pick is None:
        return sigma, base_value

    repaired = (
        sigma[k1:pick - 1] + sigma[:k1] + [sigma[pick - 1]]
        + sigma[k2 - 1:] + sigma[pick:k2 - 1]
    )
    repaired_value = _makespan_rows((r1, r2, r3), repaired)
    if repaired_value < base_value:
        return repaired, repaired_value
    return sigma, base_value


def chen_three_machine(
    p,
    ord_q1: Sequence[int] | None = None,
    ord_q2: Sequence[int] | None = None,
) -> tuple[int, ...]:
    """Three-machine schedule with makespan at most 5/3 of the optimum.

    Parameters
    ----------
    p : array-like, shape (3, n)
        Processing times.
    ord_q1, ord_q2 : sequences of 1-based job numbers, optional
        Nondecreasing orderings of the aggregated rows ``p[0] + p[1]`` and
        ``p[1] + p[2]``; computed by a stable sort when omitted.
    """
    mat = as_processing_matrix(p)
    if mat.shape[0] != 3:
        raise InputError(f"chen_three_machine requires exactly 3 machines, got {mat.shape[0]}")
    n = mat.shape[1]
    r1, r2, r3 = mat[0].tolist(), mat[1].tolist(), mat[2].tolist()
    q1 = [r1[j] + r2[j] for j in range(n)]
    q2 = [r2[j] + r3[j] for j in range(n)]
    if ord_q1 is None:
        o1 = stable_order(q1).tolist()
    else:
        o1 = as_permutation(ord_q1, n).tolist()
        _check_ordering(q1, o1, "ord_q1")
    if ord_q2 is None:
        o2 = stable_order(q2).tolist()
    else:
        o2 = as_permutation(ord_q2, n).tolist()
        _check_ordering(q2, o2, "ord_q2")
    sigma, _ = _chen_core(r1, r2, r3, o1, o2)
    return tuple(j + 1 for j in sigma)
