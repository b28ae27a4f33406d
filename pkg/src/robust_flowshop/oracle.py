"""Exhaustive reference solvers for certifying the fast algorithms.

Everything here enumerates: permutations in lexicographic order (first
minimizer wins, so results are deterministic) and scenarios as explicit
deviation subsets.  No pruning, no cleverness; these are the ground truth
the test suite measures everything else against, so they stay as plain as
possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Sequence

import numpy as np

from .errors import OracleLimitError
from .nominal import _makespan_many, _makespan_rows, as_permutation, as_processing_matrix
from .robust import RobustInstance, _worst_case

__all__ = [
    "OracleBudget",
    "brute_force_nominal",
    "brute_force_robust",
    "enumerate_scenarios",
]


@dataclass(frozen=True)
class OracleBudget:
    """Enumeration caps; oversized inputs are refused, never truncated."""

    max_jobs: int = 8
    max_scenarios: int = 2_000_000


_DEFAULT_BUDGET = OracleBudget()


def _check_jobs(n: int, budget: OracleBudget) -> None:
    if n > budget.max_jobs:
        raise OracleLimitError(
            f"refusing to enumerate {factorial(n)} permutations (n={n} > max_jobs={budget.max_jobs})"
        )


@lru_cache(maxsize=8)
def _all_perms(n: int) -> np.ndarray:
    out = np.array(list(permutations(range(n))), dtype=np.int64)
    out.setflags(write=False)
    return out


def brute_force_nominal(p, budget: OracleBudget = _DEFAULT_BUDGET) -> tuple[tuple[int, ...], int]:
    """Exact nominal optimum by enumerating all n! schedules.

    Returns the lexicographically first optimal permutation (1-based) and
    its makespan.
    """
    mat = as_processing_matrix(p)
    _check_jobs(mat.shape[1], budget)
    perms = _all_perms(mat.shape[1])
    values = _makespan_many(mat, perms)
    at = int(np.argmin(values))  # first occurrence = lexicographically first
    return tuple(int(j) + 1 for j in perms[at]), int(values[at])


def brute_force_robust(inst: RobustInstance, budget: OracleBudget = _DEFAULT_BUDGET) -> tuple[tuple[int, ...], int]:
    """Exact robust optimum: worst-case makespan minimized over all n!
    schedules, lexicographically first minimizer."""
    _check_jobs(inst.n, budget)
    bar = inst.p_bar.tolist()
    hat = inst.p_hat.tolist()
    gam = inst.effective_gamma
    best = None
    best_perm: tuple[int, ...] = ()
    for perm in permutations(range(inst.n)):
        value, _ = _worst_case(bar, hat, gam, perm)
        if best is None or value < best:
            best = value
            best_perm = perm
    return tuple(j + 1 for j in best_perm), int(best)


def _scenario_count(n: int, gammas: Sequence[int], exact: bool) -> int:
    total = 1
    for g in gammas:
        total *= comb(n, g) if exact else sum(comb(n, t) for t in range(g + 1))
    return total


def enumerate_scenarios(
    inst: RobustInstance,
    sigma: Sequence[int],
    budget: OracleBudget = _DEFAULT_BUDGET,
) -> int:
    """Worst makespan of ``sigma`` over explicitly enumerated scenarios.

    Since deviations are nonnegative, deviating a superset of jobs never
    hurts the adversary, so only subsets of size exactly ``min(gamma, n)``
    per machine are enumerated (the equivalence with the full
    at-most-gamma enumeration is asserted by tests on tiny instances).
    """
    gam = inst.effective_gamma
    count = _scenario_count(inst.n, gam, exact=True)
    if count > budget.max_scenarios:
        raise OracleLimitError(f"refusing to enumerate {count} scenarios (max_scenarios={budget.max_scenarios})")
    return _scan_scenarios(inst, sigma, gam, exact=True)


def _enumerate_scenarios_all_sizes(
    inst: RobustInstance,
    sigma: Sequence[int],
    budget: OracleBudget = _DEFAULT_BUDGET,
) -> int:
    """Full at-most-gamma enumeration; debug cross-check for the exact-size
    shortcut."""
    gam = inst.effective_gamma
    count = _scenario_count(inst.n, gam, exact=False)
    if count > budget.max_scenarios:
        raise OracleLimitError(f"refusing to enumerate {count} scenarios (max_scenarios={budget.max_scenarios})")
    return _scan_scenarios(inst, sigma, gam, exact=False)


def _scan_scenarios(inst: RobustInstance, sigma: Sequence[int], gam, exact: bool) -> int:
    order = as_permutation(sigma, inst.n).tolist()
    n = inst.n
    variants: list[list[list[int]]] = []
    for i in range(inst.m):
        bar_row = [int(inst.p_bar[i, j]) for j in order]
        hat_row = [int(inst.p_hat[i, j]) for j in order]
        sizes = [gam[i]] if exact else range(gam[i] + 1)
        rows = []
        for size in sizes:
            for chosen in combinations(range(n), size):
                row = bar_row[:]
                for t in chosen:
                    row[t] += hat_row[t]
                rows.append(row)
        variants.append(rows)
    spine = list(range(n))
    best = -1
    for rows in product(*variants):
        value = _makespan_rows(rows, spine)
        if value > best:
            best = value
    return best
