"""Reduction-based robust solvers.

All solvers share one shape: enumerate the dual candidate grid, solve the
nominal instance induced by each candidate ``mu``, score each resulting
schedule by its dual objective (transformed makespan plus the budget
penalty), keep the best, and finally certify the winner with exactly one
adversary evaluation.  Candidates are scored by the dual objective, never
adversary-evaluated individually, which is what keeps the two- and
three-machine sweeps at O(n^3) and O(n^4).

Two things the caller should know:

* Scoring uses the full dual objective (makespan plus ``sum(gamma*mu)``),
  not the raw transformed makespan; comparing raw makespans across
  different ``mu`` would be meaningless.
* ``certified`` (the worst case of the returned schedule) is always a true
  upper bound and ``certified <= bound`` always holds, but the certified
  value is not guaranteed to hit the exact robust optimum: the dual grid
  bound can sit strictly above the worst case of every schedule, and the
  candidate pool can miss every optimal schedule.  A minimal example, with
  the brute-force optimum 63 at (3,1,2) while the grid only ever generates
  schedules certified at 64 and 72:

      p_bar = [[6, 18, 12], [4, 4, 9]]
      p_hat = [[4, 10, 7], [16, 18, 15]]
      gamma = (0, 2)

  In practice the gap is small and usually zero; the oracle module and the
  acceptance suite measure it honestly.

The per-candidate nominal solves avoid re-sorting: for each machine the two
extreme orderings (by ``p_bar`` and by ``p_bar + p_hat``) are computed once,
and the nondecreasing order of any transformed row is an O(n) merge of the
two restricted to the jobs above/below the threshold (the threshold shifts
a whole group by a constant, so within each group the extreme order is
already correct).  The three-machine variant does the same for the two
aggregated rows with four extreme orderings each.
"""

from __future__ import annotations

import heapq
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from time import perf_counter
from typing import Callable, Sequence

import numpy as np

from .errors import InnerSolverError, InputError
from .nominal import (
    _chen_core,
    _check_ordering,
    _makespan_rows,
    as_permutation,
    chen_three_machine,
    johnson,
    stable_order,
)
from .oracle import OracleBudget, brute_force_nominal
from .robust import (
    RobustInstance,
    candidate_grid,
    candidate_values,
    transform_instance,
    worst_case_makespan,
)

__all__ = [
    "NominalSolver",
    "SolveReport",
    "brute_force_solver",
    "chen_solver",
    "johnson_solver",
    "merge_orderings",
    "merge_aggregate_orderings",
    "robust_johnson",
    "robust_chen",
    "solve_by_reduction",
]


@dataclass(frozen=True)
class NominalSolver:
    """A nominal flowshop solver with a declared approximation factor.

    ``solve`` maps an m-by-n matrix to a 1-based permutation; ``rho`` is
    its guarantee (1 = exact).  ``machines`` restricts the supported
    machine counts (None = any).
    """

    name: str
    rho: float
    solve: Callable[[np.ndarray], Sequence[int]]
    machines: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.rho < 1:
            raise InputError(f"approximation factor must be >= 1, got {self.rho}")


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one robust solve.

    ``bound`` is the best dual objective over the grid, ``certified`` the
    adversary-checked worst case of the returned schedule; ``certified <=
    bound`` always.  ``wall_time`` (seconds) is the only field allowed to
    differ between identical runs.
    """

    algorithm: str
    sigma: tuple[int, ...]
    bound: int
    certified: int
    mu_star: tuple[int, ...]
    candidates_evaluated: int
    wall_time: float

    def same_result(self, other: "SolveReport") -> bool:
        """Equality of everything except wall_time."""
        return (
            self.algorithm == other.algorithm
            and self.sigma == other.sigma
            and self.bound == other.bound
            and self.certified == other.certified
            and self.mu_star == other.mu_star
            and self.candidates_evaluated == other.candidates_evaluated
        )


def brute_force_solver(budget: OracleBudget = OracleBudget()) -> NominalSolver:
    """Exact (rho=1) nominal solver by exhaustive enumeration."""
    return NominalSolver(
        name="brute-force-nominal",
        rho=1.0,
        solve=lambda mat: brute_force_nominal(mat, budget)[0],
    )


def johnson_solver() -> NominalSolver:
    """Johnson's rule (exact for two machines) as a pluggable solver."""
    return NominalSolver(name="johnson", rho=1.0, solve=johnson, machines=(2,))


def chen_solver() -> NominalSolver:
    """The three-machine 5/3-approximation as a pluggable nominal solver."""
    return NominalSolver(
        name="chen-three-machine",
        rho=5 / 3,
        solve=chen_three_machine,
        machines=(3,),
    )


def _resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("RFS_THREADS", "1"))
    if threads < 1:
        raise InputError(f"threads must be >= 1, got {threads}")
    return threads


def _chunks(count: int, parts: int) -> list[range]:
    size = max(1, -(-count // parts))
    return [range(lo, min(lo + size, count)) for lo in range(0, count, size)]


def _map_chunked(fn, count: int, threads: int):
    """Run ``fn`` over index ranges, possibly in parallel; returns the list
    of per-chunk results.  Chunk boundaries do not affect any result, so
    the combined outcome is independent of the schedule."""
    parts = _chunks(count, threads)
    if threads == 1 or len(parts) == 1:
        return [fn(part) for part in parts]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, parts))


def solve_by_reduction(
    inst: RobustInstance,
    solver: NominalSolver,
    threads: int | None = 1,
) -> SolveReport:
    """Solve the robust problem through ``solver`` on every grid candidate.

    For each dual candidate ``mu`` the transformed nominal instance is
    solved, the schedule is scored by its dual objective, and the overall
    winner (ties: first candidate in lexicographic order) is certified by
    one adversary evaluation.  With a rho-approximate inner solver the
    bound is at most rho times what an exact inner solver would reach.

    Inner-solver exceptions are re-raised as
    :class:`~robust_flowshop.errors.InnerSolverError` carrying ``mu``.
    """
    started = perf_counter()
    threads = _resolve_threads(threads)
    if solver.machines is not None and inst.m not in solver.machines:
        raise InputError(f"solver {solver.name} does not support m={inst.m}")
    grid = candidate_grid(inst)
    gam = inst.effective_gamma

    def objective_of(mu: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        trans = transform_instance(inst, mu)
        try:
            sigma = tuple(int(v) for v in solver.solve(trans))
            order = as_permutation(sigma, inst.n).tolist()
        except Exception as exc:
            raise InnerSolverError(mu, exc) from exc
        value = _makespan_rows(trans.tolist(), order)
        return value + sum(g * v for g, v in zip(gam, mu)), sigma

    def best_in(part: range):
        best = None
        for idx in part:
            obj, sigma = objective_of(grid[idx])
            if best is None or obj < best[0]:
                best = (obj, idx, sigma)
        return best

    results = [r for r in _map_chunked(best_in, len(grid), threads) if r is not None]
    bound, at, sigma = min(results, key=lambda r: (r[0], r[1]))
    certified, _ = worst_case_makespan(inst, sigma)
    return SolveReport(
        algorithm=f"reduction[{solver.name}]",
        sigma=sigma,
        bound=int(bound),
        certified=int(certified),
        mu_star=grid[at],
        candidates_evaluated=len(grid),
        wall_time=perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# order merging


def _transformed_row(bar_row: list[int], hat_row: list[int], mu: int) -> list[int]:
    return [b + (h - mu) if h > mu else b for b, h in zip(bar_row, hat_row)]


def _merge_machine(
    keys: list[int], hat_row: list[int], mu: int, ord_zero: list[int], ord_max: list[int]
) -> list[int]:
    """Merge the two restricted extreme orderings into the nondecreasing
    order of ``keys`` (ties by job index); 0-based, O(n)."""
    above = [j for j in ord_zero if hat_row[j] > mu]
    below = [j for j in ord_max if hat_row[j] <= mu]
    out = []
    x = y = 0
    while x < len(above) and y < len(below):
        a, b = above[x], below[y]
        if (keys[a], a) <= (keys[b], b):
            out.append(a)
            x += 1
        else:
            out.append(b)
            y += 1
    out.extend(above[x:])
    out.extend(below[y:])
    return out


def merge_orderings(
    inst: RobustInstance,
    machine: int,
    mu: int,
    pi_zero: Sequence[int] | None = None,
    pi_max: Sequence[int] | None = None,
) -> tuple[int, ...]:
    """Nondecreasing ordering of one machine's transformed row, by merging.

    Jobs whose deviation exceeds the threshold keep their relative order
    from ``pi_zero`` (the ordering of ``p_bar + p_hat``), the rest keep
    theirs from ``pi_max`` (the ordering of ``p_bar``); one linear merge by
    transformed value (ties by job number) combines them.  Equals a stable
    sort of the transformed row.

    Parameters
    ----------
    machine : int, 1-based.
    mu : int, the threshold for this machine.
    pi_zero, pi_max : optional 1-based extreme orderings (computed if
        omitted).
    """
    if not 1 <= machine <= inst.m:
        raise InputError(f"machine must be in 1..{inst.m}, got {machine}")
    if mu < 0:
        raise InputError("mu must be nonnegative")
    bar_row = inst.p_bar[machine - 1].tolist()
    hat_row = inst.p_hat[machine - 1].tolist()
    deviated = [b + h for b, h in zip(bar_row, hat_row)]
    if pi_zero is None:
        oz = stable_order(deviated).tolist()
    else:
        oz = as_permutation(pi_zero, inst.n).tolist()
        _check_ordering(deviated, oz, "pi_zero")
    if pi_max is None:
        om = stable_order(bar_row).tolist()
    else:
        om = as_permutation(pi_max, inst.n).tolist()
        _check_ordering(bar_row, om, "pi_max")
    keys = _transformed_row(bar_row, hat_row, int(mu))
    return tuple(j + 1 for j in _merge_machine(keys, hat_row, int(mu), oz, om))


def _aggregate_extremes(bar_lo, hat_lo, bar_hi, hat_hi) -> dict[tuple[bool, bool], list[int]]:
    """The four extreme orderings of an aggregated row, keyed by which of
    the two machines is above its threshold."""
    n = len(bar_lo)
    base = [bar_lo[j] + bar_hi[j] for j in range(n)]
    return {
        (True, True): stable_order([base[j] + hat_lo[j] + hat_hi[j] for j in range(n)]).tolist(),
        (True, False): stable_order([base[j] + hat_lo[j] for j in range(n)]).tolist(),
        (False, True): stable_order([base[j] + hat_hi[j] for j in range(n)]).tolist(),
        (False, False): stable_order(base).tolist(),
    }


def _merge_aggregate(
    keys: list[int],
    hat_lo: list[int],
    hat_hi: list[int],
    mu_lo: int,
    mu_hi: int,
    extremes: dict[tuple[bool, bool], list[int]],
) -> list[int]:
    """Four-way merge of the restricted extreme orderings into the
    nondecreasing order of the transformed aggregate ``keys``; 0-based."""
    parts = []
    for pattern, order in extremes.items():
        restricted = [
            j for j in order if (hat_lo[j] > mu_lo, hat_hi[j] > mu_hi) == pattern
        ]
        parts.append(restricted)
    return list(heapq.merge(*parts, key=lambda j: (keys[j], j)))


def merge_aggregate_orderings(
    inst: RobustInstance,
    aggregate: int,
    mu_pair: tuple[int, int],
) -> tuple[int, ...]:
    """Nondecreasing ordering of an aggregated transformed row (m=3).

    Aggregate 1 sums machines 1+2, aggregate 2 sums machines 2+3; the
    transformed value of job j is the sum of the two machines' transformed
    times under ``mu_pair``.  Jobs fall into four groups by which of the
    two thresholds their deviations exceed; each group keeps its relative
    order from the matching precomputed extreme ordering and a four-way
    merge combines them.  Equals a stable sort of the transformed
    aggregate row.
    """
    if inst.m != 3:
        raise InputError(f"aggregate orderings require m=3, got m={inst.m}")
    if aggregate not in (1, 2):
        raise InputError(f"aggregate must be 1 or 2, got {aggregate}")
    lo = aggregate - 1
    mu_lo, mu_hi = (int(mu_pair[0]), int(mu_pair[1]))
    if mu_lo < 0 or mu_hi < 0:
        raise InputError("mu values must be nonnegative")
    bar_lo, hat_lo = inst.p_bar[lo].tolist(), inst.p_hat[lo].tolist()
    bar_hi, hat_hi = inst.p_bar[lo + 1].tolist(), inst.p_hat[lo + 1].tolist()
    lo_keys = _transformed_row(bar_lo, hat_lo, mu_lo)
    hi_keys = _transformed_row(bar_hi, hat_hi, mu_hi)
    keys = [a + b for a, b in zip(lo_keys, hi_keys)]
    extremes = _aggregate_extremes(bar_lo, hat_lo, bar_hi, hat_hi)
    return tuple(j + 1 for j in _merge_aggregate(keys, hat_lo, hat_hi, mu_lo, mu_hi, extremes))


# ---------------------------------------------------------------------------
# two machines


def robust_johnson(inst: RobustInstance, threads: int | None = 1) -> SolveReport:
    """Two-machine robust solve: Johnson on every grid candidate, O(n^3).

    Extreme orderings are sorted once; each candidate's transformed
    orderings come from linear merges, and the per-candidate Johnson step
    and makespan are evaluated vectorized across one machine's candidate
    axis.  Ties on the objective resolve to the lexicographically first
    ``mu``.
    """
    started = perf_counter()
    threads = _resolve_threads(threads)
    if inst.m != 2:
        raise InputError(f"robust_johnson requires m=2, got m={inst.m}")
    n = inst.n
    gam = inst.effective_gamma

    cands: list[list[int]] = [candidate_values(inst, i) for i in (1, 2)]
    rows_t: list[np.ndarray] = []
    orders_t: list[np.ndarray] = []
    for i in range(2):
        bar_row = inst.p_bar[i].tolist()
        hat_row = inst.p_hat[i].tolist()
        ord_zero = stable_order([b + h for b, h in zip(bar_row, hat_row)]).tolist()
        ord_max = stable_order(bar_row).tolist()
        t = np.empty((len(cands[i]), n), dtype=np.int64)
        o = np.empty((len(cands[i]), n), dtype=np.int64)
        for g, mu in enumerate(cands[i]):
            keys = _transformed_row(bar_row, hat_row, mu)
            t[g] = keys
            o[g] = _merge_machine(keys, hat_row, mu, ord_zero, ord_max)
        rows_t.append(t)
        orders_t.append(o)

    t1_all, t2_all = rows_t
    g1_count, g2_count = len(cands[0]), len(cands[1])
    rank1 = np.empty_like(orders_t[0])
    rank1[np.arange(g1_count)[:, None], orders_t[0]] = np.arange(n)[None, :]
    rank2 = np.empty_like(orders_t[1])
    rank2[np.arange(g2_count)[:, None], orders_t[1]] = np.arange(n)[None, :]
    rev_rank2 = (n - 1) - rank2  # position in the reversed second ordering
    penalty2 = gam[1] * np.asarray(cands[1], dtype=np.int64)
    total2 = t2_all.sum(axis=1)

    def johnson_keys(g1: int) -> np.ndarray:
        in_first = t1_all[g1][None, :] <= t2_all
        return np.where(in_first, rank1[g1][None, :], n + rev_rank2)

    def sweep(part: range):
        best = None
        for g1 in part:
            sig = np.argsort(johnson_keys(g1), axis=1, kind="stable")
            a = np.cumsum(t1_all[g1][sig], axis=1)
            b = np.take_along_axis(t2_all, sig, axis=1)
            tails = total2[:, None] - np.cumsum(b, axis=1) + b
            makespans = (a + tails).max(axis=1)
            objs = makespans + gam[0] * cands[0][g1] + penalty2
            g2 = int(np.argmin(objs))
            cand = (int(objs[g2]), g1, g2)
            if best is None or cand < best:
                best = cand
        return best

    results = [r for r in _map_chunked(sweep, g1_count, threads) if r is not None]
    bound, g1, g2 = min(results)
    sig_row = np.argsort(johnson_keys(g1)[g2], kind="stable")
    sigma = tuple(int(j) + 1 for j in sig_row)
    certified, _ = worst_case_makespan(inst, sigma)
    return SolveReport(
        algorithm="robust-johnson",
        sigma=sigma,
        bound=int(bound),
        certified=int(certified),
        mu_star=(cands[0][g1], cands[1][g2]),
        candidates_evaluated=g1_count * g2_count,
        wall_time=perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# three machines


def robust_chen(inst: RobustInstance, threads: int | None = 1) -> SolveReport:
    """Three-machine robust solve via the 5/3-approximation, O(n^4).

    Same sweep as :func:`robust_johnson` over the three-dimensional grid;
    the aggregated orderings for each candidate come from four-way merges
    of eight precomputed extreme orderings.  The middle machine's threshold
    is the outer loop so each aggregated ordering is merged once and reused
    across the whole inner plane.
    """
    started = perf_counter()
    threads = _resolve_threads(threads)
    if inst.m != 3:
        raise InputError(f"robust_chen requires m=3, got m={inst.m}")
    n = inst.n
    gam = inst.effective_gamma
    bar = [inst.p_bar[i].tolist() for i in range(3)]
    hat = [inst.p_hat[i].tolist() for i in range(3)]
    cands = [candidate_values(inst, i) for i in (1, 2, 3)]
    extremes_q1 = _aggregate_extremes(bar[0], hat[0], bar[1], hat[1])
    extremes_q2 = _aggregate_extremes(bar[1], hat[1], bar[2], hat[2])

    trans = [[_transformed_row(bar[i], hat[i], mu) for mu in cands[i]] for i in range(3)]

    def sweep(part: range):
        best = None
        for i2 in part:
            mu2 = cands[1][i2]
            t2 = trans[1][i2]
            q1_orders = []
            for i1, t1 in enumerate(trans[0]):
                keys = [a + b for a, b in zip(t1, t2)]
                q1_orders.append(
                    _merge_aggregate(keys, hat[0], hat[1], cands[0][i1], mu2, extremes_q1)
                )
            q2_orders = []
            for i3, t3 in enumerate(trans[2]):
                keys = [a + b for a, b in zip(t2, t3)]
                q2_orders.append(
                    _merge_aggregate(keys, hat[1], hat[2], mu2, cands[2][i3], extremes_q2)
                )
            pen2 = gam[1] * mu2
            for i1, t1 in enumerate(trans[0]):
                pen12 = pen2 + gam[0] * cands[0][i1]
                oq1 = q1_orders[i1]
                for i3, t3 in enumerate(trans[2]):
                    sigma0, value = _chen_core(t1, t2, t3, oq1, q2_orders[i3])
                    obj = value + pen12 + gam[2] * cands[2][i3]
                    cand = (obj, i1, i2, i3, tuple(sigma0))
                    if best is None or cand[:4] < best[:4]:
                        best = cand
        return best

    results = [r for r in _map_chunked(sweep, len(cands[1]), threads) if r is not None]
    obj, i1, i2, i3, sigma0 = min(results, key=lambda r: r[:4])
    sigma = tuple(j + 1 for j in sigma0)
    certified, _ = worst_case_makespan(inst, sigma)
    return SolveReport(
        algorithm="robust-chen",
        sigma=sigma,
        bound=int(obj),
        certified=int(certified),
        mu_star=(cands[0][i1], cands[1][i2], cands[2][i3]),
        candidates_evaluated=len(cands[0]) * len(cands[1]) * len(cands[2]),
        wall_time=perf_counter() - started,
    )
