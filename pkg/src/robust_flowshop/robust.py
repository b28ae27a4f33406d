"""Budgeted uncertainty: instances, the adversary, and dual candidates.

A robust instance carries nominal times ``p_bar``, deviations ``p_hat`` and
per-machine deviation budgets ``gamma``.  A scenario switches at most
``gamma[i]`` entries of machine row ``i`` from nominal to deviated
(``p_bar + p_hat``).  For a fixed schedule the adversary's best response
decomposes over critical-path crossing tuples: on each machine segment it
simply deviates the largest ``gamma[i]`` entries, which is what
:func:`adversary_value` evaluates and :func:`worst_case_makespan` maximizes.

Each dual candidate ``mu`` (one threshold per machine, drawn from the
deviation values and zero) induces a plain nominal instance with times
``p_bar + max(p_hat - mu, 0)``; the nominal makespan of that instance plus
the penalty ``sum(gamma[i] * mu[i])`` upper-bounds the worst case of any
schedule (weak LP duality), which is the basis of the reduction solvers.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .errors import InputError
from .nominal import _makespan_rows, as_permutation, as_processing_matrix, critical_tuples

__all__ = [
    "RobustInstance",
    "transform_instance",
    "candidate_values",
    "candidate_grid",
    "adversary_value",
    "worst_case_makespan",
    "eq3_objective",
    "realize_scenario",
]


@dataclass(frozen=True, eq=False)
class RobustInstance:
    """A robust flowshop instance (immutable).

    Attributes
    ----------
    p_bar, p_hat : ndarray of int64, shape (m, n)
        Nominal processing times and deviation magnitudes.
    gamma : tuple of int
        Per-machine deviation budgets; values above n are harmless (the
        effective budget is ``min(gamma[i], n)``).
    name, seed : optional metadata carried through file round-trips.
    """

    p_bar: np.ndarray
    p_hat: np.ndarray
    gamma: tuple[int, ...]
    name: str | None = None
    seed: int | None = None

    def __post_init__(self):
        bar = as_processing_matrix(self.p_bar)
        hat = as_processing_matrix(self.p_hat)
        if bar.shape != hat.shape:
            raise InputError(f"p_bar shape {bar.shape} != p_hat shape {hat.shape}")
        as_processing_matrix(bar + hat)  # deviated values must fit the 64-bit budget too
        gam = tuple(int(g) for g in self.gamma)
        if len(gam) != bar.shape[0]:
            raise InputError(f"gamma must have one entry per machine ({bar.shape[0]}), got {len(gam)}")
        if any(g < 0 for g in gam):
            raise InputError("gamma entries must be nonnegative")
        object.__setattr__(self, "p_bar", bar)
        object.__setattr__(self, "p_hat", hat)
        object.__setattr__(self, "gamma", gam)

    @property
    def m(self) -> int:
        return self.p_bar.shape[0]

    @property
    def n(self) -> int:
        return self.p_bar.shape[1]

    @property
    def effective_gamma(self) -> tuple[int, ...]:
        """Budgets clamped to the job count; value-preserving."""
        return tuple(min(g, self.n) for g in self.gamma)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RobustInstance):
            return NotImplemented
        return (
            np.array_equal(self.p_bar, other.p_bar)
            and np.array_equal(self.p_hat, other.p_hat)
            and self.gamma == other.gamma
            and self.name == other.name
            and self.seed == other.seed
        )


def _check_mu(inst: RobustInstance, mu: Sequence[int]) -> tuple[int, ...]:
    vec = tuple(int(v) for v in mu)
    if len(vec) != inst.m:
        raise InputError(f"mu must have one entry per machine ({inst.m}), got {len(vec)}")
    if any(v < 0 for v in vec):
        raise InputError("mu entries must be nonnegative")
    return vec


def transform_instance(inst: RobustInstance, mu: Sequence[int]) -> np.ndarray:
    """Nominal matrix ``p_bar + max(p_hat - mu_i, 0)`` induced by ``mu``."""
    vec = np.asarray(_check_mu(inst, mu), dtype=np.int64)
    out = inst.p_bar + np.maximum(inst.p_hat - vec[:, None], 0)
    out.setflags(write=False)
    return out


def candidate_values(inst: RobustInstance, machine: int) -> list[int]:
    """Sorted candidate thresholds for one machine (1-based): 0 plus its
    deviation values."""
    if not 1 <= machine <= inst.m:
        raise InputError(f"machine must be in 1..{inst.m}, got {machine}")
    vals = {0}
    vals.update(int(v) for v in inst.p_hat[machine - 1])
    return sorted(vals)


def candidate_grid(inst: RobustInstance) -> list[tuple[int, ...]]:
    """All dual candidates, lexicographically ascending.

    The cross product of per-machine threshold sets; duplicates within a
    machine are removed (equal thresholds induce identical transformed
    instances), so the grid has at most (n+1)^m points.
    """
    per_machine = [candidate_values(inst, i) for i in range(1, inst.m + 1)]
    return list(product(*per_machine))


def _check_tuple(inst: RobustInstance, k: Sequence[int]) -> tuple[int, ...]:
    tup = tuple(int(v) for v in k)
    if len(tup) != inst.m:
        raise InputError(f"crossing tuple must have {inst.m} entries, got {len(tup)}")
    if tup[-1] != inst.n or tup[0] < 1 or any(a > b for a, b in zip(tup, tup[1:])):
        raise InputError(f"invalid crossing tuple {tup} for n={inst.n}")
    return tup


def _top_sum(values, cap: int) -> int:
    """Sum of the ``cap`` largest values (all of them if cap exceeds len)."""
    if cap <= 0:
        return 0
    if cap >= len(values):
        return int(sum(values))
    return int(sum(heapq.nlargest(cap, values)))


def _prefix_top_sums(values: list[int], cap: int) -> list[int]:
    """out[t] = sum of the ``cap`` largest among the first ``t`` values."""
    out = [0] * (len(values) + 1)
    if cap <= 0:
        return out
    heap: list[int] = []
    run = 0
    for t, v in enumerate(values, 1):
        if len(heap) < cap:
            heapq.heappush(heap, v)
            run += v
        elif v > heap[0]:
            run += v - heapq.heapreplace(heap, v)
        out[t] = run
    return out


def adversary_value(inst: RobustInstance, sigma: Sequence[int], k: Sequence[int]) -> int:
    """Worst-case length of the path with crossing tuple ``k`` under ``sigma``.

    Per machine segment, the nominal sum plus the largest ``gamma[i]``
    deviations; this equals the segment LP optimum since the relaxation has
    an integral top-budget solution.
    """
    order = as_permutation(sigma, inst.n)
    tup = _check_tuple(inst, k)
    gam = inst.effective_gamma
    bar = inst.p_bar[:, order]
    hat = inst.p_hat[:, order]
    total = 0
    lo = 1
    for i, hi in enumerate(tup):
        seg = slice(lo - 1, hi)
        total += int(bar[i, seg].sum()) + _top_sum(hat[i, seg].tolist(), gam[i])
        lo = hi
    return total


def _worst_case_m1(bar_row, hat_row, cap: int) -> tuple[int, tuple[int, ...]]:
    n = len(bar_row)
    return int(sum(bar_row)) + _top_sum(hat_row, cap), (n,)


def _worst_case_m2(bar, hat, gam, order) -> tuple[int, tuple[int, ...]]:
    """Sweep the single crossing position, maintaining prefix/suffix top
    sums incrementally; O(n log gamma)."""
    n = len(order)
    a_bar = [bar[0][j] for j in order]
    a_hat = [hat[0][j] for j in order]
    b_bar = [bar[1][j] for j in order]
    b_hat = [hat[1][j] for j in order]
    pre_a = [0] * (n + 1)
    for t in range(n):
        pre_a[t + 1] = pre_a[t] + a_bar[t]
    suf_b = [0] * (n + 2)
    for t in range(n, 0, -1):
        suf_b[t] = suf_b[t + 1] + b_bar[t - 1]
    top_a = _prefix_top_sums(a_hat, gam[0])
    top_b_rev = _prefix_top_sums(b_hat[::-1], gam[1])
    best = -1
    best_k1 = 1
    for k1 in range(1, n + 1):
        v = pre_a[k1] + top_a[k1] + suf_b[k1] + top_b_rev[n - k1 + 1]
        if v > best:
            best, best_k1 = v, k1
    return best, (best_k1, n)


def _worst_case_m3(bar, hat, gam, order) -> tuple[int, tuple[int, ...]]:
    """Enumerate (k1, k2) with an incremental top-budget heap on the middle
    machine; O(n^2 log gamma)."""
    n = len(order)
    a_bar = [bar[0][j] for j in order]
    a_hat = [hat[0][j] for j in order]
    b_bar = [bar[1][j] for j in order]
    b_hat = [hat[1][j] for j in order]
    c_bar = [bar[2][j] for j in order]
    c_hat = [hat[2][j] for j in order]
    pre_a = [0] * (n + 1)
    pre_b = [0] * (n + 1)
    for t in range(n):
        pre_a[t + 1] = pre_a[t] + a_bar[t]
        pre_b[t + 1] = pre_b[t] + b_bar[t]
    suf_c = [0] * (n + 2)
    for t in range(n, 0, -1):
        suf_c[t] = suf_c[t + 1] + c_bar[t - 1]
    top_a = _prefix_top_sums(a_hat, gam[0])
    top_c_rev = _prefix_top_sums(c_hat[::-1], gam[2])
    cap_b = gam[1]
    best = -1
    best_k = (1, 1, n)
    for k1 in range(1, n + 1):
        part1 = pre_a[k1] + top_a[k1]
        heap: list[int] = []
        run = 0
        for k2 in range(k1, n + 1):
            v = b_hat[k2 - 1]
            if cap_b > 0:
                if len(heap) < cap_b:
                    heapq.heappush(heap, v)
                    run += v
                elif v > heap[0]:
                    run += v - heapq.heapreplace(heap, v)
            total = part1 + (pre_b[k2] - pre_b[k1 - 1]) + run + suf_c[k2] + top_c_rev[n - k2 + 1]
            if total > best:
                best = total
                best_k = (k1, k2, n)
    return best, best_k


def _worst_case_general(bar, hat, gam, order) -> tuple[int, tuple[int, ...]]:
    """Tuple enumeration with per-segment selection; fine at desk scale."""
    m = len(bar)
    n = len(order)
    bar_rows = [[bar[i][j] for j in order] for i in range(m)]
    hat_rows = [[hat[i][j] for j in order] for i in range(m)]
    prefixes = []
    for row in bar_rows:
        pre = [0] * (n + 1)
        for t in range(n):
            pre[t + 1] = pre[t] + row[t]
        prefixes.append(pre)
    best = -1
    best_k: tuple[int, ...] = ()
    for k in critical_tuples(m, n):
        total = 0
        lo = 1
        for i, hi in enumerate(k):
            total += prefixes[i][hi] - prefixes[i][lo - 1]
            total += _top_sum(hat_rows[i][lo - 1:hi], gam[i])
            lo = hi
        if total > best:
            best, best_k = total, k
    return best, best_k


def _worst_case(bar, hat, gam, order) -> tuple[int, tuple[int, ...]]:
    m = len(bar)
    if m == 1:
        return _worst_case_m1([bar[0][j] for j in order], [hat[0][j] for j in order], gam[0])
    if m == 2:
        return _worst_case_m2(bar, hat, gam, order)
    if m == 3:
        return _worst_case_m3(bar, hat, gam, order)
    return _worst_case_general(bar, hat, gam, order)


def worst_case_makespan(inst: RobustInstance, sigma: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Worst realized makespan of ``sigma`` over all scenarios.

    Returns ``(value, k)`` with the lexicographically smallest maximizing
    crossing tuple.  Equals the exhaustive maximum over scenarios of
    :func:`~robust_flowshop.nominal.compute_makespan` on the realized
    matrix (asserted against the scenario oracle in the test suite).
    """
    order = as_permutation(sigma, inst.n).tolist()
    return _worst_case(
        inst.p_bar.tolist(), inst.p_hat.tolist(), inst.effective_gamma, order
    )


def eq3_objective(inst: RobustInstance, mu: Sequence[int], sigma: Sequence[int]) -> int:
    """Dual upper bound: transformed makespan plus the budget penalty.

    Always at least ``worst_case_makespan(inst, sigma)`` (weak duality);
    equality at some grid candidate cannot be relied on, see the
    reduction-solver notes.
    """
    vec = _check_mu(inst, mu)
    order = as_permutation(sigma, inst.n).tolist()
    trans = transform_instance(inst, vec)
    penalty = sum(g * v for g, v in zip(inst.effective_gamma, vec))
    return int(_makespan_rows(trans.tolist(), order)) + penalty


def realize_scenario(inst: RobustInstance, delta) -> np.ndarray:
    """Processing-time matrix of one scenario (binary deviation matrix)."""
    d = np.asarray(delta)
    if d.shape != inst.p_bar.shape:
        raise InputError(f"delta shape {d.shape} != instance shape {inst.p_bar.shape}")
    if not np.isin(d, (0, 1)).all():
        raise InputError("delta entries must be 0 or 1")
    row_sums = d.sum(axis=1)
    for i, (s, g) in enumerate(zip(row_sums, inst.gamma)):
        if s > g:
            raise InputError(f"machine {i + 1} deviates {int(s)} jobs, budget is {g}")
    out = inst.p_bar + d.astype(np.int64) * inst.p_hat
    out.setflags(write=False)
    return out
