"""Budgeted uncertainty: scenarios, the adversary, and the dual grid.

Each machine i may see at most gamma[i] of its jobs slow down from p_bar to
p_bar + p_hat.  For a fixed schedule the adversary picks the deviations
that hurt most; every dual threshold vector mu gives a plain nominal
instance whose makespan plus a penalty upper-bounds that worst case.

Run:  python demos/02_adversary_and_duality.py
"""

from robust_flowshop import (
    RobustInstance,
    candidate_grid,
    compute_makespan,
    enumerate_scenarios,
    eq3_objective,
    realize_scenario,
    transform_instance,
    worst_case_makespan,
)

inst = RobustInstance(
    p_bar=[[2, 3], [4, 1]],
    p_hat=[[1, 2], [0, 5]],
    gamma=(1, 1),
)
print("nominal times:\n", inst.p_bar)
print("deviations:\n", inst.p_hat)
print("budgets:", inst.gamma)

# One concrete scenario: job 1 slows on machine 1, job 2 on machine 2.
scenario = [[1, 0], [0, 1]]
realized = realize_scenario(inst, scenario)
print("\nrealized times for one scenario:\n", realized)
print("its makespan under (1,2):", compute_makespan(realized, (1, 2)))

# The adversary's best response, two ways: a top-budget segment sweep and
# plain enumeration of all scenarios.
for sigma in ((1, 2), (2, 1)):
    value, crossing = worst_case_makespan(inst, sigma)
    assert value == enumerate_scenarios(inst, sigma)
    print(f"\nworst case of {sigma}: {value} (critical crossings {crossing})")

# Dual candidates: per machine, zero plus its deviation magnitudes.
grid = candidate_grid(inst)
print("\ndual candidate grid:", grid)
sigma = (1, 2)
worst = worst_case_makespan(inst, sigma)[0]
for mu in grid:
    trans = transform_instance(inst, mu)
    obj = eq3_objective(inst, mu, sigma)
    print(f"  mu={mu}: transformed makespan {compute_makespan(trans, sigma):3d} "
          f"+ penalty -> bound {obj:3d}  (worst case {worst})")

# Every bound is valid (weak duality) and here the best one is tight.
assert all(eq3_objective(inst, mu, sigma) >= worst for mu in grid)
assert min(eq3_objective(inst, mu, sigma) for mu in grid) == worst

# Tightness is not guaranteed, though.  With crossed large deviations the
# best dual bound stays strictly above the true worst case:
gap = RobustInstance(
    p_bar=[[0, 0, 0], [0, 0, 0]],
    p_hat=[[0, 9, 10], [10, 9, 0]],
    gamma=(1, 1),
)
worst = worst_case_makespan(gap, (1, 2, 3))[0]
best_bound = min(eq3_objective(gap, mu, (1, 2, 3)) for mu in candidate_grid(gap))
print(f"\ngap instance: worst case {worst}, best dual bound {best_bound}")
