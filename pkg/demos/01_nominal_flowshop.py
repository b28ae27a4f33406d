"""Nominal flowshop basics: the makespan recurrence, critical crossing
tuples, Johnson's rule for two machines, and the three-machine
approximation.

Run:  python demos/01_nominal_flowshop.py
"""

import numpy as np

from robust_flowshop import (
    brute_force_nominal,
    chen_three_machine,
    compute_makespan,
    johnson,
    makespan_by_tuples,
)

# Four jobs on two machines.  Rows are machines, columns are jobs.
p = np.array([
    [4, 2, 7, 3],
    [3, 8, 2, 5],
])

print("processing times:")
print(p)

# Any job order gives a schedule; the makespan follows the classical
# recurrence C[i][j] = max(C[i][j-1], C[i-1][j]) + p[i][sigma(j)].
sigma = (1, 2, 3, 4)
print(f"\nmakespan of {sigma}: {compute_makespan(p, sigma)}")

# The same number is the longest path through the machine/position grid.
# A path is described by where it crosses from machine 1 to machine 2.
value, crossing = makespan_by_tuples(p, sigma)
print(f"longest-path value: {value} with crossing positions {crossing}")

# Johnson's rule builds an optimal order in one pass over two sorted views.
best = johnson(p)
print(f"\nJohnson schedule: {best} with makespan {compute_makespan(p, best)}")

oracle_sigma, oracle_value = brute_force_nominal(p)
print(f"brute force over all 4! orders: {oracle_sigma} with makespan {oracle_value}")
assert compute_makespan(p, best) == oracle_value

# Three machines: exact solving is hard, but aggregating neighboring
# machines and repairing heavy middle loads stays within 5/3 of optimal.
q = np.array([
    [4, 2, 7, 3, 6],
    [3, 8, 2, 5, 4],
    [6, 1, 5, 2, 3],
])
approx = chen_three_machine(q)
_, best_value = brute_force_nominal(q)
print(f"\nthree machines: approximation gives {approx}")
print(f"makespan {compute_makespan(q, approx)} vs optimum {best_value}")
