"""Min-max robust permutation flowshop scheduling under budgeted uncertainty."""

from .errors import InnerSolverError, InputError, OracleLimitError, ParseError
from .instances import GeneratorConfig, generate_instance, parse_instance, render_instance
from .nominal import (
    chen_three_machine,
    compute_makespan,
    johnson,
    makespan_by_tuples,
    stable_order,
)
from .oracle import OracleBudget, brute_force_nominal, brute_force_robust, enumerate_scenarios
from .robust import (
    RobustInstance,
    adversary_value,
    candidate_grid,
    candidate_values,
    eq3_objective,
    realize_scenario,
    transform_instance,
    worst_case_makespan,
)
from .solvers import (
    NominalSolver,
    SolveReport,
    brute_force_solver,
    chen_solver,
    johnson_solver,
    merge_aggregate_orderings,
    merge_orderings,
    robust_chen,
    robust_johnson,
    solve_by_reduction,
)

__version__ = "0.1.0"
