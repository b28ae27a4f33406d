import random

import numpy as np
import pytest

from robust_flowshop import (
    InputError,
    RobustInstance,
    adversary_value,
    candidate_grid,
    candidate_values,
    compute_makespan,
    enumerate_scenarios,
    eq3_objective,
    realize_scenario,
    transform_instance,
    worst_case_makespan,
)

from conftest import random_instance, random_matrix


# ---------------------------------------------------------------------------
# RobustInstance


def test_instance_validation():
    with pytest.raises(InputError):
        RobustInstance(p_bar=[[1, 2]], p_hat=[[1, 2, 3]], gamma=(1,))
    with pytest.raises(InputError):
        RobustInstance(p_bar=[[1, 2]], p_hat=[[1, 2]], gamma=(1, 1))
    with pytest.raises(InputError):
        RobustInstance(p_bar=[[1, 2]], p_hat=[[1, 2]], gamma=(-1,))


def test_instance_is_immutable(running_example):
    with pytest.raises(ValueError):
        running_example.p_bar[0, 0] = 99


def test_effective_gamma_clamps_to_job_count():
    inst = RobustInstance(p_bar=[[1, 2]], p_hat=[[3, 4]], gamma=(9,))
    assert inst.gamma == (9,)
    assert inst.effective_gamma == (2,)


# ---------------------------------------------------------------------------
# transform_instance


def test_transform_basic_entry():
    inst = RobustInstance(p_bar=[[5]], p_hat=[[3]], gamma=(1,))
    assert transform_instance(inst, (1,))[0, 0] == 7


def test_transform_zero_mu_is_box_upper_bound(running_example):
    assert np.array_equal(
        transform_instance(running_example, (0, 0)),
        running_example.p_bar + running_example.p_hat,
    )


def test_transform_large_mu_recovers_nominal(running_example):
    mu = tuple(int(row.max()) for row in running_example.p_hat)
    assert np.array_equal(transform_instance(running_example, mu), running_example.p_bar)


# ---------------------------------------------------------------------------
# candidate grid


def test_grid_of_running_example(running_example):
    grid = candidate_grid(running_example)
    assert grid == [(0, 0), (0, 5), (1, 0), (1, 5), (2, 0), (2, 5)]


def test_grid_all_zero_deviations():
    inst = RobustInstance(p_bar=[[1, 2], [3, 4]], p_hat=[[0, 0], [0, 0]], gamma=(1, 1))
    assert candidate_grid(inst) == [(0, 0)]


def test_grid_deduplicates_per_machine():
    inst = RobustInstance(p_bar=[[1, 1, 1]], p_hat=[[4, 4, 7]], gamma=(2,))
    assert candidate_values(inst, 1) == [0, 4, 7]
    assert candidate_grid(inst) == [(0,), (4,), (7,)]


def test_grid_size_bound():
    rng = random.Random(10)
    for _ in range(50):
        inst = random_instance(rng, rng.randint(1, 3), rng.randint(1, 6))
        assert len(candidate_grid(inst)) <= (inst.n + 1) ** inst.m


# ---------------------------------------------------------------------------
# adversary_value / worst_case_makespan


def test_adversary_value_running_example(running_example):
    assert adversary_value(running_example, (1, 2), (1, 2)) == 13


def test_adversary_value_zero_budget_is_nominal_path(running_example):
    inst = RobustInstance(
        p_bar=running_example.p_bar, p_hat=running_example.p_hat, gamma=(0, 0)
    )
    assert adversary_value(inst, (1, 2), (1, 2)) == 2 + 4 + 1


def test_adversary_value_full_budget_is_box_path(running_example):
    inst = RobustInstance(
        p_bar=running_example.p_bar, p_hat=running_example.p_hat, gamma=(2, 2)
    )
    assert adversary_value(inst, (1, 2), (1, 2)) == 3 + 4 + 6


def test_adversary_rejects_bad_tuples(running_example):
    with pytest.raises(InputError):
        adversary_value(running_example, (1, 2), (2, 1))
    with pytest.raises(InputError):
        adversary_value(running_example, (1, 2), (1, 1))  # must end at n


def test_worst_case_running_example(running_example):
    assert worst_case_makespan(running_example, (1, 2)) == (13, (1, 2))
    value, k = worst_case_makespan(running_example, (2, 1))
    assert value == 15
    assert k == (1, 2)


def test_worst_case_zero_budget_equals_nominal(running_example):
    inst = RobustInstance(
        p_bar=running_example.p_bar, p_hat=running_example.p_hat, gamma=(0, 0)
    )
    for sigma in ((1, 2), (2, 1)):
        assert worst_case_makespan(inst, sigma)[0] == compute_makespan(inst.p_bar, sigma)


def test_worst_case_equals_scenario_enumeration_fuzz():
    rng = random.Random(11)
    for _ in range(250):
        inst = random_instance(rng, rng.randint(1, 3), rng.randint(1, 6))
        sigma = list(range(1, inst.n + 1))
        rng.shuffle(sigma)
        value, k = worst_case_makespan(inst, sigma)
        assert value == enumerate_scenarios(inst, sigma)
        assert value == adversary_value(inst, sigma, k)


def test_worst_case_maximizer_is_lex_smallest():
    rng = random.Random(12)
    from robust_flowshop.nominal import critical_tuples

    for _ in range(150):
        inst = random_instance(rng, rng.randint(1, 3), rng.randint(1, 5))
        sigma = list(range(1, inst.n + 1))
        rng.shuffle(sigma)
        value, k = worst_case_makespan(inst, sigma)
        maximizers = [
            tup
            for tup in critical_tuples(inst.m, inst.n)
            if adversary_value(inst, sigma, tup) == value
        ]
        assert k == maximizers[0]


def test_worst_case_monotone_in_inputs():
    rng = random.Random(13)
    for _ in range(200):
        inst = random_instance(rng, rng.randint(1, 3), rng.randint(1, 6))
        sigma = list(range(1, inst.n + 1))
        rng.shuffle(sigma)
        base = worst_case_makespan(inst, sigma)[0]
        i, j = rng.randrange(inst.m), rng.randrange(inst.n)
        bumped_bar = inst.p_bar.copy()
        bumped_bar[i, j] += rng.randint(1, 4)
        assert worst_case_makespan(
            RobustInstance(bumped_bar, inst.p_hat, inst.gamma), sigma
        )[0] >= base
        bumped_hat = inst.p_hat.copy()
        bumped_hat[i, j] += rng.randint(1, 4)
        assert worst_case_makespan(
            RobustInstance(inst.p_bar, bumped_hat, inst.gamma), sigma
        )[0] >= base
        bumped_gamma = list(inst.gamma)
        bumped_gamma[i] += 1
        assert worst_case_makespan(
            RobustInstance(inst.p_bar, inst.p_hat, tuple(bumped_gamma)), sigma
        )[0] >= base


def test_budget_clamp_never_changes_worst_case():
    rng = random.Random(14)
    for _ in range(100):
        inst = random_instance(rng, rng.randint(1, 3), rng.randint(1, 5))
        inflated = RobustInstance(
            inst.p_bar, inst.p_hat, tuple(g + inst.n for g in inst.gamma)
        )
        clamped = RobustInstance(inst.p_bar, inst.p_hat, inflated.effective_gamma)
        sigma = list(range(1, inst.n + 1))
        rng.shuffle(sigma)
        assert worst_case_makespan(inflated, sigma) == worst_case_makespan(clamped, sigma)


def test_worst_case_on_four_machines_matches_scenarios():
    rng = random.Random(15)
    for _ in range(25):
        inst = random_instance(rng, 4, rng.randint(1, 4), p_top=9, h_top=9, gamma_cap=2)
        sigma = list(range(1, inst.n + 1))
        rng.shuffle(sigma)
        assert worst_case_makespan(inst, sigma)[0] == enumerate_scenarios(inst, sigma)


# ---------------------------------------------------------------------------
# eq3_objective


def test_eq3_at_zero_mu_is_box_makespan(running_example):
    # transformed matrix [[3,5],[4,6]]; recurrence gives 14, above the
    # true worst case 13
    assert eq3_objective(running_example, (0, 0), (1, 2)) == 14
    assert worst_case_makespan(running_example, (1, 2))[0] == 13


def test_eq3_zero_budget_large_mu_is_nominal(running_example):
    inst = RobustInstance(
        p_bar=running_example.p_bar, p_hat=running_example.p_hat, gamma=(0, 0)
    )
    mu = tuple(int(row.max()) for row in inst.p_hat)
    assert eq3_objective(inst, mu, (1, 2)) == compute_makespan(inst.p_bar, (1, 2))


def test_eq3_weak_duality_everywhere_on_grid():
    rng = random.Random(16)
    for _ in range(150):
        inst = random_instance(rng, rng.randint(1, 3), rng.randint(1, 5))
        sigma = list(range(1, inst.n + 1))
        rng.shuffle(sigma)
        worst = worst_case_makespan(inst, sigma)[0]
        assert all(eq3_objective(inst, mu, sigma) >= worst for mu in candidate_grid(inst))


def test_eq3_grid_minimum_can_sit_strictly_above_worst_case():
    # the dual bound is not tight in general; this pinned instance has a
    # certified worst case of 18 for the identity schedule while every
    # grid candidate scores at least 19
    inst = RobustInstance(
        p_bar=[[0, 0, 0], [0, 0, 0]],
        p_hat=[[0, 9, 10], [10, 9, 0]],
        gamma=(1, 1),
    )
    sigma = (1, 2, 3)
    assert worst_case_makespan(inst, sigma)[0] == 18
    assert enumerate_scenarios(inst, sigma) == 18
    assert min(eq3_objective(inst, mu, sigma) for mu in candidate_grid(inst)) == 19


# ---------------------------------------------------------------------------
# scenarios


def test_realize_scenario_validates(running_example):
    with pytest.raises(InputError):
        realize_scenario(running_example, [[1, 1], [0, 0]])  # machine 1 budget is 1
    with pytest.raises(InputError):
        realize_scenario(running_example, [[2, 0], [0, 0]])  # not binary
    realized = realize_scenario(running_example, [[1, 0], [0, 1]])
    assert realized.tolist() == [[3, 3], [4, 6]]
    assert compute_makespan(realized, (1, 2)) == 13
