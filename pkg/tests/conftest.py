import random

import pytest

from robust_flowshop import RobustInstance


def random_matrix(rng: random.Random, m: int, n: int, low: int, high: int) -> list[list[int]]:
    return [[rng.randint(low, high) for _ in range(n)] for _ in range(m)]


def random_instance(
    rng: random.Random,
    m: int,
    n: int,
    p_top: int = 20,
    h_top: int = 20,
    gamma_cap: int | None = None,
) -> RobustInstance:
    cap = n if gamma_cap is None else gamma_cap
    return RobustInstance(
        p_bar=random_matrix(rng, m, n, 1, p_top),
        p_hat=random_matrix(rng, m, n, 0, h_top),
        gamma=tuple(rng.randint(0, cap) for _ in range(m)),
    )


@pytest.fixture
def running_example() -> RobustInstance:
    # 2 jobs, 2 machines; worst cases are 13 for (1,2) and 15 for (2,1).
    return RobustInstance(p_bar=[[2, 3], [4, 1]], p_hat=[[1, 2], [0, 5]], gamma=(1, 1))
