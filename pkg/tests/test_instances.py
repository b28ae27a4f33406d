import json
import random

import pytest

from robust_flowshop import (
    GeneratorConfig,
    ParseError,
    RobustInstance,
    generate_instance,
    parse_instance,
    render_instance,
)
from robust_flowshop.instances import _splitmix64


def test_splitmix64_known_answer():
    # reference values of the splitmix64 stream for seed 0
    stream = _splitmix64(0)
    assert next(stream) == 0xE220A8397B1DCDAF
    assert next(stream) == 0x6E789E6AA1B965F4
    assert next(stream) == 0x06C45D188009454F


def test_minimal_document_round_trips_to_running_example(running_example):
    text = """
    {
      "version": "1",
      "m": 2,
      "n": 2,
      "gamma": [1, 1],
      "p_bar": [[2, 3], [4, 1]],
      "p_hat": [[1, 2], [0, 5]]
    }
    """
    assert parse_instance(text) == running_example


def test_render_parse_round_trip_fuzz():
    rng = random.Random(50)
    for _ in range(60):
        cfg = GeneratorConfig(
            m=rng.randint(1, 4),
            n=rng.randint(1, 9),
            seed=rng.randrange(2**32),
            p_max=rng.randint(1, 40),
            h_max=rng.randint(0, 40),
            gamma=rng.choice([0.0, 0.5, 1.0, 1]),
        )
        inst = generate_instance(cfg)
        assert parse_instance(render_instance(inst)) == inst
        assert parse_instance(render_instance(inst).encode()) == inst


def test_generation_is_reproducible_and_byte_identical():
    cfg = GeneratorConfig(m=3, n=5, seed=99, p_max=30, h_max=10, gamma=0.5)
    first, second = generate_instance(cfg), generate_instance(cfg)
    assert first == second
    assert render_instance(first) == render_instance(second)


def test_generation_respects_ranges():
    cfg = GeneratorConfig(m=2, n=50, seed=7, p_max=5, h_max=3, gamma=1.0)
    inst = generate_instance(cfg)
    assert inst.p_bar.min() >= 1 and inst.p_bar.max() <= 5
    assert inst.p_hat.min() >= 0 and inst.p_hat.max() <= 3
    assert inst.name == "rand-m2-n50-s7"
    assert inst.seed == 7


def test_generation_zero_h_max_means_no_deviations():
    inst = generate_instance(GeneratorConfig(m=2, n=6, seed=1, h_max=0))
    assert not inst.p_hat.any()


def test_gamma_fraction_resolution():
    assert generate_instance(GeneratorConfig(m=2, n=6, seed=1, gamma=1.0)).gamma == (6, 6)
    assert generate_instance(GeneratorConfig(m=2, n=5, seed=1, gamma=0.5)).gamma == (3, 3)
    assert generate_instance(GeneratorConfig(m=2, n=5, seed=1, gamma=0.0)).gamma == (0, 0)
    assert generate_instance(GeneratorConfig(m=3, n=5, seed=1, gamma=2)).gamma == (2, 2, 2)
    assert generate_instance(GeneratorConfig(m=2, n=5, seed=1, gamma=(1, 4))).gamma == (1, 4)


def test_gamma_vector_clamps_with_warning():
    with pytest.warns(UserWarning, match="clamp"):
        inst = generate_instance(GeneratorConfig(m=2, n=3, seed=1, gamma=(9, 1)))
    assert inst.gamma == (3, 1)


def test_generator_rejects_bad_configs():
    with pytest.raises(ParseError):
        generate_instance(GeneratorConfig(m=0, n=3, seed=1))
    with pytest.raises(ParseError):
        generate_instance(GeneratorConfig(m=2, n=3, seed=1, gamma=1.5))
    with pytest.raises(ParseError):
        generate_instance(GeneratorConfig(m=2, n=3, seed=1, gamma=(1, 2, 3)))
    with pytest.raises(ParseError):
        generate_instance(GeneratorConfig(m=2, n=3, seed=-1))


def _doc(**overrides):
    doc = {
        "version": "1",
        "m": 2,
        "n": 2,
        "gamma": [1, 1],
        "p_bar": [[2, 3], [4, 1]],
        "p_hat": [[1, 2], [0, 5]],
    }
    doc.update(overrides)
    return json.dumps(doc)


def test_parse_rejects_wrong_gamma_length():
    with pytest.raises(ParseError, match="gamma"):
        parse_instance(_doc(gamma=[1]))


def test_parse_rejects_ragged_rows_naming_the_row():
    with pytest.raises(ParseError, match=r"p_hat\[1\]"):
        parse_instance(_doc(p_hat=[[1, 2], [0]]))


def test_parse_rejects_non_integer_entries():
    with pytest.raises(ParseError, match=r"p_bar\[0\]\[1\]"):
        parse_instance(_doc(p_bar=[[2, 3.5], [4, 1]]))
    with pytest.raises(ParseError, match=r"p_bar\[0\]\[0\]"):
        parse_instance(_doc(p_bar=[[True, 3], [4, 1]]))


def test_parse_rejects_negative_entries():
    with pytest.raises(ParseError, match=r"p_hat\[0\]\[0\]"):
        parse_instance(_doc(p_hat=[[-1, 2], [0, 5]]))


def test_parse_rejects_nan_entries():
    text = _doc().replace('"p_bar": [[2, 3], [4, 1]]', '"p_bar": [[NaN, 3], [4, 1]]')
    with pytest.raises(ParseError, match=r"p_bar\[0\]\[0\]"):
        parse_instance(text)


def test_parse_rejects_missing_and_unknown_fields():
    doc = json.loads(_doc())
    del doc["p_hat"]
    with pytest.raises(ParseError, match="p_hat"):
        parse_instance(json.dumps(doc))
    with pytest.raises(ParseError, match="extra"):
        parse_instance(_doc(extra=1))


def test_parse_rejects_bad_version_and_bad_json():
    with pytest.raises(ParseError, match="version"):
        parse_instance(_doc(version="2"))
    with pytest.raises(ParseError, match="document"):
        parse_instance("not json at all {")
    with pytest.raises(ParseError, match="document"):
        parse_instance("[1, 2, 3]")


def test_parse_clamps_oversized_budgets_with_warning():
    with pytest.warns(UserWarning, match="clamp"):
        inst = parse_instance(_doc(gamma=[5, 1]))
    assert inst.gamma == (2, 1)


def test_parse_keeps_metadata():
    inst = parse_instance(_doc(name="demo", seed=12))
    assert inst.name == "demo"
    assert inst.seed == 12
    again = parse_instance(render_instance(inst))
    assert again == inst
