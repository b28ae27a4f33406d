"""Instance files and reproducible random instances.

Files are JSON (schema version "1"): fields ``version``, ``m``, ``n``,
``gamma``, ``p_bar``, ``p_hat`` plus optional ``name`` and ``seed``.  Tiny,
human-readable, diffable.

Generated instances use a fixed, fully documented pseudo-random scheme so
any implementation of this format can reproduce them bit for bit:

* stream: splitmix64 over the config seed; each step is
  ``state += 0x9E3779B97F4A7C15`` (mod 2^64), then the output is
  ``z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) *
  0x94D049BB133111EB; z ^ z>>31`` (all mod 2^64);
* an integer uniform on ``[lo, hi]`` is ``lo + next() % (hi - lo + 1)``
  (plain modulo; the tiny modulo bias is accepted and part of the format
  definition);
* draw order: ``p_bar`` row-major over machines then jobs, values in
  ``[1, p_max]``; then ``p_hat`` row-major, values in ``[0, h_max]``;
  ``gamma`` consumes no draws.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Iterator

from .errors import ParseError
from .robust import RobustInstance

__all__ = ["SCHEMA_VERSION", "GeneratorConfig", "generate_instance", "parse_instance", "render_instance"]

SCHEMA_VERSION = "1"

_MASK64 = (1 << 64) - 1


def _splitmix64(seed: int) -> Iterator[int]:
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of a reproducible random instance.

    ``gamma`` is either a per-machine vector of budgets, a single int
    applied to every machine, or a float fraction f of n (budget
    ``floor(f*n + 0.5)`` per machine).
    """

    m: int
    n: int
    seed: int
    p_max: int = 20
    h_max: int = 20
    gamma: float | int | tuple[int, ...] = 1.0
    name: str | None = None


def _resolve_gamma(cfg: GeneratorConfig) -> tuple[int, ...]:
    if isinstance(cfg.gamma, float):
        if not 0.0 <= cfg.gamma <= 1.0:
            raise ParseError("gamma", f"fraction must be in [0, 1], got {cfg.gamma}")
        budget = int(cfg.gamma * cfg.n + 0.5)
        return (budget,) * cfg.m
    if isinstance(cfg.gamma, int):
        vec = (cfg.gamma,) * cfg.m
    else:
        vec = tuple(int(g) for g in cfg.gamma)
        if len(vec) != cfg.m:
            raise ParseError("gamma", f"expected {cfg.m} budgets, got {len(vec)}")
    if any(g < 0 for g in vec):
        raise ParseError("gamma", "budgets must be nonnegative")
    if any(g > cfg.n for g in vec):
        warnings.warn(f"gamma {vec} exceeds n={cfg.n}; clamping", stacklevel=3)
        vec = tuple(min(g, cfg.n) for g in vec)
    return vec


def generate_instance(cfg: GeneratorConfig) -> RobustInstance:
    """Deterministically generate the instance described by ``cfg``."""
    if cfg.m < 1 or cfg.n < 1:
        raise ParseError("m" if cfg.m < 1 else "n", "dimensions must be at least 1")
    if cfg.p_max < 1:
        raise ParseError("p_max", "must be at least 1")
    if cfg.h_max < 0:
        raise ParseError("h_max", "must be nonnegative")
    if cfg.seed < 0:
        raise ParseError("seed", "must be nonnegative")
    gamma = _resolve_gamma(cfg)
    stream = _splitmix64(cfg.seed)
    p_bar = [[1 + next(stream) % cfg.p_max for _ in range(cfg.n)] for _ in range(cfg.m)]
    p_hat = [[next(stream) % (cfg.h_max + 1) for _ in range(cfg.n)] for _ in range(cfg.m)]
    name = cfg.name or f"rand-m{cfg.m}-n{cfg.n}-s{cfg.seed}"
    return RobustInstance(p_bar=p_bar, p_hat=p_hat, gamma=gamma, name=name, seed=cfg.seed)


def render_instance(inst: RobustInstance) -> str:
    """Serialize an instance to the JSON document format."""
    doc: dict = {"version": SCHEMA_VERSION}
    if inst.name is not None:
        doc["name"] = inst.name
    if inst.seed is not None:
        doc["seed"] = inst.seed
    doc["m"] = inst.m
    doc["n"] = inst.n
    doc["gamma"] = list(inst.gamma)
    doc["p_bar"] = inst.p_bar.tolist()
    doc["p_hat"] = inst.p_hat.tolist()
    return json.dumps(doc, indent=2) + "\n"


def _expect_int(value, field: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(field, f"expected an integer, got {value!r}")
    if value < minimum:
        raise ParseError(field, f"must be at least {minimum}, got {value}")
    return value


def _expect_matrix(value, field: str, m: int, n: int) -> list[list[int]]:
    if not isinstance(value, list) or len(value) != m:
        raise ParseError(field, f"expected {m} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{field}[{i}]", f"expected {n} entries")
        rows.append([_expect_int(v, f"{field}[{i}][{j}]") for j, v in enumerate(row)])
    return rows


_KNOWN_FIELDS = {"version", "name", "seed", "m", "n", "gamma", "p_bar", "p_hat"}


def parse_instance(text: str | bytes) -> RobustInstance:
    """Parse and validate an instance document.

    Budgets above n are clamped (with a warning); any other deviation from
    the schema raises :class:`~robust_flowshop.errors.ParseError` naming
    the offending field.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("document", f"not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("document", f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document", "top level must be an object")
    for key in doc:
        if key not in _KNOWN_FIELDS:
            raise ParseError(key, "unknown field")
    for key in ("version", "m", "n", "gamma", "p_bar", "p_hat"):
        if key not in doc:
            raise ParseError(key, "missing required field")
    if doc["version"] != SCHEMA_VERSION:
        raise ParseError("version", f"unsupported version {doc['version']!r} (expected {SCHEMA_VERSION!r})")
    m = _expect_int(doc["m"], "m", minimum=1)
    n = _expect_int(doc["n"], "n", minimum=1)
    gamma_raw = doc["gamma"]
    if not isinstance(gamma_raw, list) or len(gamma_raw) != m:
        raise ParseError("gamma", f"expected {m} budgets")
    gamma = tuple(_expect_int(g, f"gamma[{i}]") for i, g in enumerate(gamma_raw))
    if any(g > n for g in gamma):
        warnings.warn(f"gamma {gamma} exceeds n={n}; clamping", stacklevel=2)
        gamma = tuple(min(g, n) for g in gamma)
    p_bar = _expect_matrix(doc["p_bar"], "p_bar", m, n)
    p_hat = _expect_matrix(doc["p_hat"], "p_hat", m, n)
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name", f"expected a string, got {name!r}")
    seed = doc.get("seed")
    if seed is not None:
        seed = _expect_int(seed, "seed")
    return RobustInstance(p_bar=p_bar, p_hat=p_hat, gamma=gamma, name=name, seed=seed)
