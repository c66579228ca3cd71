"""Parameter grids and small test corpora shared by the scripts and the test-suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .clifford import CliffordAlgebra, algebra_new
from .scalars import QQ, FieldDescriptor


@dataclass(frozen=True)
class GridConfig:
    field: FieldDescriptor = QQ
    max_n: int = 2
    values: tuple = (-1, 0, 1, 2)


def n_params(n: int) -> int:
    """alpha, beta_i, gamma_i and lambda_ij."""
    return 1 + 2 * n + n * (n - 1) // 2


def algebra_from_flat(F: FieldDescriptor, n: int, flat: Sequence) -> CliffordAlgebra:
    alpha = flat[0]
    beta = list(flat[1:1 + n])
    gamma = list(flat[1 + n:1 + 2 * n])
    rest = iter(flat[1 + 2 * n:])
    lam = {(i, j): next(rest) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return algebra_new(F, n, alpha, beta, gamma, lam)


def parameter_grid(cfg: GridConfig = GridConfig()) -> Iterator[CliffordAlgebra]:
    """Every algebra with ``n <= max_n`` and all parameters drawn from ``values``."""
    for n in range(cfg.max_n + 1):
        for flat in itertools.product(cfg.values, repeat=n_params(n)):
            yield algebra_from_flat(cfg.field, n, flat)


def grid_size(cfg: GridConfig = GridConfig()) -> int:
    return sum(len(cfg.values) ** n_params(n) for n in range(cfg.max_n + 1))


@dataclass
class RandomConfig:
    seed: int = 0
    n: int = 1
    low: int = -3
    high: int = 3
    denominators: tuple = (1, 2, 3)
    semisimple_only: bool = False
    extra: dict = field(default_factory=dict)


def random_algebra(cfg: RandomConfig, rng: random.Random | None = None) -> CliffordAlgebra:
    """Random small rational parameters."""
    from fractions import Fraction

    from .quadratic import is_semisimple

    rng = rng or random.Random(cfg.seed)
    while True:
        flat = [Fraction(rng.randint(cfg.low, cfg.high), rng.choice(cfg.denominators)) for _ in range(n_params(cfg.n))]
        A = algebra_from_flat(QQ, cfg.n, flat)
        if not cfg.semisimple_only or is_semisimple(A):
            return A
