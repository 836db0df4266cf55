"""Seeded random objects for tests and CLI trials.

All randomness flows through a counter-based PRNG (numpy Philox) so that a
64-bit seed fully determines every randomized run, byte for byte, across
platforms.  Values are kept in the pure cyclotomic block with small denominators so
downstream quadratic forms stay exactly rational for p <= 3.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cyclotomic import CycNum
from .localfield import FieldParams
from .stepspace import StepFn, Window


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def random_fraction(rng: np.random.Generator, max_num: int = 3,
                    max_den: int = 4) -> Fraction:
    num = int(rng.integers(-max_num, max_num + 1))
    den = int(rng.integers(1, max_den + 1))
    return Fraction(num, den)


def random_cyc(rng: np.random.Generator, p: int, max_num: int = 3,
               max_den: int = 4) -> CycNum:
    coords = [random_fraction(rng, max_num, max_den) for _ in range(p - 1)]
    return CycNum(p, coords)


def random_stepfn(rng: np.random.Generator, params: FieldParams, J: int,
                  k: int, max_num: int = 3, max_den: int = 4) -> StepFn:
    cells = params.q ** (J + k)
    vals = [random_cyc(rng, params.p, max_num, max_den) for _ in range(cells)]
    return StepFn(params, Window(J, k), vals)
