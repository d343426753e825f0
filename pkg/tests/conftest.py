"""Shared samplers for the randomized invariant checks.

All randomness is seeded, so the suite is deterministic.
"""

from __future__ import annotations

import random

from symgenus import (
    CohClass,
    Model,
    divisibility,
    generator_inventory,
    make_word,
    square,
)


def rng(seed: int = 0) -> random.Random:
    return random.Random(seed)


def random_class(model: Model, bound: int, r: random.Random) -> CohClass:
    while True:
        coeffs = tuple(r.randint(-bound, bound) for _ in range(model.rank))
        if any(coeffs):
            return CohClass(model, coeffs)


def random_class_square_at_least(model: Model, bound: int, r: random.Random,
                                 min_square: int) -> CohClass:
    while True:
        e = random_class(model, bound, r)
        if square(e) >= min_square:
            return e


def random_reduced(model: Model, bound: int, r: random.Random,
                   positive_square: bool = False) -> CohClass:
    """A random reduced class, by direct construction plus rejection."""
    while True:
        if model.kind == "rational":
            a = r.randint(0, bound)
            bs = sorted((r.randint(0, max(a, 1)) for _ in range(model.n)),
                        reverse=True)
            padded = bs + [0, 0, 0]
            if a < padded[0] + padded[1] + padded[2]:
                continue
            e = CohClass(model, (a, *bs))
        else:
            a = r.randint(0, bound)
            b = r.randint(-bound, bound)
            cs = sorted((r.randint(0, a) for _ in range(model.n)), reverse=True)
            e = CohClass(model, (a, b, *cs))
        if e.is_zero:
            continue
        if positive_square and square(e) <= 0:
            continue
        return e


def random_word(model: Model, max_len: int, r: random.Random, r_max: int = 3):
    inventory = generator_inventory(model, r_max=r_max)
    moves = [r.choice(inventory) for _ in range(r.randint(0, max_len))]
    return make_word(model, moves)


def random_primitive_isotropic(model: Model, r: random.Random, max_len: int = 8) -> CohClass:
    """A random primitive square-zero class on a rational model, as a
    generator-word image of H - E1."""
    from symgenus import apply_word, e_class, parse_class

    y0 = parse_class("H-E1", model)
    y = apply_word(random_word(model, max_len, r), y0)
    assert square(y) == 0 and divisibility(y) == 1
    return y
