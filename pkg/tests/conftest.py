from __future__ import annotations

import random

import pytest

from vfunc.finite_field import FieldParams
from vfunc.laurent import LaurentPoly


@pytest.fixture(scope="session")
def f4() -> FieldParams:
    return FieldParams(2, 2)


@pytest.fixture(scope="session")
def f9() -> FieldParams:
    return FieldParams(3, 2)


@pytest.fixture(scope="session")
def f25() -> FieldParams:
    return FieldParams(5, 2)


@pytest.fixture(scope="session")
def f8() -> FieldParams:
    return FieldParams(2, 3, (1, 1, 0, 1))


def make_rng(tag: str) -> random.Random:
    return random.Random(f"vfunc:{tag}")


def random_laurent(field: FieldParams, rng: random.Random,
                   lo: int = -8, hi: int = 4, density: float = 0.5) -> LaurentPoly:
    terms = []
    for e in range(lo, hi + 1):
        if rng.random() < density:
            terms.append((e, field.random_element(rng)))
    return LaurentPoly(field, terms)


def random_j_poly(field: FieldParams, rng: random.Random, min_exp: int,
                  allow_zero: bool = False) -> LaurentPoly:
    """Random member of J with support in [min_exp, -1]."""
    p = field.p
    exps = [e for e in range(min_exp, 0) if e % p != 0]
    while True:
        terms = []
        for e in exps:
            if rng.random() < 0.5:
                c = field.random_element(rng)
                if not c.is_zero():
                    terms.append((e, c))
        f = LaurentPoly(field, terms)
        if allow_zero or not f.is_zero():
            return f
