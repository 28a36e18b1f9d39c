"""Random generators shared by the property tests."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from cmreduction.localfield import QQ, FieldElement, QuadraticField, factor_prime
from cmreduction.weierstrass import Transform, WeierstrassModel

FIELDS = [QQ] + [QuadraticField(D) for D in (-1, -2, -3, -5, -6, -7, -11, -15)]
PRIMES = (2, 3, 5, 7, 11, 13)


def rand_element(rng: random.Random, F, bound: int = 6, den: int = 1) -> FieldElement:
    b = rng.randint(-bound, bound) if F.D is not None else 0
    return FieldElement(rng.randint(-bound, bound), b, rng.randint(1, den), F)


def rand_nonzero(rng, F, bound=6, den=1) -> FieldElement:
    while True:
        x = rand_element(rng, F, bound, den)
        if x:
            return x


def rand_place(rng, F, primes=PRIMES):
    return rng.choice(factor_prime(F, rng.choice(primes)))


def rand_transform(rng, F, bound=3) -> Transform:
    u = rand_nonzero(rng, F, bound, 2)
    return Transform(u, *(rand_element(rng, F, bound, 2) for _ in range(3)))


def rand_model(rng, F, bound=6, den=1) -> WeierstrassModel:
    while True:
        try:
            return WeierstrassModel([rand_element(rng, F, bound, den) for _ in range(5)], F)
        except ValueError:
            continue


@st.composite
def elements(draw, F, bound=20, den=4):
    a = draw(st.integers(-bound, bound))
    b = draw(st.integers(-bound, bound)) if F.D is not None else 0
    c = draw(st.integers(1, den))
    return FieldElement(a, b, c, F)


@st.composite
def nonzero_elements(draw, F, bound=20, den=4):
    return draw(elements(F, bound, den).filter(bool))


fields = st.sampled_from(FIELDS)


@st.composite
def field_and_place(draw, primes=PRIMES):
    F = draw(fields)
    places = factor_prime(F, draw(st.sampled_from(primes)))
    return F, draw(st.sampled_from(places))


@st.composite
def models(draw, F, bound=8, den=1):
    ainvs = [draw(elements(F, bound, den)) for _ in range(5)]
    try:
        return WeierstrassModel(ainvs, F)
    except ValueError:
        from hypothesis import assume

        assume(False)


@st.composite
def transforms(draw, F, bound=4):
    u = draw(nonzero_elements(F, bound, 2))
    r, s, t = (draw(elements(F, bound, 2)) for _ in range(3))
    return Transform(u, r, s, t)
