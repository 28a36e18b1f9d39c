import random

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmreduction.localfield import is_prime
from cmreduction.torsion import (
    TorsionInput,
    bad_reduction_bound,
    gamma_p,
    hasse_floor,
    torsion_bound,
    torsion_bounds,
)

SMALL_PRIMES = [p for p in range(2, 400) if is_prime(p)]


def gamma_by_mpmath(p: int, m: int) -> int:
    """floor(log_p(p m / (p - 1))) at 60 digits; exact-power boundaries checked by integers."""
    with mpmath.workdps(60):
        x = mpmath.log(mpmath.mpf(p * m) / (p - 1)) / mpmath.log(p)
        k = int(mpmath.floor(x + mpmath.mpf(10) ** -40))
    # at an exact power the float value can land just under the integer
    return k if p**k * (p - 1) <= p * m else k - 1


def hasse_by_mpmath(q: int) -> int:
    with mpmath.workdps(50):
        return int(mpmath.floor((1 + mpmath.sqrt(q)) ** 2 + mpmath.mpf(10) ** -30))


@pytest.mark.parametrize("p,m,k", [(2, 1, 1), (3, 1, 0), (2, 4, 3), (3, 6, 2), (7, 2, 0), (7, 1, 0), (11, 10, 1), (5, 4, 1), (2, 3, 2)])
def test_gamma_spot_values(p, m, k):
    assert gamma_p(p, m) == k == gamma_by_mpmath(p, m)


@pytest.mark.parametrize("q,h", [(4, 9), (2, 5), (9, 16), (7, 13), (11, 18), (3, 7), (25, 36), (49, 64)])
def test_hasse_floor(q, h):
    assert hasse_floor(q) == h == hasse_by_mpmath(q)


def test_torsion_bound_spot_values():
    assert torsion_bounds(TorsionInput(1, 2, 2, 1, 4)).to_json() == {"bound": 256, "branches": [256, 20]}
    # hasse_floor(7) = 13, since (1 + sqrt 7)^2 = 13.29...
    assert torsion_bound(TorsionInput(1, 7, 7, 1, 2)) == 13
    # gamma_11(10) = floor(log_11(11)) = 1, so the first branch is 10 * 11^4
    assert torsion_bounds(TorsionInput(2, 11, 11, 1, 10)).branches == (146410, 324)


def test_bad_reduction_bound_spot_values():
    assert bad_reduction_bound(1, 2, 1, 4) == 256
    assert bad_reduction_bound(1, 7, 1, 2) == 2
    # gamma_3(6) = 2 and 2 g gamma = 8
    assert bad_reduction_bound(2, 3, 1, 6) == 6 * 3**8 == 39366


def test_formula_against_mpmath_evaluation():
    rng = random.Random(17)
    for _ in range(300):
        g, p, f, e = rng.randint(1, 4), rng.choice(SMALL_PRIMES[:12]), rng.randint(1, 3), rng.randint(1, 6)
        mu = rng.choice([2, 4, 6, 8, 10, 12])
        q = p**f
        first = mu * p ** (2 * g * gamma_by_mpmath(p, e * mu))
        second = hasse_by_mpmath(q) ** g * p ** (2 * g * gamma_by_mpmath(p, e))
        assert torsion_bounds(TorsionInput(g, p, q, e, mu)).branches == (first, second)


def test_gamma_cross_oracle_sampled_up_to_1e9():
    rng = random.Random(29)
    primes = [p for p in range(2, 5000) if is_prime(p)]
    for _ in range(3000):
        p = rng.choice(primes)
        m = rng.randint(1, 10**9 // p)
        assert gamma_p(p, m) == gamma_by_mpmath(p, m)
    # exact powers and their neighbours are where floating logs go wrong
    for p in primes[:40]:
        k = 1
        while p**k * p <= 10**9:
            for m in (p**k - 1, p**k, p**k + 1, p ** (k - 1) * (p - 1), p ** (k - 1) * (p - 1) + 1):
                if m >= 1:
                    assert gamma_p(p, m) == gamma_by_mpmath(p, m)
            k += 1


@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 10**6), st.integers(0, 10**6))
def test_gamma_monotone(p, m, extra):
    assert gamma_p(p, m + extra) >= gamma_p(p, m) >= gamma_p(p, 1) >= 0


@given(st.integers(2, 10**12))
def test_hasse_sanity(q):
    h = hasse_floor(q)
    assert h >= q + 1 and h * h >= (q - 1) ** 2
    assert h <= (1 + q**0.5) ** 2 + 1e-3 * q


@given(
    st.integers(1, 4), st.sampled_from(SMALL_PRIMES[:10]), st.integers(1, 3), st.integers(1, 8),
    st.sampled_from([2, 4, 6, 8, 10, 12]),
)
def test_bound_dominates_bad_reduction_branch(g, p, f, e, mu):
    inp = TorsionInput(g, p, p**f, e, mu)
    assert torsion_bound(inp) >= bad_reduction_bound(g, p, e, mu)
    assert torsion_bound(inp) == max(torsion_bounds(inp).branches)


@pytest.mark.parametrize(
    "args",
    [(0, 2, 2, 1, 4), (1, 4, 4, 1, 4), (1, 2, 6, 1, 4), (1, 2, 2, 0, 4), (1, 2, 2, 1, 1), (1, 3, 1, 1, 2)],
)
def test_invalid_inputs(args):
    with pytest.raises(ValueError):
        TorsionInput(*args)


def test_gamma_rejects_bad_arguments():
    with pytest.raises(ValueError):
        gamma_p(4, 3)
    with pytest.raises(ValueError):
        gamma_p(2, 0)
    with pytest.raises(ValueError):
        hasse_floor(1)
