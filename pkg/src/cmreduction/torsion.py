"""Local torsion bounds for CM abelian varieties, in exact integer arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .localfield import is_prime


def gamma_p(p: int, m: int) -> int:
    """floor(log_p(p m / (p - 1))): the largest k with p^k (p - 1) <= p m."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("m must be positive")
    # p^k (p - 1) <= p m  iff  p^(k-1) (p - 1) <= m
    k, y = 0, p - 1
    while y <= m:
        k += 1
        y *= p
    return k


def hasse_floor(q: int) -> int:
    """floor((1 + sqrt q)^2), computed as q + 1 + floor(2 sqrt q)."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return q + 1 + math.isqrt(4 * q)


def _prime_power_exponent(q: int, p: int) -> int | None:
    f = 0
    while q % p == 0:
        q //= p
        f += 1
    return f if q == 1 and f >= 1 else None


@dataclass(frozen=True)
class TorsionInput:
    g: int
    p: int
    q: int
    e: int
    mu: int

    def __post_init__(self):
        if min(self.g, self.e) < 1 or self.mu < 2:
            raise ValueError("need g >= 1, e >= 1 and mu >= 2")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if _prime_power_exponent(self.q, self.p) is None:
            raise ValueError(f"q = {self.q} is not a power of p = {self.p}")


@dataclass(frozen=True)
class TorsionBound:
    bound: int
    branches: tuple[int, int]

    def to_json(self) -> dict:
        return {"bound": self.bound, "branches": list(self.branches)}


def bad_reduction_bound(g: int, p: int, e: int, mu: int) -> int:
    """mu * p^(2g gamma_p(e mu)); applies when there is no good reduction."""
    return mu * p ** (2 * g * gamma_p(p, e * mu))


def torsion_bounds(inp: TorsionInput) -> TorsionBound:
    first = bad_reduction_bound(inp.g, inp.p, inp.e, inp.mu)
    second = hasse_floor(inp.q) ** inp.g * inp.p ** (2 * inp.g * gamma_p(inp.p, inp.e))
    return TorsionBound(max(first, second), (first, second))


def torsion_bound(inp: TorsionInput) -> int:
    return torsion_bounds(inp).bound
