"""Exact arithmetic in Q and quadratic fields, prime splitting, valuations and
residue fields F_p / F_{p^2}.

Elements of Q(sqrt D) are stored as (a + b*sqrt(D))/c in lowest terms.  For
valuations and reduction they are rewritten in the integral basis (1, w) with
w = sqrt(D) or w = (1 + sqrt(D))/2, so that O_K = Z[w].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import NamedTuple

from .errors import NegativeValuation, UnsupportedPlace, ZeroPolynomial

INFINITY = math.inf

# residue-field size caps (on p) for exhaustive searches
MAX_PRIME_DEGREE1 = 10**6
MAX_PRIME_DEGREE2 = 10**4


# ---------------------------------------------------------------------------
# integer helpers


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if n < 37 * 37:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin: 4 bases suffice below 3.2e9, 12 below 3.3e24
    for a in _SMALL_PRIMES[:4] if n < 3_215_031_751 else _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def vp_int(n: int, p: int) -> int | float:
    """p-adic valuation of an integer (inf for 0)."""
    if n == 0:
        return INFINITY
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a modulo the odd prime p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


# ---------------------------------------------------------------------------
# fields and elements


@dataclass(frozen=True)
class QuadraticField:
    """Q(sqrt D) for squarefree D != 0, 1; D = None stands for Q itself."""

    D: int | None = None

    def __post_init__(self):
        if self.D is not None:
            if self.D in (0, 1) or not is_squarefree(self.D):
                raise ValueError(f"D must be squarefree and not 0 or 1, got {self.D}")

    @property
    def is_rational(self) -> bool:
        return self.D is None

    @property
    def discriminant(self) -> int:
        if self.D is None:
            return 1
        return self.D if self.D % 4 == 1 else 4 * self.D

    @property
    def omega_trace_norm(self) -> tuple[int, int]:
        """(T, N) with w^2 - T*w + N = 0 for the ring generator w."""
        if self.D is None:
            return 0, 0
        if self.D % 4 == 1:
            return 1, (1 - self.D) // 4
        return 0, -self.D

    def __call__(self, a=0, b=0, c=1) -> "FieldElement":
        return FieldElement(a, b, c, self)

    def sqrt_d(self) -> "FieldElement":
        return FieldElement(0, 1, 1, self)

    def omega(self) -> "FieldElement":
        if self.D is not None and self.D % 4 == 1:
            return FieldElement(1, 1, 2, self)
        return FieldElement(0, 1, 1, self)

    def __str__(self):
        return "Q" if self.D is None else f"Q(sqrt({self.D}))"

    def to_json(self) -> dict:
        if self.D is None:
            return {"type": "Q"}
        return {"type": "quadratic", "D": self.D}


QQ = QuadraticField(None)


class FieldElement:
    """(a + b*sqrt(D))/c with gcd(a, b, c) = 1 and c >= 1."""

    __slots__ = ("a", "b", "c", "field")

    def __init__(self, a=0, b=0, c=1, field: QuadraticField = QQ):
        a, b, c = int(a), int(b), int(c)
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        if field.D is None and b != 0:
            raise ValueError("irrational part over Q")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        self.a, self.b, self.c, self.field = a, b, c, field

    @classmethod
    def coerce(cls, x, field: QuadraticField = QQ) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field == field or field.D is None:
                return x
            if x.field.D is None:
                return FieldElement(x.a, 0, x.c, field)
            raise TypeError(f"cannot coerce element of {x.field} into {field}")
        if isinstance(x, int):
            return FieldElement(x, 0, 1, field)
        if isinstance(x, Fraction):
            return FieldElement(x.numerator, 0, x.denominator, field)
        raise TypeError(f"cannot coerce {type(x).__name__} to a field element")

    def _common(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self.field, other
            if other.field.D is None:
                return self.field, FieldElement(other.a, 0, other.c, self.field)
            if self.field.D is None:
                return other.field, other
            raise TypeError(f"mixed fields {self.field} and {other.field}")
        if isinstance(other, int):
            return self.field, FieldElement(other, 0, 1, self.field)
        if isinstance(other, Fraction):
            return self.field, FieldElement(other.numerator, 0, other.denominator, self.field)
        return None, None

    @property
    def _D(self) -> int:
        return self.field.D or 0

    def __add__(self, other):
        F, o = self._common(other)
        if F is None:
            return NotImplemented
        if self.c == o.c:
            return FieldElement(self.a + o.a, self.b + o.b, self.c, F)
        return FieldElement(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c, F)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, self.c, self.field)

    def __sub__(self, other):
        F, o = self._common(other)
        if F is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        F, o = self._common(other)
        if F is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        F, o = self._common(other)
        if F is None:
            return NotImplemented
        D = F.D or 0
        return FieldElement(
            self.a * o.a + D * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
            F,
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        n = self.a * self.a - self._D * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.a * self.c, -self.b * self.c, n, self.field)

    def __truediv__(self, other):
        F, o = self._common(other)
        if F is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        F, o = self._common(other)
        if F is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldElement(1, 0, 1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if self.field != other.field and not (self.b == 0 and other.b == 0):
                return False
            return self.a == other.a and self.b == other.b and self.c == other.c
        if isinstance(other, int):
            return self.b == 0 and self.c == 1 and self.a == other
        if isinstance(other, Fraction):
            return self.b == 0 and self.a == other.numerator and self.c == other.denominator
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.field.D))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.a, self.c)

    def conjugate(self) -> "FieldElement":
        return FieldElement(self.a, -self.b, self.c, self.field)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self._D * self.b * self.b, self.c * self.c)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    def omega_coords(self) -> tuple[int, int, int]:
        """(A, B, C) with self = (A + B*w)/C in lowest terms."""
        D = self.field.D
        if D is not None and D % 4 == 1:
            A, B, C = self.a - self.b, 2 * self.b, self.c
            g = math.gcd(math.gcd(A, B), C)
            return A // g, B // g, C // g
        return self.a, self.b, self.c

    def to_json(self) -> dict:
        if self.field.D is None:
            return {"a": self.a, "c": self.c}
        return {"a": self.a, "b": self.b, "c": self.c}

    def __repr__(self):
        if self.b == 0:
            return str(self.a) if self.c == 1 else f"{self.a}/{self.c}"
        num = f"{self.a} + {self.b}*sqrt({self.field.D})"
        return f"({num})" if self.c == 1 else f"({num})/{self.c}"


# ---------------------------------------------------------------------------
# residue fields


class ResidueField:
    """F_p, or F_{p^2} = F_p[theta] with theta^2 = m0 + m1*theta."""

    def __init__(self, p: int, f: int = 1, modulus: tuple[int, int] | None = None):
        if f not in (1, 2):
            raise ValueError("only residue degrees 1 and 2 are supported")
        if f == 2:
            if modulus is None:
                modulus = _default_quadratic_modulus(p)
            m0, m1 = modulus[0] % p, modulus[1] % p
            # x^2 - m1 x - m0 must have no root
            if any((x * x - m1 * x - m0) % p == 0 for x in range(p)) if p < 64 else _has_root(p, m0, m1):
                raise ValueError(f"x^2 - {m1}x - {m0} is reducible mod {p}")
            self.modulus = (m0, m1)
        else:
            self.modulus = None
        self.p = p
        self.f = f
        self.order = p**f

    def __eq__(self, other):
        return (
            isinstance(other, ResidueField)
            and (self.p, self.f, self.modulus) == (other.p, other.f, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.f, self.modulus))

    def __repr__(self):
        if self.f == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^2[theta^2={self.modulus[0]}+{self.modulus[1]}*theta]"

    def __call__(self, value) -> "ResidueElement":
        if isinstance(value, ResidueElement):
            return value
        if isinstance(value, int):
            return ResidueElement(self, (value % self.p,) + (0,) * (self.f - 1))
        coeffs = tuple(int(v) % self.p for v in value)
        if len(coeffs) != self.f:
            raise ValueError(f"expected {self.f} coordinates")
        return ResidueElement(self, coeffs)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        """theta for f = 2, 1 for f = 1."""
        return self((0, 1)) if self.f == 2 else self.one

    def elements(self):
        p = self.p
        if self.f == 1:
            for x in range(p):
                yield ResidueElement(self, (x,))
        else:
            for u in range(p):
                for v in range(p):
                    yield ResidueElement(self, (u, v))


def _has_root(p, m0, m1):
    # x^2 - m1 x - m0, p odd: discriminant m1^2 + 4 m0
    if p == 2:
        return any((x * x - m1 * x - m0) % 2 == 0 for x in range(2))
    disc = (m1 * m1 + 4 * m0) % p
    return disc == 0 or pow(disc, (p - 1) // 2, p) == 1


def _default_quadratic_modulus(p):
    if p == 2:
        return (1, 1)  # theta^2 = theta + 1
    n = 2
    while pow(n, (p - 1) // 2, p) == 1:
        n += 1
    return (n, 0)


class ResidueElement:
    __slots__ = ("field", "c")

    def __init__(self, field: ResidueField, coeffs: tuple):
        self.field = field
        self.c = coeffs

    def _wrap(self, other):
        if isinstance(other, ResidueElement):
            return other
        if isinstance(other, int):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return ResidueElement(self.field, tuple((x + y) % p for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return ResidueElement(self.field, tuple(-x % p for x in self.c))

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        F = self.field
        p = F.p
        if F.f == 1:
            return ResidueElement(F, (self.c[0] * o.c[0] % p,))
        u1, v1 = self.c
        u2, v2 = o.c
        m0, m1 = F.modulus
        vv = v1 * v2
        return ResidueElement(F, ((u1 * u2 + vv * m0) % p, (u1 * v2 + u2 * v1 + vv * m1) % p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in residue field")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        if isinstance(other, ResidueElement):
            return self.field == other.field and self.c == other.c
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.c))

    def __bool__(self):
        return any(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def in_prime_field(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def is_square(self) -> bool:
        if self.is_zero() or self.field.p == 2:
            return True
        return self ** ((self.field.order - 1) // 2) == 1

    def sqrt(self) -> "ResidueElement | None":
        """A square root, or None.  In characteristic 2 squaring is bijective."""
        F = self.field
        if self.is_zero():
            return self
        if F.p == 2:
            return self ** (F.order // 2)
        if not self.is_square():
            return None
        if F.f == 1:
            return F(sqrt_mod(self.c[0], F.p))
        for x in F.elements():
            if x * x == self:
                return x
        return None  # pragma: no cover

    def cube_root_char3(self) -> "ResidueElement":
        """Inverse of Frobenius in characteristic 3."""
        if self.field.p != 3:
            raise ValueError("cube_root_char3 needs characteristic 3")
        return self ** (self.field.order // 3)

    def __repr__(self):
        if self.field.f == 1:
            return f"{self.c[0]}"
        return f"{self.c[0]}+{self.c[1]}*theta"


class RootSet(NamedTuple):
    roots: list
    repeated: list

    @property
    def distinct(self) -> bool:
        return not self.repeated


def _poly_eval(coeffs, x):
    acc = x.field.zero
    for a in reversed(coeffs):
        acc = acc * x + a
    return acc


def residue_solve(rf: ResidueField, poly) -> RootSet:
    """All roots in rf of sum(poly[i] x^i), found by exhaustive search.

    Also lists the roots that are repeated (f and f' both vanish there).
    """
    coeffs = [rf(c) for c in poly]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        raise ZeroPolynomial("zero polynomial has no finite root set")
    if len(coeffs) > 5:
        raise ValueError("degree above 4 is not supported")
    check_residue_size(rf.p, rf.f)
    deriv = [coeffs[i] * i for i in range(1, len(coeffs))]
    roots, repeated = [], []
    for x in rf.elements():
        if _poly_eval(coeffs, x).is_zero():
            roots.append(x)
            if deriv and _poly_eval(deriv, x).is_zero():
                repeated.append(x)
    return RootSet(roots, repeated)


def check_residue_size(p, f, max_prime=None):
    cap = max_prime if max_prime is not None else (MAX_PRIME_DEGREE1 if f == 1 else MAX_PRIME_DEGREE2)
    if p > cap:
        raise UnsupportedPlace(f"residue field of size {p}^{f} exceeds the configured bound (p <= {cap})")


# polynomial helpers over a residue field (coefficient lists, low degree first)


def _trim(a):
    while a and a[-1].is_zero():
        a.pop()
    return a


def _pmod(a, m):
    a = list(a)
    inv = m[-1].inverse()
    while len(a) >= len(m):
        q = a[-1] * inv
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = a[shift + i] - q * mc
        a.pop()
        _trim(a)
    return _trim(a)


def _pmulmod(a, b, m, F):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _pmod(out, m)


def _pgcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b)
    return a


def count_distinct_roots(rf: ResidueField, poly) -> int:
    """Number of distinct roots in rf via deg gcd(f, x^q - x)."""
    f = _trim([rf(c) for c in poly])
    if not f:
        raise ZeroPolynomial("zero polynomial")
    if len(f) == 1:
        return 0
    if rf.order <= 64:
        return sum(1 for x in rf.elements() if _poly_eval(f, x).is_zero())
    F = rf
    result = [F.one]
    base = [F.zero, F.one]
    n = rf.order
    while n:
        if n & 1:
            result = _pmulmod(result, base, f, F)
        n >>= 1
        if n:
            base = _pmulmod(base, base, f, F)
    # x^q - x
    while len(result) < 2:
        result.append(F.zero)
    result[1] = result[1] - F.one
    g = _pgcd(f, _trim(result))
    return len(g) - 1 if g else len(f) - 1


# ---------------------------------------------------------------------------
# places


@lru_cache(maxsize=None)
def _hensel_root(T: int, N: int, rho: int, p: int, k: int) -> int:
    """Root of x^2 - T x + N modulo p^k lifting the simple root rho mod p."""
    x, prec = rho % p, 1
    while prec < k:
        prec = min(2 * prec, k)
        mod = p**prec
        g = (x * x - T * x + N) % mod
        dg = (2 * x - T) % mod
        x = (x - g * pow(dg, -1, mod)) % mod
    return x % p**k


@dataclass(frozen=True)
class LocalPlace:
    """A prime of the field above the rational prime p.

    rho is the root of the ring generator's minimal polynomial mod p that
    defines the place (split and ramified cases); sqrt_root is the root r of
    x^2 = D mod p for split places at odd p.
    """

    field: QuadraticField
    p: int
    splitting: str
    e_abs: int
    f: int
    index: int = 0
    rho: int | None = None
    sqrt_root: int | None = None

    @cached_property
    def residue_field(self) -> ResidueField:
        if self.f == 1:
            return ResidueField(self.p)
        T, N = self.field.omega_trace_norm
        # theta = w mod p satisfies theta^2 = T theta - N
        return ResidueField(self.p, 2, (-N % self.p, T % self.p))

    @cached_property
    def uniformizer(self) -> FieldElement:
        F = self.field
        if self.splitting in ("rational", "inert"):
            return FieldElement(self.p, 0, 1, F)
        T, N = F.omega_trace_norm
        w = F.omega()
        if self.splitting == "ramified":
            return w - self.rho
        for R in (self.rho, self.rho + self.p):
            if vp_int(R * R - T * R + N, self.p) == 1:
                return w - R
        raise AssertionError("no uniformizer found")  # pragma: no cover

    @cached_property
    def uniformizer_inverse(self) -> FieldElement:
        return self.uniformizer.inverse()

    @property
    def residue_cardinality(self) -> int:
        return self.p**self.f

    def valuation(self, x) -> int | float:
        return valuation(self, x)

    def reduce(self, x) -> ResidueElement:
        return reduce(self, x)

    def lift(self, r: ResidueElement) -> FieldElement:
        """Lift a residue class to a small integral representative."""
        if self.f == 1:
            return FieldElement(r.c[0], 0, 1, self.field)
        u, v = r.c
        return FieldElement(u, 0, 1, self.field) + self.field.omega() * v

    def to_json(self) -> dict:
        return {"p": self.p, "index": self.index}

    def __str__(self):
        tag = self.splitting if self.splitting != "split" else f"split#{self.index}"
        return f"{tag} place over {self.p} in {self.field}"


def factor_prime(field: QuadraticField, p: int) -> list[LocalPlace]:
    """Places of field above p.

    Split places come in a fixed order: by the root r of x^2 = D (mod p),
    smaller r first (odd p); at p = 2 by the root rho in {0, 1} of the ring
    generator's minimal polynomial.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if field.D is None:
        return [LocalPlace(field, p, "rational", 1, 1)]
    T, N = field.omega_trace_norm
    disc = field.discriminant
    if disc % p == 0:
        rho = next(x for x in range(p) if (x * x - T * x + N) % p == 0)
        return [LocalPlace(field, p, "ramified", 2, 1, 0, rho)]
    if p == 2:
        roots = [x for x in (0, 1) if (x * x - T * x + N) % 2 == 0]
        if not roots:
            return [LocalPlace(field, p, "inert", 1, 2)]
        return [LocalPlace(field, 2, "split", 1, 1, i, rho, 1) for i, rho in enumerate(roots)]
    r = sqrt_mod(field.D, p)
    if r is None:
        return [LocalPlace(field, p, "inert", 1, 2)]
    places = []
    for i, s in enumerate(sorted((r, p - r))):
        rho = s if T == 0 else (1 + s) * pow(2, -1, p) % p
        places.append(LocalPlace(field, p, "split", 1, 1, i, rho, s))
    return places


def get_place(field: QuadraticField, p: int, index: int = 0) -> LocalPlace:
    places = factor_prime(field, p)
    if not 0 <= index < len(places):
        raise ValueError(f"place index {index} out of range: {len(places)} place(s) above {p}")
    return places[index]


def _norm_omega(A: int, B: int, T: int, N: int) -> int:
    return A * A + T * A * B + N * B * B


def _split_image(place: LocalPlace, A: int, B: int, prec: int) -> int:
    T, N = place.field.omega_trace_norm
    root = _hensel_root(T, N, place.rho, place.p, prec)
    return (A + B * root) % place.p**prec


def valuation(place: LocalPlace, x) -> int | float:
    """Normalized valuation (v(uniformizer) = 1); inf for zero."""
    x = FieldElement.coerce(x, place.field)
    if x.is_zero():
        return INFINITY
    p = place.p
    if place.splitting == "rational":
        return vp_int(x.a, p) - vp_int(x.c, p)
    A, B, C = x.omega_coords()
    vC = vp_int(C, p)
    if place.splitting == "inert":
        return min(vp_int(A, p), vp_int(B, p)) - vC
    T, N = place.field.omega_trace_norm
    vN = vp_int(_norm_omega(A, B, T, N), p)
    if place.splitting == "ramified":
        return vN - 2 * vC
    # split: v_P(A + Bw) <= v_p(Norm), so precision vN + 1 determines it
    z = _split_image(place, A, B, vN + 1)
    return vp_int(z, p) - vC


def reduce(place: LocalPlace, x) -> ResidueElement:
    """Image of an integral element in the residue field."""
    x = FieldElement.coerce(x, place.field)
    rf = place.residue_field
    if x.is_zero():
        return rf.zero
    v = valuation(place, x)
    if v < 0:
        raise NegativeValuation(f"{x} has valuation {v} at {place}")
    if v > 0:
        return rf.zero
    p = place.p
    if place.splitting == "rational":
        return rf(x.a * pow(x.c, -1, p))
    A, B, C = x.omega_coords()
    if place.splitting == "inert":
        cinv = pow(C, -1, p)
        return rf((A * cinv, B * cinv))
    if place.splitting == "ramified":
        return rf((A + B * place.rho) * pow(C, -1, p))
    vC = vp_int(C, p)
    z = _split_image(place, A, B, vC + 1)
    unit = C // p**vC
    return rf((z // p**vC) * pow(unit, -1, p))
