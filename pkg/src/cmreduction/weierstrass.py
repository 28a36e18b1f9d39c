"""Weierstrass models, their b/c invariants, coordinate changes and twists."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SingularModel, ZeroScale, ZeroTwist
from .localfield import QQ, FieldElement, LocalPlace, QuadraticField, valuation


def b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def discriminant_of(b2, b4, b6, b8):
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class DerivedQuantities:
    b2: FieldElement
    b4: FieldElement
    b6: FieldElement
    b8: FieldElement
    c4: FieldElement
    c6: FieldElement
    discriminant: FieldElement
    j: FieldElement


class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q or Q(sqrt D).

    Stored exactly as given: no minimization happens at construction.
    """

    __slots__ = ("field", "ainvs", "_derived")

    def __init__(self, ainvs, field: QuadraticField | None = None):
        ainvs = list(ainvs)
        if len(ainvs) != 5:
            raise ValueError("a Weierstrass model needs exactly five coefficients")
        if field is None:
            field = next((a.field for a in ainvs if isinstance(a, FieldElement) and a.field.D is not None), QQ)
        self.field = field
        self.ainvs = tuple(FieldElement.coerce(a, field) for a in ainvs)
        self._derived = None
        if self.derived().discriminant.is_zero():
            raise SingularModel(f"singular model {self.ainvs}")

    @classmethod
    def short(cls, A, B, field: QuadraticField = QQ) -> "WeierstrassModel":
        return cls([0, 0, 0, A, B], field)

    a1 = property(lambda self: self.ainvs[0])
    a2 = property(lambda self: self.ainvs[1])
    a3 = property(lambda self: self.ainvs[2])
    a4 = property(lambda self: self.ainvs[3])
    a6 = property(lambda self: self.ainvs[4])

    def derived(self) -> DerivedQuantities:
        if self._derived is None:
            b2, b4, b6, b8 = b_invariants(*self.ainvs)
            c4 = b2 * b2 - 24 * b4
            c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
            disc = discriminant_of(b2, b4, b6, b8)
            j = c4 * c4 * c4 / disc if disc else None
            self._derived = DerivedQuantities(b2, b4, b6, b8, c4, c6, disc, j)
        return self._derived

    @property
    def discriminant(self) -> FieldElement:
        return self.derived().discriminant

    @property
    def j_invariant(self) -> FieldElement:
        return self.derived().j

    def __eq__(self, other):
        return isinstance(other, WeierstrassModel) and self.ainvs == other.ainvs

    def __hash__(self):
        return hash(self.ainvs)

    def __repr__(self):
        return f"WeierstrassModel({list(self.ainvs)!r} over {self.field})"

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "ainvs": [a.to_json() for a in self.ainvs]}


def derived(model: WeierstrassModel) -> DerivedQuantities:
    return model.derived()


@dataclass(frozen=True)
class Transform:
    """x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t."""

    u: FieldElement
    r: FieldElement
    s: FieldElement
    t: FieldElement

    def __post_init__(self):
        if not self.u:
            raise ZeroScale("u must be nonzero")

    @classmethod
    def make(cls, u=1, r=0, s=0, t=0, field: QuadraticField = QQ) -> "Transform":
        c = FieldElement.coerce
        if isinstance(u, int) and u == 0:
            raise ZeroScale("u must be nonzero")
        return cls(c(u, field), c(r, field), c(s, field), c(t, field))

    @classmethod
    def identity(cls, field: QuadraticField = QQ) -> "Transform":
        return cls.make(field=field)

    def is_identity(self) -> bool:
        return self.u == 1 and self.r.is_zero() and self.s.is_zero() and self.t.is_zero()

    def compose(self, other: "Transform") -> "Transform":
        """Apply self first, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        u1sq = u1 * u1
        return Transform(
            u1 * u2,
            r1 + u1sq * r2,
            s1 + u1 * s2,
            t1 + u1sq * s1 * r2 + u1sq * u1 * t2,
        )

    def inverse(self) -> "Transform":
        u, r, s, t = self.u, self.r, self.s, self.t
        ui = u.inverse()
        return Transform(ui, -r * ui * ui, -s * ui, (r * s - t) * ui * ui * ui)

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json() for k in ("u", "r", "s", "t")}


def transform_ainvs(ainvs, u, r, s, t):
    """Standard substitution formulas on raw coefficient tuples."""
    a1, a2, a3, a4, a6 = ainvs
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1
    if u == 1:
        return (n1, n2, n3, n4, n6)
    ui = u.inverse() if isinstance(u, FieldElement) else FieldElement(1, 0, u)
    ui2 = ui * ui
    ui3 = ui2 * ui
    return (n1 * ui, n2 * ui2, n3 * ui3, n4 * ui2 * ui2, n6 * ui3 * ui3)


def apply_transform(model: WeierstrassModel, t: Transform) -> WeierstrassModel:
    if t.u.is_zero():
        raise ZeroScale("u must be nonzero")
    return WeierstrassModel(transform_ainvs(model.ainvs, t.u, t.r, t.s, t.t), model.field)


def integral_scaling_exponent(ainvs, place: LocalPlace) -> int:
    """Smallest k >= 0 such that scaling by u = pi^-k makes every a_i integral."""
    k = 0
    for i, a in zip((1, 2, 3, 4, 6), ainvs):
        v = valuation(place, a)
        if v < 0:
            k = max(k, math.ceil(-v / i))
    return k


def integralize(model: WeierstrassModel, place: LocalPlace) -> tuple[WeierstrassModel, Transform]:
    k = integral_scaling_exponent(model.ainvs, place)
    if k == 0:
        return model, Transform.identity(model.field)
    u = place.uniformizer_inverse ** k
    t = Transform.make(u, field=model.field)
    return apply_transform(model, t), t


def quadratic_twist(model: WeierstrassModel, d) -> WeierstrassModel:
    """Model of the quadratic twist by d.

    Completes the square (legal in characteristic 0) and returns
    y^2 = x^3 + d b2/4 x^2 + d^2 b4/2 x + d^3 b6/4.
    """
    d = FieldElement.coerce(d, model.field)
    if d.is_zero():
        raise ZeroTwist("cannot twist by zero")
    dq = model.derived()
    return WeierstrassModel(
        [0, d * dq.b2 / 4, 0, d * d * dq.b4 / 2, d * d * d * dq.b6 / 4],
        d.field if model.field.D is None else model.field,
    )
