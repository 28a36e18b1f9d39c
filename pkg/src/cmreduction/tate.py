"""Tate's algorithm over Q_p and over completions of quadratic fields.

One code path for every residue characteristic: the residue-field steps
(singular point, double/triple roots, square roots) are done in F_q and lifted
back to small integral representatives.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import total_ordering

from .errors import SingularModel, UnsupportedPlace
from .localfield import (
    FieldElement,
    LocalPlace,
    ResidueElement,
    check_residue_size,
    count_distinct_roots,
)
from .weierstrass import (
    Transform,
    WeierstrassModel,
    b_invariants,
    discriminant_of,
    integral_scaling_exponent,
    transform_ainvs,
)

_SYMBOL = re.compile(r"^I(\d+)(\*?)$|^(II|III|IV)(\*?)$")


@total_ordering
@dataclass(frozen=True)
class KodairaType:
    """Kodaira symbol; family is 'I' or one of 'II', 'III', 'IV'."""

    family: str
    n: int = 0
    star: bool = False

    def __post_init__(self):
        if self.family not in ("I", "II", "III", "IV"):
            raise ValueError(f"unknown Kodaira family {self.family!r}")
        if self.n < 0 or (self.family != "I" and self.n != 0):
            raise ValueError("bad Kodaira index")

    @classmethod
    def parse(cls, text: str) -> "KodairaType":
        m = _SYMBOL.match(text.strip())
        if not m:
            raise ValueError(f"not a Kodaira symbol: {text!r}")
        if m.group(1) is not None:
            return cls("I", int(m.group(1)), bool(m.group(2)))
        return cls(m.group(3), 0, bool(m.group(4)))

    def __str__(self):
        if self.family == "I":
            return f"I{self.n}{'*' if self.star else ''}"
        return f"{self.family}{'*' if self.star else ''}"

    def __repr__(self):
        return f"KodairaType({str(self)!r})"

    def __lt__(self, other):
        if not isinstance(other, KodairaType):
            return NotImplemented
        return str(self) < str(other)

    @property
    def is_good(self) -> bool:
        return self.family == "I" and self.n == 0 and not self.star

    @property
    def is_multiplicative(self) -> bool:
        return self.family == "I" and self.n > 0 and not self.star

    @property
    def component_count(self) -> int:
        """Number of irreducible components of the special fibre."""
        if self.family == "I":
            if self.star:
                return self.n + 5
            return max(self.n, 1)
        base = {"II": 1, "III": 2, "IV": 3}[self.family]
        return {1: 9, 2: 8, 3: 7}[base] if self.star else base


def kodaira(text: str) -> KodairaType:
    return KodairaType.parse(text)


@dataclass(frozen=True)
class AbelianGroupDescriptor:
    """Finite abelian group as invariant factors d1 | d2 | ... (all >= 2)."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(self.factors)
        if any(f < 2 for f in fs):
            raise ValueError("invariant factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")
        object.__setattr__(self, "factors", fs)

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    def is_trivial(self) -> bool:
        return not self.factors

    def killed_by(self, m: int) -> bool:
        return m % self.exponent == 0

    def to_json(self) -> list[int]:
        return list(self.factors)

    def __str__(self):
        return " x ".join(f"Z/{f}" for f in self.factors) or "0"


def geometric_component_group(k: KodairaType) -> AbelianGroupDescriptor:
    if k.family == "I":
        if not k.star:
            return AbelianGroupDescriptor((k.n,) if k.n >= 2 else ())
        return AbelianGroupDescriptor((2, 2) if k.n % 2 == 0 else (4,))
    return AbelianGroupDescriptor({"II": (), "III": (2,), "IV": (3,)}[k.family])


@dataclass(frozen=True)
class LocalData:
    kodaira: KodairaType
    v_delta_min: int
    minimal_model: WeierstrassModel
    transform: Transform
    local_component_order: int
    geometric_component_group: AbelianGroupDescriptor
    place: LocalPlace = field(repr=False)
    conductor_exponent: int | None = None

    def to_json(self) -> dict:
        return {
            "kodaira": str(self.kodaira),
            "v_delta_min": self.v_delta_min,
            "c_local": self.local_component_order,
            "phi_geom": self.geometric_component_group.to_json(),
            "conductor_exponent": (
                self.conductor_exponent if self.conductor_exponent is not None else "unavailable"
            ),
            "minimal_model": [a.to_json() for a in self.minimal_model.ainvs],
        }


class _Local:
    """Valuation / reduction / lifting helpers bound to one place."""

    def __init__(self, place: LocalPlace):
        self.place = place
        self.p = place.p
        self.k = place.residue_field
        self.pi = place.uniformizer
        self.pinv = place.uniformizer_inverse

    def val(self, x):
        return self.place.valuation(x)

    def divides(self, x) -> bool:
        return x.is_zero() or self.val(x) > 0

    def red(self, x) -> ResidueElement:
        return self.place.reduce(x)

    def lift(self, r: ResidueElement) -> FieldElement:
        return self.place.lift(r)

    def div_pi(self, x, n=1):
        return x * self.pinv**n

    def quad_has_roots(self, a, b, c) -> bool:
        """Whether a X^2 + b X + c (residues) has a root in k."""
        if a.is_zero():
            return not b.is_zero() or c.is_zero()
        if self.p == 2:
            return count_distinct_roots(self.k, [c, b, a]) > 0
        return (b * b - 4 * a * c).is_square()

    def sqrt(self, r: ResidueElement) -> ResidueElement:
        s = r.sqrt()
        if s is None:
            raise ArithmeticError(f"{r} is not a square")  # pragma: no cover
        return s


def _check_place(place: LocalPlace, max_prime: int | None):
    if max_prime is not None:
        check_residue_size(place.p, place.f, max_prime)
    else:
        check_residue_size(place.p, place.f)


def tate_algorithm(model: WeierstrassModel, place: LocalPlace, max_prime: int | None = None) -> LocalData:
    """Kodaira type, minimal model and component groups of model at place."""
    if place.field != model.field and model.field.D is not None:
        raise ValueError(f"model over {model.field} but place over {place.field}")
    _check_place(place, max_prime)
    L = _Local(place)
    F = place.field
    pi = L.pi
    p = L.p
    one = FieldElement(1, 0, 1, F)
    zero = FieldElement(0, 0, 1, F)
    ainvs = tuple(FieldElement.coerce(a, F) for a in model.ainvs)
    transform = Transform(one, zero, zero, zero)

    def change(u=one, r=zero, s=zero, t=zero):
        nonlocal ainvs, transform
        ainvs = transform_ainvs(ainvs, u, r, s, t)
        transform = transform.compose(Transform(u, r, s, t))

    k = integral_scaling_exponent(ainvs, place)
    if k:
        change(u=L.pinv**k)

    while True:
        a1, a2, a3, a4, a6 = ainvs
        b2, b4, b6, b8 = b_invariants(*ainvs)
        delta = discriminant_of(b2, b4, b6, b8)
        if delta.is_zero():
            raise SingularModel("singular model")
        vD = L.val(delta)
        if vD == 0:
            kt, cp = KodairaType("I"), 1
            break

        c4 = b2 * b2 - 24 * b4
        c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6

        # move the singular point of the reduction to (0, 0)
        rb2, rb4, rb6 = L.red(b2), L.red(b4), L.red(b6)
        if p == 2:
            if L.divides(b2):
                xs = L.sqrt(L.red(a4))
                ys = L.sqrt(xs * xs * xs + L.red(a2) * xs * xs + L.red(a4) * xs + L.red(a6))
            else:
                ra1 = L.red(a1)
                xs = L.red(a3) / ra1
                ys = (xs * xs + L.red(a4)) / ra1
        elif p == 3:
            if L.divides(b2):
                xs = (-rb6).cube_root_char3()
            else:
                xs = -rb4 / rb2
            ys = L.red(a1) * xs + L.red(a3)
        else:
            rc4 = L.red(c4)
            if rc4.is_zero():
                xs = -rb2 / 12
            else:
                xs = -(L.red(c6) + rb2 * rc4) / (rc4 * 12)
            ys = -(L.red(a1) * xs + L.red(a3)) / 2
        change(r=L.lift(xs), t=L.lift(ys))
        a1, a2, a3, a4, a6 = ainvs
        assert L.divides(a3) and L.divides(a4) and L.divides(a6), "singular point not at origin"
        b2, b4, b6, b8 = b_invariants(*ainvs)

        if not L.divides(b2):
            split = L.quad_has_roots(L.k.one, L.red(a1), -L.red(a2))
            kt = KodairaType("I", vD)
            cp = vD if split else (2 if vD % 2 == 0 else 1)
            break

        if L.val(a6) < 2:
            kt, cp = KodairaType("II"), 1
            break
        if L.val(b8) < 3:
            kt, cp = KodairaType("III"), 2
            break
        if L.val(b6) < 3:
            has = L.quad_has_roots(L.k.one, L.red(L.div_pi(a3)), -L.red(L.div_pi(a6, 2)))
            kt, cp = KodairaType("IV"), (3 if has else 1)
            break

        # arrange pi | a1, a2; pi^2 | a3, a4; pi^3 | a6
        if p == 2:
            s = L.lift(L.sqrt(L.red(a2)))
            t = pi * L.lift(L.sqrt(L.red(L.div_pi(a6, 2))))
        else:
            s = -a1 / 2
            t = -a3 / 2
        change(s=s, t=t)
        a1, a2, a3, a4, a6 = ainvs
        assert (
            L.divides(a1) and L.divides(a2) and L.val(a3) >= 2 and L.val(a4) >= 2 and L.val(a6) >= 3
        ), "failed to reach the I0* normal form"

        # cubic T^3 + b T^2 + c T + d
        b = L.red(L.div_pi(a2))
        c = L.red(L.div_pi(a4, 2))
        d = L.red(L.div_pi(a6, 3))
        w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c
        x = 3 * c - b * b
        if not w.is_zero():
            nroots = count_distinct_roots(L.k, [d, c, b, L.k.one])
            kt, cp = KodairaType("I", 0, True), 1 + nroots
            break

        if not x.is_zero():
            # double root: I_m* with m >= 1
            if p == 2:
                root = L.sqrt(c)
            elif p == 3:
                root = c / b
            else:
                root = (b * c - 9 * d) / (x * 2)
            change(r=pi * L.lift(root))
            ix = iy = 3
            mx = my = pi * pi
            while True:
                a1, a2, a3, a4, a6 = ainvs
                a2t = L.div_pi(a2)
                a3t = a3 / my
                a6t = a6 / (mx * my)
                if L.divides(a3t * a3t + 4 * a6t):
                    if p == 2:
                        tt = my * L.lift(L.sqrt(L.red(a6t)))
                    else:
                        tt = my * L.lift(-L.red(a3t) / 2)
                    change(t=tt)
                    my = my * pi
                    iy += 1
                    a1, a2, a3, a4, a6 = ainvs
                    a2t = L.div_pi(a2)
                    a4t = a4 / (pi * mx)
                    a6t = a6 / (mx * my)
                    if L.divides(a4t * a4t - 4 * a6t * a2t):
                        if p == 2:
                            rr = mx * L.lift(L.sqrt(L.red(a6t) / L.red(a2t)))
                        else:
                            rr = mx * L.lift(-L.red(a4t) / (L.red(a2t) * 2))
                        change(r=rr)
                        mx = mx * pi
                        ix += 1
                    else:
                        has = L.quad_has_roots(L.red(a2t), L.red(a4t), L.red(a6t))
                        cp = 4 if has else 2
                        break
                else:
                    has = L.quad_has_roots(L.k.one, L.red(a3t), -L.red(a6t))
                    cp = 4 if has else 2
                    break
            kt = KodairaType("I", ix + iy - 5, True)
            break

        # triple root
        if p == 3:
            root = (-d).cube_root_char3()
        else:
            root = -b / 3
        change(r=pi * L.lift(root))
        a1, a2, a3, a4, a6 = ainvs
        a3t = L.div_pi(a3, 2)
        a6t = L.div_pi(a6, 4)
        if not L.divides(a3t * a3t + 4 * a6t):
            has = L.quad_has_roots(L.k.one, L.red(a3t), -L.red(a6t))
            kt, cp = KodairaType("IV", 0, True), (3 if has else 1)
            break
        if p == 2:
            tt = pi * pi * L.lift(L.sqrt(L.red(a6t)))
        else:
            tt = pi * pi * L.lift(-L.red(a3t) / 2)
        change(t=tt)
        a1, a2, a3, a4, a6 = ainvs
        if L.val(a4) < 4:
            kt, cp = KodairaType("III", 0, True), 2
            break
        if L.val(a6) < 6:
            kt, cp = KodairaType("II", 0, True), 1
            break
        # not minimal: scale by u = pi and start over
        change(u=pi)

    minimal = WeierstrassModel(ainvs, F)
    v_min = L.val(minimal.discriminant)
    conductor = v_min - kt.component_count + 1 if p >= 5 else None
    return LocalData(
        kodaira=kt,
        v_delta_min=v_min,
        minimal_model=minimal,
        transform=transform,
        local_component_order=cp,
        geometric_component_group=geometric_component_group(kt),
        place=place,
        conductor_exponent=conductor,
    )


def minimal_model(model: WeierstrassModel, place: LocalPlace, max_prime: int | None = None):
    ld = tate_algorithm(model, place, max_prime)
    return ld.minimal_model, ld.transform


__all__ = [
    "AbelianGroupDescriptor",
    "KodairaType",
    "LocalData",
    "UnsupportedPlace",
    "geometric_component_group",
    "kodaira",
    "minimal_model",
    "tate_algorithm",
]
