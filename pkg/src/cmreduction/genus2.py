"""Admissible genus-2 reduction types (Namikawa-Ueno / Liu notation) under CM.

Type symbols are canonical ASCII strings:

* components are joined by "-", a star is a trailing "*", and a leading
  multiplicity is written as a digit ("2III", "2I_0*");
* the elementary potentially-good symbols are "I_0-0-0", "I_0-0-0*", "III",
  "IV", "VI", "VII", "VII*", "VIII-1".."VIII-4" and "IX-1".."IX-4";
* a parametric family ends in its parameter expression, written "d", "r" or
  "(d-k)/m" ("I_0*-I_0*-(d-2)/2"); an instance replaces the expression by its
  value ("I_0*-I_0*-1").
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidDegree, InvalidMu, MissingInvariant

VALID_MU = (2, 4, 6, 8, 10, 12)


def _check_mu(mu: int) -> int:
    if mu not in VALID_MU:
        raise InvalidMu(f"mu must be one of {VALID_MU}, got {mu}")
    return mu


@dataclass(frozen=True)
class QuarticCMSpec:
    mu: int
    label: str = ""

    def __post_init__(self):
        _check_mu(self.mu)


@dataclass(frozen=True)
class Family:
    """A parametric type: base symbol plus parameter (var - offset) / divisor."""

    base: str
    var: str
    offset: int = 0
    divisor: int = 1

    @property
    def expr(self) -> str:
        if self.divisor == 1:
            return self.var if self.offset == 0 else f"{self.var}-{self.offset}"
        return f"({self.var}-{self.offset})/{self.divisor}"

    def __str__(self):
        return f"{self.base}-{self.expr}"

    def evaluate(self, value: int) -> Fraction:
        return Fraction(value - self.offset, self.divisor)

    def instantiate(self, value: int) -> "NUTypeInstance | None":
        """Instance at var = value, or None when the parameter is not in Z>=0."""
        q = self.evaluate(value)
        if q.denominator != 1 or q < 0:
            return None
        return NUTypeInstance(self.base, self.expr, int(q))

    def template(self) -> "NUTypeInstance":
        return NUTypeInstance(self.base, self.expr, None)


@dataclass(frozen=True, order=True)
class NUTypeInstance:
    """One reduction type, possibly a family left uninstantiated.

    ``param_expr`` is None for elementary symbols; ``param_value`` is None when
    the family's variable was not supplied.
    """

    base: str
    param_expr: str | None = None
    param_value: int | None = None

    def __post_init__(self):
        if self.param_value is not None and (self.param_value < 0 or self.param_expr is None):
            raise ValueError("param_value must be a nonnegative integer of a parametric family")

    @property
    def is_parametric(self) -> bool:
        return self.param_expr is not None

    @property
    def instantiated(self) -> bool:
        return self.param_value is not None

    @property
    def family_symbol(self) -> str:
        return self.base if self.param_expr is None else f"{self.base}-{self.param_expr}"

    def __str__(self):
        if self.param_value is not None:
            return f"{self.base}-{self.param_value}"
        return self.family_symbol

    def to_json(self) -> dict:
        out = {"type": str(self), "base": self.base}
        if self.param_expr is not None:
            out["param_expr"] = self.param_expr
            out["param_value"] = self.param_value
            out["instantiated"] = self.instantiated
        return out


def _elementary(*names: str) -> frozenset[NUTypeInstance]:
    return frozenset(NUTypeInstance(n) for n in names)


GOOD = "I_0-0-0"
GOOD_STAR = "I_0-0-0*"

_POTENTIALLY_GOOD = {
    2: _elementary(GOOD, GOOD_STAR),
    4: _elementary(GOOD, GOOD_STAR, "VI"),
    6: _elementary(GOOD, GOOD_STAR, "III", "IV"),
    8: _elementary(GOOD, GOOD_STAR, "VI", "VII", "VII*"),
    10: _elementary(
        GOOD, GOOD_STAR,
        "IX-1", "IX-2", "IX-3", "IX-4",
        "VIII-1", "VIII-2", "VIII-3", "VIII-4",
    ),
    12: _elementary(GOOD, GOOD_STAR, "III", "IV", "VI"),
}

_POTENTIALLY_GOOD_RESTRICTED = {
    8: _elementary(GOOD, GOOD_STAR, "VI"),
    10: _elementary(GOOD, GOOD_STAR),
}

_I0S = Family("I_0*-I_0*", "d", 2, 2)
_DEGREE_4 = (
    Family("III-III", "d", 2, 4),
    Family("III-III*", "d", 4, 4),
    Family("III*-III*", "d", 6, 4),
    Family("2I_0*", "r", 1, 2),
)
_DEGREE_3 = (
    Family("IV-IV", "d", 2, 3),
    Family("IV-IV*", "d", 3, 3),
    Family("IV*-IV*", "d", 4, 3),
)
J2_EXCEPTION_FAMILIES = (
    Family("II-II", "d", 2, 6),
    Family("II-II*", "d", 6, 6),
    Family("II*-II*", "d", 10, 6),
    Family("I_0*-II", "d", 4, 6),
    Family("I_0*-II*", "d", 8, 6),
)
_TWO_IV = (Family("2IV", "r", 1, 3), Family("2IV*", "r", 2, 3))

_NOT_POTENTIALLY_GOOD: dict[int, tuple[Family, ...]] = {
    2: (_I0S,),
    10: (_I0S,),
    4: (_I0S, *_DEGREE_4),
    6: (_I0S, *_DEGREE_3, *J2_EXCEPTION_FAMILIES, *_TWO_IV),
    8: (_I0S, *_DEGREE_4, Family("2III", "r", 1, 4), Family("2III*", "r", 3, 4)),
    12: (
        _I0S, *_DEGREE_4, *_DEGREE_3, *J2_EXCEPTION_FAMILIES, *_TWO_IV,
        Family("2II", "r", 1, 6), Family("2II*", "r", 5, 6),
    ),
}

EXCLUDED_ELEMENTARY = ("II", "V", "V*")

EXCLUDED_FAMILIES = (
    Family("I_0-I_0", "d"),
    Family("I_0-I_0*", "d", 1, 2),
    Family("2I_0", "r"),
    Family("I_0-IV", "d", 1, 3),
    Family("I_0-IV*", "d", 2, 3),
    Family("I_0-III", "d", 1, 4),
    Family("I_0-III*", "d", 3, 4),
    Family("I_0*-III*", "d", 5, 4),
    Family("I_0*-III", "d", 3, 4),
    Family("2IV", "r", 1, 3),
    Family("2IV*", "r", 2, 3),
    Family("I_0-II", "d", 1, 6),
    Family("I_0-II*", "d", 5, 6),
    Family("I_0*-IV*", "d", 7, 6),
    Family("I_0*-IV", "d", 5, 6),
    Family("II*-IV", "d", 7, 6),
    Family("II-IV", "d", 3, 6),
    Family("II-IV*", "d", 5, 6),
    Family("II*-IV*", "d", 9, 6),
)


def families_not_potentially_good(mu: int) -> tuple[Family, ...]:
    return _NOT_POTENTIALLY_GOOD[_check_mu(mu)]


def allowed_potentially_good(mu: int) -> frozenset[NUTypeInstance]:
    return _POTENTIALLY_GOOD[_check_mu(mu)]


def allowed_potentially_good_restricted(mu: int) -> frozenset[NUTypeInstance]:
    """Sharper list when the stable special fibre is neither y^2=x^5-1 nor y^2=x^5-x."""
    if mu not in _POTENTIALLY_GOOD_RESTRICTED:
        raise InvalidMu(f"restricted table exists only for mu in (8, 10), got {mu}")
    return _POTENTIALLY_GOOD_RESTRICTED[mu]


@dataclass(frozen=True)
class Genus2Context:
    spec: QuarticCMSpec
    potentially_good: bool
    special_fiber_excluded_C0_C1: bool = False
    d: int | None = None
    r: int | None = None
    v_J2_odd: bool | None = None

    def __post_init__(self):
        if self.potentially_good and (self.d is not None or self.r is not None):
            raise ValueError("d and r only make sense without potentially good reduction")
        for name in ("d", "r"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be nonnegative")


def allowed_not_potentially_good(ctx: Genus2Context, require_instantiation: bool = False) -> frozenset[NUTypeInstance]:
    """Instantiate the families for ctx.spec.mu at the supplied d and r.

    A family is kept when its parameter is a nonnegative integer. Families
    whose variable is missing come back as uninstantiated templates, unless
    ``require_instantiation`` is set, in which case MissingInvariant is raised.
    """
    if ctx.potentially_good:
        raise ValueError("context has potentially good reduction")
    out = set()
    for fam in families_not_potentially_good(ctx.spec.mu):
        value = getattr(ctx, fam.var)
        if value is None:
            if require_instantiation:
                raise MissingInvariant(f"family {fam} needs {fam.var}")
            out.add(fam.template())
            continue
        inst = fam.instantiate(value)
        if inst is not None:
            out.add(inst)
    return frozenset(out)


def allowed_types(ctx: Genus2Context, require_instantiation: bool = False) -> frozenset[NUTypeInstance]:
    if ctx.potentially_good:
        if ctx.special_fiber_excluded_C0_C1 and ctx.spec.mu in _POTENTIALLY_GOOD_RESTRICTED:
            return allowed_potentially_good_restricted(ctx.spec.mu)
        return allowed_potentially_good(ctx.spec.mu)
    return allowed_not_potentially_good(ctx, require_instantiation)


def excluded_cm_types() -> frozenset[str]:
    """Symbols that never occur for a genus-2 curve with CM over the base."""
    return frozenset(EXCLUDED_ELEMENTARY) | frozenset(str(f) for f in EXCLUDED_FAMILIES)


def excluded_instances(d: int | None = None, r: int | None = None) -> frozenset[str]:
    """Excluded symbols with the parametric families evaluated at (d, r)."""
    out = set(EXCLUDED_ELEMENTARY)
    values = {"d": d, "r": r}
    for fam in EXCLUDED_FAMILIES:
        value = values[fam.var]
        if value is None:
            out.add(str(fam))
        else:
            inst = fam.instantiate(value)
            if inst is not None:
                out.add(str(inst))
    return frozenset(out)


def sorted_symbols(types) -> list[str]:
    return sorted(str(t) for t in types)


@dataclass(frozen=True)
class SingularityData:
    v_J2: int
    v_J10: int
    extension_degree: int
    d_L: Fraction
    d: Fraction

    @property
    def admissible(self) -> bool:
        """True when d is a positive integer."""
        return self.d.denominator == 1 and self.d > 0

    def to_json(self) -> dict:
        return {
            "v_J2": self.v_J2,
            "v_J10": self.v_J10,
            "extension_degree": self.extension_degree,
            "d_L": str(self.d_L),
            "d": str(self.d),
            "admissible": self.admissible,
        }


def degree_of_singularity(v_J2: int, v_J10: int, extension_degree: int) -> SingularityData:
    if extension_degree < 1:
        raise ValueError("extension degree must be at least 1")
    d_L = Fraction(v_J10 - 5 * v_J2, 12)
    return SingularityData(v_J2, v_J10, extension_degree, d_L, extension_degree * d_L)


_INSTANCE = re.compile(r"^(?P<base>.+)-(?P<param>\d+|[dr](?:-\d+)?|\([dr]-\d+\)/\d+)$")


def base_of(symbol) -> str:
    """Base of a parametric symbol or instance ("II-II-0" -> "II-II")."""
    if isinstance(symbol, NUTypeInstance):
        return symbol.base
    m = _INSTANCE.match(str(symbol).strip())
    return m.group("base") if m else str(symbol).strip()


@dataclass(frozen=True)
class ConstraintVerdict:
    requires_odd_v_J2: bool
    offending: tuple[str, ...] = ()

    def __str__(self):
        return "v_L(J2) must be odd" if self.requires_odd_v_J2 else "no parity constraint"

    def to_json(self) -> dict:
        return {"requires_odd_v_J2": self.requires_odd_v_J2, "verdict": str(self), "offending": list(self.offending)}


def j2_parity_constraint(mu: int, extension_degree: int, types) -> ConstraintVerdict:
    """Parity of v_L(J2) forced by semistable reduction after degree 6 or 12.

    The constraint is lifted only when every candidate type belongs to one of
    the five exception families; an empty candidate set lifts nothing.
    """
    _check_mu(mu)
    if extension_degree not in (6, 12):
        raise InvalidDegree(f"extension degree must be 6 or 12, got {extension_degree}")
    exempt = {f.base for f in J2_EXCEPTION_FAMILIES}
    types = list(types)
    offending = tuple(sorted(str(t) for t in types if base_of(t) not in exempt))
    # with no candidate types nothing is exempt
    return ConstraintVerdict(bool(offending) or not types, offending)


def semistability_degree_check(mu: int, degree: int) -> bool:
    """Whether a semistable-reduction extension of this degree is possible."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    return mu % degree == 0 and degree <= 10
