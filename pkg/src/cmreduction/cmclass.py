"""Reduction-type tables for CM elliptic curves and a per-curve conformance check."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import HypothesisNotMet, NotCovered, NotImaginary
from .localfield import LocalPlace, QuadraticField
from .tate import KodairaType, LocalData, kodaira, tate_algorithm
from .weierstrass import WeierstrassModel


class JClass(enum.Enum):
    ZERO = "zero"
    J1728 = "j1728"
    GENERIC = "generic"

    @classmethod
    def of(cls, j) -> "JClass":
        if j == 0:
            return cls.ZERO
        if j == 1728:
            return cls.J1728
        return cls.GENERIC


def mu_of_imaginary_quadratic(field: QuadraticField) -> int:
    """Number of roots of unity in an imaginary quadratic field."""
    if field.D is None or field.D > 0:
        raise NotImaginary(f"{field} is not imaginary quadratic")
    return {-1: 4, -3: 6}.get(field.D, 2)


@dataclass(frozen=True)
class CMSpec:
    """Caller-asserted CM data for a curve: nothing here is computed from the model."""

    field: QuadraticField
    order_is_maximal: bool = True
    defined_over_base: bool = True

    def __post_init__(self):
        mu_of_imaginary_quadratic(self.field)

    @property
    def mu(self) -> int:
        return mu_of_imaginary_quadratic(self.field)

    @property
    def needs_maximal_order(self) -> bool:
        return self.field.D in (-1, -3)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "order_is_maximal": self.order_is_maximal,
            "defined_over_base": self.defined_over_base,
        }


def _types(*names: str) -> frozenset[KodairaType]:
    return frozenset(kodaira(n) for n in names)


# Each row: (predicate on p, predicate on v(p), j class, allowed types).
_CM_ROWS = (
    (lambda p: p != 2, lambda vp: True, JClass.GENERIC, _types("I0", "I0*")),
    (lambda p: p == 2, lambda vp: vp == 1, JClass.GENERIC, _types("I0", "I4*", "I8*", "II", "II*")),
    (lambda p: p != 2, lambda vp: True, JClass.J1728, _types("I0", "III", "III*", "I0*")),
    (lambda p: p != 3, lambda vp: True, JClass.ZERO, _types("I0", "II", "II*", "IV", "IV*", "I0*")),
)

_POTENTIAL_CM_ROWS = (
    (lambda p: p != 2, lambda vp: True, JClass.GENERIC, _types("I0", "III", "III*", "I0*")),
    (lambda p: p != 2, lambda vp: True, JClass.J1728, _types("I0", "III", "III*", "I0*")),
    (lambda p: p == 2, lambda vp: vp == 1, JClass.J1728, _types("I0", "II", "III", "III*", "I2*", "I3*")),
    (lambda p: p != 3, lambda vp: True, JClass.ZERO, _types("I0", "II", "II*", "IV", "IV*", "I0*")),
)


def _lookup(rows, p: int, vp: int, jc: JClass) -> frozenset[KodairaType]:
    jc = JClass(jc)
    for p_ok, vp_ok, row_j, allowed in rows:
        if row_j is jc and p_ok(p) and vp_ok(vp):
            return allowed
    raise NotCovered(f"no table row for p={p}, v(p)={vp}, j class {jc.value}")


def allowed_types_cm(p: int, vp: int, jc: JClass) -> frozenset[KodairaType]:
    """Possible types when the CM is defined over the base field."""
    return _lookup(_CM_ROWS, p, vp, jc)


def allowed_types_potential_cm(p: int, vp: int, jc: JClass) -> frozenset[KodairaType]:
    """Possible types when the CM is only defined over an extension."""
    return _lookup(_POTENTIAL_CM_ROWS, p, vp, jc)


def sorted_types(types) -> list[str]:
    return sorted(str(t) for t in types)


@dataclass
class ConformanceReport:
    label: str
    local_data: LocalData
    jclass: JClass
    allowed: frozenset[KodairaType]
    divisibility: dict[str, bool] = field(default_factory=dict)
    exclusions: dict[str, bool] = field(default_factory=dict)
    phi_checks: dict[str, bool] = field(default_factory=dict)
    expected: dict | None = None
    mismatches: list[str] = field(default_factory=list)

    @property
    def computed(self) -> KodairaType:
        return self.local_data.kodaira

    @property
    def in_allowed(self) -> bool:
        return self.computed in self.allowed

    @property
    def passed(self) -> bool:
        checks = (*self.divisibility.values(), *self.exclusions.values(), *self.phi_checks.values())
        return self.in_allowed and all(checks) and not self.mismatches

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "computed": str(self.computed),
            "allowed": sorted_types(self.allowed),
            "verdict": self.verdict,
            "divisibility": dict(self.divisibility),
            "phi_geom": self.local_data.geometric_component_group.to_json(),
        }
        if self.exclusions:
            out["exclusions"] = dict(self.exclusions)
        if self.phi_checks:
            out["phi_checks"] = dict(self.phi_checks)
        if self.mismatches:
            out["mismatches"] = list(self.mismatches)
        out["local_data"] = self.local_data.to_json()
        return out


_TRIVIAL_OR_KLEIN = ((), (2, 2))


def check_curve(
    model: WeierstrassModel,
    place: LocalPlace,
    spec: CMSpec,
    label: str = "",
    expected: dict | None = None,
    max_prime: int | None = None,
) -> ConformanceReport:
    """Run Tate's algorithm and test the result against the CM tables.

    ``expected`` may carry "kodaira", "j" and "v_delta_min"; any disagreement
    is recorded as a mismatch and makes the verdict FAIL.
    Raises HypothesisNotMet when no table row applies or when the field is
    Q(i) or Q(sqrt -3) without a maximal endomorphism order.
    """
    if spec.needs_maximal_order and not spec.order_is_maximal:
        raise HypothesisNotMet(f"tables need End = O_K over {spec.field}")
    j = model.j_invariant
    jc = JClass.of(j)
    p, vp = place.p, place.e_abs
    lookup = allowed_types_cm if spec.defined_over_base else allowed_types_potential_cm
    try:
        allowed = lookup(p, vp, jc)
    except NotCovered as exc:
        raise HypothesisNotMet(str(exc)) from exc

    ld = tate_algorithm(model, place, max_prime)
    kt = ld.kodaira
    report = ConformanceReport(label, ld, jc, allowed, expected=expected)

    if jc is JClass.J1728 and p != 2:
        report.divisibility["mod3"] = ld.v_delta_min % 3 == 0
    if jc is JClass.ZERO and p != 3:
        report.divisibility["mod2"] = ld.v_delta_min % 2 == 0
    if jc is JClass.J1728 and p == 2:
        report.exclusions["no_IV"] = str(kt) not in ("IV", "IV*")
    if jc is JClass.ZERO and p == 3 and vp % 2 == 0:
        report.exclusions["no_III"] = str(kt) not in ("III", "III*")

    phi = ld.geometric_component_group
    if spec.defined_over_base:
        if p != 2 and not spec.needs_maximal_order and jc is JClass.GENERIC:
            report.phi_checks["trivial_or_klein"] = phi.factors in _TRIVIAL_OR_KLEIN
        report.phi_checks["killed_by_mu"] = phi.killed_by(spec.mu)

    if expected:
        if "kodaira" in expected and KodairaType.parse(expected["kodaira"]) != kt:
            report.mismatches.append(f"kodaira: expected {expected['kodaira']}, computed {kt}")
        if expected.get("j") is not None and expected["j"] != j:
            report.mismatches.append(f"j: expected {expected['j']}, computed {j}")
        if expected.get("v_delta_min") is not None and expected["v_delta_min"] != ld.v_delta_min:
            report.mismatches.append(
                f"v_delta_min: expected {expected['v_delta_min']}, computed {ld.v_delta_min}"
            )
    return report
