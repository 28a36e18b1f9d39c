import random

import pytest

from cmreduction.cmclass import (
    CMSpec,
    JClass,
    allowed_types_cm,
    allowed_types_potential_cm,
    check_curve,
    mu_of_imaginary_quadratic,
    sorted_types,
)
from cmreduction.errors import HypothesisNotMet, NotCovered, NotImaginary
from cmreduction.localfield import QQ, QuadraticField, get_place
from cmreduction.weierstrass import WeierstrassModel

G, J1728, J0 = JClass.GENERIC, JClass.J1728, JClass.ZERO

# (p, v(p), j class) -> allowed set, one entry per table row
CM_GOLDEN = [
    ((3, 1, G), {"I0", "I0*"}),
    ((2, 1, G), {"I0", "I4*", "I8*", "II", "II*"}),
    ((5, 2, J1728), {"I0", "III", "III*", "I0*"}),
    ((2, 1, J0), {"I0", "II", "II*", "IV", "IV*", "I0*"}),
]
POTENTIAL_GOLDEN = [
    ((7, 1, G), {"I0", "III", "III*", "I0*"}),
    ((3, 2, J1728), {"I0", "III", "III*", "I0*"}),
    ((2, 1, J1728), {"I0", "II", "III", "III*", "I2*", "I3*"}),
    ((5, 1, J0), {"I0", "II", "II*", "IV", "IV*", "I0*"}),
]


@pytest.mark.parametrize("key,expected", CM_GOLDEN)
def test_cm_table_rows(key, expected):
    assert set(sorted_types(allowed_types_cm(*key))) == expected


@pytest.mark.parametrize("key,expected", POTENTIAL_GOLDEN)
def test_potential_cm_table_rows(key, expected):
    assert set(sorted_types(allowed_types_potential_cm(*key))) == expected


@pytest.mark.parametrize("p", [3, 5, 7, 11, 101])
@pytest.mark.parametrize("vp", [1, 2, 3])
def test_rows_independent_of_odd_p_and_vp(p, vp):
    assert allowed_types_cm(p, vp, G) == allowed_types_cm(3, 1, G)
    assert allowed_types_cm(p, vp, J1728) == allowed_types_cm(5, 2, J1728)
    assert allowed_types_potential_cm(p, vp, G) == allowed_types_potential_cm(7, 1, G)


@pytest.mark.parametrize(
    "lookup,key",
    [
        (allowed_types_cm, (2, 2, G)),
        (allowed_types_cm, (2, 1, J1728)),
        (allowed_types_cm, (3, 1, J0)),
        (allowed_types_potential_cm, (2, 1, G)),
        (allowed_types_potential_cm, (2, 2, J1728)),
        (allowed_types_potential_cm, (3, 2, J0)),
    ],
)
def test_uncovered_combinations(lookup, key):
    with pytest.raises(NotCovered):
        lookup(*key)


def test_cm_rows_contained_in_potential_rows_where_both_exist():
    for p in (2, 3, 5, 7):
        for vp in (1, 2):
            for jc in JClass:
                try:
                    a = allowed_types_cm(p, vp, jc)
                    b = allowed_types_potential_cm(p, vp, jc)
                except NotCovered:
                    continue
                assert a <= b


def test_jclass_of():
    assert JClass.of(0) is J0 and JClass.of(1728) is J1728 and JClass.of(-3375) is G


def test_mu():
    assert mu_of_imaginary_quadratic(QuadraticField(-1)) == 4
    assert mu_of_imaginary_quadratic(QuadraticField(-3)) == 6
    assert mu_of_imaginary_quadratic(QuadraticField(-7)) == 2
    with pytest.raises(NotImaginary):
        mu_of_imaginary_quadratic(QuadraticField(5))
    with pytest.raises(NotImaginary):
        CMSpec(QQ)


def test_non_maximal_order_over_special_fields_not_covered():
    Qi = QuadraticField(-1)
    m = WeierstrassModel.short(3, 0, Qi)
    with pytest.raises(HypothesisNotMet):
        check_curve(m, get_place(Qi, 3), CMSpec(Qi, order_is_maximal=False))
    # for other fields the order does not matter
    Q7 = QuadraticField(-7)
    a = Q7.omega()
    m = WeierstrassModel([a, -a - 1, 0, 1, 0], Q7)
    rep = check_curve(m, get_place(Q7, 2, 0), CMSpec(Q7, order_is_maximal=False))
    assert rep.passed


def test_uncovered_place_raises_hypothesis_not_met():
    Q3 = QuadraticField(-3)
    m = WeierstrassModel.short(0, 1, Q3)
    with pytest.raises(HypothesisNotMet):
        check_curve(m, get_place(Q3, 3), CMSpec(Q3))


@pytest.mark.parametrize(
    "A,expected",
    [(3, "III"), (9, "I0*"), (27, "III*"), (1, "I0")],
)
def test_gaussian_curves_at_three(A, expected):
    Qi = QuadraticField(-1)
    rep = check_curve(WeierstrassModel.short(A, 0, Qi), get_place(Qi, 3), CMSpec(Qi))
    assert str(rep.computed) == expected and rep.passed
    assert rep.divisibility == {"mod3": True}
    assert rep.phi_checks["killed_by_mu"]


@pytest.mark.parametrize("B,expected", [(-1, "II"), (1, "IV"), (4, "IV*"), (-4, "I0*"), (-16, "II*")])
def test_eisenstein_curves_at_two(B, expected):
    Q3 = QuadraticField(-3)
    rep = check_curve(WeierstrassModel.short(0, B, Q3), get_place(Q3, 2), CMSpec(Q3))
    assert str(rep.computed) == expected and rep.passed
    assert rep.divisibility == {"mod2": True}


def test_expected_mismatch_fails():
    m = WeierstrassModel([1, -1, 0, -2, -1])
    spec = CMSpec(QuadraticField(-7), defined_over_base=False)
    rep = check_curve(m, get_place(QQ, 7), spec, "49.a4", expected={"kodaira": "III*"})
    assert not rep.passed and rep.verdict == "FAIL" and rep.mismatches
    rep = check_curve(m, get_place(QQ, 7), spec, "49.a4", expected={"kodaira": "III", "j": -3375})
    assert rep.passed
    js = rep.to_json()
    assert js["computed"] == "III" and js["verdict"] == "PASS" and "mismatches" not in js


def test_non_cm_curve_outside_table_is_flagged():
    # 11a1 is not CM: its I5 fibre is outside every row, so asserting CM must fail
    rep = check_curve(WeierstrassModel([0, -1, 1, -10, -20]), get_place(QQ, 11), CMSpec(QuadraticField(-7), defined_over_base=False))
    assert not rep.in_allowed and not rep.passed


def test_divisibility_flags_random_j_special_models():
    rng = random.Random(3)
    Qi, Q3 = QuadraticField(-1), QuadraticField(-3)
    for _ in range(150):
        A = rng.choice([1, -1]) * rng.randint(1, 400)
        B = rng.choice([1, -1]) * rng.randint(1, 400)
        for p in (3, 5):
            rep = check_curve(WeierstrassModel.short(A, 0, Qi), get_place(Qi, p), CMSpec(Qi))
            assert rep.divisibility["mod3"] and rep.passed
        for p in (2, 7):
            rep = check_curve(WeierstrassModel.short(0, B, Q3), get_place(Q3, p), CMSpec(Q3))
            assert rep.divisibility["mod2"] and rep.passed
