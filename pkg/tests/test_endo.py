from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from endoalg.catalog import (
    diagonal, direct_sum, lower_triangular, matrix_full, one_sided_order, truncated_polynomial, upper_triangular,
    zero_product,
)
from endoalg.endo import (
    EXACT_SOLVE, ElementSetDescription, conjugate_in_unitalization, describe_set, eI_in_I, is_idempotent,
    is_in_L, is_in_R, point_in_family, random_invertibles, stabilization_index, verify_parametric_family,
    zemanek_reading_report,
)
from endoalg.errors import NotEndomorphicLeft
from endoalg.parametric import ParametricElement

from strategies import ALGEBRAS


def lt():
    a = lower_triangular(2)
    return a, a.by_label("E11"), a.by_label("E21"), a.by_label("E22")


def test_lower_triangular_L_and_R():
    a, e11, e21, e22 = lt()
    L = describe_set(a, "L")
    R = describe_set(a, "R")
    assert L.complete and R.complete and L.provenance == EXACT_SOLVE
    assert L.points == (a.zero, a.unit)
    (f,) = L.families
    assert f.base() == e11 and f.directions() == [e21]
    (g,) = R.families
    assert g.base() == e22 and g.directions() == [e21]
    assert L.render() == "L(A) = {0, 1} ∪ {E11 + α*E21 : α ∈ K}   [complete, ExactSolve]"
    assert R.render() == "R(A) = {0, 1} ∪ {α*E21 + E22 : α ∈ K}   [complete, ExactSolve]"


def test_membership_by_hand():
    a, e11, e21, e22 = lt()
    assert is_in_L(e11 + 7 * e21)
    assert not is_in_L(e22)
    assert is_in_R(e22 - 3 * e21)
    assert not is_in_R(e11 + e21)
    assert is_idempotent(e11 + e21)


def test_mirror_images():
    # upper triangular is the transpose of lower triangular, so L and R swap
    up = upper_triangular(2)
    L = describe_set(up, "L")
    assert L.families[0].base() == up.by_label("E22")
    assert describe_set(up, "R").families[0].base() == up.by_label("E11")


@pytest.mark.parametrize("alg, expected", [
    (matrix_full(2), "L(A) = {0, 1}   [complete, ExactSolve]"),
    (diagonal(2), "L(A) = {0, E22, E11, 1}   [complete, ExactSolve]"),
    (zero_product(2), "L(A) = {α*z1 + β*z2 : α ∈ K, β ∈ K}   [complete, ExactSolve]"),
    (truncated_polynomial(2), "L(A) = {α*t + β*t^2 : α ∈ K, β ∈ K}   [complete, ExactSolve]"),
    (truncated_polynomial(3), "L(A) = {α*t^2 + β*t^3 : α ∈ K, β ∈ K}   [complete, ExactSolve]"),
    (one_sided_order(), "L(A) = {0} ∪ {e + α*c : α ∈ K}   [complete, ExactSolve]"),
])
def test_golden_L_descriptions(alg, expected):
    assert describe_set(alg, "L").render() == expected


def test_truncated_polynomial_four():
    alg = truncated_polynomial(4)
    L = describe_set(alg, "L")
    assert L.complete
    (f,) = L.families
    assert {alg.labels[i] for d in f.directions() for i, x in enumerate(d.coords) if x} == {"t^3", "t^4"}
    assert not is_in_L(alg.by_label("t^2"))


def test_stabilization_index():
    a, e11, e21, e22 = lt()
    assert stabilization_index(e11 + e21) == 1
    t = truncated_polynomial(3)
    assert stabilization_index(t.by_label("t^2")) == 2
    with pytest.raises(NotEndomorphicLeft):
        stabilization_index(t.by_label("t"))


def test_family_verification_is_an_identity():
    a, e11, e21, e22 = lt()
    assert verify_parametric_family(ParametricElement.affine(e11, [e21]), "L")
    assert not verify_parametric_family(ParametricElement.affine(e22, [e21]), "L")
    assert verify_parametric_family(ParametricElement.affine(e22, [e21]), "R")


def test_description_rejects_false_points():
    a, e11, e21, e22 = lt()
    with pytest.raises(AssertionError):
        ElementSetDescription(a, "L", (e22,), (), True, EXACT_SOLVE)


def test_point_in_family():
    a, e11, e21, e22 = lt()
    f = ParametricElement.affine(e11, [e21])
    assert point_in_family(e11 - Fraction(5, 2) * e21, f)
    assert not point_in_family(e22, f)


def test_reading_report():
    by = {r.reading: r for r in zemanek_reading_report()}
    assert not by["literal"].is_algebra
    assert by["upper"].e_is_central is False and by["upper"].e_maps_idempotents_to_idempotents is False
    lower = by["lower (transpose)"]
    assert lower.e_is_central is False and lower.e_maps_idempotents_to_idempotents is True


def test_eI_in_I_for_central_idempotent():
    a = diagonal(2)
    assert eI_in_I(a, a.by_label("E11")) == (True, None)


def test_direct_sum_adds_the_zero_summand():
    ds = direct_sum(lower_triangular(2), zero_product(1))
    L = describe_set(ds, "L")
    assert L.complete and len(L.families) == 3
    z = ds.by_label("z1")
    assert is_in_L(ds.unit if ds.is_unital else z)
    assert all(is_in_L(x) for x in L.sample())


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.name)
def test_described_points_satisfy_their_identities(alg):
    for kind, test in (("L", is_in_L), ("R", is_in_R), ("I", is_idempotent)):
        desc = describe_set(alg, kind)
        assert all(test(x) for x in desc.sample())


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.name)
def test_stabilization_at_most_three(alg):
    for x in describe_set(alg, "L").sample():
        assert stabilization_index(x) <= 3


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.name)
def test_conjugation_preserves_L(alg):
    for b in random_invertibles(alg, 5, seed=1):
        for x in describe_set(alg, "L").sample((0, 1, -2)):
            y = conjugate_in_unitalization(b, x)
            assert is_in_L(y)


@given(st.sampled_from(ALGEBRAS), st.data())
def test_products_of_L_elements_stay_in_L(alg, data):
    pts = describe_set(alg, "L").sample()
    a = data.draw(st.sampled_from(pts))
    b = data.draw(st.sampled_from(pts))
    assert is_in_L(a * b)


@given(st.sampled_from(ALGEBRAS), st.data())
def test_L_times_I_inside_I(alg, data):
    a = data.draw(st.sampled_from(describe_set(alg, "L").sample()))
    e = data.draw(st.sampled_from(describe_set(alg, "I").sample()))
    assert is_idempotent(a * e)


@given(st.sampled_from(ALGEBRAS), st.data())
def test_cube_equals_fourth_power_on_L(alg, data):
    a = data.draw(st.sampled_from(describe_set(alg, "L").sample()))
    assert a * a * a == a * a * a * a
