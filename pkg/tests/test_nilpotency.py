import pytest
from hypothesis import given

from endoalg.algebra import Subspace
from endoalg.catalog import (
    diagonal, direct_sum, lower_triangular, matrix_full, matrix_pattern, one_sided_order, truncated_polynomial,
    zero_product,
)
from endoalg.errors import InvariantViolation
from endoalg.nilpotency import (
    NilpotencyVerdict, annihilator_criterion_check, annihilator_subspaces, endomorphic_left_algebra_check,
    is_quasinilpotent, nil_index, nil_verdict, nilpotent_hierarchy_battery, nprime2_subspace, nprime3_subspace,
    two_sided_annihilator,
)
from endoalg.scalars import ScalarRegime

from strategies import ALGEBRAS, algebra_and_elements


def test_nprime3_goldens():
    assert nprime3_subspace(lower_triangular(2)).is_zero()
    assert nprime3_subspace(zero_product(3)).is_whole()
    tp = truncated_polynomial(3)
    assert nprime3_subspace(tp) == Subspace.span(tp, [tp.by_label("t^2"), tp.by_label("t^3")])


def test_annihilators_of_a_direct_sum():
    ds = direct_sum(lower_triangular(2), zero_product(1))
    left, right = annihilator_subspaces(ds)
    z = Subspace.span(ds, [ds.by_label("z1")])
    assert left == z and right == z
    assert two_sided_annihilator(ds) == z


def test_row_algebra_has_only_a_left_annihilator():
    row = matrix_pattern(2, [(1, 1), (1, 2)], name="row")
    left, right = annihilator_subspaces(row)
    assert not left.is_zero() and right.is_zero()
    assert two_sided_annihilator(row).is_zero()


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.name)
def test_annihilator_criterion_true_forms(alg):
    crit = annihilator_criterion_check(alg)
    assert crit.forward_holds and crit.left_form_holds and crit.corollary_holds


def test_one_sided_order_breaks_the_two_sided_equivalence():
    crit = annihilator_criterion_check(one_sided_order())
    assert crit.nprime3_trivial and not crit.without_order
    assert not crit.holds


@pytest.mark.parametrize("alg", [lower_triangular(2), matrix_full(2), diagonal(2), zero_product(2),
                                 truncated_polynomial(2), truncated_polynomial(3)], ids=lambda a: a.name)
def test_hierarchy_battery_over_Q(alg):
    assert nilpotent_hierarchy_battery(alg).holds


@pytest.mark.parametrize("p", [2, 3])
def test_hierarchy_battery_over_small_fields(p):
    for alg in (lower_triangular(2), truncated_polynomial(3), matrix_full(2)):
        assert nilpotent_hierarchy_battery(alg.reduce_mod(p)).holds


def test_endomorphic_left_algebra_check():
    assert endomorphic_left_algebra_check(zero_product(3))
    assert endomorphic_left_algebra_check(truncated_polynomial(2))
    assert not endomorphic_left_algebra_check(truncated_polynomial(3))
    assert not endomorphic_left_algebra_check(lower_triangular(2))


def test_nil_index_and_quasinilpotence():
    tp = truncated_polynomial(4)
    t = tp.by_label("t")
    assert nil_index(t) == 5
    assert is_quasinilpotent(t)
    a = lower_triangular(2)
    assert nil_index(a.by_label("E21")) == 2
    assert not is_quasinilpotent(a.by_label("E11"))
    assert nil_index(a.zero) == 1


def test_nice_note_left_annihilator_equals_nprime3():
    for alg in (lower_triangular(2), zero_product(2), diagonal(2)):
        assert nprime2_subspace(alg) == nprime3_subspace(alg)


def test_verdict_chain_is_enforced():
    with pytest.raises(InvariantViolation):
        NilpotencyVerdict(in_N3=False, in_N=True, nil_index=4, in_QN=True, in_Nprime3=True)


@given(algebra_and_elements(1))
def test_nilpotent_iff_quasinilpotent(case):
    alg, a = case
    v = nil_verdict(a)
    assert v.in_N == v.in_QN


@given(algebra_and_elements(1))
def test_nprime3_members_are_cube_zero(case):
    alg, a = case
    b = alg.zero
    for c, basis_vec in zip(a.coords, nprime3_subspace(alg).elements()):
        b = b + c * basis_vec
    assert nil_verdict(b).in_Nprime3
    assert (b * b * b).is_zero()


def test_battery_over_GF3_zero_product():
    alg = zero_product(2, ScalarRegime.prime_field(3))
    rep = nilpotent_hierarchy_battery(alg)
    assert rep.holds and len(rep.sets["N'3"]) == 9
