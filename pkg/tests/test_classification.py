import pytest

from endoalg.algebra import Subspace
from endoalg.catalog import (
    diagonal, direct_sum, fixture_algebras, lower_triangular, matrix_full, matrix_pattern, one_sided_order,
    truncated_polynomial, zero_product,
)
from endoalg.classification import (
    FALSE, TRUE, ThreeValued, center_subspace, classify, implication_table, jacobson_radical, radical_exhaustive,
)
from endoalg.errors import WrongRegime
from endoalg.scalars import ScalarRegime

GF3 = ScalarRegime.prime_field(3)


def test_radical_of_lower_triangular():
    a = lower_triangular(2)
    assert jacobson_radical(a) == Subspace.span(a, [a.by_label("E21")])


def test_radical_routes_agree_mod_3():
    for alg in (lower_triangular(2), matrix_full(2), truncated_polynomial(3), diagonal(2), one_sided_order()):
        rational = jacobson_radical(alg)
        finite = radical_exhaustive(alg.reduce_mod(3))
        assert finite.dim == rational.dim, alg.name


def test_trace_radical_needs_characteristic_zero():
    with pytest.raises(WrongRegime):
        jacobson_radical(lower_triangular(2, GF3))


def test_center():
    a = lower_triangular(2)
    assert center_subspace(a) == Subspace.span(a, [a.unit])
    assert center_subspace(zero_product(2)).is_whole()


def test_matrix_full_is_semisimple():
    rep = classify(matrix_full(2))
    assert rep.semisimple.verdict == TRUE and rep.semiprime.verdict == TRUE
    assert rep.radical.is_zero()


@pytest.mark.parametrize("stem", [s for s, a in fixture_algebras().items() if a.is_unital])
def test_unital_fixtures_are_very_nice_by_certificate(stem):
    rep = classify(fixture_algebras()[stem])
    assert rep.very_nice.verdict == TRUE and rep.very_nice.reason == "Certificate"
    assert rep.nice.verdict == TRUE


def test_zero_product_nice_but_not_very_nice():
    alg = zero_product(2)
    rep = classify(alg)
    assert rep.nice.verdict == TRUE and rep.nice.reason == "CompleteDescription"
    assert rep.very_nice.verdict == FALSE
    w = rep.very_nice.witness
    assert w is not None and w * w != w
    assert rep.without_order.verdict == FALSE


def test_truncated_polynomial_three_is_not_nice():
    # a = t^2 is in L but a t a = 0 while a t = t^3
    alg = truncated_polynomial(3)
    rep = classify(alg)
    assert rep.nice.verdict == FALSE and rep.very_nice.verdict == FALSE
    w = rep.nice.witness
    assert any(w * x * w != w * x for x in alg.basis_elements())


def test_finite_field_verdicts_are_exhaustive():
    rep = classify(lower_triangular(2, GF3))
    assert rep.very_nice.reason == "ExhaustiveProof" and rep.very_nice.verdict == TRUE
    rep = classify(zero_product(2, GF3))
    assert rep.very_nice.verdict == FALSE and rep.very_nice.reason == "Counterexample"


def test_rational_and_finite_nice_verdicts_agree():
    for alg in (lower_triangular(2), zero_product(2), truncated_polynomial(3), diagonal(2)):
        q = classify(alg)
        f = classify(alg.reduce_mod(3))
        assert (q.nice.verdict, q.very_nice.verdict) == (f.nice.verdict, f.very_nice.verdict), alg.name


def test_row_algebra_has_order():
    row = matrix_pattern(2, [(1, 1), (1, 2)], name="row")
    assert classify(row).without_order.verdict == FALSE


def test_three_valued_rejects_unknown_reasons():
    with pytest.raises(ValueError):
        ThreeValued("True", "Vibes")
    with pytest.raises(ValueError):
        ThreeValued("Maybe", "Certificate")


def test_report_invariants_hold():
    rep = classify(direct_sum(lower_triangular(2), zero_product(1)))
    assert not rep.has_unknown()
    assert "radical:" in rep.render()


def test_implication_table_finds_nice_without_order_counterexample():
    zoo = [lower_triangular(2), matrix_full(2), zero_product(2), diagonal(2)]
    rows = {(r.premise, r.conclusion): r for r in implication_table(zoo)}
    r = rows["nice", "without_order"]
    assert not r.held and r.counterexample == zero_product(2)
    assert "zero_product(2)" in r.render()
    assert rows["very_nice", "nice"].held
    assert rows["unital", "very_nice"].held
