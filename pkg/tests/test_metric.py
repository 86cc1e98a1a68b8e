from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endoalg.algebra import Subspace, left_regular_matrix
from endoalg.catalog import lower_triangular, matrix_full, truncated_polynomial, zero_product
from endoalg.errors import ToleranceError, WrongRegime
from endoalg.metric import (
    NormedContext, algebra_norm, cauchy_bound, minimize_convex_1d, minimize_pl_1d, set_distance,
    spectral_radius,
)
from endoalg.parametric import LINE, RAY, ParametricElement
from endoalg.scalars import ScalarRegime

from strategies import algebra_and_elements, scalars

A = lower_triangular(2)
E11, E21, E22 = (A.by_label(x) for x in ("E11", "E21", "E22"))


def test_norm_goldens():
    assert algebra_norm(E11 + 5 * E21) == 6
    assert algebra_norm(A.unit) == 1
    assert NormedContext(A).carrier == "A"
    assert NormedContext(zero_product(2)).carrier == "A~"


def test_norm_needs_the_rationals():
    with pytest.raises(WrongRegime):
        NormedContext(lower_triangular(2, ScalarRegime.prime_field(3)))


@settings(max_examples=1000)
@given(algebra_and_elements())
def test_norm_is_submultiplicative(case):
    alg, a, b = case
    ctx = NormedContext(alg)
    assert algebra_norm(a * b, ctx) <= algebra_norm(a, ctx) * algebra_norm(b, ctx)


@given(algebra_and_elements(1))
def test_norm_is_homogeneous_and_definite(case):
    alg, a = case
    ctx = NormedContext(alg)
    assert algebra_norm(-3 * a, ctx) == 3 * algebra_norm(a, ctx)
    assert (algebra_norm(a, ctx) == 0) == a.is_zero()


def test_spectral_radius_goldens():
    assert spectral_radius(E21) == 0
    assert spectral_radius(E11 + 3 * E21) == pytest.approx(1, abs=1e-12)
    assert spectral_radius(E22 - 7 * E21) == pytest.approx(1, abs=1e-12)
    assert spectral_radius(truncated_polynomial(3).by_label("t")) == 0


@given(algebra_and_elements(1))
def test_spectral_radius_matches_numpy_eigenvalues(case):
    alg, a = case
    m = np.array([[float(x) for x in row] for row in left_regular_matrix(a, on="A~")])
    ref = max(abs(np.linalg.eigvals(m)))
    assert spectral_radius(a) == pytest.approx(ref, rel=1e-6, abs=1e-6)
    assert spectral_radius(a) <= float(cauchy_bound(a)) + 1e-9


@given(algebra_and_elements(1))
def test_spectral_radius_below_norm(case):
    alg, a = case
    assert spectral_radius(a) <= float(algebra_norm(a)) + 1e-9


@given(algebra_and_elements(), st.sampled_from([LINE, RAY]))
def test_pl_minimum_is_exact(case, domain):
    alg, a, d = case
    ctx = NormedContext(alg)
    m0, m1 = ctx.matrix(a), ctx.matrix(d)
    res = minimize_pl_1d(m0, m1, domain)
    (t,) = res.argmin
    assert algebra_norm(a + t * d, ctx) == res.value
    grid = [Fraction(k, 4) for k in range(-80, 81)]
    if domain == RAY:
        assert t >= 0
        grid = [g for g in grid if g >= 0]
    assert all(algebra_norm(a + g * d, ctx) >= res.value for g in grid)


def test_convex_bracket_contains_the_minimum():
    f = lambda x: abs(x - Fraction(1, 3)) + abs(2 * x + 1) / 3  # noqa: E731
    br = minimize_convex_1d(f, LINE, Fraction(1, 10**6))
    assert br.lower <= Fraction(5, 9) <= br.upper
    assert br.width <= Fraction(1, 10**6)


def test_distances_on_lower_triangular():
    fam = ParametricElement.affine(E11, [E21])
    assert set_distance([A.zero], [A.unit]).upper == 1
    assert set_distance([A.zero], [fam]) == set_distance([A.zero], [fam])
    assert set_distance([A.zero], [fam]).lower == 1
    assert set_distance([A.unit], [fam]).lower == 1
    centre = Subspace.span(A, [A.unit])
    d = set_distance([fam], centre)
    assert d.lower == d.upper == Fraction(1, 2)


def test_two_parameter_distance_is_certified():
    zp = zero_product(2)
    plane = Subspace.whole(zp)
    d = set_distance([zp.zero], plane)
    assert d.lower == 0
    one = set_distance([zp.basis(0) + zp.basis(1)], [ParametricElement.affine(zp.zero, [zp.basis(0)])])
    assert one.lower == one.upper == 1


def test_three_parameter_distance_is_refused():
    mf = matrix_full(2)
    pieces = [ParametricElement.affine(mf.zero, [mf.basis(0), mf.basis(1), mf.basis(2)])]
    with pytest.raises(ToleranceError):
        set_distance([mf.basis(3)], pieces)


@given(scalars)
def test_distance_to_a_line_is_at_most_any_point(t):
    fam = ParametricElement.affine(E11, [E21])
    d = set_distance([A.unit], [fam])
    assert d.lower <= algebra_norm(A.unit - fam.at(t))
