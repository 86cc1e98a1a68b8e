"""Hypothesis strategies shared by the property tests."""
from fractions import Fraction

from hypothesis import strategies as st

from endoalg.catalog import (
    diagonal, direct_sum, lower_triangular, matrix_full, one_sided_order, truncated_polynomial, upper_triangular,
    zero_product,
)

ALGEBRAS = [
    lower_triangular(2), upper_triangular(2), matrix_full(2), diagonal(2), zero_product(2),
    truncated_polynomial(3), one_sided_order(), direct_sum(lower_triangular(2), zero_product(1)),
]

scalars = st.fractions(min_value=-5, max_value=5, max_denominator=3)
integers = st.integers(min_value=-4, max_value=4)


def elements(algebra, coords=scalars):
    return st.lists(coords, min_size=algebra.dim, max_size=algebra.dim).map(algebra.element)


@st.composite
def algebra_and_elements(draw, n=2, coords=scalars):
    alg = draw(st.sampled_from(ALGEBRAS))
    return (alg,) + tuple(draw(elements(alg, coords)) for _ in range(n))


def as_fraction(x):
    return Fraction(x)
