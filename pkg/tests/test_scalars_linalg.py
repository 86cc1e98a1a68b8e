from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from endoalg import linalg
from endoalg.errors import BadScalar
from endoalg.scalars import GF, QQ, ScalarRegime, scalar_str

GF5 = ScalarRegime.prime_field(5)
small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def test_rational_strings_parse_exactly():
    assert QQ.parse("3/6") == Fraction(1, 2)
    assert QQ.parse("-7") == -7
    assert scalar_str(Fraction(-2, 4)) == "-1/2"


def test_bad_literals_and_moduli():
    with pytest.raises(BadScalar):
        QQ.parse("0.1.2")
    with pytest.raises(BadScalar):
        ScalarRegime.prime_field(4)
    with pytest.raises(BadScalar):
        GF5.coerce(Fraction(1, 5))
    with pytest.raises(BadScalar):
        QQ.coerce(0.5)


def test_prime_field_arithmetic():
    a, b = GF(3, 5), GF(4, 5)
    assert a + b == GF(2, 5)
    assert a * b == GF(2, 5)
    assert GF5.coerce(Fraction(1, 2)) == GF(3, 5)
    assert len(list(GF5.vectors(2))) == 25


def test_regime_json_round_trip():
    for reg in (QQ, GF5):
        assert ScalarRegime.from_json(reg.to_json()) == reg


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=3, max_size=3))
def test_rank_and_nullspace_match_sympy(rows):
    m = [list(r) for r in rows]
    assert linalg.rank(m) == sp.Matrix(m).rank()
    ns = linalg.nullspace(m, 4, Fraction(0), Fraction(1))
    assert len(ns) == 4 - sp.Matrix(m).rank()
    for v in ns:
        assert all(x == 0 for x in linalg.matvec(m, v, Fraction(0)))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_charpoly_routes_agree(rows):
    m = [list(r) for r in rows]
    fad = linalg.charpoly_faddeev(m)
    ber = linalg.charpoly_berkowitz(m, Fraction(0), Fraction(1))
    x = sp.Symbol("x")
    ref = sp.Poly(sp.Matrix(m).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert list(fad) == list(ber) == [Fraction(int(sp.numer(c)), int(sp.denom(c))) for c in ref]


def test_inverse_times_matrix_is_identity():
    m = [[Fraction(2), Fraction(1)], [Fraction(5), Fraction(3)]]
    inv = linalg.inverse(m, Fraction(0), Fraction(1))
    assert linalg.matmul(m, inv) == linalg.identity(2, Fraction(0), Fraction(1))
