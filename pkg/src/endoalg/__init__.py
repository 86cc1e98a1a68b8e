"""Endomorphic left elements of finite-dimensional associative algebras.

An element a is endomorphic left when a x a y = a x y for all x, y, so that
x -> a x is multiplicative.  The package computes the sets L(A), R(A), I(A)
and the nil sets exactly, classifies algebras, studies the norm topology of
L(A), and cross-checks everything against brute force over small prime
fields.
"""
from .algebra import Algebra, Element, Subspace, adjoin_unit, build_algebra
from .catalog import builtin_family
from .classification import classify
from .endo import describe_set, is_in_L, is_in_R, is_idempotent
from .errors import AlgebraError
from .fileformat import parse_algebra_file, render_algebra
from .scalars import GF, QQ, ScalarRegime

__all__ = [
    "Algebra", "Element", "Subspace", "adjoin_unit", "build_algebra", "builtin_family", "classify",
    "describe_set", "is_in_L", "is_in_R", "is_idempotent", "AlgebraError", "parse_algebra_file",
    "render_algebra", "GF", "QQ", "ScalarRegime",
]
