"""The nilpotent hierarchy N'_3 in N_3, N, QN and the annihilators.

Quasinilpotence is decided at finite dimension through the exact
characteristic polynomial of the regular representation on the
unitalization: the spectrum is {0} exactly when that polynomial is a pure
power of the variable.  At finite dimension this coincides with nilpotence.

Nilpotence itself is searched up to the power d + 1: the powers a, a^2, ...
span a subspace of dimension at most d, and once a^k lies in the span of
higher powers the sequence can no longer reach 0 later than step d + 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import sympy as sp

from . import linalg
from .algebra import Algebra, Element, Subspace, adjoin_unit, kernel_subspace, left_regular_matrix
from .errors import Incomplete, InvariantViolation
from .parametric import ParametricElement


def nprime3_subspace(algebra: Algebra) -> Subspace:
    """N'_3(A) = {a : a x y = 0 for all x, y}, the kernel of a -> (a e_i e_j)."""
    basis = algebra.basis_elements()
    images = []
    for em in basis:
        flat = []
        for ei, ej in product(basis, repeat=2):
            flat.extend((em * ei * ej).coords)
        images.append(flat)
    return kernel_subspace(algebra, images)


def right_nprime3_subspace(algebra: Algebra) -> Subspace:
    """{a : x y a = 0 for all x, y}; the mirror image used for R(A)."""
    basis = algebra.basis_elements()
    images = []
    for em in basis:
        flat = []
        for ei, ej in product(basis, repeat=2):
            flat.extend((ei * ej * em).coords)
        images.append(flat)
    return kernel_subspace(algebra, images)


def nprime2_subspace(algebra: Algebra) -> Subspace:
    """{a : a x = 0 for all x}."""
    return annihilator_subspaces(algebra)[0]


def annihilator_subspaces(algebra: Algebra):
    """``(left, right)`` = ({a : a x = 0 for all x}, {a : x a = 0 for all x})."""
    basis = algebra.basis_elements()
    left = [sum(((em * ei).coords for ei in basis), ()) for em in basis]
    right = [sum(((ei * em).coords for ei in basis), ()) for em in basis]
    return kernel_subspace(algebra, left), kernel_subspace(algebra, right)


def is_without_order(algebra: Algebra) -> bool:
    left, right = annihilator_subspaces(algebra)
    return left.is_zero() and right.is_zero()


def two_sided_annihilator(algebra: Algebra) -> Subspace:
    left, right = annihilator_subspaces(algebra)
    return left.intersect(right)


def charpoly_on_unitalization(a: Element):
    """Coefficients (lowest first) of the characteristic polynomial of x -> a x on the unitalization."""
    m = left_regular_matrix(a, on="A~")
    reg = a.algebra.regime
    if reg.kind == "rational":
        return linalg.charpoly_faddeev(m)
    return linalg.charpoly_berkowitz(m, reg.zero, reg.one)


def nil_index(a: Element):
    """Least k <= d + 1 with a^k = 0, or None; 1 for a = 0."""
    p = a
    for k in range(1, a.algebra.dim + 2):
        if p.is_zero():
            return k
        p = p * a
    return None


def in_nprime3(a: Element) -> bool:
    basis = a.algebra.basis_elements()
    return all((a * x * y).is_zero() for x in basis for y in basis)


def is_quasinilpotent(a: Element) -> bool:
    coeffs = charpoly_on_unitalization(a)
    return all(c == 0 for c in coeffs[:-1])


@dataclass(frozen=True)
class NilpotencyVerdict:
    in_N3: bool
    in_N: bool
    nil_index: int | None
    in_QN: bool
    in_Nprime3: bool

    def __post_init__(self):
        if self.in_Nprime3 and not self.in_N3:
            raise InvariantViolation("N'_3 member with a^3 != 0")
        if self.in_N3 and not self.in_N:
            raise InvariantViolation("cube-zero element reported not nilpotent")
        if self.in_N != self.in_QN:
            raise InvariantViolation("nilpotent and quasinilpotent disagree at finite dimension")


def nil_verdict(a: Element) -> NilpotencyVerdict:
    k = nil_index(a)
    return NilpotencyVerdict(
        in_N3=(a * a * a).is_zero(),
        in_N=k is not None,
        nil_index=k,
        in_QN=is_quasinilpotent(a),
        in_Nprime3=in_nprime3(a),
    )


def endomorphic_left_algebra_check(algebra: Algebra, samples: int = 64, seed: int = 0) -> bool:
    """A = L(A), decided as A^3 = 0 and cross-checked on sampled elements.

    The implication A^3 = 0 => A = L(A) is asserted in every regime; the
    converse is only asserted over the rationals, where scaling arguments
    are available.
    """
    from .endo import is_in_L
    import random

    cube_zero = algebra.cube_is_zero()
    rng = random.Random(seed)
    candidates = algebra.basis_elements()
    if algebra.regime.is_prime:
        elems = list(algebra.elements()) if algebra.regime.p ** algebra.dim <= 4096 else []
        candidates += elems
    for _ in range(samples):
        candidates.append(algebra.element([rng.randint(-3, 3) for _ in range(algebra.dim)]))
    if algebra.regime.kind == "rational":
        # scalar multiples of basis elements hit the a^3 != a^4 obstruction
        candidates += [2 * e for e in algebra.basis_elements()]
        candidates += [2 * (x + y) for x in algebra.basis_elements() for y in algebra.basis_elements()]
    non_member = next((c for c in candidates if not is_in_L(c)), None)
    if cube_zero and non_member is not None:
        raise InvariantViolation(f"A^3 = 0 but {non_member!r} is not in L(A)")
    if algebra.regime.kind == "rational" and not cube_zero and non_member is None:
        raise InvariantViolation("A^3 != 0 but no sampled element left L(A)")
    return cube_zero


@dataclass
class AnnihilatorCriterion:
    """N'_3 = {0} compared with the annihilators.

    ``holds`` is the two-sided equivalence with "without order".  Only the
    direction without order => N'_3 = {0} is true in general: a right
    annihilator need not lie in N'_3 (see ``catalog.one_sided_order``).  The
    left form, N'_3 = {0} iff the left annihilator is {0}, always holds: a
    nonzero a in N'_3 is a left annihilator or has a x != 0 for some x, and
    then a x is one.
    """

    nprime3_trivial: bool
    without_order: bool
    left_annihilator_trivial: bool
    cube_zero: bool
    dim: int

    @property
    def holds(self) -> bool:
        return self.nprime3_trivial == self.without_order

    @property
    def forward_holds(self) -> bool:
        return self.nprime3_trivial or not self.without_order

    @property
    def left_form_holds(self) -> bool:
        return self.nprime3_trivial == self.left_annihilator_trivial

    @property
    def corollary_holds(self) -> bool:
        # without order and A^3 = 0 forces A = {0}
        return not (self.without_order and self.cube_zero) or self.dim == 0


def annihilator_criterion_check(algebra: Algebra) -> AnnihilatorCriterion:
    left, right = annihilator_subspaces(algebra)
    crit = AnnihilatorCriterion(
        nprime3_trivial=nprime3_subspace(algebra).is_zero(),
        without_order=left.is_zero() and right.is_zero(),
        left_annihilator_trivial=left.is_zero(),
        cube_zero=algebra.cube_is_zero(),
        dim=algebra.dim,
    )
    if not (crit.forward_holds and crit.left_form_holds):
        raise InvariantViolation("N'_3 and the annihilators disagree with linear algebra")
    return crit


@dataclass
class HierarchyReport:
    holds: bool
    regime: str
    sets: dict = field(default_factory=dict)
    counterexample: object = None
    detail: str = ""


def nilpotent_hierarchy_battery(algebra: Algebra) -> HierarchyReport:
    """N cap L = N_3 cap L = N'_3 = QN cap L, checked set by set."""
    if algebra.regime.is_prime:
        return _battery_finite(algebra)
    return _battery_rational(algebra)


def _battery_finite(algebra):
    from .oracle import enumerate_predicate_set

    L = set(enumerate_predicate_set(algebra, "L"))
    n3 = set(enumerate_predicate_set(algebra, "N3"))
    nn = set(enumerate_predicate_set(algebra, "N"))
    np3 = set(enumerate_predicate_set(algebra, "Nprime3"))
    qn = {a for a in L if is_quasinilpotent(a)}
    sets = {"N∩L": nn & L, "N3∩L": n3 & L, "N'3": np3, "QN∩L": qn}
    ref = sets["N'3"]
    for name, s in sets.items():
        diff = s ^ ref
        if diff:
            return HierarchyReport(False, str(algebra.regime), sets, min(diff, key=lambda e: tuple(map(int, e.coords))),
                                   f"{name} differs from N'3")
    return HierarchyReport(True, str(algebra.regime), sets)


def _battery_rational(algebra):
    """Over Q: compare the four sets on each piece of a complete L description.

    On a family f(s), each set becomes the solution set of polynomial
    equations in s; the sets agree when every solution component of one
    system satisfies the other systems identically.
    """
    from .endo import describe_set, family_to_sympy, left_residuals
    from .polysolve import solve_system

    desc = describe_set(algebra, "L")
    if not desc.complete:
        raise Incomplete("the hierarchy battery needs a complete description of L(A)")
    np3 = nprime3_subspace(algebra)
    for b in np3.elements():
        if not all(r.is_zero() for r in left_residuals(b)):
            raise InvariantViolation("N'_3 not inside L(A)")
    d = algebra.dim
    ext = adjoin_unit(algebra)

    for p in desc.points:
        v = nil_verdict(p)
        flags = {"N∩L": v.in_N, "N3∩L": v.in_N3, "N'3": v.in_Nprime3, "QN∩L": v.in_QN}
        if len(set(flags.values())) != 1:
            return HierarchyReport(False, "Q", {}, p, f"point disagrees: {flags}")

    for f in desc.families:
        syms = sp.symbols(f"s0:{f.nparams}")
        systems = {
            "N∩L": family_to_sympy(f ** (d + 1), syms),
            "N3∩L": family_to_sympy(f ** 3, syms),
            "N'3": [e for x in algebra.basis_elements() for y in algebra.basis_elements()
                    for e in family_to_sympy(f * x * y, syms)],
            "QN∩L": _qn_equations(f, ext, syms),
        }
        for name, eqs in systems.items():
            res = solve_system(eqs, syms)
            if not res.complete:
                raise Incomplete(f"could not solve the {name} system on a family")
            for comp in res.components:
                sub = {s: comp.values[s] for s in syms}
                for other, oeqs in systems.items():
                    if any(sp.expand(e.subs(sub)) != 0 for e in oeqs):
                        return HierarchyReport(False, "Q", {}, f,
                                               f"{name} component not inside {other} on a family")
    return HierarchyReport(True, "Q", {"N'3": np3})


def _qn_equations(f: ParametricElement, ext, syms):
    """Entries of M^(d+1) for M the regular matrix of f on the unitalization.

    M^(d+1) = 0 exactly when the characteristic polynomial is a pure power
    (Cayley-Hamilton), i.e. the spectrum is {0}.
    """
    from .endo import family_to_sympy

    big = ext.algebra
    lifted = ParametricElement(big, {m: c + (0,) for m, c in f.terms.items()}, f.nparams, f.domain)
    cols = [family_to_sympy(lifted * e, syms) for e in big.basis_elements()]
    m = sp.Matrix(cols).T
    mp = m ** big.dim
    return [sp.expand(x) for x in mp if sp.expand(x) != 0]
