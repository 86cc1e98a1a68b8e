"""Endomorphic left/right elements and idempotents.

Membership in L(A) reduces, by bilinearity, to d^2 identities on basis
pairs: a e_i a e_j = a e_i e_j.  The same residual code runs on plain
elements and on polynomial families, which is how families are verified as
polynomial identities.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from . import linalg
from .algebra import Algebra, Element, Subspace, adjoin_unit, format_element
from .catalog import ZEMANEK_READINGS, lower_triangular, zemanek
from .errors import NotEndomorphicLeft, NotInvertible, NotSubalgebra, SizeLimit, WrongRegime
from .parametric import LINE, ParametricElement, format_family
from .polysolve import solve_system

SETS = ("L", "R", "I")
EXACT_SOLVE_DIM = 4
ENUMERATION_LIMIT = 2**24

EXACT_SOLVE = "ExactSolve"
EXHAUSTIVE = "FiniteFieldExhaustive"
PARTIAL = "PartialHeuristic"


# residuals --------------------------------------------------------------
def left_residuals(a):
    """a e_i a e_j - a e_i e_j over all basis pairs."""
    basis = a.algebra.basis_elements()
    u = [a * e for e in basis]
    for i, ei in enumerate(basis):
        for j, ej in enumerate(basis):
            yield u[i] * u[j] - a * (ei * ej)


def right_residuals(a):
    """e_i e_j a - e_i a e_j a over all basis pairs."""
    basis = a.algebra.basis_elements()
    v = [e * a for e in basis]
    for i, ei in enumerate(basis):
        for j, ej in enumerate(basis):
            yield (ei * ej) * a - v[i] * v[j]


def idempotent_residuals(a):
    yield a * a - a


_RESIDUALS = {"L": left_residuals, "R": right_residuals, "I": idempotent_residuals}


def _check_exact(a):
    if not a.algebra.regime.is_exact:
        raise WrongRegime("membership needs an exact regime")


def is_in_L(a: Element) -> bool:
    _check_exact(a)
    return all(r.is_zero() for r in left_residuals(a))


def is_in_R(a: Element) -> bool:
    _check_exact(a)
    return all(r.is_zero() for r in right_residuals(a))


def is_idempotent(a: Element) -> bool:
    return (a * a - a).is_zero()


def is_member(a: Element, kind: str) -> bool:
    return {"L": is_in_L, "R": is_in_R, "I": is_idempotent}[kind](a)


def verify_parametric_family(f: ParametricElement, kind: str) -> bool:
    """Membership of every f(t), checked as a polynomial identity in t."""
    return all(r.is_zero() for r in _RESIDUALS[kind](f))


def stabilization_index(a: Element) -> int:
    """Least n with a^n = a^(n+1); at most 3 on L(A)."""
    if not is_in_L(a):
        raise NotEndomorphicLeft(f"{format_element(a)} is not an endomorphic left element")
    prev = a
    for n in range(1, 4):
        nxt = prev * a
        if nxt == prev:
            return n
        prev = nxt
    raise AssertionError("a^3 != a^4 for an element of L(A)")


def conjugate_in_unitalization(b: Element, a: Element) -> Element:
    """b a b^-1 for b invertible in the unitalization; lands back in A."""
    ext = adjoin_unit(a.algebra)
    if b.algebra == a.algebra:
        b = ext.embed(b)
    binv = ext.inverse(b)
    return ext.project(b * ext.embed(a) * binv)


def random_invertibles(algebra: Algebra, count: int, seed: int = 0, spread: int = 2):
    """Seeded invertible elements 1 + x of the unitalization."""
    ext = adjoin_unit(algebra)
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count + 50:
        tries += 1
        coords = [rng.randint(-spread, spread) for _ in range(algebra.dim)] + [rng.choice([1, 1, 2, -1])]
        b = ext.algebra.element(coords)
        try:
            ext.inverse(b)
        except NotInvertible:
            continue
        out.append(b)
    return out


# set descriptions ------------------------------------------------------
def _canonical_affine(f: ParametricElement) -> ParametricElement:
    dirs = [list(d.coords) for d in f.directions()]
    red, pivots = linalg.rref(dirs)  # drops dependent directions
    base = list(f.base().coords)
    for row, pc in zip(red, pivots):
        c = base[pc]
        if c != 0:
            base = [x - c * y for x, y in zip(base, row)]
    alg = f.algebra
    return ParametricElement.affine(Element(tuple(base), alg), [Element(tuple(r), alg) for r in red])


def point_in_family(p: Element, f: ParametricElement) -> bool:
    if f.is_affine() and all(d == LINE for d in f.domain):
        dirs = [list(d.coords) for d in f.directions()]
        target = [x - y for x, y in zip(p.coords, f.base().coords)]
        m = linalg.transpose(dirs) if dirs else [[] for _ in target]
        if not dirs:
            return all(x == 0 for x in target)
        return linalg.solve(m, target, Fraction(0)) is not None
    syms = sp.symbols(f"s0:{f.nparams}")
    eqs = [e - sp.Rational(x) for e, x in zip(family_to_sympy(f, syms), p.coords)]
    if any(d != LINE for d in f.domain):
        raise ValueError("point tests on non-affine rays are not supported")
    return bool(solve_system(eqs, syms).components)


def family_in_family(g: ParametricElement, f: ParametricElement) -> bool:
    """g(K^m) inside the affine line-family f."""
    if not (f.is_affine() and all(d == LINE for d in f.domain)):
        return g == f
    span = Subspace.span(f.algebra, [d for d in f.directions()])
    base = f.base()
    for mono, c in g.terms.items():
        v = Element(c, g.algebra)
        if sum(mono) == 0:
            v = v - base
        if not span.contains(v):
            return False
    if (0,) * g.nparams not in g.terms and not span.contains(base):
        return False
    return True


def family_to_sympy(f: ParametricElement, syms):
    coords = [sp.Integer(0)] * f.algebra.dim
    for mono, c in f.terms.items():
        m = sp.Integer(1)
        for s, e in zip(syms, mono):
            m *= s**e
        for k, x in enumerate(c):
            if x != 0:
                coords[k] += sp.Rational(x.numerator, x.denominator) * m
    return [sp.expand(c) for c in coords]


@dataclass
class ElementSetDescription:
    """Finite points plus polynomial families describing a subset of A.

    For the named sets L, R and I every point and family is re-verified on
    construction.  Points are sorted; affine families are put in reduced
    echelon form, so equal sets compare equal when both are complete.
    """

    algebra: Algebra
    kind: str | None
    points: tuple = ()
    families: tuple = ()
    complete: bool = False
    provenance: str = PARTIAL
    notes: tuple = field(default=())

    def __post_init__(self):
        if self.complete and self.provenance not in (EXACT_SOLVE, EXHAUSTIVE):
            raise ValueError("only exact solves and exhaustive enumerations can be complete")
        fams = []
        for f in self.families:
            f = _canonical_affine(f) if f.is_affine() and all(d == LINE for d in f.domain) else f
            if any(family_in_family(f, g) for g in fams):
                continue
            fams = [g for g in fams if not family_in_family(g, f)]
            fams.append(f)
        fams.sort(key=lambda f: (-f.nparams, _family_sort_key(f)))
        pts = sorted(set(self.points), key=_point_key)
        pts = [p for p in pts if not any(point_in_family(p, f) for f in fams)]
        self.points = tuple(pts)
        self.families = tuple(fams)
        if self.kind in _RESIDUALS:
            for p in self.points:
                if not is_member(p, self.kind):
                    raise AssertionError(f"{format_element(p)} is not in {self.kind}(A)")
            for f in self.families:
                if not verify_parametric_family(f, self.kind):
                    raise AssertionError(f"family {format_family(f)} is not inside {self.kind}(A)")

    def contains(self, a: Element) -> bool:
        return a in self.points or any(point_in_family(a, f) for f in self.families)

    def is_finite(self) -> bool:
        return not self.families

    def sample(self, values=(0, 1, -1, 10, -10)):
        """Points plus family evaluations on a small parameter grid."""
        from itertools import product

        out = list(self.points)
        for f in self.families:
            for t in product(values, repeat=f.nparams):
                if any(d != LINE and x < 0 for d, x in zip(f.domain, t)):
                    continue
                out.append(f.at(t))
        seen, uniq = set(), []
        for p in out:
            if p not in seen:
                seen.add(p)
                uniq.append(p)
        return uniq

    def render(self, set_name=None) -> str:
        name = set_name or (f"{self.kind}(A)" if self.kind else "S")
        parts = []
        if self.points:
            parts.append("{" + ", ".join(_point_name(p) for p in self.points) + "}")
        for f in self.families:
            names = "αβγδεζ"[: f.nparams]
            parts.append("{" + format_family(f) + " : " + ", ".join(f"{n} ∈ K" for n in names) + "}")
        body = " ∪ ".join(parts) or "∅"
        flag = "complete" if self.complete else "PARTIAL"
        return f"{name} = {body}   [{flag}, {self.provenance}]"


def _point_key(p: Element):
    return tuple(int(x) if not isinstance(x, Fraction) else x for x in p.coords)


def _family_sort_key(f: ParametricElement):
    return tuple((m, c) for m, c in sorted(f.terms.items()))


def _point_name(p: Element) -> str:
    if p.is_zero():
        return "0"
    if p.algebra.unit is not None and p == p.algebra.unit:
        return "1"
    return format_element(p)


_DESCRIBE_CACHE: dict = {}


def describe_set(algebra: Algebra, kind: str = "L") -> ElementSetDescription:
    """Describe L(A), R(A) or I(A).

    Over a prime field every element is tested.  Over the rationals the
    basis-pair system is solved exactly for dimension <= 4; when the
    eliminator cannot exhaust its case splits, or the dimension is larger,
    a partial description is returned.
    """
    if kind not in SETS:
        raise ValueError(f"unknown set {kind!r}")
    key = (algebra, kind)
    hit = _DESCRIBE_CACHE.get(key)
    if hit is not None:
        return hit
    if algebra.regime.is_prime:
        if algebra.regime.p ** algebra.dim > ENUMERATION_LIMIT:
            raise SizeLimit(f"{algebra.regime.p}^{algebra.dim} elements exceed the enumeration limit")
        from .oracle import enumerate_predicate_set

        pts = enumerate_predicate_set(algebra, kind)
        desc = ElementSetDescription(algebra, kind, tuple(pts), (), True, EXHAUSTIVE)
    elif algebra.dim <= EXACT_SOLVE_DIM:
        desc = _exact_describe(algebra, kind)
    else:
        desc = _heuristic_describe(algebra, kind, [], [], ("dimension above the exact solver limit",))
    _DESCRIBE_CACHE[key] = desc
    return desc


def generic_element(algebra: Algebra) -> ParametricElement:
    """sum_k a_k e_k with every coordinate a free parameter."""
    return ParametricElement.affine(algebra.zero, algebra.basis_elements())


def membership_equations(algebra: Algebra, kind: str, syms):
    gen = generic_element(algebra)
    eqs = []
    for r in _RESIDUALS[kind](gen):
        eqs.extend(family_to_sympy(r, syms))
    return [e for e in eqs if e != 0]


def components_to_pieces(algebra, res, syms):
    points, families = [], []
    for comp in res.components:
        coords = [comp.values[s] for s in syms]
        if not comp.params:
            points.append(algebra.element([Fraction(int(sp.numer(c)), int(sp.denom(c))) for c in coords]))
            continue
        terms = {}
        for k, expr in enumerate(coords):
            for mono, coeff in sp.Poly(expr, *comp.params).terms():
                vec = terms.setdefault(mono, [Fraction(0)] * algebra.dim)
                vec[k] += Fraction(int(sp.numer(coeff)), int(sp.denom(coeff)))
        families.append(ParametricElement(algebra, terms, len(comp.params)))
    return points, families


def _exact_describe(algebra: Algebra, kind: str) -> ElementSetDescription:
    syms = sp.symbols(f"a1:{algebra.dim + 1}")
    res = solve_system(membership_equations(algebra, kind, syms), syms)
    points, families = components_to_pieces(algebra, res, syms)
    if res.complete:
        return ElementSetDescription(algebra, kind, tuple(points), tuple(families), True, EXACT_SOLVE)
    notes = (f"eliminator stuck on {len(res.stuck)} branch(es)",)
    return _heuristic_describe(algebra, kind, points, families, notes)


def _heuristic_describe(algebra, kind, points, families, notes):
    from .nilpotency import nprime3_subspace, right_nprime3_subspace

    pts = list(points) + [algebra.zero]
    if algebra.unit is not None and is_member(algebra.unit, kind):
        pts.append(algebra.unit)
    fams = list(families)
    if kind in ("L", "R") and algebra.regime.kind == "rational":
        sub = nprime3_subspace(algebra) if kind == "L" else right_nprime3_subspace(algebra)
        if not sub.is_zero():
            fams.append(ParametricElement.affine(algebra.zero, sub.elements()))
    for b in random_invertibles(algebra, 4, seed=0):
        for p in list(pts):
            c = conjugate_in_unitalization(b, p)
            if is_member(c, kind):
                pts.append(c)
    return ElementSetDescription(algebra, kind, tuple(pts), tuple(fams), False, PARTIAL, tuple(notes))


def description_points_mod(desc: ElementSetDescription, p: int):
    """GF(p)-points of a rational description reduced mod p (affine families only)."""
    from itertools import product

    red = desc.algebra.reduce_mod(p)
    out = set()
    for pt in desc.points:
        out.add(red.element(pt.coords))
    for f in desc.families:
        if not f.is_affine():
            raise ValueError("only affine families can be reduced")
        base = red.element(f.base().coords)
        dirs = [red.element(d.coords) for d in f.directions()]
        for ts in product(range(p), repeat=len(dirs)):
            v = base
            for t, d in zip(ts, dirs):
                v = v + t * d
            out.add(v)
    return sorted(out, key=_point_key)


# the 2x2 example of a non-central e with eI(A) in I(A) -------------------
@dataclass
class ReadingReport:
    reading: str
    is_algebra: bool
    detail: str
    e_is_central: bool | None = None
    e_maps_idempotents_to_idempotents: bool | None = None
    witness: Element | None = None


def eI_in_I(algebra: Algebra, e: Element):
    """Whether e I(A) is inside I(A); returns (verdict, witness)."""
    desc = describe_set(algebra, "I")
    for p in desc.points:
        if not is_idempotent(e * p):
            return False, p
    for f in desc.families:
        g = e * f
        if not verify_parametric_family(g, "I"):
            for t in f.grid_points(per_axis=2 * f.degree() + 2):
                if not is_idempotent(e * f.at(t)):
                    return False, f.at(t)
    return (True if desc.complete else None), None


def zemanek_reading_report():
    """Evaluate each reading of the printed 2x2 example with e = E11."""
    from .classification import center_subspace

    out = []
    readings = dict(ZEMANEK_READINGS)
    readings["lower (transpose)"] = None
    for name, _ in readings.items():
        try:
            alg = lower_triangular(2) if name.startswith("lower") else zemanek(name)
        except NotSubalgebra as exc:
            out.append(ReadingReport(name, False, f"not closed under multiplication: {exc}"))
            continue
        e = alg.by_label("E11")
        verdict, witness = eI_in_I(alg, e)
        central = center_subspace(alg).contains(e)
        detail = "eI(A) ⊂ I(A) holds" if verdict else ("eI(A) ⊄ I(A)" if verdict is False else "undecided")
        out.append(ReadingReport(name, True, detail, central, verdict, witness))
    return out
