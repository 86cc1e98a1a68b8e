"""Isolated points and components of L(A) under the regular-representation norm.

Two routes decide isolation and are cross-checked:

* algebraic: a is isolated iff a is a central idempotent and no b in L(A)
  other than a has b^3 = a;
* geometric: on a complete description by points and nonconstant polynomial
  families, a is isolated iff it lies on no family.

Non-isolation witnesses are affine rays inside L(A), re-verified as
polynomial identities: t a + (1 - t) a^2 when a^2 != a, t a + (1 - t) b
through a cube root b != a, a perturbation a - t x a y - t a x a y when that
lands in L(A), and otherwise the family of the description through a.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import sympy as sp

from .algebra import Algebra, Element, format_element
from .classification import FALSE, TRUE, UNKNOWN, ThreeValued, center_subspace, classify
from .endo import (
    ElementSetDescription, conjugate_in_unitalization, family_to_sympy, is_idempotent, is_in_L,
    point_in_family, random_invertibles, verify_parametric_family,
)
from .errors import Incomplete, InvariantViolation, NotInL, NotVeryNice
from .metric import DEFAULT_TOL, Bracket, NormedContext, affine_min_norm, algebra_norm, set_distance, spectral_radius
from .nilpotency import annihilator_subspaces, nprime3_subspace, two_sided_annihilator
from .parametric import ParametricElement, format_family
from .polysolve import component_points, solve_system

GROWTH_POINTS = (10, 100, 1000)
ROOT_CONDITIONS = ("cube", "square")


@dataclass(frozen=True)
class Witness:
    """A ray inside L(A) offered as a non-isolation witness; ``kind`` names its construction."""

    kind: str
    ray: ParametricElement
    detail: str = ""

    def verify(self) -> bool:
        return verify_parametric_family(self.ray, "L") and ray_is_unbounded(self.ray)

    def __str__(self):
        return f"{self.kind}: t -> {format_family(self.ray, 't')}" + (f" ({self.detail})" if self.detail else "")


def ray_is_unbounded(ray: ParametricElement) -> bool:
    """An affine ray with nonzero direction is unbounded (the norm is faithful).

    Also checks strict growth at a few far parameter values.
    """
    if not ray.is_affine() or ray.directions()[0].is_zero():
        return False
    ctx = NormedContext(ray.algebra)
    norms = [algebra_norm(ray.at(t), ctx) for t in GROWTH_POINTS]
    return all(x < y for x, y in zip(norms, norms[1:]))


def _ray(base: Element, direction: Element) -> ParametricElement:
    return ParametricElement.ray(base, direction)


def f1_ray(a: Element) -> ParametricElement:
    """t a + (1 - t) a^2 = a^2 + t (a - a^2)."""
    a2 = a * a
    return _ray(a2, a - a2)


def f2_ray(a: Element, b: Element) -> ParametricElement:
    """t a + (1 - t) b = b + t (a - b)."""
    return _ray(b, a - b)


def perturbation_rays(a: Element):
    """Rays t -> a - t x a y - t a x a y and t -> a - t x a y - t x a y a over basis x, y."""
    basis = a.algebra.basis_elements()
    for kind, extra in (("F_a", lambda x, y: a * x * a * y), ("F'_a", lambda x, y: x * a * y * a)):
        for (i, x), (j, y) in product(enumerate(basis), repeat=2):
            d = -(x * a * y) - extra(x, y)
            if not d.is_zero():
                yield kind, f"x = {a.algebra.labels[i]}, y = {a.algebra.labels[j]}", _ray(a, d)


# cube roots ------------------------------------------------------------
def _root_residual(b, a, condition):
    return b * b * b - a if condition == "cube" else b * b - a * a


def find_root(a: Element, desc: ElementSetDescription, condition: str = "cube"):
    """Some b != a in the description with b^3 = a (or b^2 = a^2); None if there is none.

    Raises Incomplete when the polynomial system on a family cannot be solved.
    """
    for b in desc.points:
        if b != a and _root_residual(b, a, condition).is_zero():
            return b
    for f in desc.families:
        syms = sp.symbols(f"s0:{f.nparams}")
        res = solve_system(family_to_sympy(_root_residual(f, a, condition), syms), syms)
        if not res.complete:
            raise Incomplete("root equation on a family could not be solved")
        for comp in res.components:
            for pt in component_points(comp, syms, values=(0, 1, -1, 2, 3)):
                b = f.at([Fraction(int(sp.numer(x)), int(sp.denom(x))) for x in pt])
                if b != a:
                    return b
    return None


def geometric_isolated(a: Element, desc: ElementSetDescription) -> bool:
    return not any(point_in_family(a, f) for f in desc.families)


def isolation_test(a: Element, desc: ElementSetDescription, condition: str = "cube") -> ThreeValued:
    if condition not in ROOT_CONDITIONS:
        raise ValueError(f"unknown root condition {condition!r}")
    if not is_in_L(a):
        raise NotInL(f"{format_element(a)} is not in L(A)")
    if not desc.complete:
        return ThreeValued(UNKNOWN, "NotFalsified", None, "description of L(A) is partial")
    if not is_idempotent(a):
        w = Witness("f1", f1_ray(a), "a^2 != a")
        return _false(w, a, desc)
    try:
        b = find_root(a, desc, condition)
    except Incomplete as exc:
        return ThreeValued(UNKNOWN, "NotFalsified", None, str(exc))
    if b is not None:
        w = Witness("f2", f2_ray(a, b), f"b = {format_element(b)}, b^{3 if condition == 'cube' else 2} matches")
        if condition == "square" and not w.verify():
            w = Witness("root", _ray(a, b - a), f"b = {format_element(b)} with b^2 = a^2")
        return _false(w, a, desc)
    if not center_subspace(a.algebra).contains(a):
        for kind, where, ray in perturbation_rays(a):
            w = Witness(kind, ray, where)
            if w.verify():
                return _false(w, a, desc)
        for f in desc.families:
            if point_in_family(a, f) and f.is_affine():
                d = next((d for d in f.directions() if not d.is_zero()), None)
                if d is not None:
                    return _false(Witness("family", _ray(a, d), "line of the description through a"), a, desc)
        raise InvariantViolation(f"{format_element(a)} is non-central but isolated in the description")
    if not geometric_isolated(a, desc):
        raise InvariantViolation(f"{format_element(a)} passes the algebraic test but lies on a family")
    return ThreeValued(TRUE, "CompleteDescription", None, "central idempotent without other roots")


def _false(w: Witness, a: Element, desc):
    if not w.verify():
        raise InvariantViolation(f"witness {w} is not a ray in L(A)")
    if geometric_isolated(a, desc):
        raise InvariantViolation(f"{format_element(a)} has a witness ray but is isolated in the description")
    return ThreeValued(FALSE, "Counterexample", w)


# components ------------------------------------------------------------
@dataclass
class ComponentDescription:
    kind: str  # "Singleton" or "Unbounded"
    representative: Element
    witness: Witness | None = None
    points: tuple = ()
    families: tuple = ()
    contains_origin: bool = False

    def pieces(self):
        return list(self.points) + list(self.families)

    def contains(self, x: Element) -> bool:
        return x in self.points or any(point_in_family(x, f) for f in self.families)

    def samples(self, values=(0, 1, -1, 10, -10)):
        out = list(self.points)
        for f in self.families:
            for t in product(values, repeat=f.nparams):
                out.append(f.at(t))
        return out

    def render(self) -> str:
        body = ", ".join([("0" if p.is_zero() else format_element(p)) for p in self.points]
                         + [format_family(f) for f in self.families])
        tail = f"; witness {self.witness}" if self.witness else ""
        return f"{self.kind} {{{body}}}{tail}"


def _families_meet(f: ParametricElement, g: ParametricElement) -> bool:
    n = f.nparams + g.nparams
    syms = sp.symbols(f"u0:{n}")
    fx = family_to_sympy(f, syms[: f.nparams])
    gx = family_to_sympy(g, syms[f.nparams:])
    res = solve_system([x - y for x, y in zip(fx, gx)], syms)
    return bool(res.components) or not res.complete


def component_analysis(algebra: Algebra, desc: ElementSetDescription, condition: str = "cube"):
    if not desc.complete:
        raise Incomplete("component analysis needs a complete description of L(A)")
    pieces = list(desc.points) + list(desc.families)
    parent = list(range(len(pieces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    npts = len(desc.points)
    for i, f in enumerate(desc.families):
        for j in range(i):
            if _families_meet(desc.families[j], f):
                parent[find(npts + i)] = find(npts + j)
    groups = {}
    for i in range(len(pieces)):
        groups.setdefault(find(i), []).append(pieces[i])

    comps = []
    for members in groups.values():
        pts = tuple(m for m in members if isinstance(m, Element))
        fams = tuple(m for m in members if isinstance(m, ParametricElement))
        if pts and not fams:
            (a,) = pts  # points on no family are their own components
            verdict = isolation_test(a, desc, condition)
            if not verdict.is_true:
                raise InvariantViolation(f"{format_element(a)} is alone in the description but not isolated")
            comps.append(ComponentDescription("Singleton", a, None, pts, (), a.is_zero()))
            continue
        f = fams[0]
        rep = f.at([0] * f.nparams)
        origin = any(point_in_family(algebra.zero, g) for g in fams)
        w = _unbounded_witness(rep, desc, f, origin, condition)
        comps.append(ComponentDescription("Unbounded", rep, w, pts, fams, origin))
    comps.sort(key=lambda c: (c.kind != "Singleton", tuple(c.representative.coords)))
    return comps


def _unbounded_witness(rep, desc, fam, origin, condition):
    if origin:
        sub = nprime3_subspace(rep.algebra)
        if not sub.is_zero():
            a = sub.elements()[0]
            w = Witness("t a, a in N'3", _ray(rep.algebra.zero, a), f"a = {format_element(a)}")
            if w.verify():
                return w
    verdict = isolation_test(rep, desc, condition)
    if verdict.is_false and isinstance(verdict.witness, Witness):
        return verdict.witness
    d = next(d for d in fam.directions() if not d.is_zero()) if fam.is_affine() else None
    w = Witness("family", _ray(rep, d), "line of the description")
    if not w.verify():
        raise InvariantViolation("no verified unbounded ray for a non-singleton component")
    return w


def component_index(comps, x: Element):
    for i, c in enumerate(comps):
        if c.contains(x):
            return i
    return None


# annihilator perturbation ----------------------------------------------
@dataclass
class PerturbationReplay:
    applicable: bool
    c: Element | None = None
    checked: list = field(default_factory=list)
    passed: bool = True
    detail: str = ""


def replay_annihilator_perturbation(algebra: Algebra, desc: ElementSetDescription, samples=(0, 1, -1, 2)):
    """For c != 0 with c x = x c = 0, check a + c in L, (a + c)^2 = a^2, a + c != a and the ray a + t c.

    Run over the described points and family samples; this is the step that
    rules out isolated points in algebras with order.
    """
    ann = two_sided_annihilator(algebra)
    if ann.is_zero():
        left, right = annihilator_subspaces(algebra)
        has_order = not (left.is_zero() and right.is_zero())
        return PerturbationReplay(False, None, [], True,
                                  "no two-sided annihilator" + (" although A has order" if has_order else ""))
    c = ann.elements()[0]
    rep = PerturbationReplay(True, c)
    candidates = list(desc.points)
    for f in desc.families:
        candidates += [f.at(t) for t in product(samples, repeat=f.nparams)]
    for a in candidates:
        b = a + c
        ray = _ray(a, c)
        ok = is_in_L(b) and (b * b - a * a).is_zero() and b != a and verify_parametric_family(ray, "L")
        rep.checked.append((a, ok))
        if not ok:
            rep.passed = False
            rep.detail = f"fails at a = {format_element(a)}"
            break
    return rep


# commuting pairs: idempotent a, b^3 != a, distance at least 1 ----------------
@dataclass
class PairBound:
    a_piece: object
    b_piece: object
    minimum: object
    excluded: bool
    sampled: bool = False

    @property
    def holds(self) -> bool:
        """Certified: the pair is excluded or the exact minimum is at least 1."""
        return self.excluded or (not self.sampled and self.minimum.lower >= 1)

    @property
    def refuted(self) -> bool:
        return not self.excluded and self.minimum.upper < 1


def _as_family(x, n_total, offset):
    """Point or family as a family in ``n_total`` parameters starting at ``offset``."""
    if isinstance(x, Element):
        return ParametricElement(x.algebra, {(0,) * n_total: x.coords}, n_total)
    terms = {}
    for m, c in x.terms.items():
        mono = [0] * n_total
        mono[offset:offset + x.nparams] = m
        terms[tuple(mono)] = c
    return ParametricElement(x.algebra, terms, n_total)


def _nparams(x):
    return 0 if isinstance(x, Element) else x.nparams


def commuting_pair_bounds(desc: ElementSetDescription, ctx: NormedContext | None = None):
    """||a - b|| over commuting pairs from the description, a idempotent, b^3 != a.

    Each pair of pieces gives polynomial equations a^2 = a, ab = ba in the
    joint parameters; on every solution component the norm of a - b is
    minimized exactly when it is affine.  Components on which b^3 = a holds
    identically are excluded; where it holds only on a proper subset the
    minimum over the whole component is used (a bound of 1 passes to
    closures by continuity).
    """
    if not desc.complete:
        raise Incomplete("needs a complete description")
    ctx = ctx or NormedContext(desc.algebra)
    pieces = list(desc.points) + list(desc.families)
    out = []
    for pa in pieces:
        for pb in pieces:
            n = _nparams(pa) + _nparams(pb)
            fa = _as_family(pa, max(n, 1), 0)
            fb = _as_family(pb, max(n, 1), _nparams(pa))
            syms = sp.symbols(f"u0:{max(n, 1)}")
            eqs = family_to_sympy(fa * fa - fa, syms) + family_to_sympy(fa * fb - fb * fa, syms)
            res = solve_system(eqs, syms)
            if not res.complete:
                raise Incomplete("commuting-pair system could not be solved")
            for comp in res.components:
                diff = _substitute(fa - fb, comp, syms)
                cube = _substitute(fb * fb * fb - fa, comp, syms)
                if cube.is_zero():
                    out.append(PairBound(pa, pb, None, True))
                    continue
                if diff.is_affine():
                    m = affine_min_norm(diff.base(), diff.directions(), diff.domain, ctx)
                    out.append(PairBound(pa, pb, m, False))
                else:
                    # sampling only bounds the minimum from above
                    vals = [algebra_norm(diff.at(t), ctx) for t in diff.grid_points(per_axis=7)]
                    out.append(PairBound(pa, pb, Bracket(Fraction(0), min(vals)), False, sampled=True))
    return out


def _substitute(f: ParametricElement, comp, syms) -> ParametricElement:
    """f composed with a solver component, as a family in the component's free parameters."""
    coords = family_to_sympy(f, syms)
    sub = {s: comp.values[s] for s in syms}
    params = comp.params
    alg = f.algebra
    k = max(len(params), 1)
    terms = {}
    for idx, expr in enumerate(coords):
        expr = sp.expand(expr.subs(sub, simultaneous=True))
        poly = sp.Poly(expr, *params) if params else None
        items = poly.terms() if poly is not None else [((), expr)]
        for mono, coeff in items:
            mono = tuple(mono) + (0,) * (k - len(mono))
            vec = terms.setdefault(mono, [Fraction(0)] * alg.dim)
            vec[idx] += Fraction(int(sp.numer(coeff)), int(sp.denom(coeff)))
    return ParametricElement(alg, terms, k)


# component and spectral checks ---------------------------------------
@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    value: object = None


@dataclass
class ZemanekReport:
    checks: list = field(default_factory=list)
    out_of_scope: str = "local arc connectedness is not mechanically tested"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


SPECTRAL_SAMPLE = (0, 1, -1, 10, -10)


def zemanek_checks(algebra: Algebra, desc: ElementSetDescription, ctx: NormedContext | None = None,
                   tol=DEFAULT_TOL, spectral_tol: float = 1e-6, seed: int = 0, comps=None) -> ZemanekReport:
    if not classify(algebra).very_nice.is_true:
        raise NotVeryNice("the component checks assume a very nice algebra")
    if not desc.complete:
        raise Incomplete("needs a complete description of L(A)")
    ctx = ctx or NormedContext(algebra)
    comps = comps if comps is not None else component_analysis(algebra, desc)
    center = center_subspace(algebra)
    rep = ZemanekReport()

    # singletons central, unbounded components off the centre
    bad = [c for c in comps if c.kind == "Singleton" and not center.contains(c.representative)]
    off = [x for c in comps if c.kind == "Unbounded" for x in c.samples() if center.contains(x)]
    rep.checks.append(CheckResult("singleton components are central", not bad))
    rep.checks.append(CheckResult("unbounded components avoid the centre", not off,
                                  f"central sample {format_element(off[0])}" if off else ""))

    # spectral and norm separation of distinct components
    min_r, min_d = None, None
    for i, j in ((i, j) for i in range(len(comps)) for j in range(i + 1, len(comps))):
        ki, kj = comps[i], comps[j]
        for x in ki.samples(SPECTRAL_SAMPLE):
            for y in kj.samples(SPECTRAL_SAMPLE):
                r = spectral_radius(x - y)
                min_r = r if min_r is None else min(min_r, r)
        d = set_distance(ki.pieces(), kj.pieces(), ctx, tol)
        min_d = d if min_d is None or d.lower < min_d.lower else min_d
    if min_r is not None:
        rep.checks.append(CheckResult("no cross-component pair with r(e - f) < 1", min_r >= 1 - spectral_tol,
                                      f"min sampled r = {min_r:.12g}", min_r))
        rep.checks.append(CheckResult("distance between components >= 1", min_d.lower >= 1 - Fraction(tol),
                                      f"min d = {min_d}", min_d))

    # unbounded components stay 1/2 away from the centre
    for c in comps:
        if c.kind != "Unbounded":
            continue
        d = set_distance(c.pieces(), center, ctx, tol)
        rep.checks.append(CheckResult("unbounded component at distance >= 1/2 from the centre",
                                      d.lower >= Fraction(1, 2) - Fraction(tol), f"d = {d}", d))

    # components of L and of I agree: conjugation keeps representatives in place
    moved = []
    for b in random_invertibles(algebra, 20, seed=seed):
        for k, c in enumerate(comps):
            y = conjugate_in_unitalization(b, c.representative)
            if component_index(comps, y) != k:
                moved.append((c.representative, y))
    rep.checks.append(CheckResult("conjugation preserves components", not moved,
                                  f"{format_element(moved[0][0])} -> {format_element(moved[0][1])}" if moved else ""))

    # isolated exactly when central
    for c in comps:
        for x in c.samples((0, 1, -1)):
            iso = isolation_test(x, desc).is_true
            if iso != center.contains(x):
                rep.checks.append(CheckResult("isolated iff central", False, format_element(x)))
                break
    if not any(ch.name == "isolated iff central" for ch in rep.checks):
        rep.checks.append(CheckResult("isolated iff central", True))
    return rep


def origin_component_singleton(algebra: Algebra) -> bool:
    """The origin is alone in its component exactly when N'_3 = {0}."""
    return nprime3_subspace(algebra).is_zero()


def nprime3_to_q_distance(desc: ElementSetDescription, ctx: NormedContext | None = None, tol=DEFAULT_TOL):
    """d(N'_3(A), Q(A)) with Q = L minus N'_3; None when Q is empty."""
    alg = desc.algebra
    sub = nprime3_subspace(alg)
    q_points = [p for p in desc.points if not sub.contains(p)]
    q_fams = [f for f in desc.families if not all(sub.contains(Element(c, alg)) for c in f.terms.values())]
    if not q_points and not q_fams:
        return None
    n_piece = [alg.zero] if sub.is_zero() else sub
    return set_distance(n_piece, q_points + q_fams, ctx, tol)


__all__ = [
    "Witness", "isolation_test", "component_analysis", "ComponentDescription", "zemanek_checks",
    "replay_annihilator_perturbation", "commuting_pair_bounds", "nprime3_to_q_distance", "find_root",
    "f1_ray", "f2_ray", "perturbation_rays", "geometric_isolated", "origin_component_singleton",
]
