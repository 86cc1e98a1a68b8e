"""Norms, spectral radii and distances between described subsets.

The norm is the induced 1-norm (largest absolute column sum) of the left
regular representation, on A when A is unital and on the unitalization
otherwise.  It is submultiplicative because the representation is
multiplicative and faithful on the chosen carrier, and the unit of a unital
A has norm 1.

Along an affine family t -> p + t d the norm is a maximum of sums of
absolute values of affine functions of t, hence convex and piecewise linear.
Its minimum sits at a kink: either a zero of one matrix entry or a crossing
of two column sums inside an interval where every entry keeps its sign.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
import sympy as sp

from . import linalg
from .algebra import Algebra, Element, Subspace, left_regular_matrix
from .errors import EmptySet, ToleranceError, WrongRegime
from .parametric import LINE, RAY, ParametricElement

DEFAULT_TOL = Fraction(1, 10**6)
SPECTRAL_TOL = 1e-9
MAX_ROUNDS = 200


@dataclass(frozen=True)
class NormedContext:
    algebra: Algebra

    def __post_init__(self):
        if self.algebra.regime.kind != "rational":
            raise WrongRegime("normed statements are only made over the rationals")

    @property
    def carrier(self) -> str:
        return "A" if self.algebra.is_unital else "A~"

    def matrix(self, a: Element):
        return left_regular_matrix(a, on=self.carrier)

    def describe(self) -> str:
        return f"induced 1-norm of x -> a x on {self.carrier}"


def _matrix_norm(m) -> Fraction:
    if not m:
        return Fraction(0)
    return max((sum(abs(row[j]) for row in m) for j in range(len(m[0]))), default=Fraction(0))


def algebra_norm(a: Element, ctx: NormedContext | None = None) -> Fraction:
    ctx = ctx or NormedContext(a.algebra)
    return _matrix_norm(ctx.matrix(a))


# spectral radius -------------------------------------------------------
def spectrum(a: Element):
    """Eigenvalues of x -> a x on the unitalization, with multiplicity (complex floats).

    Roots of linear factors are exact; the rest come from numpy on each
    irreducible factor of the exact characteristic polynomial.
    """
    coeffs = linalg.charpoly_faddeev(left_regular_matrix(a, on="A~"))
    lam = sp.Symbol("lam")
    poly = sp.Poly(sum(sp.Rational(c.numerator, c.denominator) * lam**k for k, c in enumerate(coeffs)), lam)
    out = []
    _, factors = poly.factor_list()
    for f, mult in factors:
        if f.degree() == 1:
            c1, c0 = f.all_coeffs()
            roots = [complex(-c0 / c1)]
        else:
            roots = [complex(r) for r in np.roots([float(c) for c in f.all_coeffs()])]
        out += roots * mult
    return out


def cauchy_bound(a: Element) -> Fraction:
    """1 + max |c_k| for the monic characteristic polynomial: every root lies inside."""
    coeffs = linalg.charpoly_faddeev(left_regular_matrix(a, on="A~"))
    return 1 + max((abs(c) for c in coeffs[:-1]), default=Fraction(0))


def spectral_radius(a: Element) -> float:
    coeffs = linalg.charpoly_faddeev(left_regular_matrix(a, on="A~"))
    if all(c == 0 for c in coeffs[:-1]):
        return 0.0
    r = max(abs(z) for z in spectrum(a))
    if r > float(cauchy_bound(a)) * (1 + 1e-12):
        raise ToleranceError("numeric root outside the Cauchy bound")
    return r


def spectral_distance_sampled(xs, ys) -> float:
    """min r(x - y) over the given samples; an upper estimate of the infimum."""
    best = None
    for x in xs:
        for y in ys:
            r = spectral_radius(x - y)
            best = r if best is None else min(best, r)
    if best is None:
        raise EmptySet("spectral distance of an empty sample")
    return best


# convex piecewise-linear minimization ----------------------------------
@dataclass(frozen=True)
class Minimum:
    value: Fraction
    argmin: tuple


def _columns(m0, m1):
    """Per column, the list of (a, b) entry pairs of a + t b."""
    n = len(m0[0]) if m0 else 0
    return [[(m0[i][j], m1[i][j]) for i in range(len(m0))] for j in range(n)]


def _eval_cols(cols, t):
    return max((sum(abs(a + t * b) for a, b in col) for col in cols), default=Fraction(0))


def minimize_pl_1d(m0, m1, domain=LINE) -> Minimum:
    """Exact minimum over t of the induced 1-norm of m0 + t m1."""
    cols = _columns(m0, m1)
    kinks = sorted({-a / b for col in cols for a, b in col if b != 0})
    if domain == RAY:
        edges = [Fraction(0)] + [t for t in kinks if t > 0]
        probes = [(x + y) / 2 for x, y in zip(edges, edges[1:])] + [edges[-1] + 1]
    elif kinks:
        edges = kinks
        probes = [edges[0] - 1] + [(x + y) / 2 for x, y in zip(edges, edges[1:])] + [edges[-1] + 1]
    else:
        edges, probes = [Fraction(0)], [Fraction(0)]
    candidates = set(edges)
    for probe in probes:
        # on the interval around ``probe`` every column sum is affine: s_j + t r_j
        lines = []
        for col in cols:
            s = r = Fraction(0)
            for a, b in col:
                sign = 1 if a + probe * b > 0 else (-1 if a + probe * b < 0 else (1 if b > 0 else -1))
                s += sign * a
                r += sign * b
            lines.append((s, r))
        for (s1, r1), (s2, r2) in combinations(lines, 2):
            if r1 != r2:
                candidates.add((s2 - s1) / (r1 - r2))
    if domain == RAY:
        candidates = {t for t in candidates if t >= 0}
    best = min(candidates, key=lambda t: (_eval_cols(cols, t), abs(t), t))
    return Minimum(_eval_cols(cols, best), (best,))


@dataclass(frozen=True)
class Bracket:
    lower: Fraction
    upper: Fraction
    argmin: tuple = ()
    exact: bool = False

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __str__(self):
        if self.exact:
            return f"{self.upper}"
        return f"[{float(self.lower):.9g}, {float(self.upper):.9g}]"


def _convex_lower_bound(samples):
    """Certified lower bound of a convex function from sorted (x, f) samples around its minimum.

    On [x_i, x_{i+1}] the function lies above the chords through
    (x_{i-1}, x_i) and (x_{i+1}, x_{i+2}) extended into the interval.
    """
    xs = [x for x, _ in samples]
    fs = [f for _, f in samples]
    best = min(fs)
    lb = best
    for i in range(len(xs) - 1):
        lines = []
        if i >= 1:
            s = (fs[i] - fs[i - 1]) / (xs[i] - xs[i - 1])
            lines.append((fs[i], s, xs[i]))
        if i + 2 < len(xs):
            s = (fs[i + 2] - fs[i + 1]) / (xs[i + 2] - xs[i + 1])
            lines.append((fs[i + 1], s, xs[i + 1]))
        if not lines:
            return None

        def at(line, x):
            f0, s, x0 = line
            return f0 + s * (x - x0)

        a, b = xs[i], xs[i + 1]
        cands = [a, b]
        if len(lines) == 2 and lines[0][1] != lines[1][1]:
            (f1, s1, x1), (f2, s2, x2) = lines
            x = (f2 - s2 * x2 - f1 + s1 * x1) / (s1 - s2)
            if a < x < b:
                cands.append(x)
        lb = min(lb, min(max(at(line, x) for line in lines) for x in cands))
    return lb


def minimize_convex_1d(f, domain=LINE, tol=DEFAULT_TOL) -> Bracket:
    """Certified bracket on the minimum of a convex coercive function of one variable."""
    cache = {}

    def F(x):
        if x not in cache:
            cache[x] = f(x)
        return cache[x]

    lo_limit = Fraction(0) if domain == RAY else None
    a, c = (Fraction(0), Fraction(2)) if lo_limit is not None else (Fraction(-1), Fraction(1))
    b = (a + c) / 2
    for _ in range(80):
        fa, fb, fc = F(a), F(b), F(c)
        left_ok = fa >= fb or (lo_limit is not None and a == lo_limit)
        if left_ok and fc >= fb:
            break
        width = c - a
        if not left_ok:
            a = a - width
            if lo_limit is not None and a < lo_limit:
                a = lo_limit
        if fc < fb:
            c = c + width
        b = min((a, (a + c) / 2, c), key=F)
        if b in (a, c):
            b = (a + c) / 2
    else:
        raise ToleranceError("could not bracket the minimum")
    for _ in range(MAX_ROUNDS):
        pts = sorted(x for x in cache if a <= x <= c)
        samples = [(x, F(x)) for x in pts]
        best_x = min(pts, key=F)
        lb = _convex_lower_bound(samples)
        # the region left of a and right of c is dominated by convexity
        if lb is not None and F(best_x) - lb <= tol:
            exact = F(best_x) == lb
            return Bracket(lb, F(best_x), (best_x,), exact)
        i = pts.index(best_x)
        left = pts[max(i - 1, 0)]
        right = pts[min(i + 1, len(pts) - 1)]
        for x in ((left + best_x) / 2, (best_x + right) / 2):
            F(x)
        a, c = left, right
    raise ToleranceError("bracket did not reach the requested width")


# distances -------------------------------------------------------------
def _affine_pieces(desc):
    """Yield (base, directions, domains) for every point and family of a description."""
    if isinstance(desc, Subspace):
        yield desc.algebra.zero, list(desc.elements()), [LINE] * desc.dim
        return
    if isinstance(desc, Element):
        yield desc, [], []
        return
    if isinstance(desc, (list, tuple)):
        for x in desc:
            yield from _affine_pieces(x)
        return
    if isinstance(desc, ParametricElement):
        if not desc.is_affine():
            raise ToleranceError("distances are only computed for affine families")
        yield desc.base(), desc.directions(), list(desc.domain)
        return
    for p in desc.points:
        yield p, [], []
    for f in desc.families:
        yield from _affine_pieces(f)


def affine_min_norm(base: Element, directions, domains, ctx: NormedContext, tol=DEFAULT_TOL) -> Bracket:
    """inf over t of ||base + sum t_k d_k||, exactly for one parameter, certified for two."""
    dirs, doms = [], []
    for d, dom in zip(directions, domains):
        if not d.is_zero():
            dirs.append(d)
            doms.append(dom)
    m0 = ctx.matrix(base)
    if not dirs:
        v = _matrix_norm(m0)
        return Bracket(v, v, (), True)
    if len(dirs) == 1:
        r = minimize_pl_1d(m0, ctx.matrix(dirs[0]), doms[0])
        return Bracket(r.value, r.value, r.argmin, True)
    if len(dirs) == 2:
        m1, m2 = ctx.matrix(dirs[0]), ctx.matrix(dirs[1])

        def inner(s):
            shifted = [[x + s * y for x, y in zip(r0, r1)] for r0, r1 in zip(m0, m1)]
            return minimize_pl_1d(shifted, m2, doms[1]).value

        br = minimize_convex_1d(inner, doms[0], tol)
        s = br.argmin[0]
        shifted = [[x + s * y for x, y in zip(r0, r1)] for r0, r1 in zip(m0, m1)]
        t = minimize_pl_1d(shifted, m2, doms[1]).argmin[0]
        return Bracket(br.lower, br.upper, (s, t), br.exact)
    raise ToleranceError(f"{len(dirs)}-parameter distance problems are not certified")


def _reduce_directions(dirs, doms):
    """Drop line directions that are dependent on the others."""
    line_dirs = [d for d, dom in zip(dirs, doms) if dom == LINE]
    ray_dirs = [d for d, dom in zip(dirs, doms) if dom != LINE]
    if line_dirs:
        alg = line_dirs[0].algebra
        line_dirs = Subspace.span(alg, line_dirs).elements()
    return line_dirs + ray_dirs, [LINE] * len(line_dirs) + [RAY] * len(ray_dirs)


def set_distance(U, V, ctx: NormedContext | None = None, tol=DEFAULT_TOL) -> Bracket:
    """d(U, V) = inf ||x - y|| over described sets, as a certified bracket."""
    pu, pv = list(_affine_pieces(U)), list(_affine_pieces(V))
    if not pu or not pv:
        raise EmptySet("distance to an empty set")
    ctx = ctx or NormedContext(pu[0][0].algebra)
    tol = Fraction(tol)
    brackets = []
    for bu, du, mu in pu:
        for bv, dv, mv in pv:
            dirs = list(du) + [-d for d in dv]
            doms = list(mu) + list(mv)
            if RAY not in doms:
                dirs, doms = _reduce_directions(dirs, doms)
            brackets.append(affine_min_norm(bu - bv, dirs, doms, ctx, tol))
    lower = min(b.lower for b in brackets)
    top = min(brackets, key=lambda b: b.upper)
    return Bracket(lower, top.upper, top.argmin, lower == top.upper)


def is_submultiplicative_on(a: Element, b: Element, ctx: NormedContext | None = None) -> bool:
    ctx = ctx or NormedContext(a.algebra)
    return algebra_norm(a * b, ctx) <= algebra_norm(a, ctx) * algebra_norm(b, ctx)


__all__ = [
    "NormedContext", "algebra_norm", "spectral_radius", "spectrum", "cauchy_bound", "minimize_pl_1d",
    "minimize_convex_1d", "Bracket", "set_distance", "affine_min_norm", "spectral_distance_sampled",
    "DEFAULT_TOL", "SPECTRAL_TOL",
]
