"""Polynomial families of algebra elements, t -> sum_m t^m v_m.

A family is stored as a map from exponent tuples (one entry per parameter)
to coefficient vectors.  Products go through the structure constants, so the
endomorphic identities can be expanded and checked coefficient by
coefficient.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .algebra import Algebra, Element, _product_coords
from .errors import AlgebraMismatch, BadIndex, WrongRegime

LINE, RAY = "line", "ray"


class ParametricElement:
    """Polynomial map K^n -> A with rational coefficients.

    ``domain`` lists, per parameter, ``"line"`` (all of K) or ``"ray"``
    (t >= 0).
    """

    __slots__ = ("algebra", "nparams", "terms", "domain")

    def __init__(self, algebra: Algebra, terms, nparams: int = 1, domain=None):
        if algebra.regime.kind != "rational":
            raise WrongRegime("parametric families live over the rationals")
        clean = {}
        zero = algebra.regime.zero
        for mono, coords in dict(terms).items():
            mono = tuple(mono)
            if len(mono) != nparams or any(e < 0 for e in mono):
                raise BadIndex(f"bad monomial {mono} for {nparams} parameters")
            coords = tuple(Fraction(x) for x in coords)
            if len(coords) != algebra.dim:
                raise BadIndex("coefficient vector has the wrong length")
            prev = clean.get(mono)
            if prev is not None:
                coords = tuple(x + y for x, y in zip(prev, coords))
            clean[mono] = coords
        clean = {m: c for m, c in clean.items() if any(x != zero for x in c)}
        if domain is None:
            domain = (LINE,) * nparams
        elif isinstance(domain, str):
            domain = (domain,) * nparams
        domain = tuple(domain)
        if len(domain) != nparams or any(d not in (LINE, RAY) for d in domain):
            raise BadIndex(f"bad domain {domain!r}")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "nparams", nparams)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, name, value):
        raise AttributeError("ParametricElement is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def constant(cls, a: Element, nparams: int = 1, domain=None):
        return cls(a.algebra, {(0,) * nparams: a.coords}, nparams, domain)

    @classmethod
    def affine(cls, base: Element, directions, domain=None):
        """base + sum_k t_k * directions[k]."""
        n = len(directions)
        terms = {(0,) * n: base.coords}
        for k, d in enumerate(directions):
            mono = tuple(1 if i == k else 0 for i in range(n))
            terms[mono] = d.coords if isinstance(d, Element) else tuple(d)
        return cls(base.algebra, terms, n, domain)

    @classmethod
    def ray(cls, base: Element, direction: Element):
        return cls.affine(base, [direction], domain=RAY)

    # algebra --------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, ParametricElement):
            if other.nparams != self.nparams:
                raise BadIndex("families with different parameter counts")
            if other.algebra != self.algebra:
                raise AlgebraMismatch("families over different algebras")
            return other
        if isinstance(other, Element):
            if other.algebra != self.algebra:
                raise AlgebraMismatch("element from a different algebra")
            return ParametricElement.constant(other, self.nparams, self.domain)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            prev = terms.get(m)
            terms[m] = c if prev is None else tuple(x + y for x, y in zip(prev, c))
        return ParametricElement(self.algebra, terms, self.nparams, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return ParametricElement(self.algebra, {m: tuple(-x for x in c) for m, c in self.terms.items()},
                                 self.nparams, self.domain)

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def _times(self, left, right):
        alg = self.algebra
        zero = alg.regime.zero
        out = {}
        for m1, c1 in left.terms.items():
            for m2, c2 in right.terms.items():
                prod = _product_coords(alg.table, alg.dim, zero, c1, c2)
                m = tuple(x + y for x, y in zip(m1, m2))
                prev = out.get(m)
                out[m] = prod if prev is None else tuple(x + y for x, y in zip(prev, prod))
        return ParametricElement(alg, out, self.nparams, self.domain)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            return ParametricElement(self.algebra, {m: tuple(c * x for x in v) for m, v in self.terms.items()},
                                     self.nparams, self.domain)
        o = self._coerce(other)
        return NotImplemented if o is None else self._times(self, o)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.__mul__(other)
        o = self._coerce(other)
        return NotImplemented if o is None else self._times(o, self)

    def __pow__(self, n: int):
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def is_affine(self) -> bool:
        return self.degree() <= 1

    def at(self, *params) -> Element:
        if len(params) == 1 and isinstance(params[0], (tuple, list)):
            params = tuple(params[0])
        if len(params) != self.nparams:
            raise BadIndex(f"expected {self.nparams} parameter values")
        params = [Fraction(p) for p in params]
        out = [Fraction(0)] * self.algebra.dim
        for m, c in self.terms.items():
            w = Fraction(1)
            for t, e in zip(params, m):
                w *= t**e
            out = [x + w * y for x, y in zip(out, c)]
        return Element(tuple(out), self.algebra)

    __call__ = at

    def base(self) -> Element:
        return Element(self.terms.get((0,) * self.nparams, (Fraction(0),) * self.algebra.dim), self.algebra)

    def directions(self):
        """Linear coefficient vectors, one per parameter (affine families)."""
        out = []
        for k in range(self.nparams):
            mono = tuple(1 if i == k else 0 for i in range(self.nparams))
            out.append(Element(self.terms.get(mono, (Fraction(0),) * self.algebra.dim), self.algebra))
        return out

    def coefficient_vectors(self):
        return list(self.terms.values())

    def grid_points(self, per_axis=None):
        """Parameter tuples on which a nonzero polynomial of this degree cannot vanish."""
        n = per_axis or self.degree() + 1
        values = range(n)
        return list(product(values, repeat=self.nparams))

    def key(self):
        return (self.nparams, self.domain, tuple(sorted(self.terms.items())))

    def __eq__(self, other):
        return isinstance(other, ParametricElement) and self.algebra == other.algebra and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ParametricElement({format_family(self)})"


_PARAM_NAMES = "αβγδεζ"


def _coeff_term(x, mono):
    if not mono:
        return f"{x}"
    return mono if x == 1 else (f"-{mono}" if x == -1 else f"{x}*{mono}")


def format_family(f: ParametricElement, names=None) -> str:
    names = names or (_PARAM_NAMES if f.nparams <= len(_PARAM_NAMES) else [f"t{i}" for i in range(f.nparams)])
    labels = f.algebra.labels
    per_label = {}
    for m, c in sorted(f.terms.items()):
        mono = "*".join(
            names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
        )
        for lab, x in zip(labels, c):
            if x != 0:
                per_label.setdefault(lab, []).append((x, mono))
    parts = []
    for lab in labels:
        if lab not in per_label:
            continue
        coeff_terms = per_label[lab]
        if len(coeff_terms) == 1:
            x, mono = coeff_terms[0]
            if not mono:
                coeff = "" if x == 1 else ("-" if x == -1 else f"{x}*")
            else:
                coeff = (mono + "*") if x == 1 else (f"-{mono}*" if x == -1 else f"{x}*{mono}*")
            parts.append(f"{coeff}{lab}")
        else:
            inner = " + ".join(_coeff_term(x, mono) for x, mono in coeff_terms).replace("+ -", "- ")
            parts.append(f"({inner})*{lab}")
    return " + ".join(parts).replace("+ -", "- ") or "0"
