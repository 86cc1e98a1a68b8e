"""Finite-dimensional associative algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

from . import linalg
from .errors import AlgebraMismatch, BadIndex, BadScalar, NonAssociative, NotInvertible, WrongRegime
from .scalars import GF, QQ, ScalarRegime

DENSE_LIMIT = 16


def _normalize_constants(dim, constants, regime):
    merged = {}
    for entry in constants:
        try:
            i, j, k, v = entry
        except (TypeError, ValueError) as exc:
            raise BadIndex(f"structure constant must be (i, j, k, value), got {entry!r}") from exc
        for idx in (i, j, k):
            if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < dim:
                raise BadIndex(f"basis index {idx!r} out of range for dimension {dim}")
        v = regime.coerce(v)
        merged[i, j, k] = merged.get((i, j, k), regime.zero) + v
    return tuple(sorted((i, j, k, v) for (i, j, k), v in merged.items() if v != 0))


@dataclass(frozen=True, eq=True)
class Algebra:
    """An associative algebra with basis e_0..e_{d-1}.

    ``constants`` holds the nonzero structure constants as sorted
    ``(i, j, k, c)`` tuples meaning ``e_i e_j = sum_k c e_k``.  Construction
    normalizes the constants, rejects non-associative tables and detects a
    unit by an exact linear solve.
    """

    dim: int
    constants: tuple
    regime: ScalarRegime = QQ
    name: str = ""
    labels: tuple = ()
    unit_coords: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if isinstance(self.dim, bool) or not isinstance(self.dim, int) or self.dim < 1:
            raise BadIndex(f"dimension must be a positive integer, got {self.dim!r}")
        if not self.regime.is_exact:
            raise WrongRegime("an algebra needs an exact ground field")
        object.__setattr__(self, "constants", _normalize_constants(self.dim, self.constants, self.regime))
        labels = tuple(self.labels) if self.labels else tuple(f"e{i + 1}" for i in range(self.dim))
        if len(labels) != self.dim or len(set(labels)) != self.dim:
            raise BadIndex(f"need {self.dim} distinct basis labels, got {labels!r}")
        object.__setattr__(self, "labels", labels)
        bad = find_associativity_violation(self.dim, self.table, self.regime)
        if bad is not None:
            i, j, k = (labels[t] for t in bad)
            raise NonAssociative(bad, f"{self.name or 'algebra'}: ({i} {j}) {k} != {i} ({j} {k})")
        object.__setattr__(self, "unit_coords", _find_unit(self))

    @cached_property
    def table(self):
        """``table[i][j]`` is the sparse product e_i e_j as a tuple of (k, c)."""
        t = [[[] for _ in range(self.dim)] for _ in range(self.dim)]
        for i, j, k, v in self.constants:
            t[i][j].append((k, v))
        return tuple(tuple(tuple(cell) for cell in row) for row in t)

    @cached_property
    def dense(self):
        """Dense ``c[i][j][k]`` list; only built for small dimensions."""
        if self.dim > DENSE_LIMIT:
            raise BadIndex(f"dense expansion refused above dimension {DENSE_LIMIT}")
        zero = self.regime.zero
        c = [[[zero] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for i, j, k, v in self.constants:
            c[i][j][k] = v
        return c

    # element constructors -------------------------------------------------
    def element(self, coords) -> "Element":
        coords = tuple(self.regime.coerce(x) for x in coords)
        if len(coords) != self.dim:
            raise BadIndex(f"expected {self.dim} coordinates, got {len(coords)}")
        return Element(coords, self)

    def basis(self, i: int) -> "Element":
        if not 0 <= i < self.dim:
            raise BadIndex(f"basis index {i} out of range")
        return self.element([1 if j == i else 0 for j in range(self.dim)])

    def basis_elements(self):
        return [self.basis(i) for i in range(self.dim)]

    def by_label(self, label: str) -> "Element":
        try:
            return self.basis(self.labels.index(label))
        except ValueError:
            raise BadIndex(f"unknown basis label {label!r}") from None

    @property
    def zero(self) -> "Element":
        return self.element([0] * self.dim)

    @property
    def unit(self) -> "Element | None":
        return None if self.unit_coords is None else Element(self.unit_coords, self)

    @property
    def is_unital(self) -> bool:
        return self.unit_coords is not None

    def elements(self):
        """Every element, in lexicographic coordinate order (prime fields only)."""
        if not self.regime.is_prime:
            raise WrongRegime("only algebras over a prime field are finite")
        for coords in self.regime.vectors(self.dim):
            yield Element(coords, self)

    def cube_is_zero(self) -> bool:
        """A^3 = 0, checked on all basis triples."""
        return all(
            (self.basis(i) * self.basis(j) * self.basis(k)).is_zero()
            for i, j, k in product(range(self.dim), repeat=3)
        )

    def reduce_mod(self, p: int) -> "Algebra":
        """The same table over GF(p); raises BadScalar if a constant is not p-integral."""
        if self.regime.kind != "rational":
            raise WrongRegime("only rational algebras can be reduced")
        return Algebra(self.dim, self.constants, ScalarRegime.prime_field(p), self.name, self.labels)

    def is_integral_mod(self, p: int) -> bool:
        return all(Fraction(v).denominator % p for *_, v in self.constants)

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, over {self.regime})"


def _product_coords(table, dim, zero, a, b):
    out = [zero] * dim
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        row = table[i]
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            s = ai * bj
            for k, v in row[j]:
                out[k] = out[k] + s * v
    return tuple(out)


def find_associativity_violation(dim, table, regime):
    """First basis triple (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k), or None."""
    zero = regime.zero
    basis = [tuple(regime.one if t == s else zero for t in range(dim)) for s in range(dim)]
    prods = [[_product_coords(table, dim, zero, basis[i], basis[j]) for j in range(dim)] for i in range(dim)]
    for i, j, k in product(range(dim), repeat=3):
        left = _product_coords(table, dim, zero, prods[i][j], basis[k])
        right = _product_coords(table, dim, zero, basis[i], prods[j][k])
        if left != right:
            return (i, j, k)
    return None


def _find_unit(alg: Algebra):
    # u e_i = e_i and e_i u = e_i, linear in u: d^2 * 2 equations
    d, zero, one = alg.dim, alg.regime.zero, alg.regime.one
    rows, rhs = [], []
    for i in range(d):
        for k in range(d):
            left = [zero] * d   # coefficient of u_m in (u e_i)_k
            right = [zero] * d  # coefficient of u_m in (e_i u)_k
            for m in range(d):
                for kk, v in alg.table[m][i]:
                    if kk == k:
                        left[m] = left[m] + v
                for kk, v in alg.table[i][m]:
                    if kk == k:
                        right[m] = right[m] + v
            target = one if i == k else zero
            rows += [left, right]
            rhs += [target, target]
    sol = linalg.solve(rows, rhs, zero)
    return None if sol is None else tuple(sol)


class Element:
    """Coordinate vector in an :class:`Algebra`; immutable."""

    __slots__ = ("coords", "algebra")

    def __init__(self, coords, algebra: Algebra):
        object.__setattr__(self, "coords", tuple(coords))
        object.__setattr__(self, "algebra", algebra)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def _check(self, other: "Element"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra!r} vs {other.algebra!r}")

    def _wrap(self, coords):
        return Element(coords, self.algebra)

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return self._wrap(x + y for x, y in zip(self.coords, other.coords))

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return self._wrap(x - y for x, y in zip(self.coords, other.coords))

    def __neg__(self):
        return self._wrap(-x for x in self.coords)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, GF)) and not isinstance(other, bool):
            c = self.algebra.regime.coerce(other)
            return self._wrap(c * x for x in self.coords)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GF)) and not isinstance(other, bool):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int):
        return power(self, n)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.coords == other.coords and (other.algebra is self.algebra or other.algebra == self.algebra)

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def __repr__(self):
        return f"Element({format_element(self)})"


def multiply(a: Element, b: Element) -> Element:
    a._check(b)
    alg = a.algebra
    return Element(_product_coords(alg.table, alg.dim, alg.regime.zero, a.coords, b.coords), alg)


def power(a: Element, n: int) -> Element:
    if n < 1:
        raise ValueError("only positive powers exist in a possibly non-unital algebra")
    out = a
    for _ in range(n - 1):
        out = out * a
    return out


def format_element(a: Element) -> str:
    """Human form like ``E11 + 2*E21``."""
    terms = []
    for label, c in zip(a.algebra.labels, a.coords):
        if c == 0:
            continue
        if c == 1:
            terms.append(label)
        elif c == -1:
            terms.append(f"-{label}")
        else:
            terms.append(f"{c}*{label}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of an algebra, stored by its reduced echelon basis."""

    algebra: Algebra
    basis: tuple

    def __post_init__(self):
        d = self.algebra.dim
        vecs = [tuple(self.algebra.regime.coerce(x) for x in v) for v in self.basis]
        if any(len(v) != d for v in vecs):
            raise BadIndex("subspace vector has the wrong length")
        red, piv = linalg.rref(vecs) if vecs else ([], [])
        if len(piv) != len(vecs):
            raise BadIndex("subspace basis vectors are linearly dependent")
        object.__setattr__(self, "basis", tuple(tuple(r) for r in red))

    @classmethod
    def span(cls, algebra: Algebra, vectors) -> "Subspace":
        vecs = [tuple(v.coords) if isinstance(v, Element) else tuple(v) for v in vectors]
        vecs = [v for v in vecs if any(x != 0 for x in v)]
        red, _ = linalg.rref(vecs) if vecs else ([], [])
        return cls(algebra, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, algebra: Algebra) -> "Subspace":
        return cls(algebra, ())

    @classmethod
    def whole(cls, algebra: Algebra) -> "Subspace":
        return cls.span(algebra, [algebra.basis(i) for i in range(algebra.dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_whole(self) -> bool:
        return self.dim == self.algebra.dim

    def elements(self):
        return [Element(v, self.algebra) for v in self.basis]

    def contains(self, a) -> bool:
        v = a.coords if isinstance(a, Element) else tuple(a)
        return linalg.rank(list(self.basis) + [list(v)]) == self.dim

    def __contains__(self, a) -> bool:
        return self.contains(a)

    def intersect(self, other: "Subspace") -> "Subspace":
        d, zero, one = self.algebra.dim, self.algebra.regime.zero, self.algebra.regime.one
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.algebra)
        # x = sum s_i u_i = sum t_j w_j
        cols = list(self.basis) + [tuple(-x for x in w) for w in other.basis]
        m = linalg.transpose([list(c) for c in cols])
        kernel = linalg.nullspace(m, len(cols), zero, one)
        vecs = []
        for k in kernel:
            v = [zero] * d
            for s, u in zip(k[: self.dim], self.basis):
                v = [x + s * y for x, y in zip(v, u)]
            vecs.append(v)
        return Subspace.span(self.algebra, vecs)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def render(self) -> str:
        if self.is_zero():
            return "{0}"
        if self.is_whole():
            return "A"
        return "span{" + ", ".join(format_element(e) for e in self.elements()) + "}"

    def __repr__(self):
        return f"Subspace({self.render()})"


def kernel_subspace(algebra: Algebra, images) -> Subspace:
    """Kernel of a linear map given by ``images[m]`` = image of e_m (a flat vector)."""
    zero, one = algebra.regime.zero, algebra.regime.one
    m = linalg.transpose([list(v) for v in images])
    if not m or not m[0]:
        return Subspace.whole(algebra)
    return Subspace.span(algebra, linalg.nullspace(m, algebra.dim, zero, one))


@dataclass(frozen=True)
class UnitalExtension:
    """The unitalization of ``base``: basis of ``base`` followed by a new unit."""

    base: Algebra
    algebra: Algebra

    @property
    def unit(self) -> Element:
        return self.algebra.basis(self.base.dim)

    def embed(self, a: Element) -> Element:
        if a.algebra != self.base:
            raise AlgebraMismatch("element does not belong to the base algebra")
        return Element(a.coords + (self.base.regime.zero,), self.algebra)

    def lift(self, a: Element, scalar=0) -> Element:
        """The element (a, scalar) = a + scalar * 1."""
        return Element(self.embed(a).coords[:-1] + (self.base.regime.coerce(scalar),), self.algebra)

    def project(self, x: Element) -> Element:
        """Back to ``base`` coordinates; the unit coordinate must vanish."""
        if x.coords[-1] != 0:
            raise AlgebraMismatch("element of the unitalization does not lie in the base algebra")
        return Element(x.coords[:-1], self.base)

    def inverse(self, b: Element) -> Element:
        m = left_regular_matrix(b)
        try:
            inv_m = linalg.inverse(m, self.base.regime.zero, self.base.regime.one)
        except ZeroDivisionError:
            raise NotInvertible(f"{format_element(b)} is not invertible") from None
        # b^{-1} = b^{-1} * 1, i.e. the column of the inverse regular matrix at the unit
        col = self.base.dim
        binv = Element(tuple(row[col] for row in inv_m), self.algebra)
        if binv * b != self.unit or b * binv != self.unit:
            raise NotInvertible(f"{format_element(b)} has only a one-sided inverse")
        return binv


def adjoin_unit(a: Algebra) -> UnitalExtension:
    """Unitalization (a, s)(b, t) = (ab + s b + t a, s t), even if ``a`` has a unit."""
    return _adjoin_cached(a)


_EXT_CACHE: dict = {}


def _adjoin_cached(a: Algebra) -> UnitalExtension:
    ext = _EXT_CACHE.get(a)
    if ext is not None and ext.base is a:
        return ext
    d, one = a.dim, a.regime.one
    consts = list(a.constants)
    for j in range(d):
        consts.append((d, j, j, one))
        consts.append((j, d, j, one))
    consts.append((d, d, d, one))
    label = "1"
    while label in a.labels:
        label = "1~" if label == "1" else label + "~"
    big = Algebra(d + 1, tuple(consts), a.regime, f"{a.name}~" if a.name else "", a.labels + (label,))
    ext = UnitalExtension(a, big)
    _EXT_CACHE[a] = ext
    return ext


def left_regular_matrix(a: Element, on: str = "A"):
    """Matrix of x -> a x; column j holds the coordinates of a e_j.

    ``on="A~"`` (or ``"unitalization"``) uses the unitalization as carrier.
    """
    if on in ("A~", "Ã", "unitalization", "tilde"):
        a = adjoin_unit(a.algebra).embed(a)
    elif on != "A":
        raise ValueError(f"unknown carrier {on!r}")
    alg = a.algebra
    cols = [(a * alg.basis(j)).coords for j in range(alg.dim)]
    return linalg.transpose([list(c) for c in cols])


def right_regular_matrix(a: Element, on: str = "A"):
    """Matrix of x -> x a."""
    if on in ("A~", "Ã", "unitalization", "tilde"):
        a = adjoin_unit(a.algebra).embed(a)
    elif on != "A":
        raise ValueError(f"unknown carrier {on!r}")
    alg = a.algebra
    cols = [(alg.basis(j) * a).coords for j in range(alg.dim)]
    return linalg.transpose([list(c) for c in cols])


def build_algebra(dim, sparse_constants, regime=QQ, name="", labels=()) -> Algebra:
    """Validate and build an algebra; see :class:`Algebra`."""
    if isinstance(regime, str):
        regime = ScalarRegime.rational() if regime == "rational" else None
        if regime is None:
            raise BadScalar("regime must be a ScalarRegime or 'rational'")
    return Algebra(dim, tuple(sparse_constants), regime, name, tuple(labels))
