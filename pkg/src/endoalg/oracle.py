"""Exhaustive enumeration over GF(p) and the algebra zoo.

Everything here works on integer arrays modulo p with a dense structure
tensor, independently of the symbolic code paths, so it can serve as ground
truth for them.  Elements are indexed in lexicographic coordinate order
(first coordinate most significant).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .algebra import Algebra, find_associativity_violation
from .errors import BadIndex, SizeLimit, WrongRegime
from .scalars import ScalarRegime

ENUMERATION_LIMIT = 2**24
CONJUGATION_LIMIT = 2**16
ZOO_TABLE_LIMIT = 2**20
CHUNK = 1 << 15

PREDICATES = ("L", "R", "I", "N3", "N", "Nprime3", "Z", "QN", "nice-hypothesis")


def _require_prime(algebra: Algebra) -> int:
    if not algebra.regime.is_prime:
        raise WrongRegime("exhaustive enumeration needs a prime field")
    return algebra.regime.p


def dense_tensor(algebra: Algebra) -> np.ndarray:
    p = _require_prime(algebra)
    d = algebra.dim
    c = np.zeros((d, d, d), dtype=np.int64)
    for i, j, k, v in algebra.constants:
        c[i, j, k] = int(v) % p
    return c


def all_vectors(p: int, d: int) -> np.ndarray:
    """Every vector of GF(p)^d as rows, lexicographic."""
    n = p**d
    idx = np.arange(n, dtype=np.int64)
    out = np.empty((n, d), dtype=np.int64)
    for k in range(d - 1, -1, -1):
        out[:, k] = idx % p
        idx //= p
    return out


class FiniteAlgebra:
    """Vectorized products for an algebra over GF(p)."""

    def __init__(self, algebra: Algebra):
        self.algebra = algebra
        self.p = _require_prime(algebra)
        self.d = algebra.dim
        self.c = dense_tensor(algebra)
        self.eye = np.eye(self.d, dtype=np.int64)

    def mul(self, x, y):
        """Row-wise products of (n, d) arrays; a single row broadcasts."""
        x = np.atleast_2d(x)
        y = np.atleast_2d(y)
        n = max(x.shape[0], y.shape[0])
        x = np.broadcast_to(x, (n, self.d))
        y = np.broadcast_to(y, (n, self.d))
        # (x y)_k = sum_{m,l} x_m y_l c[m, l, k]
        return np.einsum("nm,nl,mlk->nk", x, y, self.c, optimize=True) % self.p

    def left_mul_matrices(self, x):
        """(n, d, d) matrices of z -> x z, rows = output coordinate."""
        return np.einsum("nm,mlk->nkl", np.atleast_2d(x), self.c) % self.p

    def right_mul_matrices(self, x):
        return np.einsum("nl,mlk->nkm", np.atleast_2d(x), self.c) % self.p

    def mask(self, x, kind: str) -> np.ndarray:
        """Boolean membership of each row of ``x`` in the named set."""
        x = np.atleast_2d(np.asarray(x, dtype=np.int64)) % self.p
        out = np.empty(x.shape[0], dtype=bool)
        for s in range(0, x.shape[0], CHUNK):
            out[s:s + CHUNK] = self._mask(x[s:s + CHUNK], kind)
        return out

    def _mask(self, a, kind):
        p, d = self.p, self.d
        n = a.shape[0]
        ok = np.ones(n, dtype=bool)
        if kind in ("L", "nice-hypothesis"):
            u = [self.mul(a, self.eye[i]) for i in range(d)]
            for i in range(d):
                for j in range(d):
                    lhs = self.mul(u[i], u[j])
                    rhs = self.mul(a, self.c[i, j])
                    ok &= (lhs == rhs).all(axis=1)
            return ok
        if kind == "R":
            v = [self.mul(self.eye[i], a) for i in range(d)]
            for i in range(d):
                for j in range(d):
                    lhs = self.mul(self.c[i, j], a)
                    rhs = self.mul(v[i], v[j])
                    ok &= (lhs == rhs).all(axis=1)
            return ok
        if kind == "I":
            return (self.mul(a, a) == a).all(axis=1)
        if kind == "N3":
            return (self.mul(self.mul(a, a), a) == 0).all(axis=1)
        if kind == "N":
            q = a
            for _ in range(d):
                q = self.mul(q, a)
            return (q == 0).all(axis=1)
        if kind == "Nprime3":
            for i in range(d):
                ai = self.mul(a, self.eye[i])
                for j in range(d):
                    ok &= (self.mul(ai, self.eye[j]) == 0).all(axis=1)
            return ok
        if kind == "Z":
            for i in range(d):
                ok &= (self.mul(a, self.eye[i]) == self.mul(self.eye[i], a)).all(axis=1)
            return ok
        if kind == "QN":
            # x -> a x on the unitalization; nilpotent matrix iff M^(d+1) = 0
            m = np.zeros((n, d + 1, d + 1), dtype=np.int64)
            m[:, :d, :d] = self.left_mul_matrices(a)
            m[:, :d, d] = a
            q = m.copy()
            for _ in range(d):
                q = np.einsum("nij,njk->nik", q, m) % p
            return (q == 0).all(axis=(1, 2))
        raise ValueError(f"unknown predicate {kind!r}")

    def to_elements(self, rows):
        return [self.algebra.element([int(v) for v in r]) for r in rows]


def enumerate_predicate_set(algebra: Algebra, kind: str):
    """All elements of the named set, in lexicographic coordinate order."""
    p = _require_prime(algebra)
    if p**algebra.dim > ENUMERATION_LIMIT:
        raise SizeLimit(f"{p}^{algebra.dim} elements exceed the enumeration limit")
    fa = FiniteAlgebra(algebra)
    vecs = all_vectors(p, algebra.dim)
    return fa.to_elements(vecs[fa.mask(vecs, kind)])


def predicate_rows(fa: FiniteAlgebra, kind: str) -> np.ndarray:
    vecs = all_vectors(fa.p, fa.d)
    return vecs[fa.mask(vecs, kind)]


# theorem suite ---------------------------------------------------------
@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None
    advisory: bool = False


@dataclass
class SuiteReport:
    algebra: Algebra
    checks: list = field(default_factory=list)
    banner: str = ("finite-field run: normed statements and the 'A = L(A) implies A^3 = 0' "
                   "direction are not asserted here")

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.advisory)

    def failures(self):
        return [c for c in self.checks if not c.passed and not c.advisory]


def _pairs(x, y):
    """All (x_i, y_j) as two aligned arrays."""
    return np.repeat(x, len(y), axis=0), np.tile(y, (len(x), 1))


def _row_str(fa, row):
    from .algebra import format_element

    return format_element(fa.algebra.element([int(v) for v in row]))


def _first_bad(fa, rows, bad_mask, label):
    idx = np.flatnonzero(bad_mask)
    return None if idx.size == 0 else f"{label}: {_row_str(fa, rows[idx[0]])}"


def unitalization_invertibles(fa: FiniteAlgebra, limit=CONJUGATION_LIMIT, seed: int = 0, sample: int = 512):
    """(b, b^-1) pairs in the unitalization as (n, d+1) arrays.

    Every invertible is used when p^(d+1) <= ``limit``; otherwise a seeded
    sample of candidates is tested.
    """
    from .algebra import adjoin_unit

    ext = FiniteAlgebra(adjoin_unit(fa.algebra).algebra)
    total = fa.p ** ext.d
    if total <= limit:
        cand = all_vectors(fa.p, ext.d)
    else:
        rng = np.random.default_rng(seed)
        cand = rng.integers(0, fa.p, size=(sample, ext.d))
    # b invertible iff its regular matrix is; inverse = M^-1 applied to the unit
    mats = ext.left_mul_matrices(cand)
    unit = np.zeros(ext.d, dtype=np.int64)
    unit[-1] = 1
    bs, invs = [], []
    for b, m in zip(cand, mats):
        sol = _solve_mod(m, unit, fa.p)
        if sol is not None:
            bs.append(b)
            invs.append(sol)
    return ext, np.array(bs, dtype=np.int64).reshape(-1, ext.d), np.array(invs, dtype=np.int64).reshape(-1, ext.d)


def _solve_mod(m, rhs, p):
    """Unique solution of m x = rhs over GF(p), or None if m is singular."""
    n = m.shape[0]
    aug = np.concatenate([m % p, (rhs % p)[:, None]], axis=1).astype(np.int64)
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r, col] % p), None)
        if piv is None:
            return None
        aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), -1, p) % p
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % p
    return aug[:, n]


def exhaustive_theorem_suite(algebra: Algebra, seed: int = 0) -> SuiteReport:
    """Every purely algebraic statement about L, I and the nil sets, checked on all elements."""
    p = _require_prime(algebra)
    if p**algebra.dim > ENUMERATION_LIMIT:
        raise SizeLimit("algebra too large for exhaustive checks")
    fa = FiniteAlgebra(algebra)
    rep = SuiteReport(algebra)
    vecs = all_vectors(p, fa.d)
    masks = {k: fa.mask(vecs, k) for k in ("L", "R", "I", "N3", "N", "Nprime3", "Z", "QN")}
    L, I = vecs[masks["L"]], vecs[masks["I"]]
    unit = np.array([int(v) for v in algebra.unit_coords], dtype=np.int64) if algebra.is_unital else None

    # a^3 = a^4 on L
    a3 = fa.mul(fa.mul(L, L), L)
    bad = ~(fa.mul(a3, L) == a3).all(axis=1)
    rep.checks.append(Check("a^3 = a^4 on L", not bad.any(), _first_bad(fa, L, bad, "a") or f"{len(L)} elements"))

    # L I inside I
    x, y = _pairs(L, I)
    prod_ = fa.mul(x, y)
    bad = ~fa.mask(prod_, "I")
    rep.checks.append(Check("L I inside I", not bad.any(),
                            _first_bad(fa, prod_, bad, "a e") or f"{len(x)} pairs"))

    # L L inside L
    x, y = _pairs(L, L)
    prod_ = fa.mul(x, y)
    bad = ~fa.mask(prod_, "L")
    rep.checks.append(Check("L L inside L", not bad.any(), _first_bad(fa, prod_, bad, "a b") or f"{len(x)} pairs"))

    # conjugation by invertibles of the unitalization
    ext, bs, invs = unitalization_invertibles(fa, seed=seed)
    lift = np.concatenate([L, np.zeros((len(L), 1), dtype=np.int64)], axis=1)
    conj_ok, conj_detail = True, f"{len(bs)} invertibles x {len(L)} elements"
    for b, binv in zip(bs, invs):
        c = ext.mul(ext.mul(np.broadcast_to(b, lift.shape), lift), binv)
        if (c[:, -1] != 0).any():
            conj_ok, conj_detail = False, "conjugate left the ideal A"
            break
        bad = ~fa.mask(c[:, :-1], "L")
        if bad.any():
            conj_ok, conj_detail = False, _first_bad(fa, c[:, :-1], bad, "b a b^-1")
            break
    rep.checks.append(Check("b L b^-1 inside L", conj_ok, conj_detail))

    # four nil descriptions of N'_3
    np3 = masks["Nprime3"]
    sets = {"N∩L": masks["N"] & masks["L"], "N3∩L": masks["N3"] & masks["L"], "QN∩L": masks["QN"] & masks["L"]}
    bad_name = next((k for k, m in sets.items() if (m != np3).any()), None)
    witness = None
    if bad_name:
        witness = _row_str(fa, vecs[np.flatnonzero(sets[bad_name] != np3)[0]])
    rep.checks.append(Check("N∩L = N3∩L = N'3 = QN∩L", bad_name is None,
                            f"{bad_name} differs at {witness}" if bad_name else f"|N'3| = {int(np3.sum())}"))
    rep.checks.append(Check("N = QN", bool((masks["N"] == masks["QN"]).all()), "finite-dimensional coincidence"))

    # A^3 = 0 implies L = A; converse advisory only
    cube_zero = bool(masks["Nprime3"].all())
    all_L = bool(masks["L"].all())
    rep.checks.append(Check("A^3 = 0 implies L = A", (not cube_zero) or all_L, f"A^3=0: {cube_zero}, L=A: {all_L}"))
    rep.checks.append(Check("L = A implies A^3 = 0 (advisory)", (not all_L) or cube_zero,
                            "needs infinitely many scalars", advisory=True))

    # N'_3 against the annihilators; the two-sided equivalence is advisory
    left_ann = np.ones(len(vecs), dtype=bool)
    right_ann = np.ones(len(vecs), dtype=bool)
    for i in range(fa.d):
        left_ann &= (fa.mul(vecs, fa.eye[i]) == 0).all(axis=1)
        right_ann &= (fa.mul(fa.eye[i], vecs) == 0).all(axis=1)
    without_order = bool(left_ann.sum() == 1 and right_ann.sum() == 1)
    np3_trivial = bool(np3.sum() == 1)
    detail = f"|N'3| = {int(np3.sum())}, without order: {without_order}"
    rep.checks.append(Check("without order implies N'3 = {0}", np3_trivial or not without_order, detail))
    rep.checks.append(Check("N'3 = {0} iff left annihilator = {0}", np3_trivial == bool(left_ann.sum() == 1),
                            f"|N'3| = {int(np3.sum())}, |left annihilator| = {int(left_ann.sum())}"))
    rep.checks.append(Check("N'3 = {0} implies without order (advisory)", without_order or not np3_trivial,
                            detail, advisory=True))

    # nontrivial members of L are zero divisors
    bad_rows = []
    for a in L:
        if not a.any() or (unit is not None and (a == unit).all()):
            continue
        lm = fa.left_mul_matrices(a)[0]
        rm = fa.right_mul_matrices(a)[0]
        if _solve_mod(lm, np.zeros(fa.d, dtype=np.int64), p) is not None and \
                _solve_mod(rm, np.zeros(fa.d, dtype=np.int64), p) is not None:
            bad_rows.append(a)
            break
    rep.checks.append(Check("L \\ {0, 1} are zero divisors", not bad_rows,
                            _row_str(fa, bad_rows[0]) if bad_rows else ""))

    # strictness example: order-2 nilpotent algebras have L = A and L^2 = 0
    prods = fa.mul(*_pairs(L, L))
    if not algebra.constants:
        rep.checks.append(Check("A^2 = 0: L = A and L L = {0}", all_L and not prods.any()))

    # nice-dependent notes, decided exhaustively
    nice, very_nice = nice_verdicts(fa, vecs, masks["L"])
    if nice:
        sq_rows = {tuple(r) for r in prods}
        li_rows = {tuple(r) for r in vecs[masks["L"] & masks["I"]]}
        rep.checks.append(Check("nice: L L = L ∩ I", sq_rows == li_rows))
        rep.checks.append(Check("nice: a^2 = a^3 on L", bool((fa.mul(fa.mul(L, L), L) == fa.mul(L, L)).all())))
        rep.checks.append(Check("nice: N'2 = N'3", bool((left_ann == np3).all())))
    # I inside Z gives L I = I
    if not (masks["I"] & ~masks["Z"]).any():
        li = {tuple(r) for r in fa.mul(*_pairs(L, I))}
        rep.checks.append(Check("I inside Z: L I = I", li == {tuple(r) for r in I}))
    return rep


def nice_verdicts(fa: FiniteAlgebra, vecs=None, lmask=None):
    """(nice, very_nice) decided over every element, with witnesses.

    The hypothesis a x y = a x a y for all x, y is L-membership; nice asks
    a x = a x a for all x on that set, very nice additionally a^2 = a.
    """
    if vecs is None:
        vecs = all_vectors(fa.p, fa.d)
    if lmask is None:
        lmask = fa.mask(vecs, "L")
    hyp = vecs[lmask]
    concl = np.ones(len(hyp), dtype=bool)
    for i in range(fa.d):
        ax = fa.mul(hyp, fa.eye[i])
        concl &= (fa.mul(ax, hyp) == ax).all(axis=1)
    idem = (fa.mul(hyp, hyp) == hyp).all(axis=1)
    nice = _Verdict(bool(concl.all()), None if concl.all() else hyp[np.flatnonzero(~concl)[0]])
    vbad = ~(concl & idem)
    very = _Verdict(bool(not vbad.any()), None if not vbad.any() else hyp[np.flatnonzero(vbad)[0]])
    return nice, very


@dataclass
class _Verdict:
    value: bool
    witness: object = None

    def __bool__(self):
        return self.value


# zoo -------------------------------------------------------------------
@dataclass(frozen=True)
class ZooSpec:
    dim: int
    p: int
    mode: str = "exhaustive"  # or "sample"
    count: int = 0
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.dim <= 3:
            raise SizeLimit("zoo dimension must be 1..3")
        if self.p not in (2, 3, 5):
            raise SizeLimit("zoo prime must be 2, 3 or 5")
        if self.mode not in ("exhaustive", "sample"):
            raise BadIndex(f"unknown zoo mode {self.mode!r}")
        if self.mode == "exhaustive" and self.p ** (self.dim**3) > ZOO_TABLE_LIMIT:
            raise SizeLimit(f"{self.p}^{self.dim ** 3} tables exceed the exhaustive limit")

    @classmethod
    def parse(cls, text: str) -> "ZooSpec":
        """``dim=2,p=2,exhaustive`` or ``dim=3,p=2,sample=100,seed=42``."""
        kw = {"mode": "exhaustive"}
        for part in text.split(","):
            part = part.strip()
            if part == "exhaustive":
                kw["mode"] = "exhaustive"
            elif "=" in part:
                k, v = part.split("=", 1)
                try:
                    n = int(v)
                except ValueError:
                    raise BadIndex(f"zoo value {v!r} is not an integer") from None
                if k == "sample":
                    kw["mode"], kw["count"] = "sample", n
                elif k in ("dim", "p", "seed", "count"):
                    kw[k] = n
                else:
                    raise BadIndex(f"unknown zoo key {k!r}")
            elif part:
                raise BadIndex(f"cannot parse zoo part {part!r}")
        if "dim" not in kw or "p" not in kw:
            raise BadIndex("a zoo needs dim= and p=")
        return cls(**kw)


def tensors_associative(cs: np.ndarray, p: int) -> np.ndarray:
    """Associativity of a batch of dense tables (n, d, d, d), vectorized.

    (e_i e_j) e_k = sum_m c[i,j,m] c[m,k,:] and e_i (e_j e_k) = sum_m c[j,k,m] c[i,m,:].
    """
    left = np.einsum("nijm,nmkl->nijkl", cs, cs) % p
    right = np.einsum("njkm,niml->nijkl", cs, cs) % p
    return (left == right).reshape(len(cs), -1).all(axis=1)


def _table_to_algebra(c: np.ndarray, p: int, name: str) -> Algebra:
    d = c.shape[0]
    consts = tuple((i, j, k, int(c[i, j, k])) for i, j, k in product(range(d), repeat=3) if c[i, j, k])
    return Algebra(d, consts, ScalarRegime.prime_field(p), name)


def zoo_generate(spec: ZooSpec):
    d, p = spec.dim, spec.p
    out = []
    if spec.mode == "exhaustive":
        n = p ** (d**3)
        for start in range(0, n, CHUNK):
            idx = np.arange(start, min(n, start + CHUNK), dtype=np.int64)
            flat = np.empty((len(idx), d**3), dtype=np.int64)
            rem = idx.copy()
            for k in range(d**3 - 1, -1, -1):
                flat[:, k] = rem % p
                rem //= p
            cs = flat.reshape(-1, d, d, d)
            for t, c in zip(idx[tensors_associative(cs, p)], cs[tensors_associative(cs, p)]):
                out.append(_table_to_algebra(c, p, f"zoo(d={d},p={p})#{int(t)}"))
        return out
    rng = random.Random(spec.seed)
    tries = 0
    while len(out) < spec.count:
        tries += 1
        if tries > 10_000 * max(1, spec.count):
            raise SizeLimit("rejection sampling did not find enough associative tables")
        # sparse tables are far more often associative than uniform ones
        density = rng.choice([0.05, 0.1, 0.2, 0.3])
        c = np.zeros((d, d, d), dtype=np.int64)
        for i, j, k in product(range(d), repeat=3):
            if rng.random() < density:
                c[i, j, k] = rng.randrange(1, p)
        if tensors_associative(c[None], p)[0]:
            out.append(_table_to_algebra(c, p, f"zoo(d={d},p={p},seed={spec.seed})#{len(out)}"))
    return out


def count_associative_tables_slow(d: int, p: int) -> int:
    """Second associativity route: the basis-triple check of the core module."""
    regime = ScalarRegime.prime_field(p)
    count = 0
    for flat in product(range(p), repeat=d**3):
        table = [[[] for _ in range(d)] for _ in range(d)]
        for pos, v in enumerate(flat):
            if v:
                i, j, k = pos // (d * d), (pos // d) % d, pos % d
                table[i][j].append((k, regime.coerce(v)))
        if find_associativity_violation(d, table, regime) is None:
            count += 1
    return count


def find_unit_brute(algebra: Algebra):
    """Two-sided unit by trying every element (prime fields)."""
    fa = FiniteAlgebra(algebra)
    vecs = all_vectors(fa.p, fa.d)
    ok = np.ones(len(vecs), dtype=bool)
    for i in range(fa.d):
        ok &= (fa.mul(vecs, fa.eye[i]) == fa.eye[i]).all(axis=1)
        ok &= (fa.mul(fa.eye[i], vecs) == fa.eye[i]).all(axis=1)
    rows = vecs[ok]
    return None if len(rows) == 0 else algebra.element([int(v) for v in rows[0]])


__all__ = [
    "FiniteAlgebra", "enumerate_predicate_set", "exhaustive_theorem_suite", "ZooSpec", "zoo_generate",
    "tensors_associative", "count_associative_tables_slow", "find_unit_brute", "nice_verdicts",
]
