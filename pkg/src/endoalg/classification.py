"""Taxonomy verdicts: without order, nice, very nice, semisimple, unital.

Verdicts are three-valued.  A universally quantified property is only
affirmed by an exhaustive check, an exact certificate or a complete exact
description of the hypothesis set; sampling can refute but never confirm.

Two certificates are used over the rationals:

* unital algebras are very nice: x = y = 1 in a x y = a x a y gives a = a^2,
  then y = 1 gives a x = a x a;
* the hypothesis set {a : a x y = a x a y} is exactly L(A), so a complete
  description of L(A) decides niceness by checking the conclusions on each
  point and, as polynomial identities, on each family.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations

from . import linalg
from .algebra import Algebra, Element, Subspace, adjoin_unit, format_element, kernel_subspace, left_regular_matrix
from .errors import WrongRegime
from .parametric import ParametricElement

TRUE, FALSE, UNKNOWN = "True", "False", "Unknown"
REASONS = (
    "ExhaustiveProof", "Certificate", "CompleteDescription", "Counterexample", "NotFalsified",
    "LinearAlgebra", "WrongRegime",
)
FUZZ_SAMPLES = 512
SEMIPRIME_NOTE = "semiprime and semisimple coincide for finite-dimensional algebras"


@dataclass(frozen=True)
class ThreeValued:
    verdict: str
    reason: str
    witness: object = None
    detail: str = ""

    def __post_init__(self):
        if self.verdict not in (TRUE, FALSE, UNKNOWN):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.reason not in REASONS:
            raise ValueError(f"bad reason {self.reason!r}")

    @property
    def is_true(self) -> bool:
        return self.verdict == TRUE

    @property
    def is_false(self) -> bool:
        return self.verdict == FALSE

    @property
    def is_unknown(self) -> bool:
        return self.verdict == UNKNOWN

    def render(self) -> str:
        out = f"{self.verdict} ({self.reason})"
        if self.witness is not None:
            w = format_element(self.witness) if isinstance(self.witness, Element) else str(self.witness)
            out += f" witness {w}"
        if self.detail:
            out += f"; {self.detail}"
        return out


def _yes(reason, detail=""):
    return ThreeValued(TRUE, reason, None, detail)


def _no(reason, witness, detail=""):
    return ThreeValued(FALSE, reason, witness, detail)


# linear invariants -----------------------------------------------------
def center_subspace(algebra: Algebra) -> Subspace:
    """Z(A): kernel of a -> (a e_i - e_i a)_i."""
    basis = algebra.basis_elements()
    images = [sum(((em * ei - ei * em).coords for ei in basis), ()) for em in basis]
    return kernel_subspace(algebra, images)


def jacobson_radical(algebra: Algebra) -> Subspace:
    """Radical over the rationals by the trace form on the unitalization.

    In characteristic 0 the radical of a finite-dimensional algebra B is
    {a : tr(x -> a b x) = 0 for all b in B}; applied to B = A~ and
    intersected with A it gives rad(A).
    """
    if algebra.regime.kind != "rational":
        raise WrongRegime("the trace-form radical needs characteristic 0")
    ext = adjoin_unit(algebra)
    big = ext.algebra
    images = []
    for em in algebra.basis_elements():
        e = ext.embed(em)
        images.append([linalg.trace(left_regular_matrix(e * b)) for b in big.basis_elements()])
    return kernel_subspace(algebra, images)


def radical_exhaustive(algebra: Algebra) -> Subspace:
    """Radical over GF(p): {a : x a nilpotent for every x in A~}, by enumeration.

    In a finite-dimensional algebra the left ideal A~ a is nil exactly when a
    lies in the radical.
    """
    import numpy as np

    from .oracle import FiniteAlgebra, all_vectors

    if not algebra.regime.is_prime:
        raise WrongRegime("exhaustive radical needs a prime field")
    fa = FiniteAlgebra(algebra)
    ext = FiniteAlgebra(adjoin_unit(algebra).algebra)
    vecs = all_vectors(fa.p, fa.d)
    lifted = np.concatenate([vecs, np.zeros((len(vecs), 1), dtype=np.int64)], axis=1)
    ok = np.ones(len(vecs), dtype=bool)
    for x in all_vectors(fa.p, ext.d):
        xa = ext.mul(x, lifted)
        q = xa
        for _ in range(ext.d):
            q = ext.mul(q, xa)
        ok &= (q == 0).all(axis=1)
    return Subspace.span(algebra, [algebra.element([int(v) for v in r]) for r in vecs[ok]])


def radical(algebra: Algebra) -> Subspace:
    return radical_exhaustive(algebra) if algebra.regime.is_prime else jacobson_radical(algebra)


# niceness --------------------------------------------------------------
def _nice_residuals(a):
    """a e_i a - a e_i for each basis element."""
    for e in a.algebra.basis_elements():
        ae = a * e
        yield ae * a - ae


def _idem_residual(a):
    return a * a - a


def _family_witness(f: ParametricElement, fails):
    for t in f.grid_points(per_axis=2 * f.degree() + 3):
        x = f.at(t)
        if fails(x):
            return x
    return None


def _point_fails_nice(a):
    return any(not r.is_zero() for r in _nice_residuals(a))


def _point_fails_very(a):
    return _point_fails_nice(a) or not _idem_residual(a).is_zero()


def nice_from_description(desc):
    """(nice, very_nice) decided on a complete description of L(A)."""
    nice = very = None
    for p in desc.points:
        if nice is None and _point_fails_nice(p):
            nice = _no("Counterexample", p, "a x a != a x for some basis x")
        if very is None and _point_fails_very(p):
            very = _no("Counterexample", p, "a is not an idempotent" if not _point_fails_nice(p) else
                       "a x a != a x for some basis x")
    for f in desc.families:
        if nice is None and any(not r.is_zero() for r in _nice_residuals(f)):
            nice = _no("Counterexample", _family_witness(f, _point_fails_nice))
        if very is None and (any(not r.is_zero() for r in _nice_residuals(f)) or not _idem_residual(f).is_zero()):
            very = _no("Counterexample", _family_witness(f, _point_fails_very))
    if desc.complete:
        nice = nice or _yes("CompleteDescription", "conclusion checked on every piece of L(A)")
        very = very or _yes("CompleteDescription", "conclusion checked on every piece of L(A)")
    return nice, very


def _fuzz_nice(algebra, desc, samples, seed):
    rng = random.Random(seed)
    pool = list(desc.points)
    for _ in range(samples):
        if not desc.families:
            break
        f = rng.choice(desc.families)
        pool.append(f.at([rng.randint(-5, 5) for _ in range(f.nparams)]))
    nice = next((a for a in pool if _point_fails_nice(a)), None)
    very = next((a for a in pool if _point_fails_very(a)), None)
    n = _no("Counterexample", nice) if nice is not None else ThreeValued(UNKNOWN, "NotFalsified", None,
                                                                          f"{len(pool)} samples")
    v = _no("Counterexample", very) if very is not None else ThreeValued(UNKNOWN, "NotFalsified", None,
                                                                          f"{len(pool)} samples")
    return n, v


def nice_verdicts(algebra: Algebra, samples: int = FUZZ_SAMPLES, seed: int = 0):
    if algebra.regime.is_prime:
        from .oracle import FiniteAlgebra, nice_verdicts as exhaustive

        nice, very = exhaustive(FiniteAlgebra(algebra))
        conv = lambda v: _yes("ExhaustiveProof") if v.value else _no(  # noqa: E731
            "Counterexample", algebra.element([int(x) for x in v.witness]))
        return conv(nice), conv(very)
    if algebra.is_unital:
        cert = "unital: x = y = 1 gives a = a^2, then y = 1 gives a x = a x a"
        return _yes("Certificate", cert), _yes("Certificate", cert)
    from .endo import describe_set

    desc = describe_set(algebra, "L")
    nice, very = nice_from_description(desc)
    if nice is not None and very is not None:
        return nice, very
    fn, fv = _fuzz_nice(algebra, desc, samples, seed)
    return nice or fn, very or fv


# report ----------------------------------------------------------------
@dataclass
class ClassificationReport:
    algebra: Algebra
    without_order: ThreeValued
    nice: ThreeValued
    very_nice: ThreeValued
    semisimple: ThreeValued
    semiprime: ThreeValued
    unital: ThreeValued
    radical: Subspace | None
    center: Subspace
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.very_nice.is_true and not self.nice.is_true:
            raise AssertionError("very nice reported without nice")
        for name in ("without_order", "nice", "very_nice", "semisimple", "semiprime"):
            v = getattr(self, name)
            if v.is_false and v.witness is None:
                raise AssertionError(f"{name} = False without a witness")

    def fields(self):
        return {
            "without_order": self.without_order, "nice": self.nice, "very_nice": self.very_nice,
            "semisimple": self.semisimple, "semiprime": self.semiprime, "unital": self.unital,
        }

    def has_unknown(self) -> bool:
        return any(v.is_unknown for v in self.fields().values())

    def render(self) -> str:
        lines = [f"{k}: {v.render()}" for k, v in self.fields().items()]
        lines.append(f"radical: {self.radical.render() if self.radical is not None else 'not computed'}")
        lines.append(f"center: {self.center.render()}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def classify(algebra: Algebra, samples: int = FUZZ_SAMPLES, seed: int = 0) -> ClassificationReport:
    from .nilpotency import annihilator_subspaces

    left, right = annihilator_subspaces(algebra)
    if left.is_zero() and right.is_zero():
        wo = _yes("LinearAlgebra", "left and right annihilators are {0}")
    else:
        w = (left if not left.is_zero() else right).elements()[0]
        side = "a x = 0" if not left.is_zero() else "x a = 0"
        wo = _no("LinearAlgebra", w, f"{side} for all x")

    nice, very = nice_verdicts(algebra, samples, seed)
    rad = radical(algebra)
    if rad.is_zero():
        ss = _yes("LinearAlgebra", "radical is {0}")
    else:
        ss = _no("LinearAlgebra", rad.elements()[0], "nonzero radical element")
    semiprime = ThreeValued(ss.verdict, ss.reason, ss.witness, SEMIPRIME_NOTE)
    if algebra.is_unital:
        un = ThreeValued(TRUE, "LinearAlgebra", algebra.unit, "unit found by exact linear solve")
    else:
        un = ThreeValued(FALSE, "LinearAlgebra", None, "u e_i = e_i = e_i u has no solution")
    notes = [SEMIPRIME_NOTE]
    if algebra.regime.is_prime:
        notes.append("finite-field verdicts; the radical is computed by enumeration")
    return ClassificationReport(algebra, wo, nice, very, ss, semiprime, un, rad, center_subspace(algebra), notes)


# implication table -----------------------------------------------------
PREDICATES = ("without_order", "nice", "very_nice", "semisimple", "semiprime", "unital")


@dataclass
class Implication:
    premise: str
    conclusion: str
    held: bool
    checked: int
    undecided: int
    counterexample: Algebra | None = None

    def render(self) -> str:
        tail = "held" if self.held else f"fails on {(self.counterexample.name or repr(self.counterexample))}"
        return f"{self.premise} => {self.conclusion}: {tail} ({self.checked} decided, {self.undecided} undecided)"


def implication_table(zoo, reports=None):
    """Empirical implications between taxonomy predicates over ``zoo``."""
    zoo = list(zoo)
    if not zoo:
        return []
    reports = reports or [classify(a) for a in zoo]
    rows = []
    for p, q in permutations(PREDICATES, 2):
        checked = undecided = 0
        cex = None
        for alg, rep in zip(zoo, reports):
            vp, vq = getattr(rep, p), getattr(rep, q)
            if vp.is_unknown or vq.is_unknown:
                undecided += 1
                continue
            checked += 1
            if vp.is_true and vq.is_false and cex is None:
                cex = alg
        rows.append(Implication(p, q, cex is None, checked, undecided, cex))
    return rows
