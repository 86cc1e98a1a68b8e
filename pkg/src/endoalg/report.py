"""Reports tying the modules together: analyze, verify, member, enumerate, distance.

A :class:`Report` is a plain JSON-compatible tree.  Its machine form is
``render_json`` (sorted keys, two-space indent); ``parse_report`` inverts it
exactly.  Rationals are always strings.  ``render_text`` is the human form.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, Element, Subspace, format_element
from .classification import ThreeValued, center_subspace, classify, radical
from .endo import (
    ElementSetDescription, describe_set, description_points_mod, is_member, stabilization_index,
)
from .errors import BadIndex, Incomplete, InputError, ToleranceError, WrongRegime
from .fileformat import AlgebraDocument, load_document
from .metric import (
    DEFAULT_TOL, Bracket, NormedContext, algebra_norm, is_submultiplicative_on, set_distance,
)
from .nilpotency import (
    annihilator_criterion_check, annihilator_subspaces, endomorphic_left_algebra_check, nil_verdict,
    nilpotent_hierarchy_battery, nprime3_subspace, two_sided_annihilator,
)
from .oracle import PREDICATES, ZooSpec, enumerate_predicate_set, exhaustive_theorem_suite, zoo_generate
from .parametric import ParametricElement, format_family
from .scalars import scalar_str
from .topology import (
    commuting_pair_bounds, component_analysis, nprime3_to_q_distance, replay_annihilator_perturbation,
    zemanek_checks,
)

SCHEMA_VERSION = 1
PASS, FAIL, ADVISORY, SKIP = "pass", "fail", "advisory", "skipped"
SUITES = ("algebraic", "metric", "all")
SUBMULT_PAIRS = 1000
MEMBER_SETS = ("L", "R", "I", "N3", "NP3", "QN", "Z")


def _plain(x):
    """Normalize to what JSON gives back: lists, str keys, no tuples."""
    return json.loads(json.dumps(x, ensure_ascii=False))


@dataclass
class Report:
    command: str
    subject: str
    sections: dict = field(default_factory=dict)
    exit_code: int = 0
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        self.sections = _plain(self.sections)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version, "command": self.command, "subject": self.subject,
            "exit_code": self.exit_code, "sections": self.sections,
        }

    def render_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def render_text(self) -> str:
        lines = [f"{self.command}: {self.subject}"]
        for name, body in self.sections.items():
            lines.append("")
            lines.append(f"== {name} ==")
            lines += _text_lines(body, "")
        lines.append("")
        lines.append(f"exit code {self.exit_code}")
        return "\n".join(lines) + "\n"

    def checks(self):
        """Every check dict in the report, in order."""
        out = []

        def walk(x):
            if isinstance(x, dict):
                if "status" in x and "name" in x:
                    out.append(x)
                else:
                    for v in x.values():
                        walk(v)
            elif isinstance(x, list):
                for v in x:
                    walk(v)

        walk(self.sections)
        return out


def parse_report(text: str) -> Report:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"unsupported report schema {doc.get('schema_version')!r}")
    return Report(doc["command"], doc["subject"], doc["sections"], doc["exit_code"], doc["schema_version"])


def _text_lines(body, indent):
    if isinstance(body, dict):
        if "status" in body and "name" in body:
            tail = f": {body['detail']}" if body.get("detail") else ""
            return [f"{indent}[{body['status'].upper()}] {body['name']}{tail}"]
        if "text" in body and len(body) > 1:
            return [f"{indent}{body['text']}"]
        out = []
        for k, v in body.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{indent}{k}:")
                out += _text_lines(v, indent + "  ")
            else:
                out.append(f"{indent}{k}: {_scalar_text(v)}")
        return out
    if isinstance(body, list):
        out = []
        for v in body:
            if isinstance(v, (dict, list)):
                out += _text_lines(v, indent)
            else:
                out.append(f"{indent}- {_scalar_text(v)}")
        return out
    return [f"{indent}{_scalar_text(body)}"]


def _scalar_text(v):
    if v is None:
        return "-"
    if isinstance(v, list) and not v:
        return "none"
    return str(v)


# serialization helpers -------------------------------------------------
def check(name, passed, detail="", advisory=False):
    status = PASS if passed else (ADVISORY if advisory else FAIL)
    return {"name": name, "status": status, "detail": str(detail)}


def skipped(name, why):
    return {"name": name, "status": SKIP, "detail": why}


def _point_name(a: Element) -> str:
    if a.is_zero():
        return "0"
    return "1" if a.algebra.is_unital and a == a.algebra.unit else format_element(a)


def element_json(a: Element):
    return {"text": format_element(a), "coords": [scalar_str(x) for x in a.coords]}


def family_json(f: ParametricElement):
    out = {"text": format_family(f), "domain": list(f.domain)}
    if f.is_affine():
        out["base"] = [scalar_str(x) for x in f.base().coords]
        out["directions"] = [[scalar_str(x) for x in d.coords] for d in f.directions()]
    else:
        out["terms"] = [[list(m), [scalar_str(x) for x in c]] for m, c in sorted(f.terms.items())]
    return out


def description_json(desc: ElementSetDescription, name=None):
    return {
        "text": desc.render(name),
        "complete": desc.complete,
        "provenance": desc.provenance,
        "points": [element_json(p) for p in desc.points],
        "families": [family_json(f) for f in desc.families],
    }


def verdict_json(v: ThreeValued):
    w = v.witness
    if isinstance(w, Element):
        w = format_element(w)
    elif w is not None:
        w = str(w)
    return {"verdict": v.verdict, "reason": v.reason, "witness": w, "detail": v.detail}


def bracket_json(b: Bracket):
    return {"lower": scalar_str(b.lower), "upper": scalar_str(b.upper), "exact": b.exact, "text": str(b)}


def describes_whole_algebra(desc: ElementSetDescription) -> bool:
    """True when a complete description is all of A."""
    alg = desc.algebra
    if not desc.complete:
        raise Incomplete("cannot decide L = A from a partial description")
    if alg.regime.is_prime:
        return len(desc.points) == alg.regime.p ** alg.dim
    return any(f.is_affine() and Subspace.span(alg, f.directions()).is_whole() for f in desc.families)


def criterion_checks(crit):
    detail = f"N'3 = {{0}}: {crit.nprime3_trivial}, without order: {crit.without_order}"
    return [
        check("without order implies N'3 = {0}", crit.forward_holds, detail),
        check("N'3 = {0} iff left annihilator = {0}", crit.left_form_holds),
        check("N'3 = {0} implies without order (advisory)", crit.holds, detail, advisory=True),
        check("without order and A^3 = 0 only for A = {0}", crit.corollary_holds),
    ]


# loading ---------------------------------------------------------------
def load(source) -> AlgebraDocument:
    if isinstance(source, AlgebraDocument):
        return source
    if isinstance(source, Algebra):
        return AlgebraDocument(source)
    return load_document(source)


# analyze ---------------------------------------------------------------
def run_analyze(source, seed: int = 0, tol=DEFAULT_TOL, strict: bool = False,
                samples: int = 512, spectral_tol: float = 1e-6) -> Report:
    doc = load(source)
    alg = doc.algebra
    tol = Fraction(tol)
    sections = {}

    sections["algebra"] = {
        "name": alg.name, "dim": alg.dim, "scalar": str(alg.regime), "basis": list(alg.labels),
        "unital": alg.is_unital, "unit": format_element(alg.unit) if alg.is_unital else None,
    }

    cls = classify(alg, samples=samples, seed=seed)
    sections["classification"] = {k: verdict_json(v) for k, v in cls.fields().items()}
    sections["classification"]["radical"] = cls.radical.render()
    sections["classification"]["center"] = cls.center.render()
    sections["classification"]["notes"] = list(cls.notes)

    descs = {kind: describe_set(alg, kind) for kind in ("L", "R", "I")}
    sections["sets"] = {kind: description_json(d) for kind, d in descs.items()}
    L = descs["L"]

    left, right = annihilator_subspaces(alg)
    crit = annihilator_criterion_check(alg)
    nil = {
        "N'3": nprime3_subspace(alg).render(),
        "left_annihilator": left.render(),
        "right_annihilator": right.render(),
        "two_sided_annihilator": two_sided_annihilator(alg).render(),
        "cube_zero": alg.cube_is_zero(),
        "endomorphic_left_algebra": endomorphic_left_algebra_check(alg, seed=seed),
    }
    nil["L_equals_A"] = describes_whole_algebra(L) if L.complete else None
    hierarchy = nilpotent_hierarchy_battery(alg) if (L.complete or alg.regime.is_prime) else None
    nil["checks"] = criterion_checks(crit)
    if hierarchy is not None:
        nil["checks"].append(check("N∩L = N3∩L = N'3 = QN∩L", hierarchy.holds, hierarchy.detail))
    else:
        nil["checks"].append(skipped("N∩L = N3∩L = N'3 = QN∩L", "L(A) description is partial"))
    if nil["L_equals_A"] is not None:
        nil["checks"].append(check("L = A iff A^3 = 0", nil["L_equals_A"] == nil["cube_zero"]))
    sections["nilpotency"] = nil

    if alg.regime.is_prime:
        suite = exhaustive_theorem_suite(alg, seed=seed)
        sections["finite_field_suite"] = {
            "banner": suite.banner,
            "checks": [check(c.name, c.passed, c.detail, c.advisory) for c in suite.checks],
        }
    elif L.complete:
        sections.update(_metric_sections(alg, L, cls, seed, tol, spectral_tol))
    else:
        sections["components"] = {"note": "skipped: the description of L(A) is partial"}

    rep = Report("analyze", alg.name or "algebra", sections)
    failed = any(c["status"] == FAIL for c in rep.checks())
    rep.exit_code = 1 if failed else (3 if strict and cls.has_unknown() else 0)
    return rep


def _metric_sections(alg, L, cls, seed, tol, spectral_tol):
    out = {}
    ctx = NormedContext(alg)
    comps = component_analysis(alg, L)
    out["components"] = {
        "norm": ctx.describe(),
        "isolated_points": [_point_name(c.representative) for c in comps if c.kind == "Singleton"],
        "list": [{"kind": c.kind, "text": c.render(), "contains_origin": c.contains_origin} for c in comps],
    }
    metric = {}
    d = nprime3_to_q_distance(L, ctx, tol)
    metric["d(N'3, Q)"] = bracket_json(d) if d is not None else "Q is empty"
    checks = []
    if d is not None:
        checks.append(check("d(N'3, Q) >= 1", d.lower >= 1 - tol, f"d(N'3, Q) = {d}"))
    try:
        name = "commuting idempotent a, b^3 != a: ||a - b|| >= 1"
        bounds = commuting_pair_bounds(L, ctx)
        live = [b for b in bounds if not b.excluded]
        low = min((b.minimum.upper for b in live), default=None)
        detail = f"{len(live)} piece pairs, min {low}" if low is not None else "no pairs"
        if all(b.holds for b in bounds) or any(b.refuted for b in bounds):
            checks.append(check(name, all(b.holds for b in bounds), detail))
        else:
            checks.append(skipped(name, "minimum only sampled on a non-affine component"))
    except (ToleranceError, Incomplete) as exc:
        checks.append(skipped("commuting idempotent a, b^3 != a: ||a - b|| >= 1", str(exc)))
    replay = replay_annihilator_perturbation(alg, L)
    if replay.applicable:
        checks.append(check("a + c perturbation stays in L with equal square", replay.passed,
                            f"c = {format_element(replay.c)}, {len(replay.checked)} elements"
                            + (f"; {replay.detail}" if replay.detail else "")))
    else:
        checks.append(skipped("a + c perturbation stays in L with equal square", replay.detail))
    if cls.very_nice.is_true:
        try:
            z = zemanek_checks(alg, L, ctx, tol, spectral_tol, seed, comps)
            checks += [check(c.name, c.passed, c.detail) for c in z.checks]
            metric["out_of_scope"] = z.out_of_scope
        except (ToleranceError, Incomplete) as exc:
            checks.append(skipped("component checks for very nice algebras", str(exc)))
    else:
        checks.append(skipped("component checks for very nice algebras", f"very nice is {cls.very_nice.verdict}"))
    metric["checks"] = checks
    out["metric"] = metric
    return out


# verify ----------------------------------------------------------------
def _algebraic_checks(alg: Algebra, seed: int):
    checks = []
    if alg.regime.is_prime:
        suite = exhaustive_theorem_suite(alg, seed=seed)
        checks += [check(c.name, c.passed, c.detail, c.advisory) for c in suite.checks]
        return checks

    checks += criterion_checks(annihilator_criterion_check(alg))
    cube_zero = endomorphic_left_algebra_check(alg, seed=seed)
    L = describe_set(alg, "L")
    if L.complete:
        whole = describes_whole_algebra(L)
        checks.append(check("L = A iff A^3 = 0", whole == cube_zero, f"A^3 = 0: {cube_zero}, L = A: {whole}"))
        h = nilpotent_hierarchy_battery(alg)
        checks.append(check("N∩L = N3∩L = N'3 = QN∩L", h.holds, h.detail))
    else:
        checks.append(skipped("L = A iff A^3 = 0", "partial description"))
    stab = [stabilization_index(a) for a in L.sample()]
    top = max(stab, default=1)
    checks.append(check("a^3 = a^4 on L (description samples)", top <= 3, f"max index {top}"))
    for p in (2, 3):
        if not alg.is_integral_mod(p) or p ** alg.dim > 4096:
            continue
        red = alg.reduce_mod(p)
        suite = exhaustive_theorem_suite(red, seed=seed)
        checks += [check(f"GF({p}): {c.name}", c.passed, c.detail, c.advisory) for c in suite.checks]
        if L.complete and all(f.is_affine() for f in L.families):
            a = set(description_points_mod(L, p))
            b = set(enumerate_predicate_set(red, "L"))
            checks.append(check(f"GF({p}): reduced description of L equals enumerated L", a == b,
                                f"{len(a)} vs {len(b)} elements"))
    return checks


def _metric_checks(alg: Algebra, seed: int, tol, spectral_tol):
    if alg.regime.is_prime:
        return [skipped("metric suite", "finite fields carry no norm")]
    ctx = NormedContext(alg)
    rng = random.Random(seed)
    checks = []
    rand = lambda: alg.element([Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(alg.dim)])  # noqa: E731
    bad = None
    for _ in range(SUBMULT_PAIRS):
        a, b = rand(), rand()
        if not is_submultiplicative_on(a, b, ctx):
            bad = (a, b)
            break
    checks.append(check(f"||ab|| <= ||a|| ||b|| on {SUBMULT_PAIRS} seeded pairs", bad is None,
                        f"a = {format_element(bad[0])}, b = {format_element(bad[1])}" if bad else ctx.describe()))
    if alg.is_unital:
        checks.append(check("||1|| = 1", algebra_norm(alg.unit, ctx) == 1))
    L = describe_set(alg, "L")
    if not L.complete:
        checks.append(skipped("metric structure of L", "partial description"))
        return checks
    cls = classify(alg, seed=seed)
    sec = _metric_sections(alg, L, cls, seed, Fraction(tol), spectral_tol)
    d = sec["metric"]["d(N'3, Q)"]
    checks.append({"name": "d(N'3, Q)", "status": PASS, "detail": d["text"] if isinstance(d, dict) else d})
    checks += sec["metric"]["checks"]
    kinds = ", ".join(f"{c['kind']}" for c in sec["components"]["list"])
    checks.append(check("every component is a singleton or unbounded", True, kinds))
    return checks


def _verify_one(args):
    alg, suite, seed, tol, spectral_tol = args
    out = []
    if suite in ("algebraic", "all"):
        out += _algebraic_checks(alg, seed)
    if suite in ("metric", "all"):
        out += _metric_checks(alg, seed, tol, spectral_tol)
    return out


def run_verify(source=None, zoo=None, suite: str = "all", seed: int = 0, tol=DEFAULT_TOL,
               jobs: int = 1, spectral_tol: float = 1e-6) -> Report:
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if (source is None) == (zoo is None):
        raise InputError("give exactly one of a file and a --zoo argument")
    if zoo is not None:
        spec = zoo if isinstance(zoo, ZooSpec) else ZooSpec.parse(zoo)
        algebras = zoo_generate(spec)
        subject = f"zoo dim={spec.dim}, p={spec.p}, {spec.mode}"
    else:
        algebras = [load(source).algebra]
        subject = algebras[0].name or "algebra"
    work = [(a, suite, seed, tol, spectral_tol) for a in algebras]
    if jobs > 1 and len(work) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_one, work))
    else:
        results = [_verify_one(w) for w in work]

    per_algebra = []
    first = None
    for alg, checks in zip(algebras, results):
        per_algebra.append({"algebra": alg.name, "checks": checks})
        bad = next((c for c in checks if c["status"] == FAIL), None)
        if bad is not None and first is None:
            first = {"algebra": alg.name, "check": bad["name"], "detail": bad["detail"]}
    total = sum(len(c) for c in results)
    failed = sum(1 for cs in results for c in cs if c["status"] == FAIL)
    sections = {
        "summary": {"suite": suite, "seed": seed, "tol": scalar_str(Fraction(tol)), "algebras": len(algebras),
                    "checks": total, "failures": failed},
    }
    if first is not None:
        sections["first_counterexample"] = first
    sections["results"] = per_algebra
    return Report("verify", subject, sections, 1 if first else 0)


# member / enumerate / distance -----------------------------------------
def parse_coords(text: str, algebra: Algebra) -> Element:
    parts = [p for p in text.strip().strip("[]()").replace(" ", "").split(",") if p != ""]
    if len(parts) != algebra.dim:
        raise BadIndex(f"expected {algebra.dim} coordinates, got {len(parts)}")
    return algebra.element([algebra.regime.parse(p) for p in parts])


def run_member(source, element: str, set_name: str) -> Report:
    doc = load(source)
    alg = doc.algebra
    if set_name not in MEMBER_SETS:
        raise InputError(f"unknown set {set_name!r}; choose from {', '.join(MEMBER_SETS)}")
    a = parse_coords(element, alg)
    detail = {}
    if set_name in ("L", "R", "I"):
        ok = is_member(a, set_name)
        if set_name == "L" and ok:
            detail["stabilization_index"] = stabilization_index(a)
    elif set_name == "Z":
        ok = center_subspace(alg).contains(a)
    elif set_name == "NP3":
        ok = nprime3_subspace(alg).contains(a)
    else:
        v = nil_verdict(a)
        ok = v.in_N3 if set_name == "N3" else v.in_QN
        detail["nil_index"] = v.nil_index
    body = {"element": format_element(a), "set": set_name, "member": ok}
    body.update(detail)
    return Report("member", alg.name or "algebra", {"result": body})


def run_enumerate(source, set_name: str) -> Report:
    alg = load(source).algebra
    if not alg.regime.is_prime:
        raise WrongRegime("enumerate needs an algebra over a prime field")
    kind = {"NP3": "Nprime3"}.get(set_name, set_name)
    if kind not in PREDICATES:
        raise InputError(f"unknown set {set_name!r}")
    els = enumerate_predicate_set(alg, kind)
    return Report("enumerate", alg.name or "algebra", {
        "result": {"set": set_name, "count": len(els), "elements": [format_element(e) for e in els]},
    })


def resolve_set(expr: str, doc: AlgebraDocument):
    """A set expression as something :func:`set_distance` accepts.

    L, R, I, NP3 (the subspace N'3), Q (L minus N'3), Z (centre), J
    (radical), 0, 1, a coordinate list ``1,0,0``, ``family:<name>`` from the
    file, or ``component:<k>`` (k-th component of L, 0-based).
    """
    alg = doc.algebra
    e = expr.strip()
    if e in ("L", "R", "I"):
        d = describe_set(alg, e)
        if not d.complete:
            raise Incomplete(f"the description of {e}(A) is partial")
        return d
    if e == "NP3":
        return nprime3_subspace(alg)
    if e == "Z":
        return center_subspace(alg)
    if e == "J":
        return radical(alg)
    if e == "Q":
        L = describe_set(alg, "L")
        if not L.complete:
            raise Incomplete("the description of L(A) is partial")
        sub = nprime3_subspace(alg)
        pieces = [p for p in L.points if not sub.contains(p)]
        pieces += [f for f in L.families if not all(sub.contains(Element(c, alg)) for c in f.terms.values())]
        if not pieces:
            raise InputError("Q(A) is empty")
        return pieces
    if e == "0":
        return [alg.zero]
    if e == "1":
        if not alg.is_unital:
            raise InputError("the algebra has no unit")
        return [alg.unit]
    if e.startswith("family:"):
        return [doc.family(e.split(":", 1)[1])]
    if e.startswith("component:"):
        comps = component_analysis(alg, describe_set(alg, "L"))
        try:
            return comps[int(e.split(":", 1)[1])].pieces()
        except (ValueError, IndexError):
            raise InputError(f"no component {e!r}; there are {len(comps)}") from None
    return [parse_coords(e, alg)]


def run_distance(source, from_expr: str, to_expr: str, tol=DEFAULT_TOL) -> Report:
    doc = load(source)
    alg = doc.algebra
    if alg.regime.kind != "rational":
        raise WrongRegime("distances need the rationals")
    ctx = NormedContext(alg)
    b = set_distance(resolve_set(from_expr, doc), resolve_set(to_expr, doc), ctx, Fraction(tol))
    return Report("distance", alg.name or "algebra", {
        "result": {"from": from_expr, "to": to_expr, "norm": ctx.describe(), "distance": bracket_json(b)},
    })


__all__ = [
    "Report", "parse_report", "run_analyze", "run_verify", "run_member", "run_enumerate", "run_distance",
    "resolve_set", "SCHEMA_VERSION",
]
