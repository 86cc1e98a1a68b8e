"""The ``.alg`` file format: a JSON document describing an algebra.

::

    {
      "name": "lower_triangular(2)",
      "dim": 3,
      "scalar": "rational",            # or {"prime_field": 3}
      "basis": ["E11", "E21", "E22"],
      "products": [
        {"left": "E11", "right": "E11", "result": [["E11", "1"]]},
        ...
      ],
      "families": [                    # optional
        {"name": "f", "base": ["1", "0", "0"], "direction": ["0", "1", "0"], "domain": "line"}
      ]
    }

Absent products are zero.  Scalars are integer or ``p/q`` strings and are
parsed exactly.  Semantic errors carry the line and column of the product
or family entry that caused them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .algebra import Algebra
from .errors import BadScalar, InputError, ParseError
from .parametric import LINE, RAY, ParametricElement
from .scalars import ScalarRegime, scalar_str

KEYS = {"name", "dim", "scalar", "basis", "products", "families", "note"}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    base: tuple
    direction: tuple
    domain: str

    def build(self, algebra: Algebra) -> ParametricElement:
        return ParametricElement.affine(algebra.element(self.base), [self.direction], domain=self.domain)


@dataclass(frozen=True)
class AlgebraDocument:
    algebra: Algebra
    families: tuple = ()
    note: str = ""

    def family(self, name: str) -> ParametricElement:
        for f in self.families:
            if f.name == name:
                return f.build(self.algebra)
        raise InputError(f"no family named {name!r}")

    def verify_families(self, kind: str = "L"):
        """Names of the declared families that are not inside the named set."""
        from .endo import verify_parametric_family

        return [f.name for f in self.families if not verify_parametric_family(f.build(self.algebra), kind)]


def _position(text: str, offset: int):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _locate(text: str, key: str, occurrence: int):
    """Line and column of the ``occurrence``-th appearance of ``"key"``."""
    needle = f'"{key}"'
    pos = -1
    for _ in range(occurrence + 1):
        pos = text.find(needle, pos + 1)
        if pos < 0:
            return None, None
    return _position(text, pos)


def _fail(text, message, key=None, occurrence=0):
    line, col = _locate(text, key, occurrence) if key else (None, None)
    raise ParseError(message, line, col)


def _scalar(regime, value, text, key, occurrence):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        _fail(text, f"scalar must be an integer or 'p/q' string, got {value!r}", key, occurrence)
    try:
        return regime.coerce(str(value))
    except BadScalar as exc:
        _fail(text, str(exc), key, occurrence)


def parse_algebra_document(text: str) -> AlgebraDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, 1)
    extra = set(doc) - KEYS
    if extra:
        _fail(text, f"unknown key {sorted(extra)[0]!r}", sorted(extra)[0])
    for key in ("dim", "scalar", "basis", "products"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", 1, 1)
    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        _fail(text, f"dim must be a positive integer, got {dim!r}", "dim")
    try:
        regime = ScalarRegime.from_json(doc["scalar"])
    except BadScalar as exc:
        _fail(text, str(exc), "scalar")
    basis = doc["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        _fail(text, "basis must be an array of strings", "basis")
    if len(basis) != dim:
        _fail(text, f"basis has {len(basis)} labels but dim is {dim}", "basis")
    if len(set(basis)) != dim:
        _fail(text, "basis labels must be unique", "basis")
    index = {b: i for i, b in enumerate(basis)}
    name = doc.get("name", "")
    if not isinstance(name, str):
        _fail(text, "name must be a string", "name")

    products = doc["products"]
    if not isinstance(products, list):
        _fail(text, "products must be an array", "products")
    constants = []
    seen = set()
    for n, entry in enumerate(products):
        if not isinstance(entry, dict) or set(entry) != {"left", "right", "result"}:
            _fail(text, f"product {n} needs exactly left, right and result", "left", n)
        for side in ("left", "right"):
            if entry[side] not in index:
                _fail(text, f"product {n}: unknown label {entry[side]!r}", side, n)
        pair = (index[entry["left"]], index[entry["right"]])
        if pair in seen:
            _fail(text, f"product {entry['left']}*{entry['right']} given twice", "left", n)
        seen.add(pair)
        result = entry["result"]
        if not isinstance(result, list):
            _fail(text, f"product {n}: result must be an array", "result", n)
        for term in result:
            if not isinstance(term, list) or len(term) != 2:
                _fail(text, f"product {n}: result terms are [label, scalar] pairs", "result", n)
            label, value = term
            if label not in index:
                _fail(text, f"product {n}: unknown label {label!r}", "result", n)
            constants.append((*pair, index[label], _scalar(regime, value, text, "result", n)))
    # Algebra raises NonAssociative / BadScalar itself
    algebra = Algebra(dim, tuple(constants), regime, name, tuple(basis))

    fams = []
    for n, entry in enumerate(doc.get("families") or []):
        if not isinstance(entry, dict) or not {"base", "direction"} <= set(entry):
            _fail(text, f"family {n} needs base and direction", "base", n)
        if regime.kind != "rational":
            _fail(text, "families are only meaningful over the rationals", "base", n)
        domain = entry.get("domain", LINE)
        if domain not in (LINE, RAY):
            _fail(text, f"family {n}: domain must be 'line' or 'ray'", "domain", n)
        vecs = []
        for key in ("base", "direction"):
            v = entry[key]
            if not isinstance(v, list) or len(v) != dim:
                _fail(text, f"family {n}: {key} must have {dim} entries", key, n)
            vecs.append(tuple(_scalar(regime, x, text, key, n) for x in v))
        fams.append(FamilySpec(str(entry.get("name", f"family{n}")), vecs[0], vecs[1], domain))
    return AlgebraDocument(algebra, tuple(fams), str(doc.get("note", "")))


def parse_algebra_text(text: str) -> Algebra:
    return parse_algebra_document(text).algebra


def load_document(path) -> AlgebraDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_algebra_document(text)


def parse_algebra_file(path) -> Algebra:
    return load_document(path).algebra


def render_algebra(algebra: Algebra, families=(), note: str = "") -> str:
    """JSON text for ``algebra``, one product or family per line, in basis order."""
    labels = algebra.labels
    rows = {}
    for i, j, k, v in algebra.constants:
        rows.setdefault((i, j), []).append([labels[k], scalar_str(v)])
    products = [{"left": labels[i], "right": labels[j], "result": res} for (i, j), res in sorted(rows.items())]
    fams = [
        {"name": f.name, "base": [scalar_str(x) for x in f.base],
         "direction": [scalar_str(x) for x in f.direction], "domain": f.domain}
        for f in families
    ]
    head = {"name": algebra.name, "dim": algebra.dim, "scalar": algebra.regime.to_json(), "basis": list(labels)}
    if note:
        head["note"] = note
    dump = lambda x: json.dumps(x, ensure_ascii=False)  # noqa: E731
    lines = ["{"] + [f"  {dump(k)}: {dump(v)}," for k, v in head.items()]
    lines.append('  "products": [')
    lines += ["    " + dump(p) + ("," if n < len(products) - 1 else "") for n, p in enumerate(products)]
    lines.append("  ]" + ("," if fams else ""))
    if fams:
        lines.append('  "families": [')
        lines += ["    " + dump(f) + ("," if n < len(fams) - 1 else "") for n, f in enumerate(fams)]
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_algebra_file(path, algebra: Algebra, families=(), note: str = ""):
    Path(path).write_text(render_algebra(algebra, families, note), encoding="utf-8")
