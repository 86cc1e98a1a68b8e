"""Named algebras: matrix patterns, zero-product and truncated polynomial algebras."""
from __future__ import annotations

from .algebra import Algebra
from .errors import BadIndex, NotSubalgebra, SizeLimit
from .scalars import QQ

MAX_MATRIX_SIZE = 4
MAX_DIM = 8


def matrix_pattern(n: int, positions, regime=QQ, name=""):
    """Subalgebra of n x n matrices spanned by the matrix units at ``positions``.

    Positions are 1-based ``(row, col)`` pairs; the basis follows the given
    order and is labelled ``Erc``.  Raises NotSubalgebra when some product of
    units leaves the span.
    """
    if not 1 <= n <= MAX_MATRIX_SIZE:
        raise SizeLimit(f"matrix size {n} outside 1..{MAX_MATRIX_SIZE}")
    positions = [tuple(p) for p in positions]
    index = {p: i for i, p in enumerate(positions)}
    if len(index) != len(positions):
        raise BadIndex("repeated matrix position")
    consts = []
    for (r1, c1), i in index.items():
        for (r2, c2), j in index.items():
            if c1 != r2:
                continue
            k = index.get((r1, c2))
            if k is None:
                raise NotSubalgebra(f"E{r1}{c1}*E{r2}{c2} = E{r1}{c2} lies outside the pattern")
            consts.append((i, j, k, 1))
    labels = [f"E{r}{c}" for r, c in positions]
    return Algebra(len(positions), tuple(consts), regime, name, tuple(labels))


def matrix_full(n: int, regime=QQ) -> Algebra:
    pos = [(r, c) for r in range(1, n + 1) for c in range(1, n + 1)]
    return matrix_pattern(n, pos, regime, f"matrix_full({n})")


def lower_triangular(n: int, regime=QQ) -> Algebra:
    pos = [(r, c) for r in range(1, n + 1) for c in range(1, r + 1)]
    return matrix_pattern(n, pos, regime, f"lower_triangular({n})")


def upper_triangular(n: int, regime=QQ) -> Algebra:
    pos = [(r, c) for r in range(1, n + 1) for c in range(r, n + 1)]
    return matrix_pattern(n, pos, regime, f"upper_triangular({n})")


def diagonal(n: int, regime=QQ) -> Algebra:
    return matrix_pattern(n, [(r, r) for r in range(1, n + 1)], regime, f"diagonal({n})")


def zero_product(d: int, regime=QQ) -> Algebra:
    if not 1 <= d <= MAX_DIM:
        raise SizeLimit(f"dimension {d} outside 1..{MAX_DIM}")
    return Algebra(d, (), regime, f"zero_product({d})", tuple(f"z{i + 1}" for i in range(d)))


def truncated_polynomial(d: int, regime=QQ) -> Algebra:
    """span{t, ..., t^d} with t^(d+1) = 0 (no constant term)."""
    if not 1 <= d <= MAX_DIM:
        raise SizeLimit(f"dimension {d} outside 1..{MAX_DIM}")
    consts = [(i, j, i + j + 1, 1) for i in range(d) for j in range(d) if i + j + 1 < d]
    labels = ["t"] + [f"t^{k}" for k in range(2, d + 1)]
    return Algebra(d, tuple(consts), regime, f"truncated_polynomial({d})", tuple(labels))


def direct_sum(a: Algebra, b: Algebra, name=None) -> Algebra:
    if a.regime != b.regime:
        raise BadIndex("direct sum needs a common scalar regime")
    if a.dim + b.dim > 2 * MAX_DIM:
        raise SizeLimit("direct sum too large")
    shift = a.dim
    consts = list(a.constants) + [(i + shift, j + shift, k + shift, v) for i, j, k, v in b.constants]
    labels = list(a.labels)
    for lab in b.labels:
        while lab in labels:
            lab += "'"
        labels.append(lab)
    return Algebra(a.dim + b.dim, tuple(consts), a.regime, name or f"direct_sum({a.name}, {b.name})", tuple(labels))


def one_sided_order(regime=QQ) -> Algebra:
    """span{e, c} with e^2 = e, c e = c and e c = c^2 = 0.

    c annihilates from the right only, so the algebra has order while
    N'_3 = {0}, and 0 is an isolated point of L = {0} u {e + t c}.
    """
    return Algebra(2, ((0, 0, 0, 1), (1, 0, 1, 1)), regime, "one_sided_order", ("e", "c"))


ZEMANEK_READINGS = {
    # upper triangular ((a, b), (0, c))
    "upper": [(1, 1), (1, 2), (2, 2)],
    # the entry pattern ((a, b), (c, 0)) exactly as printed
    "literal": [(1, 1), (1, 2), (2, 1)],
}


def zemanek(reading: str = "upper", regime=QQ) -> Algebra:
    """The two readings of the 2x2 example with a non-central idempotent e, eI(A) in I(A).

    The literal pattern is not closed under multiplication and raises
    NotSubalgebra; :func:`endoalg.endo.zemanek_reading_report` records that.
    """
    try:
        pos = ZEMANEK_READINGS[reading]
    except KeyError:
        raise BadIndex(f"unknown reading {reading!r}") from None
    return matrix_pattern(2, pos, regime, f"zemanek_{reading}")


_FAMILIES = {
    "matrix_full": matrix_full,
    "lower_triangular": lower_triangular,
    "upper_triangular": upper_triangular,
    "diagonal": diagonal,
    "zero_product": zero_product,
    "truncated_polynomial": truncated_polynomial,
    "one_sided_order": one_sided_order,
}


def builtin_family(spec, regime=QQ) -> Algebra:
    """Build a named algebra from ``("lower_triangular", 2)`` or ``"lower_triangular(2)"``.

    ``("direct_sum", A, B)`` takes two algebras or two nested specs.
    """
    if isinstance(spec, str):
        spec = _parse_spec(spec)
    kind, *args = spec
    if kind == "direct_sum":
        a, b = (x if isinstance(x, Algebra) else builtin_family(x, regime) for x in args)
        return direct_sum(a, b)
    if kind == "zemanek":
        return zemanek(*args, regime=regime)
    try:
        fn = _FAMILIES[kind]
    except KeyError:
        raise BadIndex(f"unknown builtin family {kind!r}") from None
    return fn(*args, regime=regime)


def _parse_spec(text: str):
    text = text.replace(" ", "")
    if "(" not in text:
        raise BadIndex(f"cannot parse family spec {text!r}")
    kind, rest = text.split("(", 1)
    inner = rest[:-1]
    if kind == "direct_sum":
        depth, cut = 0, None
        for i, ch in enumerate(inner):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "," and depth == 0:
                cut = i
        if cut is None:
            raise BadIndex(f"direct_sum needs two arguments: {text!r}")
        return ("direct_sum", _parse_spec(inner[:cut]), _parse_spec(inner[cut + 1:]))
    if kind == "zemanek":
        return ("zemanek", inner.strip("'\""))
    if inner == "":
        return (kind,)
    try:
        return (kind, int(inner))
    except ValueError:
        raise BadIndex(f"cannot parse family spec {text!r}") from None


def fixture_algebras():
    """The algebras shipped as fixtures, keyed by fixture stem."""
    out = {"lower_triangular_2": lower_triangular(2)}
    for d in range(1, 5):
        out[f"zero_product_{d}"] = zero_product(d)
    for d in range(2, 5):
        out[f"truncated_polynomial_{d}"] = truncated_polynomial(d)
    out["matrix_full_2"] = matrix_full(2)
    out["diagonal_2"] = diagonal(2)
    out["zemanek_upper"] = zemanek("upper")
    return out
