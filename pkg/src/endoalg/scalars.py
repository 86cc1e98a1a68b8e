"""Scalar regimes: exact rationals, small prime fields, approximate complex."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import BadScalar


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, int(n**0.5) + 1))


class GF:
    """Element of the prime field Z/pZ."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise BadScalar(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise BadScalar(f"{other} has no image in GF({self.p})")
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else GF(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else GF(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else GF(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else GF(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GF(-self.v, self.p)

    def inverse(self) -> "GF":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return GF(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * GF(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else GF(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return GF(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __lt__(self, other):
        # only for canonical ordering of enumerated elements
        return self.v < self._lift(other) % self.p

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"GF({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class ScalarRegime:
    """Ground field of an algebra.

    ``kind`` is one of ``"rational"``, ``"prime"`` or ``"complex"``.  The
    complex regime only tags floating-point metric outputs and is never
    accepted as the ground field of an algebra.
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("rational", "prime", "complex"):
            raise BadScalar(f"unknown scalar regime {self.kind!r}")
        if self.kind == "prime":
            if self.p is None or not _is_prime(self.p) or self.p > 251:
                raise BadScalar(f"prime field modulus must be a prime <= 251, got {self.p}")
        elif self.p is not None:
            raise BadScalar("only prime fields carry a modulus")

    @classmethod
    def rational(cls) -> "ScalarRegime":
        return cls("rational")

    @classmethod
    def prime_field(cls, p: int) -> "ScalarRegime":
        return cls("prime", p)

    @classmethod
    def approx_complex(cls) -> "ScalarRegime":
        return cls("complex")

    @property
    def is_exact(self) -> bool:
        return self.kind != "complex"

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        """Convert an int, Fraction, GF or rational string into this regime."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool) or not isinstance(x, (int, Fraction, GF)):
            raise BadScalar(f"not an exact scalar: {x!r}")
        if self.kind == "rational":
            if isinstance(x, GF):
                raise BadScalar("cannot lift a prime-field scalar to the rationals")
            return Fraction(x)
        if self.kind == "prime":
            if isinstance(x, GF):
                if x.p != self.p:
                    raise BadScalar(f"GF({x.p}) scalar in GF({self.p}) algebra")
                return x
            x = Fraction(x)
            if x.denominator % self.p == 0:
                raise BadScalar(f"{x} is not {self.p}-integral")
            return GF(x.numerator * pow(x.denominator, -1, self.p), self.p)
        raise BadScalar("the approximate complex regime has no exact scalars")

    def parse(self, text: str):
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise BadScalar(f"bad rational literal {text!r}") from exc
        return self.coerce(value)

    def elements(self):
        if self.kind != "prime":
            raise BadScalar("only prime fields can be enumerated")
        return [GF(v, self.p) for v in range(self.p)]

    def vectors(self, dim: int):
        """All vectors of GF(p)^dim in lexicographic order."""
        els = self.elements()
        return product(els, repeat=dim)

    def to_json(self):
        if self.kind == "prime":
            return {"prime_field": self.p}
        return self.kind

    @classmethod
    def from_json(cls, value) -> "ScalarRegime":
        if value == "rational":
            return cls.rational()
        if isinstance(value, dict) and set(value) == {"prime_field"}:
            p = value["prime_field"]
            if not isinstance(p, int):
                raise BadScalar(f"prime_field must be an integer, got {p!r}")
            return cls.prime_field(p)
        raise BadScalar(f"unknown scalar kind {value!r}")

    def __str__(self):
        return {"rational": "Q", "complex": "C~"}.get(self.kind) or f"GF({self.p})"


QQ = ScalarRegime.rational()


def scalar_str(x) -> str:
    """Serialize an exact scalar as an integer or ``p/q`` string."""
    if isinstance(x, GF):
        return str(x.v)
    return str(Fraction(x))


def reduce_mod(x: Fraction, p: int) -> GF:
    return ScalarRegime.prime_field(p).coerce(Fraction(x))
