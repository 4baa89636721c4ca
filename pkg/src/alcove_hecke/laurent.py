"""Exact Laurent arithmetic in q and a fixed family of zeta generators.

Every coefficient ring in this package is Z[q, q^-1][zeta_1^{+-1}, ...,
zeta_k^{+-1}] for some arity k that depends on the geometric context.
Values carry their arity and refuse to mix with values of another arity:
a mismatch always means two incompatible contexts got crossed, and that
should fail loudly rather than silently produce garbage.

Coefficients are plain Python ints (arbitrary precision); fold products
like (q - q^-1)^20 overflow fixed-width types long before word lengths
become geometrically interesting.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "NEG_INF",
    "QLaurent",
    "SignedQMonomial",
    "q_degree",
    "leading_part",
    "factor_product_degree",
    "ql_to_json",
    "ql_from_json",
]


class _MinusInfinity:
    """Degree of the zero polynomial.  Compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return not isinstance(other, _MinusInfinity)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _MinusInfinity)

    def __repr__(self):
        return "MinusInfinity"


NEG_INF = _MinusInfinity()


class QLaurent:
    """Sparse Laurent polynomial in q and ``arity`` zeta generators.

    Terms map (q_exponent, zeta_exponent_tuple) to a nonzero int.
    Instances are immutable by convention; all operations return new
    values.

    >>> f = QLaurent.q_power(1, 0) - QLaurent.q_power(-1, 0)
    >>> g = QLaurent.q_power(1, 0) + QLaurent.q_power(-1, 0)
    >>> f * g == QLaurent.q_power(2, 0) - QLaurent.q_power(-2, 0)
    True
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict | None = None):
        self.arity = arity
        self.terms = {} if terms is None else terms

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(arity: int) -> "QLaurent":
        return QLaurent(arity)

    @staticmethod
    def one(arity: int) -> "QLaurent":
        return QLaurent(arity, {(0, (0,) * arity): 1})

    @staticmethod
    def q_power(k: int, arity: int, coeff: int = 1) -> "QLaurent":
        if coeff == 0:
            return QLaurent(arity)
        return QLaurent(arity, {(k, (0,) * arity): coeff})

    @staticmethod
    def monomial(qexp: int, zexp: tuple, coeff: int = 1) -> "QLaurent":
        if coeff == 0:
            return QLaurent(len(zexp))
        return QLaurent(len(zexp), {(qexp, tuple(zexp)): coeff})

    @staticmethod
    def gap(weight: int, arity: int) -> "QLaurent":
        """The quadratic-relation constant q^weight - q^-weight."""
        if weight == 0:
            return QLaurent(arity)
        return QLaurent(arity, {(weight, (0,) * arity): 1,
                                (-weight, (0,) * arity): -1})

    # -- ring structure ----------------------------------------------

    def _check(self, other: "QLaurent"):
        if self.arity != other.arity:
            raise ValueError(
                f"zeta arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "QLaurent") -> "QLaurent":
        self._check(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return QLaurent(self.arity, out)

    def __neg__(self) -> "QLaurent":
        return QLaurent(self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "QLaurent") -> "QLaurent":
        self._check(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) - c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return QLaurent(self.arity, out)

    def __mul__(self, other: "QLaurent") -> "QLaurent":
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return QLaurent(self.arity)
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for (qa, za), ca in a.items():
            for (qb, zb), cb in b.items():
                key = (qa + qb, tuple(x + y for x, y in zip(za, zb)))
                s = out.get(key, 0) + ca * cb
                if s:
                    out[key] = s
                else:
                    del out[key]
        return QLaurent(self.arity, out)

    def scale(self, c: int) -> "QLaurent":
        if c == 0:
            return QLaurent(self.arity)
        return QLaurent(self.arity, {k: c * v for k, v in self.terms.items()})

    def shift(self, qexp: int, zexp: tuple | None = None) -> "QLaurent":
        """Multiply by the monomial q^qexp zeta^zexp without a full mul."""
        z = (0,) * self.arity if zexp is None else tuple(zexp)
        return QLaurent(self.arity, {(q + qexp, tuple(a + b for a, b in zip(zv, z))): c
                                     for (q, zv), c in self.terms.items()})

    def __pow__(self, n: int) -> "QLaurent":
        if n < 0:
            raise ValueError("negative powers are not defined here")
        out = QLaurent.one(self.arity)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, QLaurent) and self.arity == other.arity
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (q, z), c in self.sorted_terms():
            mono = []
            if q:
                mono.append(f"q^{q}" if q != 1 else "q")
            for i, e in enumerate(z):
                if e:
                    mono.append(f"z{i}^{e}" if e != 1 else f"z{i}")
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append("*".join(mono))
            elif c == -1:
                bits.append("-" + "*".join(mono))
            else:
                bits.append(f"{c}*" + "*".join(mono))
        return " + ".join(bits).replace("+ -", "- ")


@dataclass(frozen=True, slots=True)
class SignedQMonomial:
    """A value of shape (+-1) q^k, the only shape a v-parameter takes."""

    sign: int
    q_exp: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +-1, got {self.sign}")

    def __mul__(self, other: "SignedQMonomial") -> "SignedQMonomial":
        return SignedQMonomial(self.sign * other.sign, self.q_exp + other.q_exp)

    def inverse(self) -> "SignedQMonomial":
        return SignedQMonomial(self.sign, -self.q_exp)

    def power(self, n: int) -> "SignedQMonomial":
        return SignedQMonomial(self.sign if n % 2 else 1, self.q_exp * n)

    def to_laurent(self, arity: int) -> QLaurent:
        return QLaurent.q_power(self.q_exp, arity, self.sign)

    def is_one(self) -> bool:
        return self.sign == 1 and self.q_exp == 0


SQM_ONE = SignedQMonomial(1, 0)


def q_degree(f: QLaurent):
    """Maximal q-exponent of f, or NEG_INF for the zero polynomial.

    Zeta generators carry degree zero.

    >>> q_degree(QLaurent.gap(1, 0))
    1
    >>> q_degree(QLaurent.zero(0))
    MinusInfinity
    """
    if not f.terms:
        return NEG_INF
    return max(q for q, _ in f.terms)


def leading_part(f: QLaurent, a: int) -> QLaurent:
    """Specialization of q^-a f at q^-1 = 0.

    Keeps the terms of q-exponent exactly a with the q-exponent zeroed,
    so the result lives in the zeta subring.  Undefined (and rejected)
    when deg f exceeds a, since q^-a f then has positive powers of q
    left over.
    """
    d = q_degree(f)
    if d is not NEG_INF and d > a:
        raise ValueError(f"q_degree {d} exceeds requested level {a}")
    return QLaurent(f.arity,
                    {(0, z): c for (q, z), c in f.terms.items() if q == a})


def factor_product_degree(numerator, denominator) -> int:
    """Degree of a product of (1 - m) factors over another such product.

    Each entry of either list is a SignedQMonomial m standing for the
    binomial factor 1 - m.  A factor that is identically zero (m = +q^0)
    is omitted from its side of the quotient.  Each surviving factor
    contributes max(q_exp, 0) to its side, and the result is the
    numerator total minus the denominator total.
    """
    total = 0
    for m in numerator:
        if not m.is_one():
            total += max(m.q_exp, 0)
    for m in denominator:
        if not m.is_one():
            total -= max(m.q_exp, 0)
    return total


def ql_to_json(f: QLaurent) -> list:
    """Stable JSON form: term records sorted by exponent tuple."""
    return [{"q": q, "zeta": list(z), "c": c} for (q, z), c in f.sorted_terms()]


def ql_from_json(records: list, arity: int) -> QLaurent:
    terms = {}
    for rec in records:
        z = tuple(rec["zeta"])
        if len(z) != arity:
            raise ValueError(f"zeta arity mismatch in record {rec}")
        c = int(rec["c"])
        if c == 0:
            raise ValueError("zero coefficient in serialized polynomial")
        key = (int(rec["q"]), z)
        if key in terms:
            raise ValueError(f"duplicate exponent tuple {key}")
        terms[key] = c
    return QLaurent(arity, terms)
