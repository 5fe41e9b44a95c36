"""Exact coefficient arithmetic over the prime power q.

Every scalar this library produces is a signed monomial +-q^a * t^b with
t = q - 1, or a finite sum of such monomials.  Everything is exact: there
is no floating point anywhere.  Negative powers of q are tolerated inside
intermediate quotients, but every externally returned coefficient must
have a nonnegative q-exponent; require_integral enforces that.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


class IntegralityError(ArithmeticError):
    """A coefficient reduced to a genuinely negative power of q."""


class QMonomial:
    """sign * q^eq * t^et with sign in {-1, 0, +1} and t = q - 1."""

    __slots__ = ("sign", "eq", "et")

    def __init__(self, sign, eq=0, et=0):
        if sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if sign == 0:
            eq = et = 0  # canonical zero
        if et < 0:
            raise ValueError("negative power of t")
        self.sign = sign
        self.eq = eq
        self.et = et

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def one(cls):
        return cls(1)

    @classmethod
    def t_power(cls, et, eq=0, sign=1):
        return cls(sign, eq, et)

    @classmethod
    def q_power(cls, eq, sign=1):
        return cls(sign, eq, 0)

    def __bool__(self):
        return self.sign != 0

    def __eq__(self, other):
        return (
            isinstance(other, QMonomial)
            and (self.sign, self.eq, self.et) == (other.sign, other.eq, other.et)
        )

    def __hash__(self):
        return hash((self.sign, self.eq, self.et))

    def __repr__(self):
        return "QMonomial(%r)" % (self.render(),)

    def __mul__(self, other):
        if self.sign == 0 or other.sign == 0:
            return QMonomial.zero()
        return QMonomial(self.sign * other.sign, self.eq + other.eq, self.et + other.et)

    def __neg__(self):
        return QMonomial(-self.sign, self.eq, self.et)

    def require_integral(self, context=""):
        """Assert eq >= 0; quotient coefficients must reduce to monomials."""
        if self.sign != 0 and self.eq < 0:
            raise IntegralityError(
                "negative q-exponent %d in %s" % (self.eq, context or self.render())
            )
        return self

    def eval(self, q):
        """Exact value at integer q >= 2 (Fraction when eq < 0)."""
        value = self.sign * (q - 1) ** self.et
        if self.eq >= 0:
            return value * q**self.eq
        return Fraction(value, q ** (-self.eq))

    def canonical(self):
        """Expand t = q - 1: dict {q-power: integer coefficient}."""
        out = {}
        if self.sign == 0:
            return out
        for i in range(self.et + 1):
            c = self.sign * comb(self.et, i) * (-1) ** (self.et - i)
            p = self.eq + i
            out[p] = out.get(p, 0) + c
        return {p: c for p, c in out.items() if c}

    def render(self):
        """Text form: "1", "t", "-q", "t^2*q", mirroring handwritten tq-style."""
        if self.sign == 0:
            return "0"
        factors = []
        if self.et == 1:
            factors.append("t")
        elif self.et:
            factors.append("t^%d" % self.et)
        if self.eq == 1:
            factors.append("q")
        elif self.eq:
            factors.append("q^%d" % self.eq)
        body = "*".join(factors) if factors else "1"
        return "-" + body if self.sign < 0 else body

    def to_json(self):
        return {"sign": self.sign, "eq": self.eq, "et": self.et}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["sign"], obj["eq"], obj["et"])


class QPolynomial:
    """A finite multiset of QMonomial terms; equality is canonical-form equality."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple(m for m in terms if m.sign != 0)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def from_monomial(cls, m):
        return cls((m,))

    def __add__(self, other):
        if isinstance(other, QMonomial):
            other = QPolynomial.from_monomial(other)
        return QPolynomial(self.terms + other.terms)

    def __mul__(self, other):
        if isinstance(other, QMonomial):
            return QPolynomial(m * other for m in self.terms)
        return QPolynomial(a * b for a in self.terms for b in other.terms)

    def __bool__(self):
        return bool(self.canonical())

    def __eq__(self, other):
        if isinstance(other, QMonomial):
            other = QPolynomial.from_monomial(other)
        return isinstance(other, QPolynomial) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(tuple(sorted(self.canonical().items())))

    def __repr__(self):
        return "QPolynomial(%r)" % (self.render(),)

    def canonical(self):
        """Integer-coefficient Laurent polynomial in q, as {power: coeff}."""
        out = {}
        for m in self.terms:
            for p, c in m.canonical().items():
                out[p] = out.get(p, 0) + c
        return {p: c for p, c in out.items() if c}

    def eval(self, q):
        total = sum(m.eval(q) for m in self.terms)
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def render(self):
        """Canonical rendering, highest q-power first, e.g. "q^2 - 2*q + 1"."""
        canon = self.canonical()
        if not canon:
            return "0"
        pieces = []
        for p in sorted(canon, reverse=True):
            c = canon[p]
            mag = abs(c)
            if p == 0:
                body = str(mag)
            else:
                qpart = "q" if p == 1 else "q^%d" % p
                body = qpart if mag == 1 else "%d*%s" % (mag, qpart)
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def to_json(self):
        return [m.to_json() for m in self.terms]

    @classmethod
    def from_json(cls, obj):
        return cls(QMonomial.from_json(m) for m in obj)


def eval_exact(x, q):
    """Exact integer/rational value of a QMonomial or QPolynomial at q."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return x.eval(q)


def canonicalize(x):
    """Laurent-in-q canonical form {power: coeff} of a monomial or polynomial."""
    return x.canonical()


class CharCombination:
    """A finite linear combination of supercharacters over a fixed [n].

    Stored as a mapping from SetPartition to a nonzero QMonomial
    coefficient.  Iteration order is by canonical partition string.
    """

    __slots__ = ("n", "_coeffs")

    def __init__(self, n, coeffs=()):
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        store = {}
        for sp, coeff in items:
            if sp.n != n:
                raise ValueError("partition over [%d] in combination over [%d]" % (sp.n, n))
            if coeff.sign == 0:
                continue
            if sp in store:
                raise ValueError("duplicate partition %r" % (sp,))
            store[sp] = coeff
        self.n = n
        self._coeffs = store

    def coefficient(self, sp):
        return self._coeffs.get(sp, QMonomial.zero())

    def partitions(self):
        return sorted(self._coeffs, key=lambda sp: sp.sort_key())

    def items(self):
        return [(sp, self._coeffs[sp]) for sp in self.partitions()]

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self.partitions())

    def __contains__(self, sp):
        return sp in self._coeffs

    def __eq__(self, other):
        return (
            isinstance(other, CharCombination)
            and self.n == other.n
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash((self.n, tuple(self.items())))

    def __repr__(self):
        body = ", ".join(
            "%r: %s" % (sp.sort_key(), c.render()) for sp, c in self.items()
        )
        return "CharCombination(%d, {%s})" % (self.n, body)

    def scaled(self, m):
        return CharCombination(self.n, [(sp, c * m) for sp, c in self.items()])

    def eval(self, q):
        """Mapping partition -> exact value at q."""
        return {sp: c.eval(q) for sp, c in self.items()}

    def to_json(self):
        return [
            {"partition": sp.sort_key(), "coeff": c.to_json()} for sp, c in self.items()
        ]
