"""Sparse multivariate polynomials with exact coefficients.

Coefficients live either in the rationals (``QQ``) or in a prime field
``GF(p)``.  A :class:`Polynomial` stores its terms in a dict mapping exponent
tuples to non-zero coefficients; :meth:`Polynomial.terms` yields them sorted
in descending order for the ring's :class:`TermOrder`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError, RingMismatchError

__all__ = [
    "QQ",
    "GF",
    "RationalField",
    "PrimeField",
    "parse_field",
    "TermOrder",
    "PolyRing",
    "Polynomial",
    "monomial_compare",
    "poly_arith",
    "normal_form",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# Coefficient fields


@dataclass(frozen=True)
class RationalField:
    """The field of rational numbers, coefficients are ``Fraction``."""

    modulus = None
    characteristic = 0

    @property
    def name(self) -> str:
        return "QQ"

    @property
    def tag(self) -> str:
        return "q"

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value) -> Fraction:
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    def inv(self, a):
        return 1 / a

    def neg(self, a):
        return -a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def to_str(self, c) -> str:
        return str(c)

    def __repr__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    """The prime field Z/pZ; coefficients are ints in ``[0, p)``."""

    p: int

    def __post_init__(self):
        if not (2 <= self.p < 2**31) or not _is_prime(self.p):
            raise ValueError(f"GF(p) needs a prime p < 2^31, got {self.p}")

    @property
    def modulus(self) -> int:
        return self.p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    @property
    def tag(self) -> str:
        return f"gf:{self.p}"

    zero = 0
    one = 1

    def __call__(self, value) -> int:
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in {self.name}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def neg(self, a):
        return -a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def to_str(self, c) -> str:
        # symmetric lift keeps printed output readable and still round-trips
        if c > self.p // 2:
            c -= self.p
        return str(c)

    def __repr__(self):
        return self.name


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


DEFAULT_FIELD = GF(32003)


def parse_field(text: str):
    """Parse ``q``/``QQ``/``Q`` or ``gf:P``/``GF(P)``/``GF P``."""
    t = text.strip()
    if t.lower() in ("q", "qq"):
        return QQ
    m = re.fullmatch(r"(?i)(?:gf|zz/|z/)[:(]?\s*(\d+)\s*\)?", t)
    if m:
        return GF(int(m.group(1)))
    if t.lower() == "k":
        return DEFAULT_FIELD
    raise ValueError(f"unknown field {text!r}; use 'q' or 'gf:P'")


# ---------------------------------------------------------------------------
# Term orders


def _grevlex_key(e):
    return (sum(e),) + tuple(-a for a in reversed(e))


@dataclass(frozen=True)
class TermOrder:
    """A monomial order.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"elim"``.  The elimination order
    compares the first ``block`` variables by grevlex and breaks ties with
    grevlex on the remaining ones, so any monomial involving an eliminated
    variable beats every monomial free of them.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "elim"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "elim" and self.block < 0:
            raise ValueError("elimination block must be non-negative")

    def key(self, e):
        """Sort key; a larger key means a larger monomial."""
        if self.kind == "grevlex":
            return _grevlex_key(e)
        if self.kind == "lex":
            return e
        k = self.block
        return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))

    def compare(self, m1, m2) -> int:
        if len(m1) != len(m2):
            raise ValueError("monomials of different arity")
        k1, k2 = self.key(tuple(m1)), self.key(tuple(m2))
        return (k1 > k2) - (k1 < k2)

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind


def monomial_compare(m1: Sequence[int], m2: Sequence[int], order: TermOrder) -> int:
    """Return -1, 0 or 1 as ``m1`` is smaller than, equal to or larger than ``m2``."""
    return order.compare(m1, m2)


# ---------------------------------------------------------------------------
# Rings and polynomials

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    field: object = DEFAULT_FIELD
    order: TermOrder = dc_field(default_factory=TermOrder)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if isinstance(self.order, str):
            object.__setattr__(self, "order", TermOrder(self.order))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        for v in self.variables:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")

    @property
    def ngens(self) -> int:
        return len(self.variables)

    @property
    def gens(self) -> tuple:
        return tuple(self.var(v) for v in self.variables)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.ngens: c} if c != 0 else {})

    def var(self, name: str) -> "Polynomial":
        try:
            i = self.variables.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name}") from None
        e = [0] * self.ngens
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def monomial(self, exponents, coeff=1) -> "Polynomial":
        exponents = tuple(exponents)
        if len(exponents) != self.ngens:
            raise ValueError("exponent vector has wrong length")
        c = self.field(coeff)
        return Polynomial(self, {exponents: c} if c != 0 else {})

    @property
    def irrelevant_ideal(self):
        """The ideal generated by all variables."""
        from .groebner import Ideal

        return Ideal(self, self.gens)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def __call__(self, obj) -> "Polynomial":
        if isinstance(obj, Polynomial):
            if obj.ring != self:
                raise RingMismatchError("polynomial belongs to another ring")
            return obj
        if isinstance(obj, str):
            return self.parse(obj)
        return self.constant(obj)

    def extend(self, names: Sequence[str], front: bool = True, order: TermOrder | None = None) -> "PolyRing":
        """A ring with extra variables prepended (or appended)."""
        names = tuple(names)
        variables = names + self.variables if front else self.variables + names
        return PolyRing(variables, self.field, order or self.order)

    def fresh_name(self, base: str = "t") -> str:
        name, i = base, 0
        while name in self.variables:
            i += 1
            name = f"{base}{i}"
        return name

    def with_field(self, fld) -> "PolyRing":
        return PolyRing(self.variables, fld, self.order)

    def with_order(self, order: TermOrder) -> "PolyRing":
        return PolyRing(self.variables, self.field, order)

    def __str__(self):
        return f"{self.field.name}[{','.join(self.variables)}] order {self.order}"


class Polynomial:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # -- construction helpers
    @classmethod
    def from_terms(cls, ring: PolyRing, pairs: Iterable) -> "Polynomial":
        fld = ring.field
        acc: dict = {}
        for e, c in pairs:
            e = tuple(e)
            if len(e) != ring.ngens:
                raise ValueError("exponent vector has wrong length")
            acc[e] = fld.add(acc.get(e, fld.zero), fld(c))
        return cls(ring, {e: c for e, c in acc.items() if c != 0})

    # -- inspection
    @property
    def term_dict(self) -> dict:
        return self._terms

    def terms(self) -> list:
        """(exponents, coefficient) pairs in descending term order."""
        key = self.ring.order.key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def lm(self) -> tuple:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=self.ring.order.key)

    @property
    def lc(self):
        return self._terms[self.lm]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def variables_used(self) -> set:
        used = set()
        for e in self._terms:
            used.update(i for i, a in enumerate(e) if a)
        return used

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        fld = self.ring.field
        inv = fld.inv(self.lc)
        return Polynomial(self.ring, {e: fld.mul(c, inv) for e, c in self._terms.items()})

    # -- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("polynomials over different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        fld = self.ring.field
        terms = dict(self._terms)
        for e, c in other._terms.items():
            v = fld.add(terms.get(e, fld.zero), c)
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        fld = self.ring.field
        return Polynomial(self.ring, {e: fld.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        fld = self.ring.field
        terms: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = fld.add(terms.get(e, fld.zero), fld.mul(c1, c2))
        return Polynomial(self.ring, {e: c for e, c in terms.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def embed(self, ring: PolyRing, index_map: Sequence[int]) -> "Polynomial":
        """Map into ``ring``, sending variable i to variable ``index_map[i]``."""
        n = ring.ngens
        terms = {}
        for e, c in self._terms.items():
            new = [0] * n
            for i, a in enumerate(e):
                new[index_map[i]] += a
            terms[tuple(new)] = ring.field(c) if ring.field != self.ring.field else c
        return Polynomial(ring, {e: c for e, c in terms.items() if c != 0})

    # -- printing
    def __str__(self):
        if not self._terms:
            return "0"
        fld = self.ring.field
        names = self.ring.variables
        parts = []
        for e, c in self.terms():
            s = fld.to_str(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
            )
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatchError("polynomials over different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def normal_form(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Remainder of multivariate division of ``f`` by ``G``.

    Leading terms are always reduced first and divisors are tried in list
    order, so the result is deterministic (but depends on the order of ``G``
    unless ``G`` is a Gröbner basis).
    """
    from .groebner import reduce_vector, poly_to_vec, vec_to_poly, term_key

    ring = f.ring
    for g in G:
        if g.ring != ring:
            raise RingMismatchError("divisor over a different ring")
        if g.is_zero():
            raise ValueError("divisors must be non-zero")
    key = term_key(ring, "top")
    basis = [poly_to_vec(g) for g in G]
    return vec_to_poly(ring, reduce_vector(poly_to_vec(f), basis, key, ring.field))


# ---------------------------------------------------------------------------
# Parser for polynomial text: ``3*x^2*y - 1/2*z + 5``

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {self.text!r}", 1, pos + 1)
            if m.group(1):
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("id", m.group(2), m.start(2)))
            else:
                op = "^" if m.group(3) == "**" else m.group(3)
                self.tokens.append(("op", op, m.start(3)))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _error(self, msg):
        _, _, col = self._peek()
        raise ParseError(f"{msg} in {self.text!r}", 1, col + 1)

    def parse(self) -> Polynomial:
        if not self.tokens:
            self._error("empty polynomial")
        p = self._expr()
        if self.i != len(self.tokens):
            self._error(f"unexpected token {self._peek()[1]!r}")
        return p

    def _expr(self):
        p = self._term()
        while self._peek()[1] in ("+", "-") and self._peek()[0] == "op":
            op = self._next()[1]
            q = self._term()
            p = p + q if op == "+" else p - q
        return p

    def _term(self):
        p = self._unary()
        while self._peek()[0] == "op" and self._peek()[1] in ("*", "/"):
            op = self._next()[1]
            q = self._unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self._error("division only by non-zero constants")
                fld = self.ring.field
                p = Polynomial(self.ring, {e: fld.div(c, q.lc) for e, c in p.term_dict.items()})
        return p

    def _unary(self):
        kind, val, _ = self._peek()
        if kind == "op" and val in ("+", "-"):
            self._next()
            p = self._unary()
            return -p if val == "-" else p
        return self._power()

    def _power(self):
        base = self._atom()
        if self._peek()[0] == "op" and self._peek()[1] == "^":
            self._next()
            kind, val, _ = self._next()
            if kind != "num":
                self.i -= 1
                self._error("exponent must be a natural number")
            base = base ** int(val)
        return base

    def _atom(self):
        kind, val, _ = self._peek()
        if kind == "num":
            self._next()
            return self.ring.constant(int(val))
        if kind == "id":
            if val not in self.ring.variables:
                self._error(f"unknown variable {val}")
            self._next()
            return self.ring.var(val)
        if kind == "op" and val == "(":
            self._next()
            p = self._expr()
            if self._peek()[1] != ")":
                self._error("missing ')'")
            self._next()
            return p
        self._error("expected a number, variable or '('")
