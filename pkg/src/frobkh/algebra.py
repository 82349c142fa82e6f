"""Exact coefficient rings.

Every ring used by the Frobenius systems lives here: the integers, the
rationals, prime fields, graded polynomial rings over those, and the
univariate rational function fields ``F_p(u)``.  Rings are immutable value
objects; two rings built from the same description compare equal.

Elements are :class:`RingElement` instances wrapping a canonical raw value
(``int``, ``Fraction``, a ``{exponent-tuple: coefficient}`` dict, or a
numerator/denominator pair).  Raw values are never mutated after
construction.

Quantum degrees follow the homological convention used throughout the
package: the basis vector ``1`` of the rank-two algebra has degree ``+1`` and
``X`` has degree ``-1``, so ``h`` sits in degree ``-2``, ``t`` in ``-4`` and
``c`` in ``+2``.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from functools import lru_cache

from .errors import ParseError, UnsupportedDomainError, UsageError

__all__ = [
    "QDeg",
    "Ring",
    "RingElement",
    "IntegerRing",
    "RationalField",
    "PrimeField",
    "PolynomialRing",
    "FractionField",
    "ZZ",
    "QQ",
    "GF",
    "polynomial_ring",
    "fraction_field",
    "parse_ring",
    "Laurent",
    "DEFAULT_QDEGS",
]


class QDeg(enum.Enum):
    """Markers returned by :meth:`RingElement.qdeg` besides plain integers."""

    INHOMOGENEOUS = "inhomogeneous"
    ZERO = "zero"  # zero is homogeneous of every degree

    def __repr__(self):
        return f"QDeg.{self.name}"


# Default quantum degrees for the ring variables the package knows about.
DEFAULT_QDEGS = {"c": 2, "h": -2, "t": -4, "H": -2, "X": -2, "u": -4}


class RingElement:
    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise UsageError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, int):
            return self.ring._from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring._add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        r = self.ring
        return RingElement(r, r._add(self.value, r._neg(o)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        r = self.ring
        return RingElement(r, r._add(o, r._neg(self.value)))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring._mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.value))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return False
        return self.ring._eq(self.value, o)

    def __hash__(self):
        return self.ring._hash(self.value)

    def __bool__(self):
        return not self.ring._is_zero(self.value)

    def is_zero(self):
        return self.ring._is_zero(self.value)

    def is_unit(self):
        return self.ring._is_unit(self.value)

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not invertible in {self.ring}")
        return RingElement(self.ring, self.ring._inverse(self.value))

    def divmod(self, other):
        """Euclidean division ``self = q*other + r``."""
        o = self._other(other)
        r = self.ring
        if not r.is_euclidean:
            raise UnsupportedDomainError(f"{r} is not a Euclidean domain")
        if r._is_zero(o):
            raise ZeroDivisionError("division by zero")
        q, rem = r._divmod(self.value, o)
        return RingElement(r, q), RingElement(r, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        """Divide by a unit, or exactly when the ring supports it."""
        other = self.ring(other)
        if other.is_unit():
            return self * other.inverse()
        q, rem = self.divmod(other)
        if rem:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def euclid_size(self):
        return self.ring._size(self.value)

    def qdeg(self):
        return self.ring._qdeg(self.value)

    def __repr__(self):
        return self.ring._str(self.value)

    __str__ = __repr__


class Ring:
    """Abstract exact commutative ring."""

    is_field = False
    is_euclidean = False
    characteristic = 0
    variables: tuple = ()

    _key: tuple = ()

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return self.name

    @property
    def zero(self):
        return RingElement(self, self._from_int(0))

    @property
    def one(self):
        return RingElement(self, self._from_int(1))

    def __call__(self, x):
        if isinstance(x, RingElement):
            if x.ring == self:
                return x
            raise UsageError(f"cannot coerce element of {x.ring} into {self}")
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return RingElement(self, self._from_int(x))
        if isinstance(x, Fraction):
            return RingElement(self, self._from_fraction(x))
        if isinstance(x, str):
            return self.parse(x)
        raise UsageError(f"cannot coerce {x!r} into {self}")

    def _from_fraction(self, x):
        if x.denominator == 1:
            return self._from_int(x.numerator)
        num = self._from_int(x.numerator)
        den = self._from_int(x.denominator)
        if self._is_zero(den) or not self._is_unit(den):
            raise UsageError(f"{x} is not an element of {self}")
        return self._mul(num, self._inverse(den))

    def _eq(self, a, b):
        return a == b

    def _hash(self, a):
        return hash(a)

    def _is_zero(self, a):
        return a == 0

    def _qdeg(self, a):
        return QDeg.ZERO if self._is_zero(a) else 0

    def var_qdeg(self, name):
        return dict(self.variables)[name]

    def gen(self, name):
        raise UsageError(f"{self} has no variable {name!r}")

    def gens(self):
        return [self.gen(n) for n, _ in self.variables]

    def units(self):
        """Finite list of units, for small searches; ``None`` if infinite."""
        return None

    def parse(self, text):
        return _ExprParser(self, text).parse()

    @property
    def base_field(self):
        return self if self.is_field else None


class IntegerRing(Ring):
    name = "Z"
    is_euclidean = True
    _key = ("Z",)

    def _from_int(self, n):
        return n

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _is_unit(self, a):
        return a == 1 or a == -1

    def _inverse(self, a):
        return a

    def _divmod(self, a, b):
        return divmod(a, b)

    def _size(self, a):
        return abs(a)

    def _str(self, a):
        return str(a)

    def units(self):
        return [1, -1]


class RationalField(Ring):
    name = "Q"
    is_field = True
    is_euclidean = True
    _key = ("Q",)

    def _from_int(self, n):
        return Fraction(n)

    def _from_fraction(self, x):
        return x

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _is_unit(self, a):
        return a != 0

    def _inverse(self, a):
        return 1 / a

    def _divmod(self, a, b):
        return a / b, Fraction(0)

    def _size(self, a):
        return 0 if a else -1

    def _str(self, a):
        return str(a)


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField(Ring):
    is_field = True
    is_euclidean = True

    def __init__(self, p):
        if not _is_prime(p):
            raise UsageError(f"F{p}: characteristic must be prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self._key = ("F", p)

    def _from_int(self, n):
        return n % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _is_unit(self, a):
        return a != 0

    def _inverse(self, a):
        return pow(a, -1, self.p)

    def _divmod(self, a, b):
        return a * pow(b, -1, self.p) % self.p, 0

    def _size(self, a):
        return 0 if a else -1

    def _str(self, a):
        return str(a)

    def units(self):
        return list(range(1, self.p))


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


class PolynomialRing(Ring):
    """Graded polynomial ring over Z, Q or a prime field.

    Raw values map exponent tuples to raw base coefficients; zero
    coefficients are never stored.
    """

    def __init__(self, base, variables):
        if not isinstance(base, (IntegerRing, RationalField, PrimeField)):
            raise UsageError("polynomial rings are built over Z, Q or F_p")
        names = [n for n, _ in variables]
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in {names}")
        for n, d in variables:
            if d % 2:
                raise UsageError(f"variable {n} has odd quantum degree {d}")
        self.base = base
        self.variables = tuple((str(n), int(d)) for n, d in variables)
        self.nvars = len(self.variables)
        self.characteristic = base.characteristic
        self.is_euclidean = base.is_field and self.nvars == 1
        self._degs = tuple(d for _, d in self.variables)
        self._zero_exp = (0,) * self.nvars
        self._key = ("poly", base._key, self.variables)
        self.name = f"{base.name}[{','.join(names)}]"

    def gen(self, name):
        for k, (n, _) in enumerate(self.variables):
            if n == name:
                exp = tuple(1 if j == k else 0 for j in range(self.nvars))
                return RingElement(self, {exp: self.base._from_int(1)})
        raise UsageError(f"{self} has no variable {name!r}")

    def _from_int(self, n):
        c = self.base._from_int(n)
        return {self._zero_exp: c} if c != 0 else {}

    def _from_fraction(self, x):
        c = self.base._from_fraction(x)
        return {self._zero_exp: c} if c != 0 else {}

    def from_base(self, c):
        """Lift a raw base coefficient to a constant polynomial."""
        return RingElement(self, {self._zero_exp: c} if c != 0 else {})

    def _add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        out = dict(a)
        badd = self.base._add
        for e, c in b.items():
            if e in out:
                s = badd(out[e], c)
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return out

    def _neg(self, a):
        bneg = self.base._neg
        return {e: bneg(c) for e, c in a.items()}

    def _mul(self, a, b):
        if not a or not b:
            return {}
        base = self.base
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = base._mul(c1, c2)
                if e in out:
                    c = base._add(out[e], c)
                if c == 0:
                    out.pop(e, None)
                else:
                    out[e] = c
        return out

    def _is_zero(self, a):
        return not a

    def _eq(self, a, b):
        return a == b

    def _hash(self, a):
        if len(a) == 1 and self._zero_exp in a:
            return hash(a[self._zero_exp])
        return hash(frozenset(a.items()))

    def _is_unit(self, a):
        return len(a) == 1 and self._zero_exp in a and self.base._is_unit(a[self._zero_exp])

    def _inverse(self, a):
        return {self._zero_exp: self.base._inverse(a[self._zero_exp])}

    def _leading(self, a):
        d = max(e[0] for e in a)
        return d, a[(d,)]

    def _divmod(self, a, b):
        base = self.base
        db, lb = self._leading(b)
        inv = base._inverse(lb)
        q = {}
        r = dict(a)
        while r:
            dr, lr = self._leading(r)
            if dr < db:
                break
            c = base._mul(lr, inv)
            shift = dr - db
            q[(shift,)] = c
            r = self._add(r, self._neg(self._mul({(shift,): c}, b)))
        return q, r

    def _size(self, a):
        return max(e[0] for e in a) if a else -1

    def _qdeg(self, a):
        if not a:
            return QDeg.ZERO
        degs = {sum(x * d for x, d in zip(e, self._degs)) for e in a}
        return degs.pop() if len(degs) == 1 else QDeg.INHOMOGENEOUS

    def degree(self, a):
        """Degree of a univariate raw value (``-1`` for zero)."""
        return self._size(a)

    def units(self):
        bu = self.base.units()
        return None if bu is None else [{self._zero_exp: c} for c in bu]

    def coefficient(self, elem, exp):
        """Coefficient of the monomial ``exp`` as an element of the base ring."""
        return RingElement(self.base, elem.value.get(tuple(exp), self.base._from_int(0)))

    def _str(self, a):
        if not a:
            return "0"
        names = [n for n, _ in self.variables]
        parts = []
        for e in sorted(a, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = a[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = self.base._str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                term = mono if cs == "1" else f"{cs}*{mono}"
            else:
                term = cs
            parts.append(("-" if neg else "+", term))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, term in parts[1:]:
            out += f" {sgn} {term}"
        return out


class FractionField(Ring):
    """Rational functions ``F_p(u)`` over a univariate polynomial ring."""

    is_field = True
    is_euclidean = True

    def __init__(self, base):
        if not (isinstance(base, PolynomialRing) and base.nvars == 1
                and isinstance(base.base, PrimeField)):
            raise UsageError("fraction fields are only supported over F_p[u]")
        self.base = base
        self.variables = base.variables
        self.characteristic = base.characteristic
        self._key = ("frac", base._key)
        self.name = f"{base.base.name}({base.variables[0][0]})"

    def gen(self, name):
        g = self.base.gen(name)
        return RingElement(self, (g.value, self.base._from_int(1)))

    def _canon(self, num, den):
        P = self.base
        if not num:
            return ({}, P._from_int(1))
        a, b = num, den
        while b:
            a, b = b, P._divmod(a, b)[1]
        g = a
        num = P._divmod(num, g)[0]
        den = P._divmod(den, g)[0]
        _, lc = P._leading(den)
        inv = P.base._inverse(lc)
        scale = {(0,): inv}
        return (P._mul(num, scale), P._mul(den, scale))

    def _from_int(self, n):
        P = self.base
        return self._canon(P._from_int(n), P._from_int(1))

    def _add(self, a, b):
        P = self.base
        if not a[0]:
            return b
        if not b[0]:
            return a
        num = P._add(P._mul(a[0], b[1]), P._mul(b[0], a[1]))
        return self._canon(num, P._mul(a[1], b[1]))

    def _neg(self, a):
        return (self.base._neg(a[0]), a[1])

    def _mul(self, a, b):
        P = self.base
        return self._canon(P._mul(a[0], b[0]), P._mul(a[1], b[1]))

    def _is_zero(self, a):
        return not a[0]

    def _eq(self, a, b):
        return a == b

    def _hash(self, a):
        return hash((frozenset(a[0].items()), frozenset(a[1].items())))

    def _is_unit(self, a):
        return bool(a[0])

    def _inverse(self, a):
        return self._canon(a[1], a[0])

    def _divmod(self, a, b):
        return self._mul(a, self._inverse(b)), self._from_int(0)

    def _size(self, a):
        return 0 if a[0] else -1

    def _qdeg(self, a):
        if not a[0]:
            return QDeg.ZERO
        dn, dd = self.base._qdeg(a[0]), self.base._qdeg(a[1])
        if isinstance(dn, QDeg) or isinstance(dd, QDeg):
            return QDeg.INHOMOGENEOUS
        return dn - dd

    def _str(self, a):
        num = self.base._str(a[0])
        if a[1] == self.base._from_int(1):
            return num
        return f"({num})/({self.base._str(a[1])})"


@lru_cache(maxsize=None)
def polynomial_ring(base, variables):
    """Cached constructor; ``variables`` is a tuple of ``(name, qdeg)``."""
    return PolynomialRing(base, variables)


@lru_cache(maxsize=None)
def fraction_field(base):
    return FractionField(base)


_RING_RE = re.compile(
    r"^\s*(?P<base>Z|Q|F\d+)\s*(?:(?P<open>[\[(])(?P<vars>[^\])]*)(?P<close>[\])]))?\s*$"
)


def _parse_var(token, pos):
    token = token.strip()
    if ":" in token:
        name, deg = token.split(":", 1)
        name = name.strip()
        try:
            d = int(deg)
        except ValueError:
            raise ParseError(f"bad quantum degree {deg!r}", pos) from None
    else:
        name, d = token, DEFAULT_QDEGS.get(token, 0)
    if not re.fullmatch(r"[A-Za-z_]\w*", name):
        raise ParseError(f"bad variable name {name!r}", pos)
    return name, d


def parse_ring(text):
    """Parse a ring specification such as ``"Z[h,t]"``, ``"F2(u)"``, ``"Q[t:-4]"``.

    Variables take their quantum degree from :data:`DEFAULT_QDEGS` unless a
    ``name:degree`` suffix is given; unknown names default to degree 0.
    """
    m = _RING_RE.match(text)
    if not m:
        raise ParseError(f"unrecognized ring specification {text!r}", 0)
    b = m.group("base")
    if b == "Z":
        base = ZZ
    elif b == "Q":
        base = QQ
    else:
        base = GF(int(b[1:]))
    if not m.group("open"):
        return base
    if (m.group("open"), m.group("close")) not in (("[", "]"), ("(", ")")):
        raise ParseError(f"mismatched brackets in {text!r}", m.start("close"))
    tokens = [t for t in m.group("vars").split(",")]
    if not tokens or any(not t.strip() for t in tokens):
        raise ParseError(f"empty variable list in {text!r}", m.start("vars"))
    variables = tuple(_parse_var(t, m.start("vars")) for t in tokens)
    poly = polynomial_ring(base, variables)
    if m.group("open") == "(":
        return fraction_field(poly)
    return poly


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


class _ExprParser:
    """Recursive-descent parser for polynomial expressions in a ring."""

    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            num, name, op = m.groups()
            start = m.start(1) if num else m.start(2) if name else m.start(3)
            self.tokens.append((num and "num" or name and "name" or "op",
                                num or name or op, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression", 0)
        val = self.expr()
        kind, v, pos = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected token {v!r}", pos)
        return val

    def expr(self):
        kind, v, _ = self.peek()
        neg = False
        if v in ("+", "-"):
            self.take()
            neg = v == "-"
        val = self.term()
        if neg:
            val = -val
        while self.peek()[1] in ("+", "-"):
            _, op, _ = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.power()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.power()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_unit():
                    raise ParseError(f"cannot divide by {rhs} in {self.ring}", pos)
                val = val * rhs.inverse()
        return val

    def power(self):
        val = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            kind, v, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            val = val ** int(v)
        return val

    def atom(self):
        kind, v, pos = self.take()
        if kind == "num":
            return self.ring(int(v))
        if kind == "name":
            try:
                return self.ring.gen(v)
            except UsageError:
                raise ParseError(f"unknown variable {v!r} in {self.ring}", pos) from None
        if v == "(":
            val = self.expr()
            k2, v2, p2 = self.take()
            if v2 != ")":
                raise ParseError("expected ')'", p2)
            return val
        if v == "-":
            return -self.atom()
        raise ParseError(f"unexpected token {v!r}", pos)


class Laurent:
    """Laurent polynomial in ``q`` with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Laurent(out)

    def __neg__(self):
        return Laurent({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Laurent({k: v * other for k, v in self.coeffs.items()})
        out = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Laurent({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Laurent) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __call__(self, value):
        return sum(Fraction(value) ** k * v for k, v in self.coeffs.items())

    def to_dict(self):
        return {str(k): v for k, v in sorted(self.coeffs.items())}

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = ""
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            mono = "1" if k == 0 else ("q" if k == 1 else f"q^{k}")
            a = abs(v)
            term = mono if a == 1 else (str(a) if k == 0 else f"{a}*{mono}")
            if not out:
                out = ("-" if v < 0 else "") + term
            else:
                out += (" - " if v < 0 else " + ") + term
        return out

    __repr__ = __str__
