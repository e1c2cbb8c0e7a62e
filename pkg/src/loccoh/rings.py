"""Exact arithmetic core: prime fields, monomials, term orders, sparse polynomials.

Monomials are plain exponent tuples.  A Polynomial keeps its terms as a tuple
of (monomial, coefficient) pairs, strictly descending in the ring's order,
with coefficients canonical in [1, p).  In a quotient ring every constructed
polynomial is the normal form modulo the stored reduced Groebner basis, so
equality is representation equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

Mono = tuple


class RingError(Exception):
    """Structural misuse: ring or arity mismatch, bad construction data."""


# ---------------------------------------------------------------------------
# prime field

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """F_p with canonical representatives 0 <= a < p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 32003):
        if not (2 <= p < 2**31) or not is_prime(p):
            raise RingError(f"field characteristic must be a prime < 2^31, got {p}")
        self.p = p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F{self.p}"


# ---------------------------------------------------------------------------
# monomial helpers (exponent tuples)

def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono):
    """a / b as a monomial, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_divides(b: Mono, a: Mono) -> bool:
    return all(x >= y for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: Mono) -> int:
    return sum(a)


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of length n with total degree d."""
    if d < 0:
        return
    if n == 0:
        if d == 0:
            yield ()
        return
    for bars in combinations_with_replacement(range(n), d):
        exp = [0] * n
        for b in bars:
            exp[b] += 1
        yield tuple(exp)


# ---------------------------------------------------------------------------
# monomial orders

ORDER_KINDS = ("degrevlex", "lex")


class MonomialOrder:
    """Total well-order on monomials; bigger key means bigger monomial.

    precedence lists variable indices from highest to lowest rank; it
    defaults to declaration order.
    """

    __slots__ = ("kind", "precedence", "n")

    def __init__(self, kind: str, n: int, precedence=None):
        if kind not in ORDER_KINDS:
            raise RingError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.n = n
        if precedence is None:
            precedence = tuple(range(n))
        precedence = tuple(precedence)
        if sorted(precedence) != list(range(n)):
            raise RingError("precedence must be a permutation of variable indices")
        self.precedence = precedence

    def key(self, m: Mono):
        ranked = tuple(m[i] for i in self.precedence)
        if self.kind == "lex":
            return ranked
        return (sum(m), tuple(-e for e in reversed(ranked)))

    def compare(self, a: Mono, b: Mono) -> int:
        if len(a) != self.n or len(b) != self.n:
            raise RingError("monomial arity does not match the order")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and (other.kind, other.n, other.precedence) == (self.kind, self.n, self.precedence)
        )

    def __hash__(self):
        return hash((self.kind, self.n, self.precedence))

    def __repr__(self):
        return f"{self.kind}({self.n})"


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: "Ring", terms: tuple):
        self.ring = ring
        self.terms = terms  # ((mono, coeff), ...) descending, coeff != 0

    # -- queries ------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lm(self) -> Mono:
        if not self.terms:
            raise RingError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lc(self) -> int:
        return self.terms[0][1]

    def degree(self):
        """Total degree, or None for 0."""
        if not self.terms:
            return None
        return max(mono_deg(m) for m, _ in self.terms)

    def multidegree(self):
        """Common exponent tuple of all terms, or None if mixed or zero."""
        if not self.terms:
            return None
        degs = {m for m, _ in self.terms}
        return self.terms[0][0] if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        return len({mono_deg(m) for m, _ in self.terms}) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit_constant(self) -> bool:
        return len(self.terms) == 1 and mono_deg(self.terms[0][0]) == 0

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coeff(self, m: Mono) -> int:
        for mm, c in self.terms:
            if mm == m:
                return c
        return 0

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring is not other.ring:
            raise RingError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        d = dict(self.terms)
        p = self.ring.field.p
        for m, c in other.terms:
            v = (d.get(m, 0) + c) % p
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return self.ring._from_reduced_dict(d)

    def __neg__(self):
        p = self.ring.field.p
        return Polynomial(self.ring, tuple((m, (-c) % p) for m, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.ring.field.p
            if c == 0:
                return self.ring.zero
            return Polynomial(self.ring, tuple((m, (cc * c) % self.ring.field.p) for m, cc in self.terms))
        self._check(other)
        p = self.ring.field.p
        d: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                v = (d.get(m, 0) + c1 * c2) % p
                if v:
                    d[m] = v
                else:
                    d.pop(m, None)
        return self.ring.from_dict(d)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, e: int):
        if e < 0:
            raise RingError("negative polynomial power")
        out = self.ring.one
        for _ in range(e):
            out = out * self
        return out

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        inv = self.ring.field.inv(self.lc)
        return self * inv

    # -- identity ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.const(other)
        return isinstance(other, Polynomial) and self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __str__(self):
        return format_poly(self)

    __repr__ = __str__


def format_poly(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    parts = []
    for m, c in f.terms:
        factors = [f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# rings

class Ring:
    """Polynomial ring F_p[x_1..x_n] with a monomial order, or a quotient of one.

    A quotient ring stores its modulus as a reduced Groebner basis over the
    base ring; construction of quotients lives in groebner.quotient_ring so
    the basis is always genuinely reduced.
    """

    __slots__ = ("names", "field", "order", "modulus", "base", "_mod_compiled", "_mono_cache", "gens", "zero", "one")

    def __init__(self, names, field: PrimeField, order: MonomialOrder, modulus=None, base=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise RingError("duplicate variable names")
        self.field = field
        self.order = order
        if order.n != len(self.names):
            raise RingError("order arity does not match variable count")
        self.base = base if base is not None else self
        self.modulus = tuple(modulus) if modulus else ()
        # compiled reducers: (leading monomial, ((mono, coeff), ...) tail), monic
        self._mod_compiled = tuple((g.lm, tuple(g.terms[1:])) for g in self.modulus)
        self._mono_cache = {}
        self.zero = Polynomial(self, ())
        self.one = Polynomial(self, (((0,) * self.n, 1),))
        self.gens = tuple(self.var(i) for i in range(self.n))

    # -- construction ---------------------------------------------------------
    @staticmethod
    def poly_ring(p: int, names, order: str = "degrevlex", precedence=None) -> "Ring":
        names = tuple(names)
        return Ring(names, PrimeField(p), MonomialOrder(order, len(names), precedence))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def is_quotient(self) -> bool:
        return bool(self.modulus)

    def var(self, i: int) -> Polynomial:
        m = tuple(1 if j == i else 0 for j in range(self.n))
        return self.from_dict({m: 1})

    def const(self, c: int) -> Polynomial:
        c %= self.field.p
        if c == 0:
            return self.zero
        return Polynomial(self, (((0,) * self.n, c),))

    def monomial(self, m: Mono, c: int = 1) -> Polynomial:
        return self.from_dict({tuple(m): c})

    def from_dict(self, d: dict) -> Polynomial:
        p = self.field.p
        d = {m: c % p for m, c in d.items() if c % p}
        if self._mod_compiled:
            d = self._reduce_dict(d)
        return self._from_reduced_dict(d)

    def _from_reduced_dict(self, d: dict) -> Polynomial:
        terms = tuple(sorted(d.items(), key=lambda t: self.order.key(t[0]), reverse=True))
        return Polynomial(self, terms)

    def _reduce_dict(self, d: dict) -> dict:
        """Normal form of a term dict modulo the quotient modulus."""
        p = self.field.p
        key = self.order.key
        work = dict(d)
        out: dict = {}
        while work:
            m = max(work, key=key)
            c = work.pop(m)
            red = None
            for lm, tail in self._mod_compiled:
                delta = mono_div(m, lm)
                if delta is not None:
                    red = (delta, tail)
                    break
            if red is None:
                out[m] = c
                continue
            delta, tail = red
            for tm, tc in tail:
                mm = mono_mul(tm, delta)
                v = (work.get(mm, 0) - c * tc) % p
                if v:
                    work[mm] = v
                else:
                    work.pop(mm, None)
        return out

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.from_dict(dict(f.terms))

    def lift(self, f: Polynomial) -> Polynomial:
        """The canonical representative of f in the base polynomial ring."""
        if self.base is self:
            return f
        return self.base._from_reduced_dict(dict(f.terms))

    def inject(self, f: Polynomial) -> Polynomial:
        """Image in this ring of a base-ring polynomial."""
        return self.from_dict(dict(f.terms))

    def monomials(self, d: int):
        got = self._mono_cache.get(d)
        if got is None:
            got = tuple(monomials_of_degree(self.n, d))
            self._mono_cache[d] = got
        return got

    def std_monomials(self, d: int):
        """Monomials of degree d not divisible by any modulus leading monomial."""
        lms = [lm for lm, _ in self._mod_compiled]
        return tuple(m for m in self.monomials(d) if not any(mono_divides(lm, m) for lm in lms))

    def is_std_monomial(self, m: Mono) -> bool:
        return not any(mono_divides(lm, m) for lm, _ in self._mod_compiled)

    def parse(self, text: str) -> Polynomial:
        return parse_poly(self, text)

    def key(self) -> tuple:
        """Hashable structural identity (used for cache digests)."""
        return (
            self.field.p,
            self.names,
            self.order.kind,
            self.order.precedence,
            tuple(str(g) for g in self.modulus),
        )

    def __repr__(self):
        head = f"F{self.field.p}[{','.join(self.names)}]"
        if self.is_quotient:
            return head + "/(" + ", ".join(str(g) for g in self.modulus) + ")"
        return head


# ---------------------------------------------------------------------------
# expression parser: names, integers, + - * ^ ** ( )

class ParseError(RingError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif text.startswith("**", i):
            tokens.append(("op", "^", i))
            i += 2
        elif ch in "+-*^()":
            tokens.append(("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


def parse_poly(ring: Ring, text: str) -> Polynomial:
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take(kind, value=None):
        nonlocal pos
        t = tokens[pos]
        if t[0] != kind or (value is not None and t[1] != value):
            raise ParseError(f"expected {value or kind}, found {t[1]!r}", t[2])
        pos += 1
        return t

    def atom():
        t = peek()
        if t[0] == "name":
            take("name")
            if t[1] not in ring.names:
                raise ParseError(f"unknown variable {t[1]!r}", t[2])
            return ring.var(ring.names.index(t[1]))
        if t[0] == "int":
            take("int")
            return ring.const(int(t[1]))
        if t == ("op", "(", t[2]):
            take("op", "(")
            e = expr()
            take("op", ")")
            return e
        raise ParseError(f"expected a term, found {t[1]!r}", t[2])

    def factor():
        a = atom()
        if peek()[:2] == ("op", "^"):
            take("op", "^")
            e = take("int")
            a = a ** int(e[1])
        return a

    def term():
        f = factor()
        while peek()[:2] == ("op", "*"):
            take("op", "*")
            f = f * factor()
        return f

    def expr():
        sign = 1
        if peek()[:2] == ("op", "-"):
            take("op", "-")
            sign = -1
        elif peek()[:2] == ("op", "+"):
            take("op", "+")
        out = term() * sign
        while peek()[:2] in (("op", "+"), ("op", "-")):
            op = take("op")[1]
            t = term()
            out = out + t if op == "+" else out - t
        return out

    result = expr()
    take("end")
    return result
