"""Sparse multivariate polynomials, monomial orders and normal forms.

Monomials are exponent tuples.  A :class:`Polynomial` keeps its terms in a
dict (exponent tuple -> nonzero coefficient), so equality is structural;
iteration and printing use degrevlex in the ring's natural variable order.
"""

from functools import cached_property
from itertools import combinations_with_replacement

from . import linalg
from .fields import make_field


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.message, self.line, self.column = message, line, column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        elif column is not None:
            where = f"column {column}: "
        super().__init__(where + message)


# -- monomials -------------------------------------------------------------

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(n, d):
    """All exponent vectors of total degree d in n variables, degrevlex-descending."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    order = TermOrder.degrevlex(n)
    out.sort(key=order.key, reverse=True)
    return out


class TermOrder:
    """lex or degrevlex with an explicit variable priority (highest first)."""

    KINDS = ("lex", "degrevlex")

    def __init__(self, kind, priority):
        if kind not in self.KINDS:
            raise ValueError(f"unknown order kind {kind!r}")
        priority = tuple(priority)
        if sorted(priority) != list(range(len(priority))):
            raise ValueError(f"priority {priority} is not a permutation")
        self.kind = kind
        self.priority = priority
        self.nvars = len(priority)
        rev = tuple(reversed(priority))
        if kind == "degrevlex":
            self.key = lambda m: (sum(m), tuple(-m[v] for v in rev))
        else:
            self.key = lambda m: tuple(m[v] for v in priority)

    @classmethod
    def degrevlex(cls, n, priority=None):
        return cls("degrevlex", range(n) if priority is None else priority)

    @classmethod
    def lex(cls, n, priority=None):
        return cls("lex", range(n) if priority is None else priority)

    def compare(self, m1, m2):
        if len(m1) != self.nvars or len(m2) != self.nvars:
            raise ValueError("monomial arity does not match the order")
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and (self.kind, self.priority) == (other.kind, other.priority)

    def __hash__(self):
        return hash((self.kind, self.priority))

    def __repr__(self):
        return f"TermOrder({self.kind!r}, {list(self.priority)})"


LT, EQ, GT = -1, 0, 1


def compare(m1, m2, order):
    return order.compare(m1, m2)


# -- rings and polynomials -------------------------------------------------

class PolyRing:
    def __init__(self, field, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.canonical = TermOrder.degrevlex(self.nvars)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.names)})"

    @property
    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(self.field.one)

    def constant(self, c):
        c = self.field(c)
        if self.field.is_zero(c):
            return self.zero
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exp, coeff=None):
        K = self.field
        c = K.one if coeff is None else coeff
        return Polynomial(self, {tuple(exp): c})

    def var(self, i):
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    @property
    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def linear_form(self, vec):
        K = self.field
        terms = {}
        for i, c in enumerate(vec):
            if not K.is_zero(c):
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms)

    def from_terms(self, terms):
        """Build from (coeff, exponent) pairs, merging duplicates."""
        K = self.field
        d = {}
        for c, e in terms:
            e = tuple(e)
            d[e] = K.add(d.get(e, K.zero), c)
        return Polynomial(self, {e: c for e, c in d.items() if not K.is_zero(c)})

    def parse(self, text, line=None):
        return parse_polynomial(text, self, line=line)

    def with_field(self, field):
        return PolyRing(field, self.names)

    def with_names(self, names):
        return PolyRing(self.field, names)


class Polynomial:
    def __init__(self, ring, terms):
        self.ring = ring
        self._terms = terms

    # structural ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def terms(self):
        """(coeff, exponent) pairs in canonical (degrevlex, natural) order."""
        key = self.ring.canonical.key
        return [(self._terms[e], e) for e in sorted(self._terms, key=key, reverse=True)]

    def items(self):
        return self._terms.items()

    def coeff(self, exp):
        return self._terms.get(tuple(exp), self.ring.field.zero)

    @cached_property
    def degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, d):
        return Polynomial(self.ring, {e: c for e, c in self._terms.items() if sum(e) == d})

    # arithmetic ---------------------------------------------------------
    def _check(self, other):
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(self.ring.field(other))

    def __add__(self, other):
        other = self._coerce(other)
        K = self.ring.field
        d = dict(self._terms)
        for e, c in other._terms.items():
            v = K.add(d.get(e, K.zero), c)
            if K.is_zero(v):
                d.pop(e, None)
            else:
                d[e] = v
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        K = self.ring.field
        return Polynomial(self.ring, {e: K.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(self.ring.field(other))
        self._check(other)
        K = self.ring.field
        d = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = mono_mul(e1, e2)
                d[e] = K.add(d.get(e, K.zero), K.mul(c1, c2))
        return Polynomial(self.ring, {e: c for e, c in d.items() if not K.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, k):
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c):
        K = self.ring.field
        if K.is_zero(c):
            return self.ring.zero
        return Polynomial(self.ring, {e: K.mul(c, v) for e, v in self._terms.items()})

    def mul_term(self, c, exp):
        K = self.ring.field
        if K.is_zero(c):
            return self.ring.zero
        return Polynomial(self.ring, {mono_mul(e, exp): K.mul(c, v) for e, v in self._terms.items()})

    # orders -------------------------------------------------------------
    def leading_monomial(self, order):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=order.key)

    def leading_term(self, order):
        m = self.leading_monomial(order)
        return self._terms[m], m

    def leading_coefficient(self, order):
        return self.leading_term(order)[0]

    def monic(self, order):
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    # misc ---------------------------------------------------------------
    def evaluate(self, point):
        K = self.ring.field
        total = K.zero
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = K.mul(v, K.pow(x, k))
            total = K.add(total, v)
        return total

    def derivative(self, i):
        K = self.ring.field
        d = {}
        for e, c in self._terms.items():
            if e[i]:
                v = K.mul(K(e[i]), c)
                if not K.is_zero(v):
                    ne = list(e)
                    ne[i] -= 1
                    d[tuple(ne)] = v
        return Polynomial(self.ring, d)

    def map_coefficients(self, ring, fn):
        K = ring.field
        d = {e: fn(c) for e, c in self._terms.items()}
        return Polynomial(ring, {e: c for e, c in d.items() if not K.is_zero(c)})

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# -- reduction ---------------------------------------------------------------

def leading_term(f, order):
    return f.leading_term(order)


def reduce(f, G, order):
    """Full normal form of f modulo G.

    The largest reducible term is always treated first, using the first
    element of G (in list order) whose leading monomial divides it.
    """
    K = f.ring.field
    heads = []
    for g in G:
        if g.ring is not f.ring and g.ring != f.ring:
            raise ValueError("polynomials live in different rings")
        if g.is_zero():
            raise ValueError("reducers must be nonzero")
        c, m = g.leading_term(order)
        heads.append((m, K.inv(c), g._terms))
    p = dict(f._terms)
    r = {}
    key = order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, lcinv, gterms in heads:
            if divides(lm, m):
                q = K.mul(c, lcinv)
                shift = mono_div(m, lm)
                for gm, gc in gterms.items():
                    e = mono_mul(gm, shift)
                    v = K.sub(p.get(e, K.zero), K.mul(q, gc))
                    if K.is_zero(v):
                        p.pop(e, None)
                    else:
                        p[e] = v
                break
        else:
            r[m] = c
            del p[m]
    return Polynomial(f.ring, r)


def substitute_linear(f, M, target=None):
    """Replace variable i by sum_k M[i][k] x_k (in ``target`` if given)."""
    ring = target or f.ring
    K = ring.field
    n = f.ring.nvars
    if len(M) != n or any(len(row) != n for row in M) or ring.nvars != n:
        raise ValueError("substitution matrix size must match the number of variables")
    if not linalg.is_invertible(M, K):
        raise ValueError("singular substitution matrix")
    images = [ring.linear_form(row) for row in M]
    powers = [{0: ring.one()} for _ in range(n)]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * images[i]
        return cache[k]

    out = ring.zero
    for e, c in f._terms.items():
        t = ring.constant(c)
        for i, k in enumerate(e):
            if k:
                t = t * power(i, k)
        out = out + t
    return out


# -- text format -------------------------------------------------------------

def _format_coeff(K, c):
    return K.format(c)


def format_polynomial(f):
    if f.is_zero():
        return "0"
    K = f.ring.field
    names = f.ring.names
    parts = []
    for c, e in f.terms():
        mono = "*".join(names[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        s = _format_coeff(K, c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse_polynomial(text, ring, line=None):
    """Parse the plain text grammar, e.g. ``3*x^2*y - z^2 + x*y``."""
    chars = [(ch, i + 1) for i, ch in enumerate(text) if not ch.isspace()]
    K = ring.field
    pos = 0

    def err(msg):
        col = chars[pos][1] if pos < len(chars) else len(text) + 1
        raise ParseError(msg, line, col)

    def peek():
        return chars[pos][0] if pos < len(chars) else ""

    def read_int():
        nonlocal pos
        start = pos
        while peek().isdigit():
            pos += 1
        if start == pos:
            err("expected a number")
        return int("".join(ch for ch, _ in chars[start:pos]))

    def read_name():
        nonlocal pos
        start = pos
        while peek().isalnum() or peek() == "_":
            pos += 1
        return "".join(ch for ch, _ in chars[start:pos])

    if not chars:
        err("empty polynomial")
    result = {}
    first = True
    while pos < len(chars):
        sign = 1
        if peek() in "+-":
            sign = -1 if peek() == "-" else 1
            pos += 1
        elif not first:
            err(f"unexpected {peek()!r}")
        first = False
        coeff = K(sign)
        exp = [0] * ring.nvars
        expect_factor = True
        seen_any = False
        while expect_factor:
            ch = peek()
            if ch.isdigit():
                num = read_int()
                value = K(num)
                if peek() == "/":
                    pos += 1
                    den = read_int()
                    if den == 0:
                        err("division by zero")
                    value = K.div(value, K(den))
                coeff = K.mul(coeff, value)
                seen_any = True
                if peek() == "*":
                    pos += 1
                    continue
                if peek().isalpha() or peek() == "_":
                    continue  # '*' is optional after a coefficient
                expect_factor = False
            elif ch.isalpha() or ch == "_":
                name = read_name()
                if name not in ring.names:
                    pos -= len(name)
                    err(f"unknown variable {name!r}")
                k = 1
                if peek() == "^":
                    pos += 1
                    if not peek().isdigit():
                        err("expected an exponent")
                    k = read_int()
                exp[ring.names.index(name)] += k
                seen_any = True
                if peek() == "*":
                    pos += 1
                    continue
                expect_factor = False
            else:
                err("expected a coefficient or variable" if not seen_any else f"unexpected {ch!r}")
        e = tuple(exp)
        v = K.add(result.get(e, K.zero), coeff)
        if K.is_zero(v):
            result.pop(e, None)
        else:
            result[e] = v
    return Polynomial(ring, result)


def parse_vars(line_text, line=None):
    text = line_text.strip()
    if not text.startswith("vars"):
        raise ParseError("expected 'vars <names>'", line, 1)
    names = [v.strip() for v in text[4:].split(",") if v.strip()]
    if not names:
        raise ParseError("no variables declared", line, 5)
    for v in names:
        if not (v[0].isalpha() or v[0] == "_") or not all(ch.isalnum() or ch == "_" for ch in v):
            raise ParseError(f"bad variable name {v!r}", line, 5)
    return names


def ring_from_text(names, p=101):
    return PolyRing(make_field(p), names)
