"""Buchberger's algorithm, Hilbert functions and projective point counts."""

import heapq
import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import linalg, univariate
from .fields import DEFAULT_PRIME, RationalField, make_field, make_rng
from .poly import (ParseError, PolyRing, TermOrder, divides, mono_div,
                   mono_lcm, monomials_of_degree, parse_vars, reduce,
                   substitute_linear)

INFINITE = math.inf


class RandomnessExhausted(RuntimeError):
    """Independent random projections disagreed; retry with a new seed."""


@dataclass
class IdealPresentation:
    ring: PolyRing
    gens: list
    comments: list = dc_field(default_factory=list)

    def __post_init__(self):
        self.gens = [g for g in self.gens if not g.is_zero()]
        for g in self.gens:
            if g.ring != self.ring:
                raise ValueError("generator from a different ring")

    @property
    def names(self):
        return self.ring.names

    @property
    def field(self):
        return self.ring.field

    @property
    def nvars(self):
        return self.ring.nvars

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    def is_quadratic(self):
        return bool(self.gens) and all(g.is_homogeneous() and g.degree == 2 for g in self.gens)

    def substitute(self, M, target=None):
        ring = target or self.ring
        return IdealPresentation(ring, [substitute_linear(g, M, ring) for g in self.gens])

    def base_change(self, field):
        ring = self.ring.with_field(field)
        return IdealPresentation(ring, [g.map_coefficients(ring, field.embed) for g in self.gens])

    def to_text(self):
        return format_ideal(self)


@dataclass
class GroebnerBasis:
    ideal: IdealPresentation
    order: TermOrder
    elements: list
    reduced: bool = True
    truncated_at: int = None      # degree cap if S-pairs were skipped

    @property
    def ring(self):
        return self.ideal.ring

    @property
    def max_degree(self):
        return max((g.degree for g in self.elements), default=0)

    @property
    def complete(self):
        return self.truncated_at is None

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.elements]

    def reduce(self, f):
        return reduce(f, self.elements, self.order)

    def contains(self, f):
        return self.reduce(f).is_zero()

    def is_unit_ideal(self):
        return any(g.degree == 0 for g in self.elements)

    def standard_monomials(self, d):
        lms = self.leading_monomials()
        return [m for m in monomials_of_degree(self.ring.nvars, d)
                if not any(divides(lm, m) for lm in lms)]

    def hilbert_function(self, d):
        return hilbert_function(self, d)

    def krull_dimension(self):
        return krull_dimension(self.leading_monomials(), self.ring.nvars)


def _spoly(f, g, order):
    K = f.ring.field
    cf, mf = f.leading_term(order)
    cg, mg = g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    return f.mul_term(K.inv(cf), mono_div(lcm, mf)) - g.mul_term(K.inv(cg), mono_div(lcm, mg))


def spoly(f, g, order):
    return _spoly(f, g, order)


def buchberger(ideal, order=None, degree_cap=None):
    """Reduced Gröbner basis, S-pairs processed by degree then first-in.

    With ``degree_cap`` pairs and generators above that degree are skipped;
    for homogeneous input the result is then correct up to that degree.
    """
    ring = ideal.ring
    order = order or ring.canonical
    G, lms = [], []
    queue = []
    seq = 0
    live = set()
    skipped = False

    def push(deg, item):
        nonlocal seq
        heapq.heappush(queue, (deg, seq, item))
        seq += 1

    for g in ideal.gens:
        push(g.degree, ("gen", g))

    while queue:
        deg, _, item = heapq.heappop(queue)
        if degree_cap is not None and deg > degree_cap:
            skipped = True
            continue
        if item[0] == "gen":
            h = reduce(item[1], G, order) if G else item[1]
        else:
            i, j = item[1], item[2]
            live.discard((i, j))
            lcm = mono_lcm(lms[i], lms[j])
            if _chain_skip(i, j, lcm, lms, live):
                continue
            h = reduce(_spoly(G[i], G[j], order), G, order)
        if h.is_zero():
            continue
        h = h.monic(order)
        k = len(G)
        G.append(h)
        lm = h.leading_monomial(order)
        lms.append(lm)
        if h.degree == 0:
            break
        for i in range(k):
            if all(a == 0 or b == 0 for a, b in zip(lms[i], lm)):
                continue  # coprime leading monomials
            live.add((i, k))
            push(sum(mono_lcm(lms[i], lm)), ("pair", i, k))

    elements = _interreduce(G, order)
    return GroebnerBasis(ideal, order, elements, True, degree_cap if skipped else None)


def _chain_skip(i, j, lcm, lms, live):
    for k, m in enumerate(lms):
        if k in (i, j) or not divides(m, lcm):
            continue
        if (min(i, k), max(i, k)) not in live and (min(j, k), max(j, k)) not in live:
            return True
    return False


def _interreduce(G, order):
    if any(g.degree == 0 for g in G):
        ring = G[0].ring
        return [ring.one()]
    lms = [g.leading_monomial(order) for g in G]
    keep = []
    for i, m in enumerate(lms):
        redundant = False
        for j, m2 in enumerate(lms):
            if j != i and divides(m2, m) and (m2 != m or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(G[i])
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        out.append(reduce(g, others, order).monic(order) if others else g.monic(order))
    out.sort(key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
    return out


def is_quadratic_gb(ideal, order=None):
    """(True iff the reduced basis has degree <= 2, the basis itself)."""
    gb = buchberger(ideal, order)
    return gb.max_degree <= 2, gb


def hilbert_function(gb, d):
    if d < 0:
        return 0
    if gb.is_unit_ideal():
        return 0
    return len(gb.standard_monomials(d))


def hilbert_profile(gb, top):
    return [hilbert_function(gb, d) for d in range(top + 1)]


def krull_dimension(monomials, n):
    """Dimension of S / (monomials): largest variable set avoided by all supports."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in monomials]
    if any(not s for s in supports):
        return -1   # unit ideal
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            U = set(U)
            if not any(s <= U for s in supports):
                return size
    return 0


def is_zero_dimensional(gb):
    """Returns (S/I Artinian, Krull dimension of S/I)."""
    dim = gb.krull_dimension()
    return dim <= 0, dim


def random_invertible(n, K, rng):
    while True:
        M = [[K.random(rng) for _ in range(n)] for _ in range(n)]
        if linalg.is_invertible(M, K):
            return M


def count_projective_points(ideal, seed=0, trials=3):
    """Distinct points of the projective zero locus (3 variables) over the closure.

    Each trial applies a random coordinate change, eliminates the middle
    variable with lex, and counts distinct roots of the gcd of the binary
    forms left over.  The maximum over the trials is returned once it repeats.
    """
    ring = ideal.ring
    if ring.nvars != 3:
        raise ValueError("point counting needs exactly 3 variables")
    K = ring.field
    gb = buchberger(ideal)
    if gb.is_unit_ideal():
        return 0
    dim = gb.krull_dimension()
    if dim <= 0:
        return 0
    if dim >= 2:
        return INFINITE
    rng = make_rng(seed)
    counts = []
    lex = TermOrder.lex(3, (1, 0, 2))
    # a special projection can only merge points, so the count is the largest
    # value seen; it is accepted once two trials reach it
    for _ in range(max(trials, 2) * 3):
        M = random_invertible(3, K, rng)
        J = ideal.substitute(M)
        elim = [g for g in buchberger(J, lex).elements if all(e[1] == 0 for e in g._terms)]
        if not elim:
            raise RandomnessExhausted("elimination ideal is empty")
        counts.append(_count_binary(elim, K))
        top = max(counts)
        if len(counts) >= trials and counts.count(top) >= min(2, trials):
            return top
    raise RandomnessExhausted(f"projections disagree: {counts}")


def _count_binary(forms, K):
    """Distinct projective roots of the gcd of binary forms in (x, z)."""
    g = []
    at_infinity = True
    for f in forms:
        # dehomogenise z = 1: coefficient of x^a z^b goes to x^a
        d = f.degree
        u = [K.zero] * (d + 1)
        for e, c in f.items():
            u[e[0]] = K.add(u[e[0]], c)
        u = univariate.trim(u, K)
        if len(u) - 1 == d:
            at_infinity = False  # not divisible by z
        g = univariate.gcd(g, u, K) if g else univariate.monic(u, K)
    return univariate.count_distinct_roots(g, K) + (1 if at_infinity else 0)


# -- ideal files -------------------------------------------------------------

def parse_field_line(text, line):
    t = text.strip()
    if not t.startswith("field"):
        raise ParseError("expected 'field <p>' or 'field Q'", line, 1)
    arg = t[5:].strip()
    if arg in ("Q", "QQ"):
        return RationalField()
    try:
        return make_field(int(arg))
    except ValueError as exc:
        raise ParseError(f"bad field {arg!r}: {exc}", line, 7) from None


def parse_ideal(text, p=None):
    """Parse the ideal file format; ``p`` overrides the declared field."""
    header = []
    comments = []
    gens_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            comments.append(s[1:].strip())
            continue
        if len(header) < 2:
            header.append((lineno, s))
        else:
            gens_lines.append((lineno, raw))
    if len(header) < 2:
        raise ParseError("missing 'field' or 'vars' line", len(text.splitlines()) or 1, 1)
    field = parse_field_line(header[0][1], header[0][0])
    if p is not None:
        field = make_field(p)
    names = parse_vars(header[1][1], header[1][0])
    ring = PolyRing(field, names)
    gens = [ring.parse(raw, line=lineno) for lineno, raw in gens_lines]
    return IdealPresentation(ring, gens, comments)


def load_ideal(path, p=None):
    with open(path) as fh:
        return parse_ideal(fh.read(), p=p)


def format_ideal(ideal, comments=None):
    K = ideal.field
    lines = [f"# {c}" for c in (comments if comments is not None else ideal.comments)]
    lines.append("field Q" if K.characteristic == 0 else f"field {K.characteristic}")
    lines.append("vars " + ",".join(ideal.names))
    lines.extend(str(g) for g in ideal.gens)
    return "\n".join(lines) + "\n"


def ideal_from_strings(names, gens, p=DEFAULT_PRIME, field=None):
    ring = PolyRing(field or make_field(p), names)
    return IdealPresentation(ring, [ring.parse(g) for g in gens])
