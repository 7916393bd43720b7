"""Finding rational points of systems of homogeneous forms.

Two routes: exhaustive enumeration of P^{n-1}(F_p) with numpy (small
spaces over prime fields) and an exact solver for zero-dimensional
systems built on lex Gröbner bases and univariate root finding, applied
to random linear sections.
"""

import numpy as np

from . import linalg, univariate
from .fields import PrimeField
from .poly import PolyRing, TermOrder

EXHAUSTIVE_LIMIT = 10 ** 7
_CHUNK = 1 << 18


class PositiveDimensional(ValueError):
    pass


def projective_size(q, n):
    return (q ** n - 1) // (q - 1)


def can_enumerate(K, n, limit=EXHAUSTIVE_LIMIT):
    return isinstance(K, PrimeField) and K.p < 2 ** 31 and projective_size(K.p, n) <= limit


def enumerate_zeros(forms, n, K):
    """All points of P^{n-1}(F_p) where every form vanishes (normalised)."""
    p = K.p
    compiled = [[(tuple(e), c % p) for e, c in f.items()] for f in forms]
    found = []
    for lead in range(n):
        free = n - lead - 1
        total = p ** free
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            pts = np.zeros((idx.size, n), dtype=np.int64)
            pts[:, lead] = 1
            rest = idx
            for j in range(n - 1, lead, -1):
                pts[:, j] = rest % p
                rest = rest // p
            for terms in compiled:
                cache = {}
                val = np.zeros(len(pts), dtype=np.int64)
                for e, c in terms:
                    val += c * _monomial_values(e, pts, cache, p) % p
                pts = pts[val % p == 0]
                if not len(pts):
                    break
            for row in pts:
                found.append([int(x) for x in row])
    return found


def _monomial_values(e, pts, cache, p):
    """Values of the monomial x^e on the rows of pts, built from cached smaller ones."""
    v = cache.get(e)
    if v is None:
        k = next(i for i, a in enumerate(e) if a)
        rest = list(e)
        rest[k] -= 1
        rest = tuple(rest)
        v = pts[:, k] if not any(rest) else _monomial_values(rest, pts, cache, p) * pts[:, k] % p
        cache[e] = v
    return v


def solve_projective(forms, n, K, rng=None):
    """Points of P^{n-1}(K) of a zero-dimensional homogeneous system."""
    ring = PolyRing(K, [f"u{i}" for i in range(n)])
    polys = [_to_ring(f, ring) for f in forms]
    return [linalg.normalize_projective(pt, K) for pt in _solve_proj(polys, ring, rng)]


def _to_ring(f, ring):
    from .poly import Polynomial
    return Polynomial(ring, dict(f.items()))


def _solve_proj(polys, ring, rng):
    K = ring.field
    n = ring.nvars
    polys = [f for f in polys if not f.is_zero()]
    if n == 1:
        return [] if polys else [[K.one]]
    out = []
    # chart: last coordinate = 1
    aff_ring = PolyRing(K, ring.names[:-1])
    aff = [_dehomogenize(f, aff_ring) for f in polys]
    for pt in _solve_affine(aff, aff_ring, rng):
        out.append(list(pt) + [K.one])
    # hyperplane: last coordinate = 0
    sub_ring = PolyRing(K, ring.names[:-1])
    sub = [_restrict_zero(f, sub_ring) for f in polys]
    for pt in _solve_proj(sub, sub_ring, rng):
        out.append(list(pt) + [K.zero])
    return out


def _dehomogenize(f, ring):
    K = ring.field
    d = {}
    for e, c in f.items():
        k = e[:-1]
        d[k] = K.add(d.get(k, K.zero), c)
    return ring.from_terms([(c, e) for e, c in d.items()])


def _restrict_zero(f, ring):
    return ring.from_terms([(c, e[:-1]) for e, c in f.items() if e[-1] == 0])


def _solve_affine(polys, ring, rng):
    from .groebner import IdealPresentation, buchberger
    K = ring.field
    n = ring.nvars
    polys = [f for f in polys if not f.is_zero()]
    if any(f.degree == 0 for f in polys):
        return []
    if n == 0:
        return [[]]
    if not polys:
        raise PositiveDimensional("no equations left")
    gb = buchberger(IdealPresentation(ring, polys), TermOrder.lex(n))
    if gb.is_unit_ideal():
        return []
    last = [g for g in gb.elements if all(all(x == 0 for x in e[:-1]) for e in g._terms)]
    if not last:
        raise PositiveDimensional("no univariate element in the last variable")
    u = [K.zero] * (last[0].degree + 1)
    for e, c in last[0].items():
        u[e[-1]] = c
    out = []
    sub_ring = PolyRing(K, ring.names[:-1])
    for r in univariate.roots(u, K, rng):
        spec = []
        for g in gb.elements:
            d = {}
            for e, c in g.items():
                k = e[:-1]
                d[k] = K.add(d.get(k, K.zero), K.mul(c, K.pow(r, e[-1])))
            spec.append(sub_ring.from_terms([(c, e) for e, c in d.items()]))
        for pt in _solve_affine(spec, sub_ring, rng):
            out.append(list(pt) + [r])
    return out


def find_points(forms, n, K, rng, accept=None, exhaustive_limit=EXHAUSTIVE_LIMIT,
                sections=12, want=None, stop=None):
    """Rational points of P^{n-1} killing ``forms`` and passing ``accept``.

    Returns ``(points, exhaustive)``.  When the space is small enough the
    enumeration is complete; otherwise random linear sections of dimension
    ``len(forms) + 1`` are solved exactly, and the result is a sample
    (complete when the section is the whole space).
    """
    accept = accept or (lambda v: True)
    if can_enumerate(K, n, exhaustive_limit):
        return [v for v in enumerate_zeros(forms, n, K) if accept(v)], True
    s = min(n, len(forms) + 1)
    seen, out = set(), []
    for _ in range(sections if s < n else 1):
        B = [[K.random(rng) for _ in range(s)] for _ in range(n)] if s < n else linalg.identity(n, K)
        if linalg.rank(B, K) < s:
            continue
        restricted = [_restrict(f, B, K, s) for f in forms]
        # the exact solver is much faster than enumeration when the section is finite
        try:
            local = solve_projective(restricted, s, K, rng)
        except PositiveDimensional:
            if not can_enumerate(K, s, exhaustive_limit):
                continue
            local = enumerate_zeros(restricted, s, K)
        for u in local:
            v = linalg.normalize_projective(linalg.matvec(B, u, K), K)
            key = tuple(v)
            if key not in seen and accept(v):
                seen.add(key)
                out.append(v)
        if (want and len(out) >= want) or (stop and stop(out)):
            break
    return out, s == n


def _restrict(f, B, K, s):
    """f(B u) as a form in s variables."""
    ring = PolyRing(K, [f"u{i}" for i in range(s)])
    images = [ring.linear_form(row) for row in B]
    out = ring.zero
    for e, c in f.items():
        t = ring.constant(c)
        for i, k in enumerate(e):
            for _ in range(k):
                t = t * images[i]
        out = out + t
    return out
