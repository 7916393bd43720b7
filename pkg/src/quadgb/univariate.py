"""Dense univariate polynomials over a field.

A polynomial is a list of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).
"""

import random


def trim(f, K):
    f = list(f)
    while f and K.is_zero(f[-1]):
        f.pop()
    return f


def degree(f):
    return len(f) - 1


def add(f, g, K):
    n = max(len(f), len(g))
    f = list(f) + [K.zero] * (n - len(f))
    g = list(g) + [K.zero] * (n - len(g))
    return trim([K.add(a, b) for a, b in zip(f, g)], K)


def sub(f, g, K):
    return add(f, [K.neg(c) for c in g], K)


def mul(f, g, K):
    if not f or not g:
        return []
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if K.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return trim(out, K)


def divmod_(f, g, K):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    q = [K.zero] * max(len(f) - len(g) + 1, 0)
    inv = K.inv(g[-1])
    while len(f) >= len(g) and f:
        c = K.mul(f[-1], inv)
        shift = len(f) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = K.sub(f[shift + i], K.mul(c, b))
        f = trim(f, K)
    return trim(q, K), f


def monic(f, K):
    if not f:
        return []
    inv = K.inv(f[-1])
    return [K.mul(c, inv) for c in f]


def gcd(f, g, K):
    f, g = trim(f, K), trim(g, K)
    while g:
        f, g = g, divmod_(f, g, K)[1]
    return monic(f, K)


def derivative(f, K):
    return trim([K.mul(K(i), c) for i, c in enumerate(f)][1:], K)


def powmod(f, e, m, K):
    result = [K.one]
    base = divmod_(f, m, K)[1]
    while e:
        if e & 1:
            result = divmod_(mul(result, base, K), m, K)[1]
        base = divmod_(mul(base, base, K), m, K)[1]
        e >>= 1
    return result


def evaluate(f, x, K):
    acc = K.zero
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc


def _pth_root(f, K):
    # f = g(x^p); over a perfect field every coefficient has a p-th root
    p = K.characteristic
    q = K.order
    out = []
    for i in range(0, len(f), p):
        out.append(K.pow(f[i], q // p))
    return trim(out, K)


def squarefree_part(f, K):
    """Monic product of the distinct irreducible factors of ``f``.

    Its degree is the number of distinct roots in the algebraic closure.
    Handles characteristic p (factors whose multiplicity is divisible by p).
    """
    f = monic(trim(f, K), K)
    if len(f) <= 1:
        return [K.one] if f else []
    d = derivative(f, K)
    if not d:
        return squarefree_part(_pth_root(f, K), K)
    g = gcd(f, d, K)
    w = divmod_(f, g, K)[0]
    while True:
        c = gcd(g, w, K)
        if len(c) <= 1:
            break
        g = divmod_(g, c, K)[0]
    if len(g) > 1:
        w = mul(w, squarefree_part(_pth_root(g, K), K), K)
    return monic(w, K)


def count_distinct_roots(f, K):
    """Number of distinct roots over the algebraic closure."""
    return degree(squarefree_part(f, K))


def is_irreducible(K, f):
    """Ben-Or test over a finite field."""
    f = monic(trim([K(c) for c in f], K), K)
    n = degree(f)
    if n < 1:
        return False
    x = [K.zero, K.one]
    q = K.order
    h = x
    for _ in range(n // 2):
        h = powmod(h, q, f, K)
        g = gcd(f, sub(h, x, K), K)
        if len(g) > 1:
            return False
    return True


def roots(f, K, rng=None):
    """Distinct roots of ``f`` lying in ``K`` (finite fields and Q)."""
    f = trim(f, K)
    if not f:
        raise ValueError("zero polynomial has every element as a root")
    if len(f) == 1:
        return []
    if not K.is_finite:
        return _rational_roots(f, K)
    rng = rng or random.Random(0)
    f = monic(f, K)
    x = [K.zero, K.one]
    # split off the product of linear factors
    g = gcd(f, sub(powmod(x, K.order, f, K), x, K), K)
    out = []
    _split(g, K, rng, out)
    return sorted(out, key=_sort_key)


def _sort_key(a):
    return a if isinstance(a, tuple) else (a,)


def _split(g, K, rng, out):
    d = degree(g)
    if d <= 0:
        return
    if d == 1:
        out.append(K.neg(K.div(g[0], g[1])))
        return
    q = K.order
    while True:
        a = K.random(rng)
        h = powmod([a, K.one], (q - 1) // 2, g, K)
        h = sub(h, [K.one], K)
        c = gcd(g, h, K)
        if 0 < degree(c) < d:
            _split(c, K, rng, out)
            _split(divmod_(g, c, K)[0], K, rng, out)
            return


def _rational_roots(f, K):
    from fractions import Fraction
    from math import lcm
    den = lcm(*[c.denominator for c in f])
    ints = [int(c * den) for c in f]
    out = []
    while ints and ints[0] == 0:
        out.append(Fraction(0))
        ints = ints[1:]
    if len(ints) > 1:
        a0, an = abs(ints[0]), abs(ints[-1])
        for p in _divisors(a0):
            for q in _divisors(an):
                for s in (1, -1):
                    r = Fraction(s * p, q)
                    if r not in out and evaluate(f, r, K) == 0:
                        out.append(r)
    return sorted(set(out))


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]
