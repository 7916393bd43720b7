"""Exact coefficient fields: F_p, Q and F_{p^k}.

Elements are plain Python values (``int`` for F_p, ``Fraction`` for Q,
tuples of ints for F_{p^k}) so they hash and compare structurally.  All
arithmetic goes through the field object.
"""

from fractions import Fraction
import random

DEFAULT_PRIME = 101


class FieldError(ValueError):
    pass


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Shared behaviour.  Subclasses provide the primitive operations."""

    characteristic = 0
    degree = 1

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def sum(self, values):
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    @property
    def is_finite(self):
        return self.characteristic > 0

    @property
    def order(self):
        if not self.characteristic:
            return None
        return self.characteristic ** self.degree

    def sqrt(self, a):
        """A square root of ``a`` in this field, or ``None``."""
        if self.is_zero(a):
            return self.zero
        q = self.order
        if self.pow(a, (q - 1) // 2) != self.one:
            return None
        if q % 4 == 3:
            return self.pow(a, (q + 1) // 4)
        # Tonelli-Shanks
        s, m = 0, q - 1
        while m % 2 == 0:
            s, m = s + 1, m // 2
        nonres = next(g for g in self.elements()
                      if not self.is_zero(g) and self.pow(g, (q - 1) // 2) != self.one)
        c = self.pow(nonres, m)
        x = self.pow(a, (m + 1) // 2)
        t = self.pow(a, m)
        r = s
        while t != self.one:
            i, t2 = 0, t
            while t2 != self.one:
                t2 = self.mul(t2, t2)
                i += 1
            b = c
            for _ in range(r - i - 1):
                b = self.mul(b, b)
            x = self.mul(x, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            r = i
        return x

    def spec(self):
        """JSON-friendly description."""
        d = {"characteristic": self.characteristic, "degree": self.degree}
        if self.degree > 1:
            d["modulus"] = list(self.modulus)
        return d

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec() == other.spec()

    def __hash__(self):
        return hash(repr(self.spec()))


class PrimeField(Field):
    degree = 1

    def __init__(self, p, allow_char3=False):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if p == 3 and not allow_char3:
            raise FieldError("characteristic 3 is rejected (cubic partials divide by 3)")
        self.p = self.characteristic = p
        self.zero, self.one = 0, 1

    def __call__(self, value):
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def elements(self):
        return iter(range(self.p))

    def random(self, rng):
        return rng.randrange(self.p)

    def format(self, a):
        # signed representative reads better for small negatives
        return str(a - self.p if a > self.p // 2 else a)

    def to_json(self, a):
        return a

    def from_json(self, v):
        return self(v)

    def embed(self, a):
        return a

    def __repr__(self):
        return f"GF({self.p})"


class RationalField(Field):
    characteristic = 0
    degree = 1

    def __init__(self):
        self.zero, self.one = Fraction(0), Fraction(1)

    def __call__(self, value):
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def div(self, a, b):
        return a / b

    def elements(self):
        raise FieldError("Q is infinite")

    def random(self, rng):
        return Fraction(rng.randint(-50, 50))

    def sqrt(self, a):
        if a < 0:
            return None
        num, den = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def format(self, a):
        return str(a)

    def to_json(self, a):
        return str(a)

    def from_json(self, v):
        return Fraction(v)

    def embed(self, a):
        return a

    def __repr__(self):
        return "QQ"


def _isqrt_exact(n):
    import math
    r = math.isqrt(n)
    return r if r * r == n else None


class ExtensionField(Field):
    """F_p[a]/(modulus) with a monic irreducible modulus of degree k <= 6."""

    MAX_DEGREE = 6

    def __init__(self, p, modulus=None, degree=None, allow_char3=False):
        self.base = PrimeField(p, allow_char3=allow_char3)
        self.p = self.characteristic = p
        if modulus is None:
            if degree is None:
                raise FieldError("need a modulus or a degree")
            modulus = find_irreducible(self.base, degree)
        modulus = [c % p for c in modulus]
        while modulus and modulus[-1] == 0:
            modulus.pop()
        k = len(modulus) - 1
        if k < 1 or k > self.MAX_DEGREE:
            raise FieldError(f"extension degree {k} outside 1..{self.MAX_DEGREE}")
        if modulus[-1] != 1:
            inv = pow(modulus[-1], -1, p)
            modulus = [c * inv % p for c in modulus]
        from .univariate import is_irreducible
        if not is_irreducible(self.base, modulus):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = tuple(modulus)
        self.degree = k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self.gen = (0, 1) + (0,) * (k - 2) if k > 1 else (-modulus[0] % p,)

    def __call__(self, value):
        if isinstance(value, tuple):
            return self._norm(value)
        return (self.base(value),) + (0,) * (self.degree - 1)

    embed = __call__

    def _norm(self, coeffs):
        c = [x % self.p for x in coeffs]
        k, m = self.degree, self.modulus
        for i in range(len(c) - 1, k - 1, -1):
            lead = c[i]
            if lead:
                for j in range(k):
                    c[i - k + j] = (c[i - k + j] - lead * m[j]) % self.p
            c[i] = 0
        c = c[:k] + [0] * (k - len(c))
        return tuple(c)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        k = self.degree
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._norm(prod)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of 0")
        return self.pow(a, self.order - 2)

    def elements(self):
        import itertools
        for c in itertools.product(range(self.p), repeat=self.degree):
            yield tuple(reversed(c))

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def format(self, a):
        parts = []
        for i, c in enumerate(a):
            if c:
                c = c - self.p if c > self.p // 2 else c
                parts.append(str(c) if i == 0 else f"{c}*a^{i}")
        return "(" + " + ".join(parts or ["0"]) + ")"

    def to_json(self, a):
        return list(a)

    def from_json(self, v):
        return self._norm(tuple(v)) if isinstance(v, list) else self(v)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"


def find_irreducible(base, k):
    """Lexicographically first monic irreducible polynomial of degree k."""
    import itertools
    from .univariate import is_irreducible
    p = base.p
    for tail in itertools.product(range(p), repeat=k):
        coeffs = list(reversed(tail)) + [1]
        if coeffs[0] and is_irreducible(base, coeffs):
            return coeffs
    raise FieldError(f"no irreducible of degree {k} over F_{p}")


def make_field(p=DEFAULT_PRIME, degree=1, allow_char3=False):
    """``p == 0`` gives Q; ``degree > 1`` gives F_{p^degree}."""
    if p == 0:
        return RationalField()
    if degree == 1:
        return PrimeField(p, allow_char3=allow_char3)
    return ExtensionField(p, degree=degree, allow_char3=allow_char3)


def extend(field, degree=2):
    """An extension of ``field`` of the given relative degree, with embedding."""
    if not isinstance(field, (PrimeField, ExtensionField)):
        raise FieldError(f"cannot extend {field!r}")
    if isinstance(field, PrimeField):
        return ExtensionField(field.p, degree=degree)
    raise FieldError("towers of extensions are not supported")


def field_from_spec(spec):
    if spec["characteristic"] == 0:
        return RationalField()
    if spec.get("degree", 1) == 1:
        return PrimeField(spec["characteristic"])
    return ExtensionField(spec["characteristic"], modulus=spec["modulus"])


def make_rng(seed):
    return random.Random(seed)
