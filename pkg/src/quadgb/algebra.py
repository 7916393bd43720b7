"""Graded quotients R = S/I as finite linear-algebra data.

A linear form is a plain list of field elements: its coordinates in the
basis of R_1 (the standard monomials of degree one, i.e. a subset of the
variables).
"""

from . import linalg, search
from .fields import extend, make_rng
from .groebner import IdealPresentation, buchberger
from .poly import Polynomial, reduce


class SearchExhausted(LookupError):
    """No square-zero class was found within the searched fields."""


class GradedQuotient:
    def __init__(self, ideal, D=4):
        if D < 2:
            raise ValueError("degree bound must be at least 2")
        self.ideal = ideal
        self.ring = ideal.ring
        self.field = ideal.field
        self.D = D
        order = ideal.ring.canonical
        self.gb = buchberger(ideal, order, degree_cap=D)
        self.basis = [self.gb.standard_monomials(d) for d in range(D + 1)]
        if self.gb.is_unit_ideal():
            self.basis = [[] for _ in range(D + 1)]
        self.index = [{m: i for i, m in enumerate(b)} for b in self.basis]
        self.dims = [len(b) for b in self.basis]
        self.r1_vars = [m.index(1) for m in self.basis[1]]
        self._build_mult()
        self.origin = None

    def _build_mult(self):
        K = self.field
        n = self.ring.nvars
        nf_cache = {}
        self.mult = []
        for d in range(self.D):
            by_var = []
            for k in range(n):
                rows = self.dims[d + 1]
                M = linalg.zeros(rows, self.dims[d], K)
                for col, m in enumerate(self.basis[d]):
                    e = list(m)
                    e[k] += 1
                    e = tuple(e)
                    vec = nf_cache.get(e)
                    if vec is None:
                        vec = self._monomial_coords(e, d + 1)
                        nf_cache[e] = vec
                    for r, c in enumerate(vec):
                        M[r][col] = c
                by_var.append(M)
            self.mult.append(by_var)

    def _monomial_coords(self, e, d):
        K = self.field
        vec = [K.zero] * self.dims[d]
        i = self.index[d].get(e)
        if i is not None:
            vec[i] = K.one
            return vec
        nf = reduce(self.ring.monomial(e), self.gb.elements, self.gb.order)
        for m, c in nf.items():
            vec[self.index[d][m]] = c
        return vec

    # -- basic data ----------------------------------------------------------
    @property
    def n(self):
        return self.dims[1]

    def dim(self, d):
        return self.dims[d] if d <= self.D else None

    @property
    def is_artinian(self):
        return 0 in self.dims

    def hilbert(self):
        return list(self.dims)

    def __repr__(self):
        return f"GradedQuotient({list(self.ring.names)}, dims={self.dims})"

    # -- elements ------------------------------------------------------------
    def form_poly(self, u):
        """The linear polynomial with R_1 coordinates u."""
        vec = [self.field.zero] * self.ring.nvars
        for c, v in zip(u, self.r1_vars):
            vec[v] = c
        return self.ring.linear_form(vec)

    def coords(self, f):
        """Coordinates of a homogeneous polynomial in the basis of R_deg."""
        K = self.field
        if f.is_zero():
            raise ValueError("degree of 0 is ambiguous; pass a nonzero polynomial")
        d = f.degree
        nf = reduce(f, self.gb.elements, self.gb.order)
        vec = [K.zero] * self.dims[d]
        for m, c in nf.items():
            vec[self.index[d][m]] = c
        return vec

    def form_coords(self, f):
        if f.is_zero():
            return [self.field.zero] * self.n
        return self.coords(f)

    def element_poly(self, vec, d):
        return self.ring.from_terms([(c, m) for c, m in zip(vec, self.basis[d])])

    def lin_matrix(self, u, d=1):
        """Matrix of multiplication by the linear form u, R_d -> R_{d+1}."""
        K = self.field
        M = linalg.zeros(self.dims[d + 1], self.dims[d], K)
        for c, v in zip(u, self.r1_vars):
            if K.is_zero(c):
                continue
            A = self.mult[d][v]
            for i, row in enumerate(A):
                Mi = M[i]
                for j, a in enumerate(row):
                    if not K.is_zero(a):
                        Mi[j] = K.add(Mi[j], K.mul(c, a))
        return M

    def mul(self, u, v, d=1):
        """u·v for u in R_1 and v in R_d."""
        return linalg.matvec(self.lin_matrix(u, d), v, self.field)

    def square(self, u):
        return self.mul(u, u, 1)

    def image(self, u, d=1):
        """Echelon basis of u·R_d inside R_{d+1}."""
        M = self.lin_matrix(u, d)
        cols = linalg.transpose(M, self.dims[d])
        return linalg.row_space([c for c in cols], self.field)

    def span_image(self, forms, d=1):
        """Echelon basis of (sum of u R_d) for u in forms."""
        vecs = []
        for u in forms:
            vecs.extend(self.image(u, d))
        return linalg.row_space(vecs, self.field)

    def rank(self, u):
        return rank_linear_form(self, u)

    def annihilator(self, u):
        return annihilator(self, u)

    def base_change(self, field):
        Q = GradedQuotient(self.ideal.base_change(field), self.D)
        return Q

    def unit(self, i):
        K = self.field
        v = [K.zero] * self.n
        v[i] = K.one
        return v


def build_quotient(ideal, D=4):
    return GradedQuotient(ideal, D)


def rank_linear_form(R, u):
    return linalg.rank(R.lin_matrix(u, 1), R.field)


def annihilator(R, u):
    """Basis of V = {v in R_1 : u v = 0}."""
    return linalg.kernel(R.lin_matrix(u, 1), R.field, R.n)


def square_forms(R):
    """ℓ² written as dim R_2 quadratic forms in the coordinates of ℓ."""
    from .poly import PolyRing
    K = R.field
    n = R.n
    ring = PolyRing(K, [f"a{i}" for i in range(n)])
    coeffs = [dict() for _ in range(R.dims[2])]
    for i in range(n):
        for j in range(i, n):
            prod = R.mul(R.unit(i), R.unit(j), 1)
            e = [0] * n
            e[i] += 1
            e[j] += 1
            e = tuple(e)
            scale = K.one if i == j else K(2)
            for r, c in enumerate(prod):
                if not K.is_zero(c):
                    coeffs[r][e] = K.add(coeffs[r].get(e, K.zero), K.mul(scale, c))
    return [ring.from_terms([(c, e) for e, c in d.items()]) for d in coeffs], ring


class SquareZeroResult:
    def __init__(self, classes, quotient, exhaustive):
        self.classes = classes        # list of (form, rank)
        self.quotient = quotient      # R, possibly base-changed to an extension
        self.exhaustive = exhaustive

    @property
    def field(self):
        return self.quotient.field

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)


def square_zero_forms(R, max_extension=1, seed=0, exhaustive_limit=search.EXHAUSTIVE_LIMIT,
                      sections=12, stop_at_rank=None):
    """Projective classes ℓ ≠ 0 with ℓ² = 0 in R_2, each with its rank.

    The base field is searched first (exhaustively when small enough, by
    random linear sections otherwise); extensions of degree
    2..max_extension follow only if nothing was found.  With
    ``stop_at_rank`` a sampled search ends once a class of that rank shows up.
    """
    rng = make_rng(seed)
    Q = R
    for k in range(1, max_extension + 1):
        if k > 1:
            Q = R.base_change(extend(R.field, k))
        forms, _ = square_forms(Q)
        stop = None
        if stop_at_rank is not None:
            stop = lambda out, Q=Q: any(rank_linear_form(Q, v) == stop_at_rank for v in out)
        try:
            pts, exhaustive = search.find_points(forms, Q.n, Q.field, rng,
                                                 exhaustive_limit=exhaustive_limit,
                                                 sections=sections, stop=stop)
        except search.PositiveDimensional:
            continue
        if pts:
            classes = sorted(((v, rank_linear_form(Q, v)) for v in pts), key=_class_key)
            return SquareZeroResult(classes, Q, exhaustive)
    raise SearchExhausted(f"no square-zero linear form found over extensions up to degree {max_extension}")


def _class_key(item):
    v, _ = item
    return [x if isinstance(x, tuple) else (x,) for x in v]


def rank_zero_forms(R):
    """Basis of {ℓ : ℓ R_1 = 0}."""
    K = R.field
    rows = []
    for i in range(R.n):
        rows.extend(R.lin_matrix(R.unit(i), 1))
    # rows indexed by (i, r): entry (ℓ e_i)_r as a functional of ℓ
    return linalg.kernel(rows, K, R.n)


def quotient_by_forms(R, forms):
    """R/(forms) for linear forms in R_1 coordinates (kept as linear generators)."""
    if not forms:
        return R
    extra = [R.form_poly(u) for u in forms]
    ideal = IdealPresentation(R.ring, list(R.ideal.gens) + extra)
    return GradedQuotient(ideal, R.D)


def trivial_extension_reduce(R):
    """Split off the rank-0 forms: returns (core, removed).

    The core is presented in the surviving variables only and carries
    ``core.origin = {"parent", "kept", "socle"}`` describing the lift.
    """
    socle = rank_zero_forms(R)
    if not socle:
        return R, 0
    linear = [R.form_poly(u) for u in socle]
    gb = buchberger(IdealPresentation(R.ring, linear))
    lead_vars = {g.leading_monomial(gb.order).index(1) for g in gb.elements}
    kept = [v for v in range(R.ring.nvars) if v not in lead_vars]
    names = [R.ring.names[v] for v in kept]
    ring = R.ring.with_names(names)
    gens = []
    for g in R.ideal.gens:
        h = reduce(g, gb.elements, gb.order)
        if not h.is_zero():
            gens.append(Polynomial(ring, {tuple(e[v] for v in kept): c for e, c in h.items()}))
    core = GradedQuotient(IdealPresentation(ring, gens), R.D)
    core.origin = {"parent": R, "kept": kept, "socle": socle}
    return core, len(socle)


def lift_form(core, u):
    """Ambient polynomial-ring coordinates of a core linear form."""
    parent = core.origin["parent"]
    K = core.field
    amb = [K.zero] * parent.ring.nvars
    for c, v in zip(u, core.r1_vars):
        amb[core.origin["kept"][v]] = c
    return amb
