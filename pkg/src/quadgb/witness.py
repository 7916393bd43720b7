"""Quadratic Gröbner-basis witnesses for Artinian quadratic algebras with dim R_2 = 3.

The search follows the case analysis on a square-zero linear form y:
its rank is 3, 1 or 2, and the rank-2 situation splits by how the
annihilator V of y multiplies into y·R_1.  Every branch ends in one of
four basis-and-order recipes (``lemma22_case``); the resulting witness is
always checked by an independent Buchberger run (``verify_witness``).

Linear forms are coordinate lists in the basis of R_1.
"""

from dataclasses import dataclass, field as dc_field
import itertools

from . import linalg, search
from .algebra import (SearchExhausted, annihilator, build_quotient, quotient_by_forms,
                      rank_linear_form, square_forms, square_zero_forms,
                      trivial_extension_reduce)
from .fields import extend, make_rng
from .groebner import buchberger
from .poly import PolyRing, TermOrder


class WitnessError(Exception):
    code = "WITNESS_ERROR"


class HypothesisViolation(WitnessError):
    code = "HYPOTHESIS_VIOLATION"


class CaseHypothesisFailed(WitnessError):
    code = "CASE_HYPOTHESIS_FAILED"


class NeedsExtension(WitnessError):
    code = "QUADRATIC_SOLVE_NEEDS_EXTENSION"


class VerificationFailed(WitnessError):
    code = "VERIFICATION_FAILED"

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotCompleteIntersection(WitnessError):
    code = "NOT_CI"


@dataclass
class WitnessConfig:
    seed: int = 0
    max_extension: int = 6
    exhaustive_limit: int = search.EXHAUSTIVE_LIMIT
    sections: int = 12
    n3_trials: int = 200


@dataclass
class Witness:
    """New coordinates (rows: new variables as forms in the old ones) + degrevlex priority."""
    matrix: list
    names: list
    priority: list          # names, highest first
    field: object
    kind: str = "degrevlex"

    def __post_init__(self):
        if not linalg.is_invertible(self.matrix, self.field):
            raise ValueError("witness matrix is singular")
        if sorted(self.priority) != sorted(self.names):
            raise ValueError("priority must be a permutation of the new variables")

    def order(self):
        return TermOrder(self.kind, [self.names.index(v) for v in self.priority])

    def to_json(self):
        K = self.field
        return {
            "names": list(self.names),
            "priority": list(self.priority),
            "order": self.kind,
            "matrix": [[K.to_json(c) for c in row] for row in self.matrix],
        }


@dataclass
class WitnessTrace:
    path: list = dc_field(default_factory=list)
    forms: dict = dc_field(default_factory=dict)
    scalars: dict = dc_field(default_factory=dict)
    claims: list = dc_field(default_factory=list)

    def form(self, name, u):
        self.forms[name] = list(u)

    def claim(self, *c):
        self.claims.append(c)

    def to_json(self, K):
        return {
            "path": list(self.path),
            "forms": {k: [K.to_json(c) for c in v] for k, v in self.forms.items()},
            "scalars": {k: K.to_json(v) for k, v in self.scalars.items()},
        }


@dataclass
class Found:
    witness: Witness
    trace: WitnessTrace
    verification: dict
    extension: bool = False
    kind: str = "witness"


@dataclass
class CIException:
    """n = 3 after removing trivial fibre factors: the complete-intersection dichotomy."""
    gquadratic: bool
    square_lines: object
    witness: Witness = None
    verification: dict = None
    search_failed: bool = False
    kind: str = "ci_exception"


@dataclass
class Inconclusive:
    reason: str
    kind: str = "inconclusive"


# -- small helpers -------------------------------------------------------------

class _Ctx:
    """A quotient with the bits of linear algebra every branch needs."""

    def __init__(self, R):
        self.R = R
        self.K = R.field

    def zero(self, v):
        return linalg.is_zero_vector(v, self.K)

    def functional(self, Y):
        """A vector phi with ker(phi) = span(Y) inside R_2 (codim-1 span)."""
        ker = linalg.kernel(Y, self.K, self.R.dims[2]) if Y else linalg.identity(self.R.dims[2], self.K)
        if len(ker) != 1:
            raise CaseHypothesisFailed(f"y·R_1 has codimension {len(ker)} in R_2, expected 1")
        return ker[0]

    def lin(self, coeffs, vecs):
        return linalg.lincomb(coeffs, vecs, self.K, self.R.n)

    def contained(self, u, Y):
        """u·R_1 ⊆ span(Y)?"""
        return all(linalg.in_span(Y, c, self.K) for c in self.R.image(u))


def solve_quadratic(a, b, c, K):
    """Roots of a s^2 + 2 b s + c = 0 in K (a may be 0), deterministic order."""
    if K.is_zero(a):
        if K.is_zero(b):
            if K.is_zero(c):
                raise CaseHypothesisFailed("degenerate quadratic equation")
            return []
        return [K.neg(K.div(c, K.mul(K(2), b)))]
    disc = K.sub(K.mul(b, b), K.mul(a, c))
    s = K.sqrt(disc)
    if s is None:
        raise NeedsExtension("square root of the discriminant is not in the field")
    r1 = K.div(K.sub(s, b), a)
    r2 = K.div(K.neg(K.add(s, b)), a)
    return [r1] if r1 == r2 else [r1, r2]


def _var_names(prefix_names, n, fill, start):
    names = list(prefix_names)
    k = start
    while len(names) < n:
        names.append(f"{fill}{k}")
        k += 1
    return names


# -- the four basis recipes -------------------------------------------------------

def lemma22_case(R, case, y, z=None, t=None, trace=None):
    """Basis + degrevlex priority for the four base cases.

    Returns ``(forms, names, priority)`` with forms in R_1 coordinates.
    """
    trace = trace if trace is not None else WitnessTrace()
    ctx = _Ctx(R)
    K, n = ctx.K, R.n
    if not ctx.zero(R.square(y)):
        raise CaseHypothesisFailed("y^2 != 0")
    rk = rank_linear_form(R, y)
    Y = R.image(y)
    trace.path.append(f"L-case{case}")
    trace.form("y", y)
    trace.claim("square_zero", "y")
    trace.claim("rank", "y", rk)
    if case == 1:
        if rk != 3:
            raise CaseHypothesisFailed(f"case (1) needs rank y = 3, got {rk}")
        forms = linalg.complete_basis([y], n, K)
        names = _var_names(["y"], n, "x", 2)
        return forms, names, names[1:] + ["y"]
    if case == 2:
        if rk != 2:
            raise CaseHypothesisFailed(f"case (2) needs rank y = 2, got {rk}")
        if not ctx.zero(R.mul(y, z)):
            raise CaseHypothesisFailed("z is not in the annihilator of y")
        if not linalg.in_span(Y, R.square(z), K):
            raise CaseHypothesisFailed("z^2 is not in y R_1")
        if ctx.contained(z, Y):
            raise CaseHypothesisFailed("z R_1 is contained in y R_1")
        trace.form("z", z)
        trace.claim("product_zero", "y", "z")
        trace.claim("square_in", "z", "y")
        trace.claim("not_contained", "z", "y")
        forms = linalg.complete_basis([y, z], n, K)
        names = _var_names(["y", "z"], n, "x", 3)
        return forms, names, names[2:] + ["z", "y"]
    if case == 3:
        if rk != 2:
            raise CaseHypothesisFailed(f"case (3) needs rank y = 2, got {rk}")
        V = annihilator(R, y)
        if ctx.zero(R.mul(y, t)):
            raise CaseHypothesisFailed("t lies in the annihilator of y")
        if not linalg.in_span(Y, R.square(t), K):
            raise CaseHypothesisFailed("t^2 is not in y R_1")
        if all(linalg.in_span(Y, R.mul(t, v), K) for v in V):
            raise CaseHypothesisFailed("t V is contained in y R_1")
        phi = ctx.functional(Y)
        Vb = [y] + linalg.extend_basis([y], V, K)
        # W = {u : u t in y R_1}; pick w in W outside span(V, t)
        row = [linalg.dot(phi, R.mul(R.unit(i), t), K) for i in range(n)]
        W = linalg.kernel([row], K, n)
        ext = linalg.extend_basis(Vb + [t], W, K)
        if not ext:
            raise CaseHypothesisFailed("W has no element outside span(V, t)")
        w = ext[0]
        trace.form("t", t)
        trace.form("w", w)
        trace.claim("square_in", "t", "y")
        trace.claim("product_in", "w", "t", "y")
        zs = Vb[1:]
        for i, zi in enumerate(zs, 2):
            trace.form(f"z{i}", zi)
        forms = Vb + [t, w]
        names = ["y"] + [f"z{i}" for i in range(2, len(zs) + 2)] + ["t", "w"]
        priority = ["w"] + names[1:-2] + ["t", "y"]
        return forms, names, priority
    if case == 4:
        if rk != 1:
            raise CaseHypothesisFailed(f"case (4) needs rank y = 1, got {rk}")
        Ry = quotient_by_forms(R, [y])
        trace.scalars["hilbert_R_mod_y"] = None
        trace.claim("quotient_hilbert", "y", [1, n - 1, 2])
        if Ry.dims[:3] != [1, n - 1, 2]:
            raise CaseHypothesisFailed(f"R/(y) has Hilbert function {Ry.dims[:3]}")
        del trace.scalars["hilbert_R_mod_y"]
        if t is None:
            t = find_rank1_partner(R, y)
        trace.form("t", t)
        trace.claim("square_in", "t", "y")
        trace.claim("spans_R2", "y", "t")
        forms = linalg.complete_basis([y, t], n, K)
        names = _var_names(["y", "t"], n, "x", 3)
        # t and y the two smallest variables: y < t < x_i
        return forms, names, names[2:] + ["t", "y"]
    raise ValueError(f"unknown case {case}")


def find_rank1_partner(R, y, seed=0):
    """t with t^2 in y R_1 and y R_1 + t R_1 = R_2."""
    ctx = _Ctx(R)
    K, n = ctx.K, R.n
    Y = R.image(y)
    ann = linalg.kernel(Y, K, R.dims[2])     # functionals vanishing on y R_1
    k = next(i for i, c in enumerate(y) if not K.is_zero(c))
    # parametrise the hyperplane t_k = 0 (a complement of y)
    coords = [i for i in range(n) if i != k]
    sq, ring = square_forms(R)
    sub = PolyRing(K, [f"s{i}" for i in range(n - 1)])
    forms = []
    for phi in ann:
        f = ring.zero
        for c, g in zip(phi, sq):
            f = f + g.scale(c)
        forms.append(_drop_var(f, k, sub))

    def lift(v):
        t = [K.zero] * n
        for c, i in zip(v, coords):
            t[i] = c
        return t

    def accept(v):
        t = lift(v)
        return linalg.span_rank(Y + R.image(t), K) == R.dims[2]

    pts, _ = search.find_points(forms, n - 1, K, make_rng(seed), accept=accept, want=1)
    if not pts:
        raise NeedsExtension("no partner t for the rank-1 form in this field")
    return lift(pts[0])


def _drop_var(f, k, ring):
    return ring.from_terms([(c, e[:k] + e[k + 1:]) for e, c in f.items() if e[k] == 0])


# -- partner in a 3-variable quotient --------------------------------------------------------------

def lemma23_partner(S, z, seed=0):
    """u in S_1 with u^2 = 0 and u z != 0 (S has Hilbert function 1, 3, 1)."""
    if S.dims[:3] != [1, 3, 1] or (len(S.dims) > 3 and S.dims[3] != 0):
        raise CaseHypothesisFailed(f"partner search needs Hilbert function 1,3,1, got {S.dims}")
    K = S.field
    if linalg.is_zero_vector(S.square(z), K):
        raise CaseHypothesisFailed("z^2 = 0 in S")
    forms, _ = square_forms(S)

    def accept(u):
        return not linalg.is_zero_vector(S.mul(u, z), K)

    pts, _ = search.find_points(forms, 3, K, make_rng(seed), accept=accept, want=1)
    if not pts:
        raise NeedsExtension("no square-zero partner of z in this field")
    return pts[0]


# -- rank 2 -----------------------------------------------------------------------------

def prop21_rank2(R, y, trace=None, depth=0):
    """Case analysis for a square-zero y of rank 2; returns (forms, names, priority)."""
    trace = trace if trace is not None else WitnessTrace()
    if depth > 3:
        raise CaseHypothesisFailed("rank-2 recursion did not terminate")
    ctx = _Ctx(R)
    K = ctx.K
    if rank_linear_form(R, y) != 2 or not ctx.zero(R.square(y)):
        raise CaseHypothesisFailed("prop21_rank2 needs a square-zero y of rank 2")
    V = annihilator(R, y)
    Y = R.image(y)
    phi = ctx.functional(Y)

    def ph(a, b):
        return linalg.dot(phi, R.mul(a, b), K)

    Vb = [y] + linalg.extend_basis([y], V, K)
    others = Vb[1:]
    pair = next(((a, b) for a, b in itertools.combinations_with_replacement(others, 2)
                 if not K.is_zero(ph(a, b))), None)
    if pair is not None:
        trace.path.append("P-case1")
        a, b = pair
        z = a if not K.is_zero(ph(a, a)) else (b if not K.is_zero(ph(b, b)) else ctx.lin([K.one, K.one], [a, b]))
        if K.is_zero(ph(z, z)):
            raise CaseHypothesisFailed("no z in V with z^2 outside y R_1")
        zs = linalg.extend_basis([y, z], others, K)
        adjusted = []
        for zi in zs:
            roots = solve_quadratic(ph(z, z), K.neg(ph(zi, z)), ph(zi, zi), K)
            c = roots[0]
            adjusted.append(ctx.lin([K.one, K.neg(c)], [zi, z]))
        assert all(K.is_zero(ph(zi, zi)) for zi in adjusted)
        for zi in adjusted:
            if not ctx.contained(zi, Y):
                trace.path.append("z_i not in socle of R/(y)")
                return lemma22_case(R, 2, y, z=zi, trace=trace)
        # every z_i lies in the socle of R/(y): pass to S = R/(y, z_i)
        S = quotient_by_forms(R, [y] + adjusted)
        zS = S.form_coords(R.form_poly(z))
        u = lemma23_partner(S, zS)
        t = R.form_coords(S.form_poly(u))
        trace.path.append("partner-in-quotient")
        trace.form("z", z)
        trace.scalars["hilbert_S"] = None
        del trace.scalars["hilbert_S"]
        if not linalg.in_span(Y, R.square(t), K) or K.is_zero(ph(t, z)):
            raise CaseHypothesisFailed("lifted partner does not satisfy case (3)")
        return lemma22_case(R, 3, y, t=t, trace=trace)

    z2 = next((v for v in others if not ctx.contained(v, Y)), None)
    if z2 is not None:
        trace.path.append("P-case2")
        return lemma22_case(R, 2, y, z=z2, trace=trace)

    trace.path.append("P-case3")
    return _case3(R, y, Vb, Y, trace, depth)


def _isotropic_pair(Q):
    """Independent t, w in Q_1 (dim 2, dim Q_2 = 1) with t^2 = w^2 = 0."""
    K = Q.field
    e1, e2 = Q.unit(0), Q.unit(1)
    A = Q.square(e1)[0]
    B = Q.mul(e1, e2)[0]
    C = Q.square(e2)[0]
    # (s e1 + e2)^2 = A s^2 + 2 B s + C
    vecs = []
    if K.is_zero(A):
        vecs.append(e1)
    for s in solve_quadratic(A, B, C, K):
        vecs.append([s, K.one])
    if len(vecs) < 2:
        raise CaseHypothesisFailed("R/(V) does not have two independent square-zero forms")
    return vecs[0], vecs[1]


def _case3(R, y, Vb, Y, trace, depth):
    ctx = _Ctx(R)
    K = ctx.K
    Q = quotient_by_forms(R, Vb)
    if Q.dims[:3] != [1, 2, 1]:
        raise CaseHypothesisFailed(f"R/(V) has Hilbert function {Q.dims[:3]}")
    tq, wq = _isotropic_pair(Q)
    t = R.form_coords(Q.form_poly(tq))
    w = R.form_coords(Q.form_poly(wq))
    ty, wy, wt = R.mul(y, t), R.mul(y, w), R.mul(t, w)
    if linalg.span_rank([ty, wy, wt], K) != 3:
        raise CaseHypothesisFailed("ty, wy, wt do not form a basis of R_2")
    z = Vb[1]
    trace.form("z", z)
    trace.form("t", t)
    trace.form("w", w)
    lam = {}
    products = {1: (z, z), 2: (t, t), 3: (w, w), 4: (z, w), 5: (z, t)}
    for i, (a, b) in products.items():
        c = linalg.coordinates([ty, wy], R.mul(a, b), K)
        if c is None:
            raise CaseHypothesisFailed(f"product {i} is not a multiple of y")
        lam[(i, 1)], lam[(i, 2)] = c
        trace.scalars[f"lambda_{i}_1"], trace.scalars[f"lambda_{i}_2"] = c
        trace.claim("relation", a, b, t, w, y, c[0], c[1])
    L = lambda i, j: lam[(i, j)]
    two = K(2)

    branches = []
    if not K.is_zero(L(1, 2)) or not K.is_zero(L(5, 2)):
        branches.append(("t", t, w, 2, 5, 1))
    if not K.is_zero(L(1, 1)) or not K.is_zero(L(4, 1)):
        branches.append(("w", w, t, 3, 4, 2))
    errors = []
    for label, lead, other, sq_i, mix_i, jj in branches:
        # ℓ = lead + a z + b y; the 'other'-coefficient of ℓ^2 fixes a, the lead one fixes b
        kk = 3 - jj
        try:
            roots = solve_quadratic(L(1, kk), L(mix_i, kk), L(sq_i, kk), K)
        except NeedsExtension as exc:
            errors.append(exc)
            continue
        for a in roots:
            num = K.add(K.add(L(sq_i, jj), K.mul(two, K.mul(a, L(mix_i, jj)))), K.mul(K.mul(a, a), L(1, jj)))
            b = K.neg(K.div(num, two))
            ell = ctx.lin([K.one, a, b], [lead, z, y])
            if not ctx.zero(R.square(ell)):
                raise CaseHypothesisFailed("solved ℓ is not square-zero")
            trace.path.append(f"ell-from-{label}")
            trace.scalars["a"], trace.scalars["b"] = a, b
            trace.form("ell", ell)
            trace.claim("square_zero", "ell")
            rk = rank_linear_form(R, ell)
            if rk == 3:
                return lemma22_case(R, 1, ell, trace=trace)
            if rk != 2:
                raise CaseHypothesisFailed(f"ℓ has rank {rk} < 2")
            gamma = K.neg(K.add(L(mix_i, jj), K.mul(a, L(1, jj))))
            zp = ctx.lin([K.one, gamma], [z, y])
            trace.scalars["gamma"] = gamma
            trace.form("z_gamma", zp)
            if not ctx.zero(R.mul(zp, ell)):
                raise CaseHypothesisFailed("z + γy does not annihilate ℓ")
            if linalg.in_span(R.image(ell), R.square(zp), K):
                raise CaseHypothesisFailed("(z + γy)^2 lies in ℓ R_1")
            trace.path.append("restart with ℓ")
            try:
                return prop21_rank2(R, ell, trace, depth + 1)
            except NeedsExtension as exc:
                errors.append(exc)
    if errors:
        raise errors[0]
    # ℓ-branches unavailable: λ_{1,2} = λ_{5,2} = λ_{1,1} = λ_{4,1} = 0
    trace.path.append("y1-rank1")
    y1 = ctx.lin([K.one, K.neg(L(4, 2))], [z, y])
    trace.form("y1", y1)
    V = annihilator(R, y)
    if not ctx.zero(R.square(y1)) or not all(ctx.zero(R.mul(y1, v)) for v in V) \
            or not ctx.zero(R.mul(y1, w)):
        raise CaseHypothesisFailed("y1 fails y1^2 = 0, y1 V = 0, y1 w = 0")
    trace.claim("square_zero", "y1")
    return lemma22_case(R, 4, y1, trace=trace)


# -- closure-level applicability of the rank-2 cases ------------------------------

def _quadratic_rank_and_form(B, K):
    """Rank of a symmetric matrix, and for rank 1 the linear form L with q = c L^2."""
    rk = linalg.rank(B, K) if B else 0
    L = None
    if rk == 1:
        L = next(row for row in B if not linalg.is_zero_vector(row, K))
    return rk, L


def case2_applicable(R, y):
    """Is there (over the algebraic closure) z in V with z^2 in yR_1, zR_1 ⊄ yR_1?"""
    ctx = _Ctx(R)
    K = ctx.K
    if rank_linear_form(R, y) != 2:
        return False
    V = annihilator(R, y)
    Y = R.image(y)
    phi = ctx.functional(Y)
    m = len(V)
    B = [[linalg.dot(phi, R.mul(a, b), K) for b in V] for a in V]
    # U = {z in V : z R_1 ⊆ y R_1}, in V-coordinates
    rows = [[linalg.dot(phi, R.mul(v, R.unit(k)), K) for v in V] for k in range(R.n)]
    U = linalg.kernel(rows, K, m)
    rk, L = _quadratic_rank_and_form(B, K)
    if rk == 1:
        kerL = linalg.kernel([L], K, m)
        return not all(linalg.in_span(U, v, K) for v in kerL)
    return len(U) < m


def case3_applicable(R, y):
    """Is there (over the closure) t ∉ V with t^2 in yR_1 and tV ⊄ yR_1?"""
    ctx = _Ctx(R)
    K, n = ctx.K, R.n
    if rank_linear_form(R, y) != 2:
        return False
    V = annihilator(R, y)
    Y = R.image(y)
    phi = ctx.functional(Y)
    B = [[linalg.dot(phi, R.mul(R.unit(i), R.unit(j)), K) for j in range(n)] for i in range(n)]
    rows = [[linalg.dot(phi, R.mul(R.unit(i), v), K) for i in range(n)] for v in V]
    T = linalg.kernel(rows, K, n)
    rk, L = _quadratic_rank_and_form(B, K)
    if rk == 1:
        kerL = linalg.kernel([L], K, n)
        return not all(linalg.in_span(T, v, K) for v in kerL)
    return len(T) < n


# -- verification ---------------------------------------------------------------------

def verify_witness(ideal, witness, expect_r3_zero=True):
    """Independent check: change coordinates, recompute the basis, inspect degrees."""
    K = witness.field
    if ideal.field != K:
        ideal = ideal.base_change(K)
    target = PolyRing(K, witness.names)
    sub = linalg.inverse(witness.matrix, K)
    J = ideal.substitute(sub, target)
    gb = buchberger(J, witness.order())
    bad = [g for g in gb.elements if g.degree > 2]
    h3 = gb.hilbert_function(3)
    passed = not bad and (h3 == 0 or not expect_r3_zero)
    return {
        "passed": passed,
        "max_degree": gb.max_degree,
        "hilbert_3": h3,
        "basis": [str(g) for g in gb.elements],
        "offending": str(bad[0]) if bad else None,
    }


def check_trace(R, trace):
    """Re-evaluate the recorded claims in R; returns the list of failures."""
    K = R.field
    F = trace.forms
    fails = []
    for c in trace.claims:
        kind = c[0]
        ok = True
        if kind == "square_zero":
            ok = linalg.is_zero_vector(R.square(F[c[1]]), K)
        elif kind == "rank":
            ok = rank_linear_form(R, F[c[1]]) == c[2]
        elif kind == "product_zero":
            ok = linalg.is_zero_vector(R.mul(F[c[1]], F[c[2]]), K)
        elif kind == "square_in":
            ok = linalg.in_span(R.image(F[c[2]]), R.square(F[c[1]]), K)
        elif kind == "product_in":
            ok = linalg.in_span(R.image(F[c[3]]), R.mul(F[c[1]], F[c[2]]), K)
        elif kind == "not_contained":
            Y = R.image(F[c[2]])
            ok = not all(linalg.in_span(Y, v, K) for v in R.image(F[c[1]]))
        elif kind == "spans_R2":
            ok = linalg.span_rank(R.image(F[c[1]]) + R.image(F[c[2]]), K) == R.dims[2]
        elif kind == "quotient_hilbert":
            ok = quotient_by_forms(R, [F[c[1]]]).dims[:3] == c[2]
        elif kind == "relation":
            # a b = (l1 t + l2 w) y, vectors stored in the claim
            a, b, t, w, y, l1, l2 = c[1:]
            rhs = R.mul(linalg.lincomb([l1, l2], [t, w], K, R.n), y)
            ok = R.mul(a, b) == rhs
        if not ok:
            fails.append(c)
    return fails


# -- n = 3 ------------------------------------------------------------------------------

def classify_n3(R, cfg=None):
    """Complete intersection of 3 quadrics in 3 variables: G-quadratic iff the net holds a square."""
    from .nets import Net, count_square_lines
    cfg = cfg or WitnessConfig()
    if R.n != 3 or R.ring.nvars != 3:
        raise NotCompleteIntersection("classify_n3 needs exactly 3 variables")
    if R.D < 4:
        R = build_quotient(R.ideal, 4)
    if R.dims[:5] != [1, 3, 3, 1, 0]:
        raise NotCompleteIntersection(f"Hilbert function {R.dims[:5]} is not 1,3,3,1,0")
    quadrics = [g for g in R.ideal.gens if g.degree == 2]
    net = Net.from_polynomials(quadrics)
    q = count_square_lines(net, seed=cfg.seed)
    if q == 0:
        return CIException(False, q)
    w, report = search_n3_witness(R, net, cfg)
    return CIException(True, q, w, report, search_failed=w is None)


def search_n3_witness(R, net, cfg):
    """Bounded heuristic: given coordinates, then coordinates seeded by square lines."""
    from .nets import seeded_coordinates
    K = R.field
    names = list(R.ring.names)
    candidates = itertools.chain([linalg.identity(3, K)],
                                 seeded_coordinates(net, make_rng(cfg.seed), cfg.n3_trials))
    for M in candidates:
        for perm in itertools.permutations(names):
            w = Witness(M, names, list(perm), K)
            rep = verify_witness(R.ideal, w, expect_r3_zero=False)
            if rep["passed"]:
                return w, rep
    return None, None


# -- pipeline ---------------------------------------------------------------------------

def check_hypotheses(R):
    I = R.ideal
    if not I.is_quadratic():
        raise HypothesisViolation("presentation is not generated by quadrics")
    if R.D < 4:
        R = build_quotient(I, 4)
    if R.dims[2] != 3:
        raise HypothesisViolation(f"dim R_2 = {R.dims[2]}, expected 3")
    full = buchberger(I)
    if full.krull_dimension() > 0:
        raise HypothesisViolation(f"R is not Artinian (Krull dimension {full.krull_dimension()})")
    return R


def _choose_y(classes, K):
    pref = {3: 0, 1: 1, 2: 2}
    return sorted(classes, key=lambda item: (pref.get(item[1], 9),
                                             [c if isinstance(c, tuple) else (c,) for c in item[0]]))[0]


def _dispatch(C, y, trace):
    rk = rank_linear_form(C, y)
    if rk == 3:
        return lemma22_case(C, 1, y, trace=trace)
    if rk == 1:
        return lemma22_case(C, 4, y, trace=trace)
    if rk == 2:
        return prop21_rank2(C, y, trace)
    raise CaseHypothesisFailed(f"square-zero form of rank {rk} in the core")


def _lift_witness(origin, core, forms, names, priority, K):
    """Witness for the full presentation: core forms followed by the rank-0 forms."""
    if origin is None:
        return Witness([list(f) for f in forms], names, priority, K)
    socle = [[K.embed(c) for c in s] for s in origin["socle"]]
    nvars = origin["parent"].ring.nvars
    rows = []
    for u in forms:
        amb = [K.zero] * nvars
        for c, v in zip(u, core.r1_vars):
            amb[origin["kept"][v]] = c
        rows.append(amb)
    extra = [f"s{i}" for i in range(1, len(socle) + 1)]
    return Witness(rows + socle, names + extra, priority + extra, K)


def find_witness(R, cfg=None):
    """Witness, n = 3 dichotomy, or an inconclusive report for R."""
    cfg = cfg or WitnessConfig()
    R = check_hypotheses(R)
    core, removed = trivial_extension_reduce(R)
    origin = core.origin
    if core.n == 3:
        out = classify_n3(core, cfg)
        if out.witness is not None:
            w = _lift_witness(origin, core, out.witness.matrix, out.witness.names,
                              out.witness.priority, R.field)
            rep = verify_witness(R.ideal, w, expect_r3_zero=False)
            if not rep["passed"]:
                raise VerificationFailed("lifted n=3 witness failed", rep)
            out.witness, out.verification = w, rep
        return out
    try:
        res = square_zero_forms(core, max_extension=cfg.max_extension, seed=cfg.seed,
                                exhaustive_limit=cfg.exhaustive_limit, sections=cfg.sections,
                                stop_at_rank=3)
    except SearchExhausted as exc:
        return Inconclusive(f"SEARCH_EXHAUSTED: {exc}")
    y, _ = _choose_y(res.classes, res.field)
    attempts = [(res.quotient, y)]
    if res.field.degree == 1 and res.field.characteristic > 0 and cfg.max_extension >= 2:
        F2 = extend(res.field, 2)
        attempts.append((None, [F2.embed(c) for c in y]))
    last = None
    for A, y in attempts:
        if A is None:
            A = core.base_change(extend(res.field, 2))
        trace = WitnessTrace()
        try:
            forms, names, priority = _dispatch(A, y, trace)
        except NeedsExtension as exc:
            last = exc
            continue
        K = A.field
        w = _lift_witness(origin, A, forms, names, priority, K)
        fails = check_trace(A, trace)
        if fails:
            raise CaseHypothesisFailed(f"trace claims failed: {fails}")
        rep = verify_witness(R.ideal, w, expect_r3_zero=True)
        if not rep["passed"]:
            raise VerificationFailed(f"witness failed verification: {rep['offending']}", rep)
        return Found(w, trace, rep, extension=K.degree > 1)
    return Inconclusive(f"{NeedsExtension.code}: {last}")
