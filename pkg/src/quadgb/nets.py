"""Nets of conics: normal forms, apolarity duality and the classification invariants.

A net is a 3-dimensional space of quadrics in x, y, z, stored as a 3x6
matrix in the monomial basis x^2, y^2, z^2, xy, xz, yz.
"""

from dataclasses import dataclass, field as dc_field
import itertools

from . import linalg, search
from .fields import make_field, make_rng, DEFAULT_PRIME
from .groebner import (INFINITE, IdealPresentation, buchberger, count_projective_points,
                       hilbert_profile)
from .poly import PolyRing, TermOrder, monomials_of_degree, divides, substitute_linear

NAMES = ("x", "y", "z")
MONOMIALS = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
GRAM = (2, 2, 2, 1, 1, 1)

PROFILES = {
    "a": (1, 3, 3, 1, 0, 0),
    "b": (1, 3, 3, 3, 3, 3),
    "c": (1, 3, 3, 4, 5, 6),
    "d": (1, 3, 3, 2, 2, 2),
    "e": (1, 3, 3, 1, 1, 1),
}

NORMAL_FORMS = {
    1: ["x^2", "x*y", "y^2"],
    2: ["x^2", "x*y", "x*z"],
    3: ["x^2", "y^2", "z^2"],
    4: ["x*y", "x*z", "y*z"],
    5: ["x^2", "y^2", "z^2 + x*y"],
    6: ["x*z", "y*z", "z^2 + x*y"],
    7: ["x^2", "y^2", "x*z"],
    8: ["x*y", "z^2", "y*z"],
    9: ["x^2", "y^2", "x*z + y*z"],
    10: ["x^2", "x*z", "y^2 + y*z"],
    11: ["x^2", "x*y + z^2", "x*z"],
    12: ["x^2", "x*y + z^2", "y*z"],
    13: ["x^2", "y*z", "y^2 + z^2 + x*y"],
    14: ["x*z", "y^2 + y*x", "z^2 + x*y"],
}

INF = INFINITE
# type: (H-series, q, p, Kos, G-quad, Wall, gradient)
TABLE = {
    1: ("b", INF, 1, True, True, "I", False),
    2: ("c", 1, INF, True, True, "I*", False),
    3: ("a", 3, 0, True, True, "E", True),
    4: ("b", 0, 3, True, True, "E*", True),
    5: ("a", 2, 0, True, True, "D", False),
    6: ("d", 0, 2, True, True, "D*", True),
    7: ("d", 2, 1, True, True, "G", True),
    8: ("b", 1, 2, True, True, "G*", False),
    9: ("d", 2, 1, True, True, "F", False),
    10: ("d", 1, 2, True, True, "F*", False),
    11: ("b", 1, 1, True, True, "H", True),
    12: ("e", 1, 1, False, False, "C", False),
    13: ("a", 1, 0, True, True, "B", False),
    14: ("e", 0, 1, False, False, "B*", True),
    15: ("a", 0, 0, True, False, "A", True),
}

# x -> x, y -> x - z, z -> x - y turns net 6 into a net with a quadratic basis
NET6_SUBSTITUTION = ((1, 0, 0), (1, 0, -1), (1, -1, 0))

DEFAULT_J = 2


class NoMatch(ValueError):
    code = "NO_MATCH"


class InvalidParameter(ValueError):
    code = "INVALID_J"


def _mono_index():
    return {m: i for i, m in enumerate(MONOMIALS)}


class Net:
    def __init__(self, matrix, field, label=None, j=None):
        self.field = field
        rows = linalg.row_space([list(r) for r in matrix], field)
        if len(rows) != 3:
            raise ValueError(f"a net needs rank 3, got rank {len(rows)}")
        self.matrix = [list(r) for r in matrix]
        self.label = label
        self.j = j
        self.ring = PolyRing(field, NAMES)

    @classmethod
    def from_polynomials(cls, polys, label=None, j=None):
        polys = list(polys)
        ring = polys[0].ring
        if ring.nvars != 3:
            raise ValueError("nets live in 3 variables")
        K = ring.field
        idx = _mono_index()
        rows = []
        for f in polys:
            if not f.is_homogeneous() or f.degree != 2:
                raise ValueError(f"{f} is not a quadric")
            row = [K.zero] * 6
            for e, c in f.items():
                row[idx[e]] = c
            rows.append(row)
        basis = linalg.row_space(rows, K)
        if len(basis) != 3:
            raise ValueError(f"the quadrics span a space of dimension {len(basis)}, not 3")
        # keep the given generators when they are independent
        if len(rows) == 3:
            basis = rows
        return cls(basis, K, label, j)

    def polynomials(self, ring=None):
        ring = ring or self.ring
        return [ring.from_terms([(c, m) for c, m in zip(row, MONOMIALS)]) for row in self.matrix]

    def ideal(self):
        return IdealPresentation(self.ring, self.polynomials())

    def substitute(self, M):
        M = [[self.field(c) for c in row] for row in M]
        return Net.from_polynomials([substitute_linear(f, M) for f in self.polynomials()])

    def span(self):
        return linalg.row_space(self.matrix, self.field)

    def same_space(self, other):
        return self.span() == other.span()

    def __repr__(self):
        gens = ", ".join(str(f) for f in self.polynomials())
        tag = f" #{self.label}" if self.label else ""
        return f"Net({gens}){tag}"


def check_j(j, K):
    j = K(j)
    j3 = K.pow(j, 3)
    bad = [K.zero, K.one, K.neg(K.inv(K(8)))]
    if any(j3 == b for b in bad):
        raise InvalidParameter(f"j^3 = {K.format(j3)} is excluded (0, 1, -1/8)")
    return j


def normal_form(k, field=None, j=None):
    """The listed basis of type k (k = 15 needs the Hesse parameter j)."""
    K = field or make_field(DEFAULT_PRIME)
    ring = PolyRing(K, NAMES)
    if k == 15:
        j = check_j(DEFAULT_J if j is None else j, K)
        c = K.mul(K(2), j)
        x, y, z = ring.gens
        polys = [x * x + (y * z).scale(c), y * y + (x * z).scale(c), z * z + (x * y).scale(c)]
        return Net.from_polynomials(polys, label=15, j=j)
    if j is not None:
        raise InvalidParameter("only type 15 takes a parameter")
    if k not in NORMAL_FORMS:
        raise ValueError(f"net type must be 1..15, got {k}")
    return Net.from_polynomials([ring.parse(s) for s in NORMAL_FORMS[k]], label=k)


def dual_net(V):
    """Orthogonal complement under the differentiation pairing."""
    K = V.field
    G = [K(g) for g in GRAM]
    M = [[K.mul(c, g) for c, g in zip(row, G)] for row in V.matrix]
    ker = linalg.kernel(M, K, 6)
    return Net(ker, K)


def _complement_functionals(V):
    return linalg.kernel(V.matrix, V.field, 6)


def square_line_forms(V):
    """ℓ = ax+by+cz has ℓ^2 in V iff these three quadrics in (a, b, c) vanish."""
    K = V.field
    ring = PolyRing(K, ("a", "b", "c"))
    a, b, c = ring.gens
    two = K(2)
    sq = [a * a, b * b, c * c, (a * b).scale(two), (a * c).scale(two), (b * c).scale(two)]
    out = []
    for phi in _complement_functionals(V):
        f = ring.zero
        for coef, m in zip(phi, sq):
            if not K.is_zero(coef):
                f = f + m.scale(coef)
        out.append(f)
    return out, ring


def count_square_lines(V, seed=0):
    forms, ring = square_line_forms(V)
    return count_projective_points(IdealPresentation(ring, forms), seed=seed)


def square_line_points(V):
    """Rational linear forms with square in V (empty if there are infinitely many)."""
    forms, _ = square_line_forms(V)
    K = V.field
    try:
        pts, _ = search.find_points(forms, 3, K, make_rng(0))
    except search.PositiveDimensional:
        return []
    return pts[:12]


def count_base_points(V, seed=0):
    return count_projective_points(V.ideal(), seed=seed)


def _cubic_monomials():
    return monomials_of_degree(3, 3)


def is_gradient_type(V, seed=0, samples=30):
    """A cubic whose partials span V, or None."""
    K = V.field
    if K.characteristic in (2, 3):
        raise ValueError("gradient test needs characteristic other than 2, 3")
    cubics = _cubic_monomials()
    idx = _mono_index()
    phis = _complement_functionals(V)
    # partial_i(m) as a vector in the quadric basis
    partial = []
    for m in cubics:
        per_var = []
        for i in range(3):
            vec = [K.zero] * 6
            if m[i]:
                e = list(m)
                e[i] -= 1
                vec[idx[tuple(e)]] = K(m[i])
            per_var.append(vec)
        partial.append(per_var)
    rows = [[linalg.dot(phi, partial[c][i], K) for c in range(len(cubics))]
            for phi in phis for i in range(3)]
    sols = linalg.kernel(rows, K, len(cubics))
    if not sols:
        return None

    def full_rank(coeffs):
        vecs = [linalg.lincomb(coeffs, [partial[c][i] for c in range(len(cubics))], K, 6)
                for i in range(3)]
        return linalg.span_rank(vecs, K) == 3

    candidates = list(sols)
    if len(sols) > 1:
        candidates.append(linalg.lincomb([K.one] * len(sols), sols, K, len(cubics)))
        rng = make_rng(seed)
        if K.is_finite and K.order ** len(sols) <= 10 ** 4:
            for coeffs in itertools.product(list(K.elements()), repeat=len(sols)):
                candidates.append(linalg.lincomb(list(coeffs), sols, K, len(cubics)))
        else:
            for _ in range(samples):
                coeffs = [K.random(rng) for _ in sols]
                candidates.append(linalg.lincomb(coeffs, sols, K, len(cubics)))
    for f in candidates:
        if not linalg.is_zero_vector(f, K) and full_rank(f):
            return V.ring.from_terms([(c, m) for c, m in zip(f, cubics)])
    return None


def hilbert_class(V, top=5):
    gb = buchberger(V.ideal(), degree_cap=top + 1)
    prof = tuple(hilbert_profile(gb, top))
    for name, ref in PROFILES.items():
        if prof == ref[:top + 1]:
            return name
    raise NoMatch(f"Hilbert function {prof} matches none of the five series")


def monomial_ideals_with_profile(profile):
    """Subsets of the quadratic monomials in 3 variables whose quotient has ``profile``."""
    top = len(profile) - 1
    found = []
    for r in range(len(MONOMIALS) + 1):
        for sub in itertools.combinations(MONOMIALS, r):
            prof = tuple(sum(1 for m in monomials_of_degree(3, d)
                             if not any(divides(g, m) for g in sub))
                         for d in range(top + 1))
            if prof == tuple(profile):
                found.append(sub)
    return found


def seeded_coordinates(V, rng, trials):
    """Random coordinate systems having a square line of V as one of the new variables.

    Yields matrices whose rows are the new variables as forms in x, y, z.
    """
    K = V.field
    pts = square_line_points(V)
    if not pts:
        return
    for trial in range(trials):
        ell = pts[trial % len(pts)]
        pos = (trial // len(pts)) % 3
        while True:
            B = [[K.random(rng) for _ in range(3)] for _ in range(3)]
            B[pos] = list(ell)
            if linalg.is_invertible(B, K):
                break
        yield B


def quadratic_order_search(V, matrices=None):
    """First (matrix, priority) making the net's reduced basis quadratic, or None."""
    matrices = matrices or [linalg.identity(3, V.field)]
    for M in matrices:
        W = V.substitute(M)
        I = W.ideal()
        for perm in itertools.permutations(range(3)):
            gb = buchberger(I, TermOrder.degrevlex(3, perm))
            if gb.max_degree <= 2:
                return M, perm, gb
    return None


def fingerprint(V, seed=0):
    return (hilbert_class(V), count_square_lines(V, seed), count_base_points(V, seed),
            is_gradient_type(V, seed) is not None)


def classify_by_fingerprint(V, seed=0):
    fp = fingerprint(V, seed)
    hits = [k for k, row in TABLE.items()
            if (row[0], row[1], row[2], row[6]) == fp]
    if len(hits) != 1:
        raise NoMatch(f"fingerprint {fp} matches {hits or 'no'} table row")
    return hits[0]


@dataclass
class NetReport:
    label: int
    net: Net
    hilbert_class: str
    q: object
    p: object
    gradient: object
    gquad: str
    wall_name: str
    certificate: dict = None
    koszul: dict = None
    mismatches: list = dc_field(default_factory=list)

    def row(self):
        return {
            "type": self.label,
            "generators": [str(f) for f in self.net.polynomials()],
            "H": self.hilbert_class,
            "q": _num(self.q),
            "p": _num(self.p),
            "Kos": None if self.koszul is None else self.koszul.get("linear"),
            "G-quad": self.gquad,
            "Wall": self.wall_name,
            "gradient": None if self.gradient is None else str(self.gradient),
            "certificate": self.certificate,
            "mismatches": list(self.mismatches),
        }


def _num(v):
    return "inf" if v == INFINITE else v


def gquad_status(V, label=None, random_trials=0, seed=0):
    """(status, certificate) for the G-quad column."""
    H = hilbert_class(V)
    if H == "e":
        subsets = monomial_ideals_with_profile(PROFILES["e"][:5])
        return "no_by_series_e", {"monomial_ideals_checked": 2 ** len(MONOMIALS),
                                  "matches": len(subsets)}
    K = V.field
    mats = [linalg.identity(3, K)]
    if label == 6:
        mats.append([[K(c) for c in row] for row in NET6_SUBSTITUTION])
    hit = quadratic_order_search(V, mats)
    if hit is None and random_trials:
        rng = make_rng(seed)
        subs = (linalg.inverse(B, K) for B in seeded_coordinates(V, rng, random_trials))
        hit = quadratic_order_search(V, subs)
    if hit is None:
        return "search_failed", None
    M, perm, gb = hit
    return "yes_with_certificate", {
        "coordinates": "given" if M == linalg.identity(3, K) else "changed",
        "substitution": [[K.to_json(c) for c in row] for row in M],
        "priority": [NAMES[i] for i in perm],
        "basis": [str(g) for g in gb.elements],
    }


def net_report(k, field=None, j=None, seed=0, koszul_bound=None, random_trials=200):
    V = normal_form(k, field, j)
    H = hilbert_class(V)
    q = count_square_lines(V, seed)
    p = count_base_points(V, seed)
    f = is_gradient_type(V, seed)
    status, cert = gquad_status(V, k, random_trials=random_trials, seed=seed)
    ref = TABLE[k]
    rep = NetReport(k, V, H, q, p, f, status, ref[5], cert)
    if koszul_bound:
        from .koszul import betti, first_nonlinear
        bt = betti(V.ideal(), koszul_bound, koszul_bound)
        first = first_nonlinear(bt)
        rep.koszul = {"linear": first is None, "first_nonlinear": first, "bound": koszul_bound}
    rep.mismatches = compare_with_table(rep)
    return rep


def compare_with_table(rep):
    H, q, p, kos, gq, wall, grad = TABLE[rep.label]
    bad = []
    if rep.hilbert_class != H:
        bad.append(f"H: {rep.hilbert_class} != {H}")
    if rep.q != q:
        bad.append(f"q: {rep.q} != {q}")
    if rep.p != p:
        bad.append(f"p: {rep.p} != {p}")
    if (rep.gradient is not None) != grad:
        bad.append(f"gradient: {rep.gradient is not None} != {grad}")
    expected = {True: "yes_with_certificate", False: "no_by_series_e"}[gq]
    if rep.label == 15:
        expected = "search_failed"
    if rep.gquad != expected:
        bad.append(f"G-quad: {rep.gquad} != {expected}")
    if rep.koszul is not None and rep.koszul["linear"] != kos:
        bad.append(f"Kos: {rep.koszul['linear']} != {kos}")
    return bad


def _report_job(args):
    k, p, j, seed, kb = args
    return net_report(k, make_field(p), j if k == 15 else None, seed, kb)


def reproduce_table(p=DEFAULT_PRIME, j=DEFAULT_J, seed=0, koszul_bound=None, workers=None):
    """Recompute all 15 rows; each report carries its mismatches against the table."""
    jobs = [(k, p, j, seed, koszul_bound) for k in range(1, 16)]
    if workers and workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_report_job, jobs))
    return [_report_job(a) for a in jobs]


def format_table(reports):
    head = ["", "H", "q", "p", "Kos", "G-quad", "Wall", "grad"]
    lines = ["\t".join(head)]
    for r in reports:
        kos = "-" if r.koszul is None else ("yes" if r.koszul["linear"] else "no")
        lines.append("\t".join([f"{r.label})", r.hilbert_class, _fmt(r.q), _fmt(r.p), kos,
                                r.gquad, r.wall_name, "yes" if r.gradient is not None else "no"]))
    return "\n".join(lines)


def _fmt(v):
    return "inf" if v == INFINITE else str(v)


def table_csv(reports):
    import csv
    import io
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["type", "H-series", "q", "p", "Kos", "G-quad", "Wall", "gradient"])
    for r in reports:
        kos = "" if r.koszul is None else ("yes" if r.koszul["linear"] else "no")
        w.writerow([r.label, r.hilbert_class, _fmt(r.q), _fmt(r.p), kos, r.gquad, r.wall_name,
                    "yes" if r.gradient is not None else "no"])
    return buf.getvalue()
