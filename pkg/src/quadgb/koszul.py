"""Truncated minimal graded resolutions of the residue field K over R.

The resolution is built one homological step at a time.  For step i and
internal degree k the map d_{i-1} is written out as a matrix on
(F_{i-1})_k, its kernel is taken, and the new minimal generators of F_i
in degree k are a complement of what the generators already chosen
(lower degrees) span there.  Everything is exact linear algebra; prime
fields go through numpy.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import GradedQuotient
from .fields import PrimeField


class DegreeBoundExceeded(ValueError):
    code = "DEGREE_BOUND_EXCEEDED"


# -- linear algebra backends -------------------------------------------------------

class _Generic:
    def __init__(self, K):
        self.K = K

    def mat(self, M, rows, cols):
        return [list(r) for r in M]

    def matvec(self, A, v):
        return linalg.matvec(A, v, self.K) if A else []

    def kernel(self, cols, nrows):
        """Kernel basis of the map whose columns are ``cols`` (vectors of length nrows)."""
        if not cols:
            return []
        M = linalg.transpose(cols, nrows)
        return linalg.kernel(M, self.K, len(cols))

    def combine(self, cols, coeffs, nrows):
        return linalg.lincomb(coeffs, cols, self.K, nrows)

    def extend(self, span, cands):
        """Candidates (in order) that enlarge span(span), greedy."""
        return linalg.extend_basis(linalg.row_space(span, self.K) if span else [], cands, self.K)

    def to_list(self, v):
        return list(v)


class _ModP:
    """numpy int64 arithmetic mod p (p < 2^31)."""

    def __init__(self, K):
        self.K = K
        self.p = K.p

    def mat(self, M, rows, cols):
        return np.array(M, dtype=np.int64).reshape(rows, cols) % self.p

    def matvec(self, A, v):
        if A.shape[0] == 0 or A.shape[1] == 0:
            return np.zeros(A.shape[0], dtype=np.int64)
        return (A @ np.asarray(v, dtype=np.int64)) % self.p

    def _rref(self, M):
        p = self.p
        M = M.copy() % p
        rows, cols = M.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(M[r:, c])[0]
            if nz.size == 0:
                continue
            k = r + nz[0]
            if k != r:
                M[[r, k]] = M[[k, r]]
            inv = pow(int(M[r, c]), p - 2, p)
            M[r] = (M[r] * inv) % p
            col = M[:, c].copy()
            col[r] = 0
            nzr = np.nonzero(col)[0]
            if nzr.size:
                M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
            pivots.append(c)
            r += 1
        return M[:r], pivots

    def kernel(self, cols, nrows):
        if len(cols) == 0:
            return []
        M = np.stack([np.asarray(c, dtype=np.int64) for c in cols], axis=1) if nrows else \
            np.zeros((0, len(cols)), dtype=np.int64)
        ncols = M.shape[1]
        if M.shape[0] == 0:
            return [np.eye(ncols, dtype=np.int64)[i] for i in range(ncols)]
        E, piv = self._rref(M)
        free = [c for c in range(ncols) if c not in set(piv)]
        out = []
        for f in free:
            v = np.zeros(ncols, dtype=np.int64)
            v[f] = 1
            for r, c in enumerate(piv):
                v[c] = (-E[r, f]) % self.p
            out.append(v)
        return out

    def combine(self, cols, coeffs, nrows):
        if not cols:
            return np.zeros(nrows, dtype=np.int64)
        A = np.stack([np.asarray(c, dtype=np.int64) for c in cols], axis=1)
        return (A @ np.asarray(coeffs, dtype=np.int64)) % self.p

    def extend(self, span, cands):
        p = self.p
        basis = []    # (pivot, row) pairs of a reduced echelon set
        def reduce(v):
            v = np.asarray(v, dtype=np.int64) % p
            for piv, row in basis:
                if v[piv]:
                    v = (v - v[piv] * row) % p
            return v

        def add(v):
            nz = np.nonzero(v)[0]
            piv = int(nz[0])
            row = (v * pow(int(v[piv]), p - 2, p)) % p
            for k, (pv, rw) in enumerate(basis):
                if rw[piv]:
                    basis[k] = (pv, (rw - rw[piv] * row) % p)
            basis.append((piv, row))

        for v in span:
            v = reduce(v)
            if v.any():
                add(v)
        chosen = []
        for c in cands:
            v = reduce(c)
            if v.any():
                add(v)
                chosen.append(c)
        return chosen

    def to_list(self, v):
        return [int(x) for x in v]


def _backend(K):
    if isinstance(K, PrimeField) and K.p < 2 ** 31:
        return _ModP(K)
    return _Generic(K)


# -- Betti tables ---------------------------------------------------------------------

@dataclass
class BettiTable:
    I: int
    J: int
    values: list          # values[i][j], 0 <= i <= I, 0 <= j <= J

    def __getitem__(self, ij):
        i, j = ij
        if not self.known(i, j):
            raise KeyError(f"beta_{i},{j} lies beyond the computed bounds")
        return self.values[i][j]

    def known(self, i, j):
        return 0 <= i <= self.I and 0 <= j <= self.J

    def total(self, i):
        return sum(self.values[i])

    def entries(self):
        for i in range(self.I + 1):
            for j in range(self.J + 1):
                yield i, j, self.values[i][j]

    def to_json(self):
        return {"max_i": self.I, "max_j": self.J, "betti": [list(r) for r in self.values]}

    @classmethod
    def from_json(cls, d):
        return cls(d["max_i"], d["max_j"], [list(r) for r in d["betti"]])

    def to_text(self):
        """Macaulay-style layout: column i, row j - i."""
        cols = list(range(self.I + 1))
        width = max(3, max(len(str(v)) for r in self.values for v in r) + 1)
        lines = ["       " + "".join(f"{i:>{width}}" for i in cols),
                 "total: " + "".join(f"{self.total(i):>{width}}" for i in cols)]
        for s in range(self.J + 1):
            cells = []
            any_known = False
            for i in cols:
                j = i + s
                if j > self.J:
                    cells.append(" " * (width - 1) + "?")
                    continue
                any_known = True
                v = self.values[i][j]
                cells.append(f"{v if v else '.':>{width}}")
            if any_known:
                lines.append(f"{s:>5}: " + "".join(cells))
        return "\n".join(lines)


def betti(R, I=5, J=5):
    """Betti numbers of K over R for homological degree <= I, internal degree <= J.

    ``R`` may be an IdealPresentation or a GradedQuotient.
    """
    if J < I:
        raise DegreeBoundExceeded(f"internal bound J={J} is below homological bound I={I}")
    if not isinstance(R, GradedQuotient):
        R = GradedQuotient(R, max(J, 2))
    elif R.D < J:
        R = GradedQuotient(R.ideal, J)
    K = R.field
    B = _backend(K)
    dims = R.dims
    n = R.ring.nvars
    mult = [[B.mat(R.mult[d][v], dims[d + 1], dims[d]) for v in range(n)] for d in range(R.D)]
    mono_cache = {}

    def mono_matrix(b, c):
        """Multiplication by the standard monomial b as a map R_c -> R_{c+|b|}."""
        key = (b, c)
        if key not in mono_cache:
            mats = []
            d = c
            for v, e in enumerate(b):
                for _ in range(e):
                    mats.append(mult[d][v])
                    d += 1
            mono_cache[key] = mats
        return mono_cache[key]

    def apply(b, c, vec):
        for M in mono_matrix(b, c):
            vec = B.matvec(M, vec)
        return vec

    def dim_piece(gens, k):
        return sum(dims[k - g] for g, _ in gens if 0 <= k - g <= J)

    def column(prev, gdeg, gimg, b, k):
        """Image in (F_prev)_k of b * generator (degree gdeg, image gimg)."""
        parts = []
        offset = 0
        for hdeg, _ in prev:
            size = dims[gdeg - hdeg] if 0 <= gdeg - hdeg <= J else 0
            block = gimg[offset:offset + size]
            offset += size
            if 0 <= k - hdeg <= J:
                if size:
                    parts.append(apply(b, gdeg - hdeg, block))
                else:
                    parts.append(_zeros(B, dims[k - hdeg]))
        return _concat(B, parts)

    def matrix_cols(gens, prev, k):
        cols = []
        for gdeg, gimg in gens:
            if k - gdeg < 0:
                continue
            for b in R.basis[k - gdeg]:
                cols.append(column(prev, gdeg, gimg, b, k))
        return cols

    values = [[0] * (J + 1) for _ in range(I + 1)]
    values[0][0] = 1
    # F_0 = R; the augmentation kills exactly R_+, so ker in degree k >= 1 is all of R_k
    F0 = [(0, _unit(B, 1, 0))]
    levels = [F0]
    for i in range(1, I + 1):
        prev = levels[-1]
        gens = []
        for k in range(i, J + 1):
            rows = dim_piece(prev, k)
            if i == 1:
                ker = [_unit(B, rows, r) for r in range(rows)]
            else:
                prevprev = levels[-2]
                cols = matrix_cols(prev, prevprev, k)
                # kernel coordinates are already coordinates in (F_{i-1})_k
                ker = B.kernel(cols, dim_piece(prevprev, k))
            if not ker:
                continue
            image = matrix_cols(gens, prev, k)
            new = B.extend(image, ker)
            values[i][k] = len(new)
            gens.extend((k, v) for v in new)
        levels.append(gens)
    return BettiTable(I, J, values)


def _zeros(B, m):
    if isinstance(B, _ModP):
        return np.zeros(m, dtype=np.int64)
    return [B.K.zero] * m


def _unit(B, m, r):
    v = _zeros(B, m)
    if isinstance(B, _ModP):
        v[r] = 1
    else:
        v[r] = B.K.one
    return v


def _concat(B, parts):
    if isinstance(B, _ModP):
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    out = []
    for p in parts:
        out.extend(p)
    return out


def is_linear_up_to(t, bound=None):
    """β_{i,j} = 0 for every computed j != i (optionally only i <= bound)."""
    return first_nonlinear(t, bound) is None


def first_nonlinear(t, bound=None):
    top = t.I if bound is None else min(bound, t.I)
    for i in range(top + 1):
        for j in range(t.J + 1):
            if j != i and t.values[i][j]:
                return (i, j)
    return None


def euler_check(t, hf):
    """H_R(s) · Σ (-1)^i β_{i,j} s^j = 1 coefficientwise, for degrees the table determines."""
    top = min(t.I, t.J, len(hf) - 1)
    for d in range(top + 1):
        total = 0
        for j in range(d + 1):
            alt = sum((-1) ** i * t.values[i][j] for i in range(min(j, t.I) + 1))
            total += hf[d - j] * alt
        if total != (1 if d == 0 else 0):
            return False
    return True
