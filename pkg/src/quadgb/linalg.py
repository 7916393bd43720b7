"""Exact dense linear algebra over a field (matrices are lists of rows).

Pivoting is deterministic (first nonzero entry) so every derived basis is
reproducible.
"""


def zeros(r, c, K):
    return [[K.zero] * c for _ in range(r)]


def identity(n, K):
    M = zeros(n, n, K)
    for i in range(n):
        M[i][i] = K.one
    return M


def transpose(M, ncols=None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A, B, K):
    Bt = transpose(B, len(B[0]) if B else 0)
    return [[K.sum(K.mul(a, b) for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v, K):
    return [K.sum(K.mul(a, b) for a, b in zip(row, v)) for row in A]


def dot(u, v, K):
    return K.sum(K.mul(a, b) for a, b in zip(u, v))


def lincomb(coeffs, vectors, K, length=None):
    n = length if length is not None else len(vectors[0])
    out = [K.zero] * n
    for c, v in zip(coeffs, vectors):
        if K.is_zero(c):
            continue
        for i, x in enumerate(v):
            out[i] = K.add(out[i], K.mul(c, x))
    return out


def is_zero_vector(v, K):
    return all(K.is_zero(x) for x in v)


def rref(M, K):
    """Reduced row echelon form and pivot columns."""
    A = [list(row) for row in M]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not K.is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = K.inv(A[r][c])
        A[r] = [K.mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and not K.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M, K):
    return len(rref(M, K)[1]) if M else 0


def kernel(M, K, ncols=None):
    """Basis of {x : M x = 0}, one vector per free column."""
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    if not M:
        return identity(n, K)
    R, pivots = rref(M, K)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [K.zero] * n
        v[f] = K.one
        for row, pc in zip(R, pivots):
            v[pc] = K.neg(row[f])
        basis.append(v)
    return basis


def row_space(vectors, K):
    """Echelon basis of the span of ``vectors``."""
    return rref(vectors, K)[0] if vectors else []


def span_rank(vectors, K):
    return rank(vectors, K) if vectors else 0


def solve(A, b, K):
    """Some x with A x = b, or None."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, K)
    if n in pivots:
        return None
    x = [K.zero] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def in_span(vectors, v, K):
    if is_zero_vector(v, K):
        return True
    if not vectors:
        return False
    return span_rank(list(vectors) + [v], K) == span_rank(vectors, K)


def coordinates(vectors, v, K):
    """Coefficients expressing v in the linearly independent ``vectors``."""
    if not vectors:
        return [] if is_zero_vector(v, K) else None
    return solve(transpose(vectors), v, K)


def extend_basis(basis, candidates, K):
    """Greedily select candidates that enlarge the span of ``basis``."""
    current = [list(b) for b in basis]
    r = span_rank(current, K)
    chosen = []
    for c in candidates:
        trial = current + [list(c)]
        rr = span_rank(trial, K)
        if rr > r:
            current, r = trial, rr
            chosen.append(list(c))
    return chosen


def complete_basis(vectors, n, K):
    """Extend independent ``vectors`` to a basis of K^n with unit vectors."""
    units = identity(n, K)
    return [list(v) for v in vectors] + extend_basis(vectors, units, K)


def inverse(M, K):
    n = len(M)
    aug = [list(row) + e for row, e in zip(M, identity(n, K))]
    R, pivots = rref(aug, K)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ValueError("singular matrix")
    return [row[n:] for row in R]


def is_invertible(M, K):
    return rank(M, K) == len(M)


def intersect(U, W, K, n):
    """Basis of span(U) ∩ span(W) inside K^n."""
    if not U or not W:
        return []
    # solve sum a_i u_i = sum b_j w_j
    A = transpose(list(U) + [[K.neg(x) for x in w] for w in W], n)
    ker = kernel(A, K, len(U) + len(W))
    out = [lincomb(k[:len(U)], U, K, n) for k in ker]
    return row_space(out, K)


def normalize_projective(v, K):
    """Scale so the first nonzero coordinate is 1."""
    for x in v:
        if not K.is_zero(x):
            inv = K.inv(x)
            return [K.mul(inv, y) for y in v]
    return list(v)
