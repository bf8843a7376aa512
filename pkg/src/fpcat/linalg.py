"""solve_left, row syzygies and normal forms for matrices over Q, Z and Q[x..].

Everything acts on rows: ``solve_left(A, B)`` looks for X with ``X * A == B``
and ``row_syzygies(A)`` spans the left kernel {v : v * A == 0}.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import UsageError
from .groebner import groebner_vectors, reduce_vector, row_to_vector, term_key, vector_to_row
from .matrix import Matrix
from .rings import IntegerRing, PolynomialRing, RationalField


# -- fields -----------------------------------------------------------------

@lru_cache(maxsize=4096)
def _field_echelon(A):
    """Reduced row echelon form E = T * A with pivot columns and rank."""
    m, n = A.shape
    M = [list(r) for r in A.rows]
    T = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        T[r], T[p] = T[p], T[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv if a else a for a in M[r]]
        T[r] = [a * inv if a else a for a in T[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                # rows are mostly zero; skip the Fraction arithmetic there
                M[i] = [a - f * b if b else a for a, b in zip(M[i], M[r])]
                T[i] = [a - f * b if b else a for a, b in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
    return M, T, pivots, r


def _field_solve(A, B):
    M, T, pivots, r = _field_echelon(A)
    out = []
    for b in B.rows:
        coeffs = [b[c] for c in pivots]
        resid = list(b)
        for k, q in enumerate(coeffs):
            if q:
                resid = [a - q * e if e else a for a, e in zip(resid, M[k])]
        if any(resid):
            return None
        x = [Fraction(0)] * A.nrows
        for k, q in enumerate(coeffs):
            if q:
                x = [a + q * t if t else a for a, t in zip(x, T[k])]
        out.append(tuple(x))
    return Matrix.raw(A.ring, tuple(out), B.nrows, A.nrows)


def _field_syzygies(A):
    M, T, pivots, r = _field_echelon(A)
    rows = tuple(tuple(t) for t in T[r:])
    return Matrix.raw(A.ring, rows, len(rows), A.nrows)


# -- integers -----------------------------------------------------------------

def _hnf_rows(A):
    """Row Hermite form H = U * A (positive pivots, reduced above)."""
    m, n = A.shape
    M = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if M[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(M[i][c]), i))
            M[r], M[p] = M[p], M[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if not M[r][c]:
            continue
        if M[r][c] < 0:
            M[r] = [-a for a in M[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = M[i][c] // M[r][c]
            if q:
                M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return M, U, pivots, r


_hnf_cached = lru_cache(maxsize=4096)(_hnf_rows)


def hermite_normal_form(A):
    """Return (H, U) with U unimodular and H = U * A in row Hermite form."""
    if not isinstance(A.ring, IntegerRing):
        raise UsageError("Hermite normal form is only available over Z")
    M, U, _, _ = _hnf_rows(A)
    return (
        Matrix.raw(A.ring, tuple(map(tuple, M)), A.nrows, A.ncols),
        Matrix.raw(A.ring, tuple(map(tuple, U)), A.nrows, A.nrows),
    )


def _int_solve(A, B):
    M, U, pivots, r = _hnf_cached(A)
    out = []
    for b in B.rows:
        resid = list(b)
        x = [0] * A.nrows
        for k, c in enumerate(pivots):
            # entries left of this pivot are already zero
            q, rem = divmod(resid[c], M[k][c])
            if rem:
                return None
            if q:
                resid = [a - q * e if e else a for a, e in zip(resid, M[k])]
                x = [a + q * u for a, u in zip(x, U[k])]
        if any(resid):
            return None
        out.append(tuple(x))
    return Matrix.raw(A.ring, tuple(out), B.nrows, A.nrows)


def _int_syzygies(A):
    M, U, pivots, r = _hnf_cached(A)
    rows = tuple(tuple(u) for u in U[r:])
    return Matrix.raw(A.ring, rows, len(rows), A.nrows)


def smith_normal_form(A):
    """Return (S, U, V) with U * A * V == S diagonal, d1 | d2 | ..., U and V unimodular."""
    if not isinstance(A.ring, IntegerRing):
        raise UsageError("Smith normal form is only available over Z")
    S, U, V = _smith(A)
    ring = A.ring
    return (
        Matrix.raw(ring, tuple(map(tuple, S)), A.nrows, A.ncols),
        Matrix.raw(ring, tuple(map(tuple, U)), A.nrows, A.nrows),
        Matrix.raw(ring, tuple(map(tuple, V)), A.ncols, A.ncols),
    )


def _smith(A):
    """Diagonalize over a PID (Z or a field); returns plain lists S, U, V."""
    ring = A.ring
    m, n = A.shape
    one, zero = ring.one, ring.zero
    S = [list(r) for r in A.rows]
    U = [[one if i == j else zero for j in range(m)] for i in range(m)]
    V = [[one if i == j else zero for j in range(n)] for i in range(n)]
    field = ring.is_field

    def quo(a, b):
        return a / b if field else a // b

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in S:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def add_row(i, k, q):  # row_i -= q * row_k
        S[i] = [a - q * b for a, b in zip(S[i], S[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]

    def add_col(j, k, q):  # col_j -= q * col_k
        for r in S:
            r[j] -= q * r[k]
        for r in V:
            r[j] -= q * r[k]

    t = 0
    while t < min(m, n):
        entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, quo(S[i][t], S[t][t]))
                    if S[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, quo(S[t][j], S[t][t]))
                    if S[t][j]:
                        changed = True
            if changed:
                cands = [(abs(S[i][t]), i, t) for i in range(t, m) if S[i][t]]
                cands += [(abs(S[t][j]), t, j) for j in range(t, n) if S[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            if not field:
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                    None,
                )
                if bad is not None:
                    add_row(t, bad, -one)
                    continue
            break
        if field:
            inv = 1 / S[t][t]
            S[t] = [a * inv for a in S[t]]
            U[t] = [a * inv for a in U[t]]
        elif S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return S, U, V


def diagonalize(A):
    """Smith form over Z or Q as Matrices (S, U, V); over Q the nonzero entries are 1."""
    if not A.ring.is_pid:
        raise UsageError(f"no diagonal normal form over {A.ring}")
    S, U, V = _smith(A)
    ring = A.ring
    return (
        Matrix.raw(ring, tuple(map(tuple, S)), A.nrows, A.ncols),
        Matrix.raw(ring, tuple(map(tuple, U)), A.nrows, A.nrows),
        Matrix.raw(ring, tuple(map(tuple, V)), A.ncols, A.ncols),
    )


# -- polynomial rings ---------------------------------------------------------

@lru_cache(maxsize=4096)
def _augmented_basis(A):
    """Reduced POT basis of the rows of [A | I]; the tail positions record coefficients."""
    n = A.ncols
    vecs = []
    for i, r in enumerate(A.rows):
        v = row_to_vector(r)
        v[(n + i, (0,) * A.ring.nvars)] = Fraction(1)
        vecs.append(v)
    return groebner_vectors(vecs, A.ring, key=term_key(A.ring, split=n))


def _poly_solve(A, B):
    ring, n, m = A.ring, A.ncols, A.nrows
    basis = _augmented_basis(A)
    key = term_key(ring, split=n)
    out = []
    for b in B.rows:
        r = reduce_vector(row_to_vector(b), basis, key)
        if any(p < n for p, _ in r):
            return None
        x = vector_to_row(r, ring, m, offset=n)
        out.append(tuple(-p for p in x))
    return Matrix.raw(ring, tuple(out), B.nrows, m)


def _poly_syzygies(A):
    ring, n, m = A.ring, A.ncols, A.nrows
    rows = []
    for lt, v in _augmented_basis(A):
        if lt[0] >= n:
            rows.append(vector_to_row(v, ring, m, offset=n))
    return Matrix.raw(ring, tuple(rows), len(rows), m)


# -- dispatch -----------------------------------------------------------------

def solve_left(A, B):
    """Some X with X * A == B, or None when a row of B is outside the row span of A."""
    if A.ring != B.ring:
        raise UsageError(f"ring mismatch: {A.ring} vs {B.ring}")
    if A.ncols != B.ncols:
        raise UsageError(f"column counts differ: {A.ncols} vs {B.ncols}")
    if B.nrows == 0:
        return Matrix.zero(A.ring, 0, A.nrows)
    if A.nrows == 0 or A.ncols == 0:
        return Matrix.zero(A.ring, B.nrows, A.nrows) if B.is_zero() else None
    ring = A.ring
    if isinstance(ring, RationalField):
        return _field_solve(A, B)
    if isinstance(ring, IntegerRing):
        return _int_solve(A, B)
    if isinstance(ring, PolynomialRing):
        return _poly_solve(A, B)
    raise UsageError(f"unsupported ring {ring}")


def row_syzygies(A):
    """A matrix S whose rows generate the left kernel of A."""
    ring = A.ring
    if A.nrows == 0:
        return Matrix.zero(ring, 0, 0)
    if A.ncols == 0:
        return Matrix.identity(ring, A.nrows)
    if isinstance(ring, RationalField):
        return _field_syzygies(A)
    if isinstance(ring, IntegerRing):
        return _int_syzygies(A)
    if isinstance(ring, PolynomialRing):
        return _poly_syzygies(A)
    raise UsageError(f"unsupported ring {ring}")


def rank(A):
    """Rank over the field of fractions (Q-rank for Z and Q)."""
    if isinstance(A.ring, PolynomialRing):
        raise UsageError("rank is only implemented over Z and Q")
    from .rings import QQ
    Q = A if isinstance(A.ring, RationalField) else A.map(Fraction, QQ)
    return _field_echelon(Q)[3]
