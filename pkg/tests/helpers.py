"""Shared generators and independent oracles for the test suite."""

import itertools
import random
from fractions import Fraction

import sympy
from sympy.matrices.normalforms import smith_normal_decomp

from fpcat import QQ, ZZ, Matrix, polynomial_ring
from fpcat.fpfunctors import fpmod, module
from fpcat.rings import Poly

QXY = polynomial_ring("x,y")
X, Y = QXY.gens()


def rng(seed):
    return random.Random(seed)


def rand_matrix(r, ring, m, n, lo=-5, hi=5, density=1.0):
    return Matrix(ring, [[r.randint(lo, hi) if r.random() < density else 0 for _ in range(n)]
                         for _ in range(m)], m, n)


def rand_poly(r, ring=QXY, deg=2, terms=3, coeff=3):
    nv = ring.nvars
    monos = [e for e in itertools.product(range(deg + 1), repeat=nv) if sum(e) <= deg]
    out = {}
    for e in r.sample(monos, min(terms, len(monos))):
        c = r.randint(-coeff, coeff)
        if c:
            out[e] = Fraction(c)
    return Poly(ring, out)


def rand_poly_matrix(r, m, n, ring=QXY, deg=2, zero_bias=0.4):
    return Matrix(ring, [[rand_poly(r, ring, deg) if r.random() > zero_bias else 0 for _ in range(n)]
                         for _ in range(m)], m, n)


def rand_module(r, ring, max_gens=3, max_rels=3, lo=-5, hi=5):
    a = r.randint(1, max_gens)
    b = r.randint(0, max_rels)
    if ring is QXY or getattr(ring, "nvars", 0):
        rel = rand_poly_matrix(r, b, a, ring, deg=2)
    else:
        rel = rand_matrix(r, ring, b, a, lo, hi)
    return module(ring, rel)


def rand_hom(r, M, N, coeff=3):
    """A random morphism M -> N drawn from the generators of the Hom module."""
    F = M.category
    hs = F.hom_structure
    H = hs.H(M, N)
    ring = F.child.ring
    row = Matrix(ring, [[r.randint(-coeff, coeff) for _ in range(H.gens)]], 1, H.gens)
    g = hs.target._mk(hs.one, H, row)
    return hs.nu_inv(M, N, g)


def rand_unimodular(r, n, steps=4):
    W = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = r.sample(range(n), 2)
        c = r.randint(-2, 2)
        W[i] = [a + c * b for a, b in zip(W[i], W[j])]
    if r.random() < 0.5:
        k = r.randrange(n)
        W[k] = [-a for a in W[k]]
    return W


def finite_z_module(r, max_order=64, max_gens=3):
    """A random finite Z-module with at most max_order elements, in a scrambled presentation."""
    while True:
        a = r.randint(1, max_gens)
        ds = [r.choice([1, 2, 2, 3, 4, 6, 8]) for _ in range(a)]
        order = 1
        for d in ds:
            order *= d
        if order <= max_order:
            break
    W = rand_unimodular(r, a)
    rel = [[ds[i] * W[i][j] for j in range(a)] for i in range(a)]
    if r.random() < 0.4:
        c = [r.randint(-2, 2) for _ in range(a)]
        rel.append([sum(c[i] * rel[i][j] for i in range(a)) for j in range(a)])
    L = rand_unimodular(r, len(rel), steps=2)
    rel = [[sum(L[i][k] * rel[k][j] for k in range(len(rel))) for j in range(a)] for i in range(len(rel))]
    return module(ZZ, rel)


# -- sympy bridges ---------------------------------------------------------------

SX, SY, SZ = sympy.symbols("x y z")


def to_sympy(p, symbols=None):
    symbols = symbols or sympy.symbols(p.ring.variables)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(symbols, e):
            term *= s ** k
        expr += term
    return sympy.expand(expr)


def sym_matrix(M):
    def conv(e):
        if isinstance(e, Poly):
            return to_sympy(e)
        e = Fraction(e)
        return sympy.Rational(e.numerator, e.denominator)
    return sympy.Matrix(M.nrows, M.ncols, lambda i, j: conv(M.rows[i][j])) if M.nrows and M.ncols \
        else sympy.zeros(M.nrows, M.ncols)


# -- finite abelian group oracle ---------------------------------------------------

class FiniteZ:
    """Element model of Z^a / rowspan(rel) through Smith coordinates (sympy)."""

    def __init__(self, rel):
        self.a = rel.ncols
        if rel.nrows == 0:
            self.finite = self.a == 0
            self.moduli = [0] * self.a
            self.V = sympy.eye(self.a)
        else:
            A = sympy.Matrix(rel.nrows, rel.ncols, lambda i, j: int(rel.rows[i][j])) if rel.ncols \
                else sympy.zeros(rel.nrows, 0)
            if rel.ncols:
                S, U, V = smith_normal_decomp(A, domain=sympy.ZZ)
                diag = [abs(int(S[i, i])) if i < S.rows else 0 for i in range(self.a)]
            else:
                V, diag = sympy.eye(0), []
            self.V = V
            self.moduli = diag
            self.finite = all(diag)
        self.Vinv = self.V.inv() if self.a else self.V
        self.order = 1
        for d in self.moduli:
            self.order *= d if d else 1

    def coords(self, v):
        """Smith coordinates of the generator combination v (list of ints)."""
        if not self.a:
            return ()
        w = sympy.Matrix([list(v)]) * self.V
        return tuple(int(w[0, i]) % d if d else int(w[0, i]) for i, d in enumerate(self.moduli) if d != 1)

    def elements(self):
        """All elements as generator combinations."""
        ranges = [range(d) if d > 1 else range(1) for d in self.moduli]
        for c in itertools.product(*ranges):
            if not self.a:
                yield ()
                continue
            v = sympy.Matrix([list(c)]) * self.Vinv
            yield tuple(int(t) for t in v)

    def is_zero(self, v):
        return all(c == 0 for c in self.coords(v))

    def equal(self, v, w):
        return self.coords(v) == self.coords(w)


def apply(v, mat):
    """Row vector of ints times an integer Matrix."""
    return tuple(sum(int(v[i]) * int(mat.rows[i][j]) for i in range(mat.nrows)) for j in range(mat.ncols))


def unit_vectors(n):
    return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]


def qq_matrix(rows_, m=None, n=None):
    return Matrix(QQ, rows_, m, n)


# -- rational double complexes and a closed-form page oracle -----------------------

SQUARE = ((0, 0), (1, 0), (0, 1), (1, 1))


def koszul_square(a, b):
    """The Koszul square of (x, y) evaluated at the point (a, b); Q in every corner."""
    K = dict.fromkeys(SQUARE, 1)
    dh = {(0, 0): qq_matrix([[a]]), (0, 1): qq_matrix([[a]])}
    dv = {(0, 0): qq_matrix([[b]]), (1, 0): qq_matrix([[b]])}
    return K, dh, dv


def rand_q_square(r, max_dim=2):
    """A random commuting square of rational matrices (row-vector convention)."""
    from fpcat import row_syzygies
    K = {pq: r.randint(0, max_dim) for pq in SQUARE}
    K[(0, 0)] = max(K[(0, 0)], 1)
    k10, k01, k11 = K[(1, 0)], K[(0, 1)], K[(1, 1)]
    dv10 = rand_matrix(r, QQ, k10, k11, -3, 3, 0.7)
    dh01 = rand_matrix(r, QQ, k01, k11, -3, 3, 0.7)
    S = row_syzygies(Matrix.vstack(QQ, [dv10, -dh01], k11))
    C = rand_matrix(r, QQ, K[(0, 0)], S.nrows, -2, 2) * S
    dh00 = Matrix(QQ, [row[:k10] for row in C.rows], K[(0, 0)], k10)
    dv00 = Matrix(QQ, [row[k10:] for row in C.rows], K[(0, 0)], k01)
    return K, {(0, 0): dh00, (0, 1): dh01}, {(0, 0): dv00, (1, 0): dv10}


def filtered_total(K, dh, dv):
    """The library's filtered total complex of a rational double complex."""
    from fpcat import total_complex
    F = fpmod(QQ)
    obj = {pq: F.free(k) for pq, k in K.items()}
    mh = {pq: F.morphism(obj[pq], obj[(pq[0] + 1, pq[1])], m) for pq, m in dh.items()}
    mv = {pq: F.morphism(obj[pq], obj[(pq[0], pq[1] + 1)], m) for pq, m in dv.items()}
    return total_complex(F, obj, mh, mv)


def q_dim(M):
    from fpcat.linalg import rank
    return M.gens - (rank(M.rel) if M.rel.nrows and M.rel.ncols else 0)


def _rows_of(M):
    """Nonzero row space basis of a sympy matrix (possibly with zero rows or columns)."""
    if M.rows == 0 or M.cols == 0:
        return sympy.zeros(0, M.cols)
    R = M.rref()[0]
    keep = [i for i in range(R.rows) if any(R.row(i))]
    return R.extract(keep, list(range(R.cols))) if keep else sympy.zeros(0, M.cols)


def _vstack(n, *ms):
    ms = [m for m in ms if m.rows]
    return sympy.Matrix.vstack(*ms) if ms else sympy.zeros(0, n)


def _left_kernel(M):
    """Basis (as rows) of {v : v M = 0}."""
    if M.rows == 0:
        return sympy.zeros(0, 0)
    if M.cols == 0:
        return sympy.eye(M.rows)
    ns = M.T.nullspace()
    return sympy.Matrix.hstack(*ns).T if ns else sympy.zeros(0, M.rows)


def _intersect(U, W, n):
    if U.rows == 0 or W.rows == 0:
        return sympy.zeros(0, n)
    N = _left_kernel(_vstack(n, U, -W))
    return _rows_of(N[:, :U.rows] * U) if N.rows else sympy.zeros(0, n)


def _preimage(D, W, n):
    """{v in Q^n : v D in rowspan W}."""
    if n == 0:
        return sympy.zeros(0, 0)
    N = _left_kernel(_vstack(D.cols, D, W)) if D.cols else sympy.eye(n)
    return _rows_of(N[:, :n]) if N.rows else sympy.zeros(0, n)


class BicomplexOracle:
    """Cohomology and page dimensions of a rational double complex, by plain linear algebra.

    Summands of each total degree are ordered by increasing column index, the opposite of the
    library, so the two total complexes are assembled independently.
    """

    def __init__(self, K, dh, dv):
        self.K = K
        ns = sorted({p + q for p, q in K})
        self.ns = ns
        self.parts = {n: sorted(pq for pq in K if sum(pq) == n) for n in ns}
        self.dim = {n: sum(K[pq] for pq in self.parts[n]) for n in ns}
        self.D = {}
        for n in ns:
            if n + 1 not in self.parts:
                continue
            D = sympy.zeros(self.dim[n], self.dim[n + 1])
            for pq in self.parts[n]:
                for target, maps, sign in (((pq[0] + 1, pq[1]), dh, 1), ((pq[0], pq[1] + 1), dv, (-1) ** pq[0])):
                    if pq in maps and target in self.parts[n + 1]:
                        i, j = self._offset(n, pq), self._offset(n + 1, target)
                        block = sign * sym_matrix(maps[pq])
                        D[i:i + K[pq], j:j + K[target]] = block
            self.D[n] = D

    def _offset(self, n, pq):
        out = 0
        for other in self.parts[n]:
            if other == pq:
                return out
            out += self.K[other]
        raise KeyError(pq)

    def d(self, n):
        return self.D.get(n, sympy.zeros(self.dim.get(n, 0), self.dim.get(n + 1, 0)))

    def rank_d(self, n):
        M = self.d(n)
        return M.rank() if M.rows and M.cols else 0

    def H(self, n):
        return self.dim.get(n, 0) - self.rank_d(n) - self.rank_d(n - 1)

    def F(self, n, p):
        """F^p of degree n: coordinates of summands with column index >= p, as row basis."""
        size = self.dim.get(n, 0)
        rows = []
        for pq in self.parts.get(n, []):
            if pq[0] >= p:
                start = self._offset(n, pq)
                rows.extend(start + k for k in range(self.K[pq]))
        out = sympy.zeros(len(rows), size)
        for i, c in enumerate(rows):
            out[i, c] = 1
        return out

    def E(self, r, p, q):
        n = p + q
        size = self.dim.get(n, 0)
        if size == 0:
            return 0
        Fp, Fp1 = self.F(n, p), self.F(n, p + 1)
        Z = _vstack(size, _intersect(Fp, _preimage(self.d(n), self.F(n + 1, p + r), size), size), Fp1)
        below = self.F(n - 1, p - r + 1)
        image = below * self.d(n - 1) if below.rows and self.dim.get(n - 1, 0) else sympy.zeros(0, size)
        B = _vstack(size, _intersect(Fp, _rows_of(image) if image.rows else image, size), Fp1)
        return _rows_of(Z).rows - _rows_of(B).rows
