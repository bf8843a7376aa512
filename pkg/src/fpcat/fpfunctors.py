"""Finitely presented modules and functors over Q, Z and Q[x..].

fp modules live in Freyd(Rows_R); fp functors fpmod -> Ab live in
Freyd(fpmod^op).  A functor object is stored through its relation, an
fpmod morphism F -> R_F read in the opposite category.
"""

import itertools
from functools import lru_cache

from .additive import rows
from .category import opposite
from .errors import UndecidedError, UsageError
from .freyd import FreydObject, freyd
from .groebner import groebner
from .linalg import diagonalize, row_syzygies, solve_left
from .matrix import Matrix
from .rings import IntegerRing, PolynomialRing, RationalField


def fpmod(ring):
    return freyd(rows(ring))


def fpfun(ring):
    return freyd(opposite(fpmod(ring)))


def module(ring, relations, ngens=None):
    """The module R^{1 x ngens} / (row span of relations)."""
    if not isinstance(relations, Matrix):
        relations = list(relations)
        if ngens is None and not relations:
            raise UsageError("give ngens for a module without relations")
        relations = Matrix(ring, relations, len(relations), ngens if ngens is not None else len(relations[0]))
    if ngens is not None and relations.ncols != ngens:
        raise UsageError(f"relations have {relations.ncols} columns but {ngens} generators were declared")
    return fpmod(ring).object(relations)


def free_module(ring, n):
    return fpmod(ring).free(n)


def module_map(M, N, matrix):
    """Validated module homomorphism M -> N on generators."""
    ring = M.category.child.ring
    if not isinstance(matrix, Matrix):
        matrix = Matrix(ring, matrix, M.gens, N.gens)
    return M.category.morphism(M, N, matrix)


def ring_of_module(M):
    return M.category.child.ring


# -- resolutions ------------------------------------------------------------------

@lru_cache(maxsize=256)
def _resolution(rel, length):
    ds = [rel]
    while len(ds) < length:
        ds.append(row_syzygies(ds[-1]))
    return tuple(ds)


def resolution(M, length):
    """Matrices d_1, ..., d_length with d_1 the relations of M and d_{i+1} = syzygies(d_i).

    d_i maps P_i = R^{1 x n_i} to P_{i-1}; n_0 is the number of generators.
    """
    if length < 1:
        raise UsageError("resolution length must be positive")
    return _resolution(M.rel, length)


def syzygy_module(M, i):
    """Omega^i(M) presented by d_{i+1}, together with its map d_i into P_{i-1}."""
    if i < 1:
        raise UsageError("syzygy index must be at least 1")
    ds = resolution(M, i + 1)
    F = M.category
    omega = F.object(ds[i])
    P = F.free(ds[i - 1].ncols)
    return omega, F._mk(omega, P, ds[i - 1])


# -- functors --------------------------------------------------------------------

def _functor(ring, u):
    G = fpfun(ring)
    return G.object(G.child.wrap(u))


def representable(M):
    """Hom(M, -) as the object (M -> 0)."""
    ring = ring_of_module(M)
    F = M.category
    return _functor(ring, F.zero_morphism(M, F.zero_object()))


def ext_functor(M, i):
    """Ext^i(M, -): the object (Omega^i(M) -> P_{i-1}); i = 0 gives Hom(M, -)."""
    if i < 0:
        raise UsageError("Ext index must be non-negative")
    if i == 0:
        return representable(M)
    _, d = syzygy_module(M, i)
    return _functor(ring_of_module(M), d)


def tensor_functor(M):
    """M (x) - as the object (R^{1 x a} --rho^T--> R^{1 x b})."""
    F = M.category
    rel = M.rel
    return _functor(ring_of_module(M), F.free_morphism(rel.transpose()))


def tor_map(M, i):
    """The morphism Tensor(Omega^i M) -> Tensor(P_{i-1}) whose kernel is Tor_i(M, -)."""
    if i < 1:
        raise UsageError("Tor index must be at least 1")
    ring = ring_of_module(M)
    F = M.category
    G = fpfun(ring)
    omega, d = syzygy_module(M, i)
    source = tensor_functor(omega)
    target = tensor_functor(d.range)
    u = F.free_morphism(d.mor.transpose())
    return G.morphism(source, target, G.child.wrap(u))


def tor_functor(M, i):
    phi = tor_map(M, i)
    return phi.category.kernel_object(phi)


def hom_nat(F, G):
    """The fp module of natural transformations F -> G."""
    cat = F.category
    if G.category != cat:
        raise UsageError("functors are over different rings")
    return cat.hom_structure.H(F, G)


def nat_generators(F, G):
    """Natural transformations corresponding to the generators of hom_nat(F, G)."""
    hs = F.category.hom_structure
    H = hs.H(F, G)
    M = H.category
    ring = M.child.ring
    return [hs.nu_inv(F, G, M._mk(hs.one, H, Matrix.raw(ring, (row,), 1, H.gens)))
            for row in Matrix.identity(ring, H.gens).rows]


# -- invariants of modules ---------------------------------------------------------

def invariant_factors(M):
    """Non-unit diagonal entries of the Smith form (Z or Q); 0 marks a free summand."""
    ring = ring_of_module(M)
    if not isinstance(ring, (IntegerRing, RationalField)):
        raise UsageError("invariant factors need a principal ideal ring (Z or Q)")
    rel = M.rel
    S, _, _ = diagonalize(rel)
    ds = [S.rows[i][i] for i in range(min(S.nrows, S.ncols))]
    nonzero = [d for d in ds if d]
    factors = [d for d in nonzero if not ring.is_unit(d)]
    return factors + [ring.zero] * (rel.ncols - len(nonzero))


def format_factors(factors):
    torsion = [str(d) for d in factors if d]
    free = sum(1 for d in factors if not d)
    if free:
        torsion.append(f"0^{free}")
    return "[" + ", ".join(torsion) + "]"


def _pid_canonical(M):
    """(canonical object C, M -> C, C -> M) built from the Smith form."""
    F = M.category
    ring = ring_of_module(M)
    rel = M.rel
    a = rel.ncols
    S, _, V = diagonalize(rel)
    Vinv = solve_left(V, Matrix.identity(ring, a))
    diag = [S.rows[i][i] if i < S.nrows else ring.zero for i in range(a)]
    keep = [j for j in range(a) if not ring.is_unit(diag[j])]
    kept = [diag[j] for j in keep]
    C = F.object(Matrix.diagonal(ring, [d for d in kept if d], sum(1 for d in kept if d), len(keep)))
    order = [j for j in keep if diag[j]] + [j for j in keep if not diag[j]]
    P = Matrix.raw(ring, tuple(tuple(ring.one if j == order[k] else ring.zero for k in range(len(keep)))
                               for j in range(a)), a, len(keep))
    to = F._mk(M, C, V * P)
    back = F._mk(C, M, P.transpose() * Vinv)
    return C, to, back


# -- pruning and Fitting ideals ----------------------------------------------------

def prune(M):
    """(M', M -> M', M' -> M): drop generators that a relation with a unit entry expresses."""
    F = M.category
    ring = ring_of_module(M)
    rel = M.rel
    a = rel.ncols
    to = Matrix.identity(ring, a)
    back = Matrix.identity(ring, a)
    while True:
        hit = next(((i, j) for i, r in enumerate(rel.rows) for j, e in enumerate(r)
                    if e and ring.is_unit(e)), None)
        if hit is None:
            break
        i, j = hit
        n = rel.ncols
        c = rel.rows[i][j]
        if isinstance(ring, IntegerRing):
            inv = c  # c is +1 or -1
        else:
            inv = ring.coerce(1 / (c.constant() if isinstance(ring, PolynomialRing) else c))
        others = [k for k in range(n) if k != j]
        # e_j = -inv * sum_{k != j} rel[i][k] e_k
        P = Matrix.raw(ring, tuple(
            tuple(-inv * rel.rows[i][o] for o in others) if r == j
            else tuple(ring.one if r == o else ring.zero for o in others)
            for r in range(n)), n, n - 1)
        Q = Matrix.raw(ring, tuple(tuple(ring.one if k == o else ring.zero for k in range(n)) for o in others),
                       n - 1, n)
        new = rel * P
        rel = Matrix.raw(ring, tuple(r for t, r in enumerate(new.rows) if t != i and any(r)),
                         sum(1 for t, r in enumerate(new.rows) if t != i and any(r)), n - 1)
        to = to * P
        back = Q * back
    kept = tuple(dict.fromkeys(r for r in rel.rows if any(r)))
    rel = Matrix.raw(ring, kept, len(kept), rel.ncols)
    Mp = F.object(rel)
    return Mp, F._mk(M, Mp, to), F._mk(Mp, M, back)


def _det(rows_):
    n = len(rows_)
    if n == 0:
        return 1
    if n == 1:
        return rows_[0][0]
    out = 0
    for j, e in enumerate(rows_[0]):
        if e:
            minor = [r[:j] + r[j + 1:] for r in rows_[1:]]
            term = e * _det(minor)
            out = out + term if j % 2 == 0 else out - term
    return out


def fitting_ideal(M, j, max_minors=4000):
    """Groebner basis of the ideal of (a - j)-minors of the relation matrix, or None if too large."""
    ring = ring_of_module(M)
    rel = M.rel
    s = rel.ncols - j
    if s <= 0:
        return groebner([ring.one], ring)
    if s > rel.nrows:
        return groebner([], ring)
    rsets = list(itertools.combinations(range(rel.nrows), s))
    csets = list(itertools.combinations(range(rel.ncols), s))
    if len(rsets) * len(csets) > max_minors:
        return None
    minors = []
    for R in rsets:
        for C in csets:
            d = ring.coerce(_det([tuple(rel.rows[r][c] for c in C) for r in R]))
            if d:
                minors.append(d)
    return groebner(minors, ring)


# -- isomorphism tests --------------------------------------------------------------

def iso_search(A, B, max_tries=729):
    """Look for an isomorphism A -> B among small combinations of Hom generators.

    Returns (f, g) with f * g == id_A and g * f == id_B, or None when the
    bounded search found nothing.
    """
    cat = A.category
    hs = cat.hom_structure
    H = hs.H(A, B)
    Hp, _, back = prune(H) if isinstance(H, FreydObject) and isinstance(H.category.child.ring, PolynomialRing) \
        else (H, None, None)
    M = H.category
    ring = M.child.ring
    k = Hp.gens
    coeffs = (0, 1, -1)
    tried = 0
    for support in range(1, k + 1):
        for pos in itertools.combinations(range(k), support):
            for signs in itertools.product(coeffs[1:], repeat=support):
                tried += 1
                if tried > max_tries:
                    return None
                row = [ring.zero] * k
                for p, s in zip(pos, signs):
                    row[p] = ring.coerce(s)
                g = M._mk(hs.one, Hp, Matrix.raw(ring, (tuple(row),), 1, k))
                if back is not None:
                    g = M.compose(g, back)
                f = hs.nu_inv(A, B, g)
                if not cat.is_epi(f):
                    continue
                sigma = cat.is_mono(f)
                if sigma is None:
                    continue
                inv = cat.lift_along_mono(f, cat.identity(B), sigma)
                return f, inv
    return None


def _check_pair(f, g):
    cat = f.category
    return (cat.mor_eq(cat.compose(f, g), cat.identity(f.source))
            and cat.mor_eq(cat.compose(g, f), cat.identity(f.range)))


def module_iso_test(M, N):
    """Mutually inverse (f, g) between M and N, or None when they are not isomorphic.

    Over Q[x..] an inconclusive search raises UndecidedError.
    """
    F = M.category
    if N.category != F:
        raise UsageError("modules over different rings")
    if M == N:
        return F.identity(M), F.identity(M)
    ring = ring_of_module(M)
    if isinstance(ring, (IntegerRing, RationalField)):
        CM, toM, backM = _pid_canonical(M)
        CN, toN, backN = _pid_canonical(N)
        if CM != CN:
            return None
        return F.compose(toM, backN), F.compose(toN, backM)
    Mp, toM, backM = prune(M)
    Np, toN, backN = prune(N)
    if Mp.gens == Np.gens and groebner(Mp.rel) == groebner(Np.rel):
        return F.compose(toM, backN), F.compose(toN, backM)
    for j in range(max(Mp.gens, Np.gens) + 1):
        a, b = fitting_ideal(Mp, j), fitting_ideal(Np, j)
        if a is not None and b is not None and a != b:
            return None
    found = iso_search(Mp, Np)
    if found is None:
        raise UndecidedError("no isomorphism found by the bounded search and none excluded")
    f, g = found
    return F.compose(F.compose(toM, f), backN), F.compose(F.compose(toN, g), backM)


def functor_iso_test(F, G):
    """Isomorphism test for fp functors by a bounded search over natural transformations."""
    cat = F.category
    if F == G:
        return cat.identity(F), cat.identity(F)
    if cat.is_zero_object(F) and cat.is_zero_object(G):
        return cat.zero_morphism(F, G), cat.zero_morphism(G, F)
    if cat.is_zero_object(F) != cat.is_zero_object(G):
        return None
    found = iso_search(F, G)
    if found is None:
        raise UndecidedError("no natural isomorphism found by the bounded search")
    return found


def is_isomorphic(M, N):
    """True/False, or raises UndecidedError."""
    return module_iso_test(M, N) is not None
