"""Buchberger's algorithm for ideals and submodules of free modules over Q[x1..xn].

Internally a vector of a free module is a dict ``{(position, exponent): coeff}``.
Terms are compared position-over-term: a smaller position is larger, ties are
broken by the monomial order of the ring.  Ideals are the rank-one case.

With ``split=n`` the positions from n on form one block below all others and are
compared term-over-position among themselves.  This is still an elimination order
for the first n positions, and on cofactor columns it avoids the huge
position-over-term basis of the syzygy module.
"""

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .rings import Poly, PolynomialRing


def term_key(ring, split=None):
    mkey = ring.monomial_key
    if split is None:
        return lambda t: (-t[0], mkey(t[1]))
    return lambda t: (-t[0], mkey(t[1])) if t[0] < split else (-split, mkey(t[1]), -t[0])


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_shifted(f, g, shift, c):
    """f -= c * x^shift * g, in place."""
    for (p, x), v in g.items():
        k = (p, tuple(a + b for a, b in zip(x, shift)))
        nv = f.get(k, 0) - c * v
        if nv:
            f[k] = nv
        else:
            del f[k]


def reduce_vector(f, basis, key):
    """Full normal form of f with respect to monic (leading term, vector) pairs."""
    f = dict(f)
    r = {}
    by_pos = {}
    for lt, g in basis:
        by_pos.setdefault(lt[0], []).append((lt[1], g))
    while f:
        t = max(f, key=key)
        c = f[t]
        p, x = t
        for gx, g in by_pos.get(p, ()):
            if _divides(gx, x):
                _sub_shifted(f, g, tuple(b - a for a, b in zip(gx, x)), c)
                break
        else:
            r[t] = c
            del f[t]
    return r


def _monic(g, key):
    lt = max(g, key=key)
    c = g[lt]
    if c != 1:
        g = {k: v / c for k, v in g.items()}
    return lt, g


def groebner_vectors(vectors, ring, ideal=False, key=None):
    """Reduced Groebner basis as a list of (leading term, monic vector), largest first."""
    key = key or term_key(ring)
    G = []
    pending = set()
    heap = []

    def add(g):
        lt, g = _monic(g, key)
        j = len(G)
        for i, (lti, _) in enumerate(G):
            if lti[0] == lt[0]:
                lcm = tuple(max(a, b) for a, b in zip(lti[1], lt[1]))
                heapq.heappush(heap, (sum(lcm), i, j))
                pending.add((i, j))
        G.append((lt, g))

    for v in vectors:
        v = reduce_vector(v, G, key)
        if v:
            add(v)

    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        (pos, xi), gi = G[i]
        (_, xj), gj = G[j]
        lcm = tuple(max(a, b) for a, b in zip(xi, xj))
        if ideal and all(not (a and b) for a, b in zip(xi, xj)):
            continue
        skip = False
        for k, ((pk, xk), _) in enumerate(G):
            if k == i or k == j or pk != pos or not _divides(xk, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                skip = True
                break
        if skip:
            continue
        s = {}
        si = tuple(a - b for a, b in zip(lcm, xi))
        sj = tuple(a - b for a, b in zip(lcm, xj))
        _sub_shifted(s, gi, si, -1)
        _sub_shifted(s, gj, sj, 1)
        h = reduce_vector(s, G, key)
        if h:
            add(h)

    keep = []
    for idx, ((p, x), g) in enumerate(G):
        redundant = False
        for o, ((q, y), _) in enumerate(G):
            if o != idx and q == p and _divides(y, x) and (y != x or o < idx):
                redundant = True
                break
        if not redundant:
            keep.append((idx, (p, x), g))
    out = []
    for idx, lt, g in keep:
        others = [(lt2, g2) for idx2, lt2, g2 in keep if idx2 != idx]
        out.append((lt, reduce_vector(g, others, key)))
    out.sort(key=lambda item: key(item[0]), reverse=True)
    return out


def poly_to_vector(p, pos=0):
    return {(pos, e): c for e, c in p.terms.items()}


def row_to_vector(row, offset=0):
    v = {}
    for j, p in enumerate(row):
        for e, c in p.terms.items():
            v[(j + offset, e)] = c
    return v


def vector_to_row(v, ring, rank, offset=0):
    parts = [dict() for _ in range(rank)]
    for (p, e), c in v.items():
        parts[p - offset][e] = c
    return tuple(Poly(ring, t) for t in parts)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis; equal bases mean equal ideals or submodules."""

    ring: PolynomialRing
    generators: tuple
    rank: int = None

    @property
    def is_ideal(self):
        return self.rank is None

    def vectors(self):
        if self.is_ideal:
            return [poly_to_vector(g) for g in self.generators]
        return [row_to_vector(r) for r in self.generators]

    def basis_pairs(self):
        key = term_key(self.ring)
        return [(max(v, key=key), v) for v in self.vectors()]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def contains(self, p):
        return not normal_form(p, self)


def _infer_ring(gens, ring):
    for g in gens:
        items = g if isinstance(g, (tuple, list)) else [g]
        for p in items:
            if isinstance(p, Poly):
                return p.ring
    if ring is None:
        raise UsageError("cannot infer the polynomial ring; pass ring=")
    return ring


def groebner(gens, ring=None, rank=None):
    """Reduced Groebner basis of an ideal (list of polynomials) or submodule (list of rows).

    A :class:`~fpcat.matrix.Matrix` is read as a list of module rows.
    """
    from .matrix import Matrix

    if isinstance(gens, Matrix):
        ring = gens.ring
        rank = gens.ncols
        gens = list(gens.rows)
    gens = list(gens)
    ring = ring if ring is not None else _infer_ring(gens, ring)
    if not isinstance(ring, PolynomialRing):
        raise UsageError(f"Groebner bases need a polynomial ring, got {ring}")
    module = rank is not None or any(isinstance(g, (tuple, list)) for g in gens)
    if module:
        if rank is None:
            rank = len(gens[0])
        rows = [tuple(ring.coerce(p) for p in g) for g in gens]
        if any(len(r) != rank for r in rows):
            raise UsageError("module generators must all have the same length")
        basis = groebner_vectors([row_to_vector(r) for r in rows], ring)
        return GroebnerBasis(ring, tuple(vector_to_row(v, ring, rank) for _, v in basis), rank)
    polys = [ring.coerce(p) for p in gens]
    basis = groebner_vectors([poly_to_vector(p) for p in polys], ring, ideal=True)
    return GroebnerBasis(ring, tuple(Poly(ring, {e: c for (_, e), c in v.items()}) for _, v in basis))


def normal_form(p, gb):
    key = term_key(gb.ring)
    if gb.is_ideal:
        p = gb.ring.coerce(p)
        r = reduce_vector(poly_to_vector(p), gb.basis_pairs(), key)
        return Poly(gb.ring, {e: c for (_, e), c in r.items()})
    row = tuple(gb.ring.coerce(x) for x in p)
    if len(row) != gb.rank:
        raise UsageError(f"expected a row of length {gb.rank}")
    r = reduce_vector(row_to_vector(row), gb.basis_pairs(), key)
    return vector_to_row(r, gb.ring, gb.rank)


def s_polynomial(f, g):
    """S-polynomial of two polynomials (used by the tests as an oracle hook)."""
    ring = f.ring
    key = term_key(ring)
    vf, vg = poly_to_vector(f), poly_to_vector(g)
    (_, xf), cf = max(vf.items(), key=lambda t: key(t[0]))
    (_, xg), cg = max(vg.items(), key=lambda t: key(t[0]))
    lcm = tuple(max(a, b) for a, b in zip(xf, xg))
    s = {}
    _sub_shifted(s, vf, tuple(a - b for a, b in zip(lcm, xf)), -1 / Fraction(cf))
    _sub_shifted(s, vg, tuple(a - b for a, b in zip(lcm, xg)), 1 / Fraction(cg))
    return Poly(ring, {e: c for (_, e), c in s.items()})
