"""Additive closures.  Rows_R (the closure of a ring) stores objects as naturals
and morphisms as a single Matrix; other closures keep explicit block matrices."""

from functools import lru_cache

from .base import RingCat
from .category import Category, HomStructure, lift_via_hom_structure, colift_via_hom_structure
from .errors import CapabilityError, UsageError
from .linalg import row_syzygies, solve_left
from .matrix import Matrix


class Rows(Category):
    """Rows_R: objects n stand for R^{1 x n}, morphisms m -> n are m x n matrices."""

    is_additive = True
    has_weak_kernels = True

    def __init__(self, ring):
        self.ring = ring

    def __repr__(self):
        return f"Rows({self.ring})"

    def __eq__(self, other):
        return isinstance(other, Rows) and self.ring == other.ring

    def __hash__(self):
        return hash(("Rows", self.ring))

    @property
    def has_decidable_lifts(self):
        return True

    @property
    def hom_structure(self):
        return KroneckerHom(self)

    def morphism(self, entries, nrows=None, ncols=None):
        return Matrix(self.ring, entries, nrows, ncols)

    def _obj(self, n):
        if not isinstance(n, int) or n < 0:
            raise UsageError(f"objects of {self} are natural numbers, got {n!r}")
        return n

    def identity(self, A):
        return Matrix.identity(self.ring, self._obj(A))

    def compose(self, f, g):
        return f * g

    def mor_eq(self, f, g):
        return f == g

    def zero_morphism(self, A, B):
        return Matrix.zero(self.ring, self._obj(A), self._obj(B))

    def add(self, f, g):
        return f + g

    def negate(self, f):
        return -f

    def subtract(self, f, g):
        return f - g

    def is_zero(self, f):
        return f.is_zero()

    def zero_object(self):
        return 0

    def is_zero_object(self, A):
        return A == 0

    def direct_sum(self, objects):
        return sum(self._obj(n) for n in objects)

    def injection(self, objects, k):
        if not 0 <= k < len(objects):
            raise UsageError("direct sum index out of range")
        n = objects[k]
        off = sum(objects[:k])
        total = sum(objects)
        z, o = self.ring.zero, self.ring.one
        rows = tuple(tuple(o if j == off + i else z for j in range(total)) for i in range(n))
        return Matrix.raw(self.ring, rows, n, total)

    def projection(self, objects, k):
        return self.injection(objects, k).transpose()

    def row_morphism(self, morphisms, target):
        return Matrix.vstack(self.ring, morphisms, target)

    def col_morphism(self, morphisms, source):
        return Matrix.hstack(self.ring, morphisms, source)

    def diagonal(self, morphisms):
        return Matrix.block_diagonal(self.ring, morphisms)

    def matrix_morphism(self, sources, ranges, blocks):
        rows = [Matrix.hstack(self.ring, list(blocks[i]), m) if ranges else Matrix.zero(self.ring, m, 0)
                for i, m in enumerate(sources)]
        return Matrix.vstack(self.ring, rows, sum(ranges))

    def components(self, f, sources, ranges):
        out = []
        r0 = 0
        for m in sources:
            c0 = 0
            row = []
            for n in ranges:
                row.append(f.submatrix(range(r0, r0 + m), range(c0, c0 + n)))
                c0 += n
            out.append(row)
            r0 += m
        return out

    def lift(self, alpha, gamma):
        return solve_left(gamma, alpha)

    def colift(self, f, tau):
        x = solve_left(f.transpose(), tau.transpose())
        return None if x is None else x.transpose()

    def weak_kernel(self, f):
        return row_syzygies(f)

    def weak_kernel_lift(self, f, tau):
        if not (tau * f).is_zero():
            raise UsageError("weak kernel lift needs tau * f == 0")
        u = solve_left(row_syzygies(f), tau)
        assert u is not None, "row syzygies failed to generate the kernel"
        return u


@lru_cache(maxsize=None)
def rows(ring):
    return Rows(ring)


def weak_kernel_rows(f):
    """(object, embedding) of a weak kernel of a Rows_R morphism."""
    if not isinstance(f, Matrix):
        raise CapabilityError("weak kernels are only provided for Rows_R")
    emb = row_syzygies(f)
    return emb.nrows, emb


class KroneckerHom(HomStructure):
    """H(m, n) = m*n, H(alpha, beta) = alpha^T (x) beta, nu = row-major flattening."""

    def __init__(self, cat):
        self.source = self.target = cat
        self.one = 1

    def H(self, A, B):
        return A * B

    def H_mor(self, alpha, beta):
        return alpha.transpose().kron(beta)

    def nu(self, f):
        return f.flatten()

    def nu_inv(self, A, B, g):
        return g.reshape(A, B)


# -- generic additive closure -------------------------------------------------------

class AddMorphism:
    __slots__ = ("category", "source", "range", "blocks")

    def __init__(self, category, source, range_, blocks):
        self.category = category
        self.source = tuple(source)
        self.range = tuple(range_)
        self.blocks = tuple(tuple(r) for r in blocks)
        if len(self.blocks) != len(self.source) or any(len(r) != len(self.range) for r in self.blocks):
            raise UsageError("block shape does not match source and range lengths")
        for i, r in enumerate(self.blocks):
            for j, b in enumerate(r):
                if b.source != self.source[i] or b.range != self.range[j]:
                    raise UsageError(f"block ({i},{j}) has the wrong source or range")

    def __eq__(self, other):
        return (isinstance(other, AddMorphism) and self.source == other.source
                and self.range == other.range and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.source, self.range, self.blocks))

    def __repr__(self):
        return f"AddMorphism({list(map(list, self.blocks))})"


class AdditiveClosure(Category):
    """Formal direct sums: objects are tuples of child objects."""

    is_additive = True

    def __init__(self, child):
        if not child.is_ab:
            raise CapabilityError("the additive closure needs an Ab-category")
        self.child = child

    def __repr__(self):
        return f"AdditiveClosure({self.child!r})"

    def __eq__(self, other):
        return isinstance(other, AdditiveClosure) and self.child == other.child

    def __hash__(self):
        return hash(("AdditiveClosure", self.child))

    @property
    def hom_structure(self):
        hs = self.child.hom_structure
        return None if hs is None else AdditiveClosureHom(self, hs)

    @property
    def has_decidable_lifts(self):
        if isinstance(self.child, RingCat) and self.child.ideal is None:
            return True
        hs = self.hom_structure
        return hs is not None and hs.target.has_decidable_lifts

    def morphism(self, source, range_, blocks):
        return AddMorphism(self, source, range_, blocks)

    def obj(self, *components):
        return tuple(components)

    def identity(self, A):
        c = self.child
        return AddMorphism(self, A, A, [[c.identity(a) if i == j else c.zero_morphism(a, b)
                                         for j, b in enumerate(A)] for i, a in enumerate(A)])

    def zero_morphism(self, A, B):
        c = self.child
        return AddMorphism(self, A, B, [[c.zero_morphism(a, b) for b in B] for a in A])

    def compose(self, f, g):
        c = self.child
        blocks = []
        for i, a in enumerate(f.source):
            row = []
            for k, d in enumerate(g.range):
                s = c.zero_morphism(a, d)
                for j in range(len(f.range)):
                    s = c.add(s, c.compose(f.blocks[i][j], g.blocks[j][k]))
                row.append(s)
            blocks.append(row)
        return AddMorphism(self, f.source, g.range, blocks)

    def mor_eq(self, f, g):
        c = self.child
        return all(c.mor_eq(x, y) for r, s in zip(f.blocks, g.blocks) for x, y in zip(r, s))

    def add(self, f, g):
        c = self.child
        return AddMorphism(self, f.source, f.range,
                           [[c.add(x, y) for x, y in zip(r, s)] for r, s in zip(f.blocks, g.blocks)])

    def negate(self, f):
        c = self.child
        return AddMorphism(self, f.source, f.range, [[c.negate(x) for x in r] for r in f.blocks])

    def zero_object(self):
        return ()

    def direct_sum(self, objects):
        return tuple(a for A in objects for a in A)

    def injection(self, objects, k):
        if not 0 <= k < len(objects):
            raise UsageError("direct sum index out of range")
        S = self.direct_sum(objects)
        off = sum(len(A) for A in objects[:k])
        c = self.child
        blocks = [[c.identity(a) if j == off + i else c.zero_morphism(a, b) for j, b in enumerate(S)]
                  for i, a in enumerate(objects[k])]
        return AddMorphism(self, objects[k], S, blocks)

    def projection(self, objects, k):
        S = self.direct_sum(objects)
        off = sum(len(A) for A in objects[:k])
        c = self.child
        blocks = [[c.identity(a) if i == off + j else c.zero_morphism(a, b) for j, b in enumerate(objects[k])]
                  for i, a in enumerate(S)]
        return AddMorphism(self, S, objects[k], blocks)

    def row_morphism(self, morphisms, target):
        blocks = [r for f in morphisms for r in f.blocks]
        return AddMorphism(self, self.direct_sum([f.source for f in morphisms]), target, blocks)

    def col_morphism(self, morphisms, source):
        blocks = [sum((g.blocks[i] for g in morphisms), ()) for i in range(len(source))]
        return AddMorphism(self, source, self.direct_sum([g.range for g in morphisms]), blocks)

    def _ring_matrix(self, f):
        ring = self.child.ring
        return Matrix(ring, [[b.value for b in r] for r in f.blocks], len(f.source), len(f.range))

    def _from_matrix(self, M, source, range_):
        c = self.child
        return AddMorphism(self, source, range_, [[c.morphism(a) for a in r] for r in M.rows])

    def lift(self, alpha, gamma):
        if isinstance(self.child, RingCat) and self.child.ideal is None:
            x = solve_left(self._ring_matrix(gamma), self._ring_matrix(alpha))
            return None if x is None else self._from_matrix(x, alpha.source, gamma.source)
        if not self.has_decidable_lifts:
            self._missing("decidable lifts")
        return lift_via_hom_structure(alpha, gamma, self.hom_structure)

    def colift(self, f, tau):
        if isinstance(self.child, RingCat) and self.child.ideal is None:
            x = solve_left(self._ring_matrix(f).transpose(), self._ring_matrix(tau).transpose())
            return None if x is None else self._from_matrix(x.transpose(), f.range, tau.range)
        if not self.has_decidable_lifts:
            self._missing("decidable colifts")
        return colift_via_hom_structure(f, tau, self.hom_structure)


def additive_closure(cat):
    """The additive closure; the closure of a plain ring category is Rows_R."""
    if isinstance(cat, RingCat) and cat.ideal is None:
        return rows(cat.ring)
    return AdditiveClosure(cat)


class AdditiveClosureHom(HomStructure):
    """Extends (H, 1, nu) to direct sums, blocks indexed row-major by (j, s) and (i, t)."""

    def __init__(self, source, hs):
        self.source = source
        self.hs = hs
        inner = hs.target
        if inner.is_additive:
            self.target = inner
            self._obj = lambda X: X
            self._mor = lambda f: f
            self._unmor = lambda g: g
        elif isinstance(inner, RingCat):
            self.target = rows(inner.ring)
            self._obj = lambda X: 1
            self._mor = lambda f: Matrix(inner.ring, [[f.value]])
            self._unmor = lambda g: inner.morphism(g.rows[0][0])
        else:
            T = AdditiveClosure(inner)
            self.target = T
            self._obj = lambda X: (X,)
            self._mor = lambda f: AddMorphism(T, (f.source,), (f.range,), [[f]])
            self._unmor = lambda g: g.blocks[0][0]
        self.one = self._obj(hs.one)

    def _parts(self, A, B):
        return [self._obj(self.hs.H(a, b)) for a in A for b in B]

    def H(self, A, B):
        return self.target.direct_sum(self._parts(A, B))

    def H_mor(self, alpha, beta):
        hs = self.hs
        A, B = alpha.source, alpha.range
        C, D = beta.source, beta.range
        blocks = [[self._mor(hs.H_mor(alpha.blocks[i][j], beta.blocks[s][t]))
                   for i in range(len(A)) for t in range(len(D))]
                  for j in range(len(B)) for s in range(len(C))]
        return self.target.matrix_morphism(self._parts(B, C), self._parts(A, D), blocks)

    def nu(self, f):
        parts = [self._mor(self.hs.nu(b)) for r in f.blocks for b in r]
        return self.target.col_morphism(parts, self.one)

    def nu_inv(self, A, B, g):
        parts = self._parts(A, B)
        comps = self.target.components(g, [self.one], parts)[0]
        blocks = [[self.hs.nu_inv(a, b, self._unmor(comps[i * len(B) + j])) for j, b in enumerate(B)]
                  for i, a in enumerate(A)]
        return AddMorphism(self.source, A, B, blocks)
