"""Capability contracts shared by every category constructor, plus the opposite category.

Composition is diagrammatic: ``compose(f, g)`` means "f, then g".  Every
morphism value carries ``category``, ``source`` and ``range`` attributes;
objects are plain payload values compared structurally.
"""

from functools import lru_cache

from .errors import CapabilityError, UsageError

CAPABILITIES = (
    "ab",
    "additive",
    "decidable_equality",
    "decidable_lifts",
    "weak_kernels",
    "cokernels",
    "kernels",
    "abelian",
    "hom_structure",
)


class Category:
    """Base class; subclasses override what they support."""

    is_ab = True
    is_additive = False
    has_weak_kernels = False
    has_cokernels = False
    has_kernels = False

    @property
    def has_decidable_lifts(self):
        return False

    @property
    def is_abelian(self):
        return self.has_kernels and self.has_cokernels

    @property
    def hom_structure(self):
        return None

    def capabilities(self):
        flags = {
            "ab": self.is_ab,
            "additive": self.is_additive,
            "decidable_equality": True,
            "decidable_lifts": self.has_decidable_lifts,
            "weak_kernels": self.has_weak_kernels or self.has_kernels,
            "cokernels": self.has_cokernels,
            "kernels": self.has_kernels,
            "abelian": self.is_abelian,
            "hom_structure": self.hom_structure is not None,
        }
        return frozenset(k for k, v in flags.items() if v)

    def _missing(self, what):
        raise CapabilityError(f"{self} does not provide {what}")

    # core data
    def identity(self, A):
        self._missing("identities")

    def compose(self, f, g):
        self._missing("composition")

    def mor_eq(self, f, g):
        self._missing("decidable equality")

    # Ab structure
    def zero_morphism(self, A, B):
        self._missing("zero morphisms")

    def add(self, f, g):
        self._missing("addition of morphisms")

    def negate(self, f):
        self._missing("negation of morphisms")

    def subtract(self, f, g):
        return self.add(f, self.negate(g))

    def is_zero(self, f):
        return self.mor_eq(f, self.zero_morphism(f.source, f.range))

    # additive structure
    def zero_object(self):
        self._missing("a zero object")

    def is_zero_object(self, A):
        return A == self.zero_object()

    def direct_sum(self, objects):
        self._missing("direct sums")

    def injection(self, objects, k):
        self._missing("direct sum injections")

    def projection(self, objects, k):
        self._missing("direct sum projections")

    def row_morphism(self, morphisms, target):
        """The morphism (f_1; ...; f_k): A_1 + ... + A_k -> target."""
        objs = [f.source for f in morphisms]
        S = self.direct_sum(objs)
        out = self.zero_morphism(S, target)
        for k, f in enumerate(morphisms):
            out = self.add(out, self.compose(self.projection(objs, k), f))
        return out

    def col_morphism(self, morphisms, source):
        """The morphism (g_1 ... g_k): source -> B_1 + ... + B_k."""
        objs = [g.range for g in morphisms]
        S = self.direct_sum(objs)
        out = self.zero_morphism(source, S)
        for k, g in enumerate(morphisms):
            out = self.add(out, self.compose(g, self.injection(objs, k)))
        return out

    def diagonal(self, morphisms):
        srcs = [f.source for f in morphisms]
        rngs = [f.range for f in morphisms]
        blocks = [[f if i == j else self.zero_morphism(srcs[i], rngs[j]) for j in range(len(rngs))]
                  for i, f in enumerate(morphisms)]
        return self.matrix_morphism(srcs, rngs, blocks)

    def matrix_morphism(self, sources, ranges, blocks):
        """Morphism between direct sums from its matrix of components."""
        rows = [self.col_morphism(list(blocks[i]), A) for i, A in enumerate(sources)]
        return self.row_morphism(rows, self.direct_sum(ranges))

    def components(self, f, sources, ranges):
        return [
            [self.compose(self.compose(self.injection(sources, i), f), self.projection(ranges, j))
             for j in range(len(ranges))]
            for i in range(len(sources))
        ]

    # lifts and weak kernels
    def lift(self, alpha, gamma):
        """Some l with l * gamma == alpha, or None."""
        self._missing("decidable lifts")

    def colift(self, f, tau):
        """Some u with f * u == tau, or None."""
        self._missing("decidable colifts")

    def weak_kernel(self, f):
        self._missing("weak kernels")

    def weak_kernel_lift(self, f, tau):
        self._missing("weak kernels")

    def cokernel_projection(self, f):
        self._missing("cokernels")

    def cokernel_colift(self, f, tau):
        self._missing("cokernels")

    def kernel_embedding(self, f):
        self._missing("kernels")

    def kernel_lift(self, f, tau):
        self._missing("kernels")


def _check_category(f, g):
    if f.category != g.category:
        raise UsageError(f"morphisms live in different categories: {f.category} vs {g.category}")


def compose(f, g):
    _check_category(f, g)
    if f.range != g.source:
        raise UsageError("morphisms are not composable: range of the first differs from source of the second")
    return f.category.compose(f, g)


def mor_eq(f, g):
    _check_category(f, g)
    if f.source != g.source or f.range != g.range:
        raise UsageError("equality needs morphisms with the same source and range")
    return f.category.mor_eq(f, g)


def identity(cat, A):
    return cat.identity(A)


def zero_morphism(cat, A, B):
    return cat.zero_morphism(A, B)


def add(f, g):
    _check_category(f, g)
    if f.source != g.source or f.range != g.range:
        raise UsageError("only parallel morphisms can be added")
    return f.category.add(f, g)


def negate(f):
    return f.category.negate(f)


def compose_all(*morphisms):
    out = morphisms[0]
    for g in morphisms[1:]:
        out = compose(out, g)
    return out


# -- homomorphism structures -----------------------------------------------------

class HomStructure:
    """A B-homomorphism structure (H, 1, nu) for a category A.

    ``H_mor(alpha, beta)`` takes alpha: A' -> A and beta: B -> B' and returns a
    B-morphism H(A, B) -> H(A', B').  ``nu_inv`` needs the intended source and
    range because 1 -> H(A, B) does not remember them.
    """

    source = None
    target = None
    one = None

    def H(self, A, B):
        raise NotImplementedError

    def H_mor(self, alpha, beta):
        raise NotImplementedError

    def nu(self, f):
        raise NotImplementedError

    def nu_inv(self, A, B, g):
        raise NotImplementedError


def lift_via_hom_structure(alpha, gamma, hs):
    """Some l with l * gamma == alpha, decided inside the target category of hs."""
    cat = hs.source
    A, C = alpha.source, gamma.source
    if alpha.range != gamma.range:
        raise UsageError("lift needs a cospan alpha: A -> B, gamma: C -> B")
    l = hs.target.lift(hs.nu(alpha), hs.H_mor(cat.identity(A), gamma))
    return None if l is None else hs.nu_inv(A, C, l)


def colift_via_hom_structure(f, tau, hs):
    """Some u with f * u == tau, decided inside the target category of hs."""
    cat = hs.source
    B, T = f.range, tau.range
    if f.source != tau.source:
        raise UsageError("colift needs a span f: A -> B, tau: A -> T")
    u = hs.target.lift(hs.nu(tau), hs.H_mor(f, cat.identity(T)))
    return None if u is None else hs.nu_inv(B, T, u)


# -- opposite category -----------------------------------------------------------

class OpMorphism:
    """A morphism of the opposite category, stored as the underlying morphism u."""

    __slots__ = ("category", "u")

    def __init__(self, category, u):
        self.category = category
        self.u = u

    @property
    def source(self):
        return self.u.range

    @property
    def range(self):
        return self.u.source

    def __eq__(self, other):
        return isinstance(other, OpMorphism) and self.category == other.category and self.u == other.u

    def __hash__(self):
        return hash(("op", self.u))

    def __repr__(self):
        return f"op({self.u!r})"


class Opposite(Category):
    def __init__(self, child):
        self.child = child
        self.is_ab = child.is_ab
        self.is_additive = child.is_additive
        # kernels and cokernels swap
        self.has_kernels = child.has_cokernels
        self.has_cokernels = child.has_kernels
        self.has_weak_kernels = child.has_cokernels

    def __repr__(self):
        return f"Opposite({self.child!r})"

    def __eq__(self, other):
        return isinstance(other, Opposite) and self.child == other.child

    def __hash__(self):
        return hash(("Opposite", self.child))

    def wrap(self, u):
        return OpMorphism(self, u)

    @property
    def has_decidable_lifts(self):
        return self.child.has_decidable_lifts

    @property
    def hom_structure(self):
        hs = self.child.hom_structure
        return None if hs is None else OppositeHom(self, hs)

    def identity(self, A):
        return self.wrap(self.child.identity(A))

    def compose(self, f, g):
        return self.wrap(self.child.compose(g.u, f.u))

    def mor_eq(self, f, g):
        return self.child.mor_eq(f.u, g.u)

    def zero_morphism(self, A, B):
        return self.wrap(self.child.zero_morphism(B, A))

    def add(self, f, g):
        return self.wrap(self.child.add(f.u, g.u))

    def negate(self, f):
        return self.wrap(self.child.negate(f.u))

    def subtract(self, f, g):
        return self.wrap(self.child.subtract(f.u, g.u))

    def is_zero(self, f):
        return self.child.is_zero(f.u)

    def zero_object(self):
        return self.child.zero_object()

    def is_zero_object(self, A):
        return self.child.is_zero_object(A)

    def direct_sum(self, objects):
        return self.child.direct_sum(objects)

    def injection(self, objects, k):
        return self.wrap(self.child.projection(objects, k))

    def projection(self, objects, k):
        return self.wrap(self.child.injection(objects, k))

    def row_morphism(self, morphisms, target):
        return self.wrap(self.child.col_morphism([f.u for f in morphisms], target))

    def col_morphism(self, morphisms, source):
        return self.wrap(self.child.row_morphism([g.u for g in morphisms], source))

    def diagonal(self, morphisms):
        return self.wrap(self.child.diagonal([f.u for f in morphisms]))

    def lift(self, alpha, gamma):
        u = self.child.colift(gamma.u, alpha.u)
        return None if u is None else self.wrap(u)

    def colift(self, f, tau):
        u = self.child.lift(tau.u, f.u)
        return None if u is None else self.wrap(u)

    def weak_kernel(self, f):
        if not self.child.has_cokernels:
            self._missing("weak kernels")
        return self.wrap(self.child.cokernel_projection(f.u))

    def weak_kernel_lift(self, f, tau):
        if not self.child.has_cokernels:
            self._missing("weak kernels")
        return self.wrap(self.child.cokernel_colift(f.u, tau.u))

    def kernel_embedding(self, f):
        return self.weak_kernel(f)

    def kernel_lift(self, f, tau):
        return self.weak_kernel_lift(f, tau)

    def cokernel_projection(self, f):
        if not self.child.has_kernels:
            self._missing("cokernels")
        return self.wrap(self.child.kernel_embedding(f.u))

    def cokernel_colift(self, f, tau):
        if not self.child.has_kernels:
            self._missing("cokernels")
        return self.wrap(self.child.kernel_lift(f.u, tau.u))


@lru_cache(maxsize=None)
def opposite(cat):
    if isinstance(cat, Opposite):
        return cat.child
    return Opposite(cat)


def op_wrap(f):
    """View f as a morphism of the opposite category (and unwrap twice-opposite values)."""
    if isinstance(f, OpMorphism):
        return f.u
    return OpMorphism(opposite(f.category), f)


class OppositeHom(HomStructure):
    """H^op(A, B) = H(B, A) and nu^op(f) = nu(f)."""

    def __init__(self, source, hs):
        self.source = source
        self.hs = hs
        self.target = hs.target
        self.one = hs.one

    def H(self, A, B):
        return self.hs.H(B, A)

    def H_mor(self, alpha, beta):
        return self.hs.H_mor(beta.u, alpha.u)

    def nu(self, f):
        return self.hs.nu(f.u)

    def nu_inv(self, A, B, g):
        return self.source.wrap(self.hs.nu_inv(B, A, g))
