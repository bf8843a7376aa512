"""The Freyd category of an additive category.

An object is a child morphism rho: R_A -> A standing for its formal cokernel.
A morphism A -> B is a child morphism alpha: A -> B for which some rho_alpha
with rho_A * alpha == rho_alpha * rho_B exists.  Two morphisms are equal when
their difference factors through rho_B.  Witnesses are found by child lifts and
cached on the value; equality never looks at them.
"""

from functools import lru_cache

from .additive import Rows
from .category import Category, HomStructure, lift_via_hom_structure, colift_via_hom_structure
from .errors import CapabilityError, UsageError

_UNSET = object()


class FreydObject:
    __slots__ = ("category", "rel", "_hash")

    def __init__(self, category, rel):
        self.category = category
        self.rel = rel
        self._hash = None

    @property
    def gens(self):
        return self.rel.range

    @property
    def relobj(self):
        return self.rel.source

    def __eq__(self, other):
        return isinstance(other, FreydObject) and self.category == other.category and self.rel == other.rel

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("FreydObject", self.rel))
        return self._hash

    def __repr__(self):
        return f"FreydObject({self.rel!r})"


class FreydMorphism:
    __slots__ = ("category", "source", "range", "mor", "_w", "_hash")

    def __init__(self, category, source, range_, mor, witness=_UNSET):
        self.category = category
        self.source = source
        self.range = range_
        self.mor = mor
        self._w = witness
        self._hash = None

    @property
    def witness(self):
        """Some rho_alpha with rho_A * alpha == rho_alpha * rho_B."""
        if self._w is _UNSET:
            c = self.category.child
            self._w = c.lift(c.compose(self.source.rel, self.mor), self.range.rel)
        if self._w is None:
            raise UsageError("not a well-defined morphism: relations are not mapped into relations")
        return self._w

    def is_valid(self):
        try:
            self.witness
        except UsageError:
            return False
        return True

    def __eq__(self, other):
        # structural; categorical equality is FreydCategory.mor_eq
        return (isinstance(other, FreydMorphism) and self.source == other.source
                and self.range == other.range and self.mor == other.mor)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("FreydMorphism", self.source, self.range, self.mor))
        return self._hash

    def __repr__(self):
        return f"FreydMorphism({self.mor!r})"


class WeakPullback:
    """Weak pullback of a cospan alpha: A -> B <- C: gamma, from a weak kernel of (alpha; -gamma)."""

    def __init__(self, child, alpha, gamma):
        self.child = child
        A, C = alpha.source, gamma.source
        self.delta = child.row_morphism([alpha, child.negate(gamma)], alpha.range)
        self.embedding = emb = child.weak_kernel(self.delta)
        self.object = emb.source
        self.proj1 = child.compose(emb, child.projection([A, C], 0))
        self.proj2 = child.compose(emb, child.projection([A, C], 1))

    def inducer(self, p, q):
        """u with u * proj1 == p and u * proj2 == q, given p * alpha == q * gamma."""
        tau = self.child.col_morphism([p, q], p.source)
        return self.child.weak_kernel_lift(self.delta, tau)


class Subobject:
    """A monomorphism into a fixed ambient object, with its mono witness found on demand."""

    __slots__ = ("emb", "_sigma")

    def __init__(self, emb, sigma=_UNSET):
        self.emb = emb
        self._sigma = sigma

    @property
    def category(self):
        return self.emb.category

    @property
    def ambient(self):
        return self.emb.range

    @property
    def object(self):
        return self.emb.source

    @property
    def sigma(self):
        if self._sigma is _UNSET:
            self._sigma = self.category.is_mono(self.emb)
        if self._sigma is None:
            raise UsageError("the embedding of a subobject must be a monomorphism")
        return self._sigma

    def __repr__(self):
        return f"Subobject({self.emb!r})"


class FreydCategory(Category):
    is_additive = True
    has_cokernels = True

    def __init__(self, child):
        if not child.is_additive:
            raise CapabilityError("the Freyd category needs an additive child category")
        self.child = child
        self._wp = {}
        self._hs = _UNSET

    def __repr__(self):
        return f"Freyd({self.child!r})"

    def __eq__(self, other):
        return isinstance(other, FreydCategory) and self.child == other.child

    def __hash__(self):
        return hash(("Freyd", self.child))

    @property
    def has_kernels(self):
        return self.child.has_weak_kernels

    @property
    def has_weak_kernels(self):
        return self.child.has_weak_kernels

    @property
    def has_decidable_lifts(self):
        # lifts out of the unit of the target are child lifts, since the unit is free
        return self.child.has_decidable_lifts and self.hom_structure is not None

    @property
    def hom_structure(self):
        if self._hs is _UNSET:
            self._hs = None
            hs = self.child.hom_structure
            if hs is not None:
                T = hs.target
                if isinstance(T, Rows):
                    self._hs = FreydHom(self, EmbedHom(hs, freyd(T)))
                elif isinstance(T, FreydCategory) and T.is_abelian:
                    self._hs = FreydHom(self, hs)
        return self._hs

    # -- construction -------------------------------------------------------------

    def object(self, rel):
        return FreydObject(self, rel)

    def free(self, A):
        """The object presented without relations."""
        c = self.child
        return FreydObject(self, c.zero_morphism(c.zero_object(), A))

    def free_morphism(self, f):
        c = self.child
        return FreydMorphism(self, self.free(f.source), self.free(f.range), f,
                             c.zero_morphism(c.zero_object(), c.zero_object()))

    def morphism(self, source, range_, mor, witness=None):
        """Validated morphism; the witness is computed when not supplied."""
        if mor.source != source.gens or mor.range != range_.gens:
            raise UsageError("underlying morphism does not match the generators of source and range")
        f = FreydMorphism(self, source, range_, mor)
        if witness is not None:
            c = self.child
            if not c.mor_eq(c.compose(source.rel, mor), c.compose(witness, range_.rel)):
                raise UsageError("the supplied witness does not satisfy rho_A * alpha == w * rho_B")
            f._w = witness
        else:
            f.witness
        return f

    def _mk(self, A, B, mor, witness=_UNSET):
        return FreydMorphism(self, A, B, mor, witness)

    # -- Ab structure -------------------------------------------------------------

    def identity(self, A):
        c = self.child
        return self._mk(A, A, c.identity(A.gens), c.identity(A.relobj))

    def compose(self, f, g):
        c = self.child
        w = _UNSET
        if f._w not in (_UNSET, None) and g._w not in (_UNSET, None):
            w = c.compose(f._w, g._w)
        return self._mk(f.source, g.range, c.compose(f.mor, g.mor), w)

    def equality_witness(self, f, g):
        """Some lambda: A -> R_B with lambda * rho_B == alpha - alpha', or None."""
        c = self.child
        return c.lift(c.subtract(f.mor, g.mor), f.range.rel)

    def mor_eq(self, f, g):
        return self.equality_witness(f, g) is not None

    def is_zero(self, f):
        return self.child.lift(f.mor, f.range.rel) is not None

    def zero_morphism(self, A, B):
        c = self.child
        return self._mk(A, B, c.zero_morphism(A.gens, B.gens), c.zero_morphism(A.relobj, B.relobj))

    def _lin(self, op, *fs):
        ws = [f._w for f in fs]
        w = op(*ws) if all(x not in (_UNSET, None) for x in ws) else _UNSET
        return self._mk(fs[0].source, fs[0].range, op(*[f.mor for f in fs]), w)

    def add(self, f, g):
        return self._lin(self.child.add, f, g)

    def negate(self, f):
        return self._lin(self.child.negate, f)

    def subtract(self, f, g):
        return self._lin(self.child.subtract, f, g)

    # -- additive structure -------------------------------------------------------

    def zero_object(self):
        return self.free(self.child.zero_object())

    def is_zero_object(self, A):
        c = self.child
        return c.lift(c.identity(A.gens), A.rel) is not None

    def direct_sum(self, objects):
        return FreydObject(self, self.child.diagonal([A.rel for A in objects]))

    def injection(self, objects, k):
        if not 0 <= k < len(objects):
            raise UsageError("direct sum index out of range")
        c = self.child
        return self._mk(objects[k], self.direct_sum(objects),
                        c.injection([A.gens for A in objects], k),
                        c.injection([A.relobj for A in objects], k))

    def projection(self, objects, k):
        if not 0 <= k < len(objects):
            raise UsageError("direct sum index out of range")
        c = self.child
        return self._mk(self.direct_sum(objects), objects[k],
                        c.projection([A.gens for A in objects], k),
                        c.projection([A.relobj for A in objects], k))

    def row_morphism(self, morphisms, target):
        c = self.child
        S = self.direct_sum([f.source for f in morphisms])
        return self._mk(S, target, c.row_morphism([f.mor for f in morphisms], target.gens),
                        c.row_morphism([f.witness for f in morphisms], target.relobj))

    def col_morphism(self, morphisms, source):
        c = self.child
        S = self.direct_sum([g.range for g in morphisms])
        return self._mk(source, S, c.col_morphism([g.mor for g in morphisms], source.gens),
                        c.col_morphism([g.witness for g in morphisms], source.relobj))

    def diagonal(self, morphisms):
        c = self.child
        return self._mk(self.direct_sum([f.source for f in morphisms]),
                        self.direct_sum([f.range for f in morphisms]),
                        c.diagonal([f.mor for f in morphisms]),
                        c.diagonal([f.witness for f in morphisms]))

    # -- cokernels ----------------------------------------------------------------

    def cokernel_object(self, f):
        B = f.range
        return FreydObject(self, self.child.row_morphism([B.rel, f.mor], B.gens))

    def cokernel_projection(self, f):
        c = self.child
        B = f.range
        return self._mk(B, self.cokernel_object(f), c.identity(B.gens),
                        c.injection([B.relobj, f.source.gens], 0))

    def cokernel_colift(self, f, tau):
        c = self.child
        T = tau.range
        lam = c.lift(c.compose(f.mor, tau.mor), T.rel)
        if lam is None:
            raise UsageError("cokernel colift needs f * tau == 0")
        return self._mk(self.cokernel_object(f), T, tau.mor,
                        c.row_morphism([tau.witness, lam], T.relobj))

    # -- weak pullbacks and kernels -----------------------------------------------

    def _need_kernels(self):
        if not self.child.has_weak_kernels:
            self._missing("kernels (the child category has no weak kernels)")

    def weak_pullback(self, alpha, gamma):
        """Weak pullback in the child category, memoized per cospan."""
        self._need_kernels()
        key = (alpha, gamma)
        wp = self._wp.get(key)
        if wp is None:
            if alpha.range != gamma.range:
                raise UsageError("weak pullback needs a cospan")
            wp = self._wp[key] = WeakPullback(self.child, alpha, gamma)
        return wp

    def _kernel_data(self, f):
        A, B = f.source, f.range
        wp1 = self.weak_pullback(B.rel, f.mor)
        wp2 = self.weak_pullback(wp1.proj2, A.rel)
        return wp1, wp2

    def kernel_object(self, f):
        _, wp2 = self._kernel_data(f)
        return FreydObject(self, wp2.proj1)

    def kernel_embedding(self, f):
        wp1, wp2 = self._kernel_data(f)
        return self._mk(FreydObject(self, wp2.proj1), f.source, wp1.proj2, wp2.proj2)

    def kernel_lift(self, f, tau, sigma=None):
        """u with u * kernel_embedding(f) == tau; sigma certifies tau * f == 0."""
        c = self.child
        wp1, wp2 = self._kernel_data(f)
        T = tau.source
        if sigma is None:
            sigma = c.lift(c.compose(tau.mor, f.mor), f.range.rel)
            if sigma is None:
                raise UsageError("kernel lift needs tau * f == 0")
        u = wp1.inducer(sigma, tau.mor)
        w = wp2.inducer(c.compose(T.rel, u), tau.witness)
        return self._mk(T, FreydObject(self, wp2.proj1), u, w)

    def weak_kernel(self, f):
        return self.kernel_embedding(f)

    def weak_kernel_lift(self, f, tau):
        return self.kernel_lift(f, tau)

    # -- monos and epis -----------------------------------------------------------

    def is_mono(self, f):
        """A mono witness sigma with sigma * rho_A == kappa, or None when f is not mono."""
        wp1, _ = self._kernel_data(f)
        return self.child.lift(wp1.proj2, f.source.rel)

    def lift_along_mono(self, f, tau, sigma=None):
        """u with u * f == tau for a monomorphism f."""
        c = self.child
        A, B, T = f.source, f.range, tau.source
        if sigma is None:
            sigma = self.is_mono(f)
            if sigma is None:
                raise UsageError("lift along a monomorphism needs f to be mono")
        s = c.lift(tau.mor, c.row_morphism([B.rel, f.mor], B.gens))
        if s is None:
            raise UsageError("tau does not factor through the monomorphism")
        t_r = c.compose(s, c.projection([B.relobj, A.gens], 0))
        t_a = c.compose(s, c.projection([B.relobj, A.gens], 1))
        wp1, _ = self._kernel_data(f)
        p = c.subtract(tau.witness, c.compose(T.rel, t_r))
        w = c.compose(wp1.inducer(p, c.compose(T.rel, t_a)), sigma)
        return self._mk(T, A, t_a, w)

    def _epi_section(self, f):
        c = self.child
        B = f.range
        return c.lift(c.identity(B.gens), c.row_morphism([B.rel, f.mor], B.gens))

    def is_epi(self, f):
        return self._epi_section(f) is not None

    def colift_along_epi(self, f, tau):
        """u with f * u == tau for an epimorphism f, provided tau kills the kernel of f."""
        c = self.child
        A, B = f.source, f.range
        s = self._epi_section(f)
        if s is None:
            raise UsageError("colift along an epimorphism needs f to be epi")
        s_a = c.compose(s, c.projection([B.relobj, A.gens], 1))
        u = self._mk(B, tau.range, c.compose(s_a, tau.mor))
        if not u.is_valid() or not self.mor_eq(self.compose(f, u), tau):
            raise UsageError("tau does not vanish on the kernel of f")
        return u

    # -- lifts via the hom structure --------------------------------------------

    def lift(self, alpha, gamma):
        A, B = alpha.source, alpha.range
        c = self.child
        if c.is_zero_object(A.relobj):
            s = c.lift(alpha.mor, c.row_morphism([gamma.mor, B.rel], B.gens))
            if s is None:
                return None
            l = c.compose(s, c.projection([gamma.source.gens, B.relobj], 0))
            return self._mk(A, gamma.source, l, c.zero_morphism(A.relobj, gamma.source.relobj))
        hs = self.hom_structure
        if hs is None:
            self._missing("decidable lifts")
        return lift_via_hom_structure(alpha, gamma, hs)

    def colift(self, f, tau):
        hs = self.hom_structure
        if hs is None:
            self._missing("decidable colifts")
        return colift_via_hom_structure(f, tau, hs)

    # -- abelian toolbox ----------------------------------------------------------

    def image_embedding(self, f):
        return self.kernel_embedding(self.cokernel_projection(f))

    def image_object(self, f):
        return self.image_embedding(f).source

    def epi_part(self, f):
        """f' with f' * image_embedding(f) == f."""
        return self.kernel_lift(self.cokernel_projection(f), f)

    def pullback(self, f, g):
        """(P, p1, p2) with p1 * f == p2 * g, from the kernel of (f; -g)."""
        delta = self.row_morphism([f, self.negate(g)], f.range)
        emb = self.kernel_embedding(delta)
        objs = [f.source, g.source]
        return emb.source, self.compose(emb, self.projection(objs, 0)), self.compose(emb, self.projection(objs, 1))

    def pullback_inducer(self, f, g, p, q):
        delta = self.row_morphism([f, self.negate(g)], f.range)
        return self.kernel_lift(delta, self.col_morphism([p, q], p.source))

    def pushout(self, f, g):
        """(Q, i1, i2) with f * i1 == g * i2, from the cokernel of (f, -g)."""
        delta = self.col_morphism([f, self.negate(g)], f.source)
        proj = self.cokernel_projection(delta)
        objs = [f.range, g.range]
        return proj.range, self.compose(self.injection(objs, 0), proj), self.compose(self.injection(objs, 1), proj)

    def pushout_inducer(self, f, g, p, q):
        delta = self.col_morphism([f, self.negate(g)], f.source)
        return self.cokernel_colift(delta, self.row_morphism([p, q], p.range))

    # -- subobjects ---------------------------------------------------------------

    def subobject(self, emb):
        S = Subobject(emb)
        S.sigma
        return S

    def full_subobject(self, A):
        return Subobject(self.identity(A))

    def zero_subobject(self, A):
        return Subobject(self.zero_morphism(self.zero_object(), A))

    def image_subobject(self, f):
        return Subobject(self.image_embedding(f))

    def kernel_subobject(self, f):
        return Subobject(self.kernel_embedding(f))

    def sub_leq(self, S, T):
        c = self.child
        amb = T.ambient
        return c.lift(S.emb.mor, c.row_morphism([amb.rel, T.emb.mor], amb.gens)) is not None

    def sub_eq(self, S, T):
        return self.sub_leq(S, T) and self.sub_leq(T, S)

    def sub_inclusion(self, S, T):
        """The morphism S -> T over the ambient object, when S <= T."""
        return self.lift_along_mono(T.emb, S.emb, T.sigma)

    def sub_intersect(self, S, T):
        _, p1, _ = self.pullback(S.emb, T.emb)
        return Subobject(self.compose(p1, S.emb))

    def sub_preimage(self, f, S):
        _, p1, _ = self.pullback(f, S.emb)
        return Subobject(p1)

    def sub_image(self, f, S):
        return Subobject(self.image_embedding(self.compose(S.emb, f)))

    def sub_join(self, S, T):
        return Subobject(self.image_embedding(self.row_morphism([S.emb, T.emb], S.ambient)))

    def is_full(self, S):
        return self.is_epi(S.emb)

    def is_zero_sub(self, S):
        return self.is_zero(S.emb)


@lru_cache(maxsize=None)
def freyd(child):
    return FreydCategory(child)


# -- homomorphism structures ----------------------------------------------------------

class EmbedHom(HomStructure):
    """Reads a Rows_R-valued structure as valued in Freyd(Rows_R) through free objects."""

    def __init__(self, hs, F):
        self.hs = hs
        self.source = hs.source
        self.target = F
        self.one = F.free(hs.one)

    def H(self, A, B):
        return self.target.free(self.hs.H(A, B))

    def H_mor(self, alpha, beta):
        return self.target.free_morphism(self.hs.H_mor(alpha, beta))

    def nu(self, f):
        return self.target.free_morphism(self.hs.nu(f))

    def nu_inv(self, A, B, g):
        return self.hs.nu_inv(A, B, g.mor)


class _HomData:
    __slots__ = ("top", "p_top", "p_right", "induced", "emb")


class FreydHom(HomStructure):
    """Hom structure on Freyd(A) from one on A valued in an abelian category B with
    projective unit: H'(A, B) is the kernel of the map between the two cokernels
    H(A,B)/im H(A,rho_B) -> H(R_A,B)/im H(R_A,rho_B)."""

    def __init__(self, source, hs):
        self.source = source
        self.hs = hs
        self.target = hs.target
        self.one = hs.one
        if not self.target.is_abelian:
            raise CapabilityError("the Freyd hom structure needs an abelian target")
        self._cache = {}

    def _data(self, A, B):
        d = self._cache.get((A, B))
        if d is not None:
            return d
        hs, T, c = self.hs, self.target, self.source.child
        d = _HomData()
        d.top = hs.H_mor(c.identity(A.gens), B.rel)
        d.p_top = T.cokernel_projection(d.top)
        right = hs.H_mor(c.identity(A.relobj), B.rel)
        d.p_right = T.cokernel_projection(right)
        h = hs.H_mor(A.rel, c.identity(B.gens))
        d.induced = T.cokernel_colift(d.top, T.compose(h, d.p_right))
        d.emb = T.kernel_embedding(d.induced)
        self._cache[(A, B)] = d
        return d

    def H(self, A, B):
        return self._data(A, B).emb.source

    def embedding(self, A, B):
        """H'(A, B) -> H(A, B)/im H(A, rho_B)."""
        return self._data(A, B).emb

    def H_mor(self, alpha, beta):
        T = self.target
        d1 = self._data(alpha.range, beta.source)
        d2 = self._data(alpha.source, beta.range)
        h = self.hs.H_mor(alpha.mor, beta.mor)
        q = T.cokernel_colift(d1.top, T.compose(h, d2.p_top))
        return T.kernel_lift(d2.induced, T.compose(d1.emb, q))

    def nu(self, f):
        T = self.target
        d = self._data(f.source, f.range)
        return T.kernel_lift(d.induced, T.compose(self.hs.nu(f.mor), d.p_top))

    def nu_inv(self, A, B, g):
        T = self.target
        d = self._data(A, B)
        l = T.lift(T.compose(g, d.emb), d.p_top)
        if l is None:
            raise UsageError("unit object is not projective for this lift")
        return self.source._mk(A, B, self.hs.nu_inv(A.gens, B.gens, l))
