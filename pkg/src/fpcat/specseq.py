"""Spectral sequences of bounded filtered cochain complexes, computed with generalized morphisms.

E_0^{p,q} = F^p M^{p+q} / F^{p+1} M^{p+q}.  The generalized differential
del_r^{p,q}: E_0^{p,q} => E_0^{p+r,q-r+1} is emb * [d] * proj, page objects are
domain(del_r^{p,q}) / defect(del_r^{p-r,q+r-1}), and d_r is the honest part
of the differential transported to those subquotients.
"""

from .errors import UsageError
from .genmor import (GeneralizedMorphism, canonical_subobjects, gen_compose_all, honest, honest_part,
                     pseudo_inverse)


class Subquotient:
    """An object E = S/T for subobjects T <= S of X, with emb: E => X and proj: X => E."""

    def __init__(self, cat, big, small):
        self.cat = cat
        self.big = big
        self.small = small
        k = cat.sub_inclusion(small, big)
        self.eps = cat.cokernel_projection(k)
        self.object = self.eps.range
        self.emb = GeneralizedMorphism(self.eps, big.emb)
        self.proj = pseudo_inverse(self.emb)


class FilteredComplex:
    """Cochain complex M^lo -> ... -> M^hi with descending filtrations F^j M^i, j in [jlo, jhi].

    ``filtration[i]`` lists the embeddings F^jlo M^i, ..., F^jhi M^i; below jlo
    the filtration is everything and above jhi it is zero.
    """

    def __init__(self, cat, objects, differentials, filtration, lo=0, jlo=0):
        self.cat = cat
        self.lo = lo
        self.objects = list(objects)
        self.hi = lo + len(self.objects) - 1
        self.differentials = list(differentials)
        self.jlo = jlo
        if len(self.differentials) != len(self.objects) - 1:
            raise UsageError("a complex with n objects needs n - 1 differentials")
        widths = {len(f) for f in filtration}
        if len(filtration) != len(self.objects) or len(widths) != 1 or 0 in widths:
            raise UsageError("give one nonempty filtration of common length per degree")
        self.jhi = jlo + widths.pop() - 1
        self._sub = {}
        for i, chain in enumerate(filtration):
            for j, emb in enumerate(chain):
                if emb.range != self.objects[i]:
                    raise UsageError(f"filtration step {jlo + j} in degree {lo + i} is not into M^{lo + i}")
                self._sub[(lo + i, jlo + j)] = cat.subobject(emb)
        self._cache = {}
        self._check()

    def _check(self):
        cat = self.cat
        for k in range(len(self.differentials) - 1):
            if not cat.is_zero(cat.compose(self.differentials[k], self.differentials[k + 1])):
                raise UsageError(f"differentials at degrees {self.lo + k} and {self.lo + k + 1} do not compose to zero")
        for k, d in enumerate(self.differentials):
            if d.source != self.objects[k] or d.range != self.objects[k + 1]:
                raise UsageError(f"differential {self.lo + k} has the wrong source or range")
        for i in range(self.lo, self.hi + 1):
            for j in range(self.jlo, self.jhi + 2):
                if not cat.sub_leq(self.F(i, j + 1), self.F(i, j)):
                    raise UsageError(f"filtration of degree {i} is not descending at step {j}")
                if i < self.hi and not cat.sub_leq(cat.sub_image(self.d(i), self.F(i, j)), self.F(i + 1, j)):
                    raise UsageError(f"differential {i} does not respect the filtration at step {j}")

    def M(self, i):
        if self.lo <= i <= self.hi:
            return self.objects[i - self.lo]
        return self.cat.zero_object()

    def d(self, i):
        if self.lo <= i < self.hi:
            return self.differentials[i - self.lo]
        return self.cat.zero_morphism(self.M(i), self.M(i + 1))

    def F(self, i, j):
        """F^j M^i as a subobject."""
        cat = self.cat
        if not self.lo <= i <= self.hi or j > self.jhi:
            return cat.zero_subobject(self.M(i))
        if j < self.jlo:
            return cat.full_subobject(self.M(i))
        return self._sub[(i, j)]

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # -- E_0 and generalized differentials -------------------------------------------

    def graded_part(self, i, j):
        """F^j M^i / F^{j+1} M^i with its generalized embedding and projection."""
        return self._memo(("gr", i, j), lambda: Subquotient(self.cat, self.F(i, j), self.F(i, j + 1)))

    def E0(self, p, q):
        return self.graded_part(p + q, p)

    def generalized_differential(self, r, p, q):
        def build():
            src = self.E0(p, q)
            dst = self.E0(p + r, q - r + 1)
            return gen_compose_all(src.emb, honest(self.d(p + q)), dst.proj)
        return self._memo(("del", r, p, q), build)

    # -- pages --------------------------------------------------------------------

    def page_entry(self, r, p, q):
        """E_r^{p,q} as a subquotient of E_0^{p,q}."""
        def build():
            cat = self.cat
            domain = canonical_subobjects(self.generalized_differential(r, p, q))[0]
            defect = canonical_subobjects(self.generalized_differential(r, p - r, q + r - 1))[3]
            return Subquotient(cat, domain, defect)
        return self._memo(("E", r, p, q), build)

    def E(self, r, p, q):
        return self.page_entry(r, p, q).object

    def differential(self, r, p, q):
        """d_r^{p,q}: E_r^{p,q} -> E_r^{p+r,q-r+1}."""
        def build():
            src = self.page_entry(r, p, q)
            dst = self.page_entry(r, p + r, q - r + 1)
            S = gen_compose_all(src.emb, self.generalized_differential(r, p, q), dst.proj)
            f = honest_part(S)
            if f is None:
                raise AssertionError(f"page differential d_{r}^{{{p},{q}}} is not honest")
            return f
        return self._memo(("d", r, p, q), build)

    def page_turn(self, r, p, q):
        """The isomorphism E_{r+1}^{p,q} -> ker(d_r^{p,q}) / im(d_r^{p-r,q+r-1}), checked."""
        def build():
            cat = self.cat
            d_out = self.differential(r, p, q)
            d_in = self.differential(r, p - r, q + r - 1)
            K = cat.kernel_subobject(d_out)
            I = cat.image_subobject(d_in)
            H = Subquotient(cat, K, I)
            S = gen_compose_all(self.page_entry(r + 1, p, q).emb, self.page_entry(r, p, q).proj, H.proj)
            iota = honest_part(S)
            if iota is None or cat.is_mono(iota) is None or not cat.is_epi(iota):
                raise AssertionError(f"page turn at r={r}, (p,q)=({p},{q}) is not an isomorphism")
            return iota
        return self._memo(("iota", r, p, q), build)

    def positions(self):
        """All (p, q) where E_0^{p,q} may be nonzero."""
        return [(p, i - p) for i in range(self.lo, self.hi + 1) for p in range(self.jlo, self.jhi + 1)]

    def page(self, r):
        return SpectralPage(self, r)


class SpectralPage:
    def __init__(self, fc, r):
        if r < 0:
            raise UsageError("page index must be non-negative")
        self.complex = fc
        self.r = r
        self.objects = {pq: fc.E(r, *pq) for pq in fc.positions()}

    def differential(self, p, q):
        return self.complex.differential(self.r, p, q)

    def page_turn(self, p, q):
        return self.complex.page_turn(self.r, p, q)

    def differentials(self):
        return {pq: self.differential(*pq) for pq in self.objects}


def check_page_turn(fc, r, p, q):
    return fc.page_turn(r, p, q)


def total_complex(cat, K, dh, dv):
    """Filtered total complex of a bounded double complex.

    K: {(p, q): object}; dh[(p, q)]: K^{p,q} -> K^{p+1,q}; dv[(p, q)]: K^{p,q} -> K^{p,q+1}.
    Squares must anticommute or commute; vertical maps get the sign (-1)^p.
    Degree n is the direct sum over p + q = n ordered by decreasing p.
    """
    ps = sorted({p for p, _ in K})
    ns = sorted({p + q for p, q in K})
    lo, hi = ns[0], ns[-1]
    summands = {n: sorted([pq for pq in K if sum(pq) == n], key=lambda pq: -pq[0]) for n in range(lo, hi + 1)}
    objects = [cat.direct_sum([K[pq] for pq in summands[n]]) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo, hi):
        src, dst = summands[n], summands[n + 1]
        blocks = []
        for (p, q) in src:
            row = []
            for (p2, q2) in dst:
                if (p2, q2) == (p + 1, q) and (p, q) in dh:
                    row.append(dh[(p, q)])
                elif (p2, q2) == (p, q + 1) and (p, q) in dv:
                    v = dv[(p, q)]
                    row.append(v if p % 2 == 0 else cat.negate(v))
                else:
                    row.append(cat.zero_morphism(K[(p, q)], K[(p2, q2)]))
            blocks.append(row)
        diffs.append(cat.matrix_morphism([K[pq] for pq in src], [K[pq] for pq in dst], blocks))
    jlo, jhi = ps[0], ps[-1]
    filtration = []
    for n in range(lo, hi + 1):
        chain = []
        for j in range(jlo, jhi + 1):
            parts = summands[n]
            keep = [k for k, pq in enumerate(parts) if pq[0] >= j]
            objs = [K[pq] for pq in parts]
            if keep:
                emb = cat.row_morphism([cat.injection(objs, k) for k in keep], objects[n - lo])
            else:
                emb = cat.zero_morphism(cat.zero_object(), objects[n - lo])
            chain.append(emb)
        filtration.append(chain)
    return FilteredComplex(cat, objects, diffs, filtration, lo=lo, jlo=jlo)
