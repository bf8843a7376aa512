"""Generalized morphisms: spans A <- C -> B in an abelian category, up to stable equivalence.

Two spans are equal when the images of C -> A + B agree as subobjects.
Composition pulls back the inner cospan.
"""

from .errors import UsageError


class GeneralizedMorphism:
    __slots__ = ("cat", "left", "right", "_relation")

    def __init__(self, left, right):
        if left.category != right.category:
            raise UsageError("span arms live in different categories")
        if left.source != right.source:
            raise UsageError("span arms must share their source")
        self.cat = left.category
        if not self.cat.is_abelian:
            self.cat._missing("kernels, needed for generalized morphisms")
        self.left = left
        self.right = right
        self._relation = None

    @property
    def source(self):
        return self.left.range

    @property
    def range(self):
        return self.right.range

    @property
    def apex(self):
        return self.left.source

    @property
    def relation(self):
        """The associated relation, a subobject of source + range."""
        if self._relation is None:
            cat = self.cat
            pair = cat.col_morphism([self.left, self.right], self.apex)
            self._relation = cat.image_subobject(pair)
        return self._relation

    def __repr__(self):
        return f"GeneralizedMorphism({self.left!r}, {self.right!r})"


def span(left, right):
    return GeneralizedMorphism(left, right)


def honest(f):
    """[f] = (id, f)."""
    return GeneralizedMorphism(f.category.identity(f.source), f)


def inverse_of(f):
    """[f]^{-1} = (f, id)."""
    return GeneralizedMorphism(f, f.category.identity(f.source))


def pseudo_inverse(S):
    return GeneralizedMorphism(S.right, S.left)


def gen_eq(S, T):
    if S.source != T.source or S.range != T.range:
        raise UsageError("equality needs generalized morphisms with the same source and range")
    return S.cat.sub_eq(S.relation, T.relation)


def gen_compose(S, T):
    if S.range != T.source:
        raise UsageError("generalized morphisms are not composable")
    cat = S.cat
    _, p1, p2 = cat.pullback(S.right, T.left)
    return GeneralizedMorphism(cat.compose(p1, S.left), cat.compose(p2, T.right))


def gen_compose_all(*spans):
    out = spans[0]
    for T in spans[1:]:
        out = gen_compose(out, T)
    return out


def decompose(S):
    """([left]^{-1}, [right]), whose composite is S."""
    return inverse_of(S.left), honest(S.right)


def canonical_subobjects(S):
    """(domain, generalized kernel, generalized image, defect)."""
    cat = S.cat
    domain = cat.image_subobject(S.left)
    gker = cat.sub_image(S.left, cat.kernel_subobject(S.right))
    gim = cat.image_subobject(S.right)
    defect = cat.sub_image(S.right, cat.kernel_subobject(S.left))
    return domain, gker, gim, defect


def honest_part(S):
    """The morphism f with [f] == S, or None when S is not honest."""
    cat = S.cat
    if not cat.is_epi(S.left):
        return None
    kappa = cat.kernel_embedding(S.left)
    if not cat.is_zero(cat.compose(kappa, S.right)):
        return None
    return cat.colift_along_epi(S.left, S.right)


def is_honest(S):
    return honest_part(S) is not None


def _quotient(cat, small, big):
    """Inclusion small -> big of subobjects and the cokernel projection of it."""
    k = cat.sub_inclusion(small, big)
    return cat.cokernel_projection(k)


def generalized_hom_theorem(S):
    """(proj: A => domain/gker, iso, inj: gim/defect => B) with proj * [iso] * inj == S."""
    cat = S.cat
    domain, gker, gim, defect = canonical_subobjects(S)
    q_dom = _quotient(cat, gker, domain)
    q_im = _quotient(cat, defect, gim)
    proj = GeneralizedMorphism(domain.emb, q_dom)
    inj = GeneralizedMorphism(q_im, gim.emb)
    middle = gen_compose_all(pseudo_inverse(proj), S, pseudo_inverse(inj))
    iso = honest_part(middle)
    if iso is None or not (cat.is_mono(iso) is not None and cat.is_epi(iso)):
        raise AssertionError("generalized homomorphism theorem: comparison map is not an isomorphism")
    return proj, iso, inj


def cohomology_object(cat, d_in, d_out):
    """(H, kernel embedding, projection kernel -> H) for X --d_in--> Y --d_out--> Z."""
    if not cat.is_zero(cat.compose(d_in, d_out)):
        raise UsageError("consecutive differentials must compose to zero")
    iota = cat.kernel_embedding(d_out)
    to_ker = cat.kernel_lift(d_out, d_in)
    eps = cat.cokernel_projection(to_ker)
    return eps.range, iota, eps


def cohomology_induced(beta, d_in, d_out, d_in2, d_out2):
    """The map on cohomology at Y induced by beta: Y -> Y2 between two complexes."""
    cat = beta.category
    if d_out.source != beta.source or d_out2.source != beta.range:
        raise UsageError("beta must run between the middle objects of the two complexes")
    _, iota, eps = cohomology_object(cat, d_in, d_out)
    _, iota2, eps2 = cohomology_object(cat, d_in2, d_out2)
    S = gen_compose_all(inverse_of(eps), honest(iota), honest(beta), inverse_of(iota2), honest(eps2))
    f = honest_part(S)
    if f is None:
        raise UsageError("beta does not map kernels into kernels and images into images")
    return f


def _check_exact(cat, f, g, what):
    if not cat.is_zero(cat.compose(f, g)):
        raise UsageError(f"{what}: consecutive maps do not compose to zero")
    if not cat.sub_eq(cat.image_subobject(f), cat.kernel_subobject(g)):
        raise UsageError(f"{what}: the row is not exact in the middle")


def snake_connecting(f1, f2, g1, g2, alpha, beta, gamma):
    """Connecting morphism ker(gamma) -> coker(alpha) of a snake diagram.

    Rows A --f1--> B --f2--> C --> 0 and 0 --> A' --g1--> B' --g2--> C',
    vertical maps alpha, beta, gamma.
    """
    cat = f1.category
    _check_exact(cat, f1, f2, "top row")
    _check_exact(cat, g1, g2, "bottom row")
    if not cat.is_epi(f2):
        raise UsageError("top row: f2 must be an epimorphism")
    if cat.is_mono(g1) is None:
        raise UsageError("bottom row: g1 must be a monomorphism")
    if not cat.mor_eq(cat.compose(f1, beta), cat.compose(alpha, g1)):
        raise UsageError("left square does not commute")
    if not cat.mor_eq(cat.compose(f2, gamma), cat.compose(beta, g2)):
        raise UsageError("right square does not commute")
    eta = cat.kernel_embedding(gamma)
    zeta = cat.cokernel_projection(alpha)
    S = gen_compose_all(honest(eta), inverse_of(f2), honest(beta), inverse_of(g1), honest(zeta))
    delta = honest_part(S)
    if delta is None:
        raise AssertionError("the snake composite is not honest")
    return delta
