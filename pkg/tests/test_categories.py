"""Category contracts, leaf categories and the additive closure."""

import itertools

import pytest

from fpcat import (QQ, ZZ, AdditiveClosure, CapabilityError, Matrix, QuiverCat, UsageError, additive_closure,
                   compose, enumerate_paths, freyd, groebner, lift_via_hom_structure, mor_eq, op_wrap, opposite,
                   parse_quiver, ring_cat, rows, solve_left, weak_kernel_rows)
from fpcat.base import Quiver

from helpers import QXY, X, Y, rand_matrix, rng

# -- leaf and matrix categories -----------------------------------------------


def test_ring_category_composition_and_equality():
    C = ring_cat(ZZ)
    assert compose(C.morphism(3), C.morphism(5)) == C.morphism(15)
    assert C.add(C.morphism(2), C.morphism(3)) == C.morphism(5)
    Cq = ring_cat(QQ)
    assert mor_eq(Cq.morphism("1/2"), Cq.morphism("2/4"))
    f = C.morphism(7)
    assert mor_eq(C.add(f, C.negate(f)), C.zero_morphism())
    assert mor_eq(compose(C.zero_morphism(), f), C.zero_morphism())


def test_rows_composition_examples():
    Rq = rows(QQ)
    assert compose(Matrix(QQ, [[1, 2]]), Matrix(QQ, [[3], [4]])).rows == ((11,),)
    Rz = rows(ZZ)
    assert compose(Matrix(ZZ, [[1, 2], [3, 4]]), Matrix(ZZ, [[0], [1]])).rows == ((2,), (4,))
    assert Rz.mor_eq(Matrix(ZZ, [[1, 0], [0, 1]]), Rz.identity(2))
    with pytest.raises(UsageError):
        compose(Matrix(ZZ, [[1, 2]]), Matrix(ZZ, [[1, 2]]))
    empty = Matrix.zero(ZZ, 0, 2)
    assert compose(empty, Matrix(ZZ, [[1], [2]])).shape == (0, 1)
    assert Rq.is_zero_object(Rq.direct_sum([]))


def test_quotient_ring_category():
    gb = groebner([X ** 2 - Y])
    C = ring_cat(QXY, gb)
    assert C.mor_eq(C.morphism(X ** 2), C.morphism(Y))
    assert not C.mor_eq(C.morphism(X), C.morphism(Y))


@pytest.mark.parametrize("ring", [QQ, ZZ])
def test_associativity_units_and_bilinearity(ring):
    R = rows(ring)
    r = rng(1)
    for _ in range(200):
        a, b, c, d = (r.randint(0, 3) for _ in range(4))
        f, g, h = rand_matrix(r, ring, a, b), rand_matrix(r, ring, b, c), rand_matrix(r, ring, c, d)
        g2 = rand_matrix(r, ring, b, c)
        assert R.mor_eq(R.compose(R.compose(f, g), h), R.compose(f, R.compose(g, h)))
        assert R.mor_eq(R.compose(f, R.identity(b)), f) and R.mor_eq(R.compose(R.identity(a), f), f)
        assert R.mor_eq(R.add(g, g2), R.add(g2, g))
        assert R.mor_eq(R.compose(f, R.add(g, g2)), R.add(R.compose(f, g), R.compose(f, g2)))
        assert R.is_zero(R.add(g, R.negate(g)))


def test_opposite_category():
    C = ring_cat(ZZ)
    Cop = opposite(C)
    assert opposite(Cop) is C
    two, three = op_wrap(C.morphism(2)), op_wrap(C.morphism(3))
    assert Cop.mor_eq(Cop.compose(two, three), op_wrap(C.morphism(6)))
    assert Cop.mor_eq(Cop.identity("*"), op_wrap(C.identity()))
    f = C.morphism(5)
    assert op_wrap(op_wrap(f)) == f
    # composition reverses
    Rz = rows(ZZ)
    f, g = Matrix(ZZ, [[1, 2]]), Matrix(ZZ, [[3], [4]])
    Rop = opposite(Rz)
    assert Rop.compose(op_wrap(g), op_wrap(f)).u == compose(f, g)


# -- homomorphism structures ---------------------------------------------------------


def _naturality(hs, alpha, X, beta):
    cat = hs.source
    T = hs.target
    lhs = hs.nu(cat.compose(cat.compose(alpha, X), beta))
    rhs = T.compose(hs.nu(X), hs.H_mor(alpha, beta))
    return T.mor_eq(lhs, rhs) and cat.mor_eq(hs.nu_inv(X.source, X.range, hs.nu(X)), X)


def test_ring_hom_structure():
    C = ring_cat(ZZ)
    hs = C.hom_structure
    assert hs.nu(C.morphism(5)) == C.morphism(5)
    assert C.mor_eq(hs.H_mor(C.identity(), C.identity()), C.identity())
    assert _naturality(hs, C.morphism(2), C.morphism(3), C.morphism(7))
    assert hs.nu(C.morphism(42)).value == 42


def test_kronecker_structure_examples():
    R = rows(QQ)
    hs = R.hom_structure
    assert hs.H(2, 3) == 6
    M = Matrix(QQ, [[1, 2, 3], [4, 5, 6]])
    assert hs.nu(M).rows == ((1, 2, 3, 4, 5, 6),)
    assert hs.H_mor(R.identity(2), R.identity(3)) == Matrix.identity(QQ, 6)
    assert hs.H_mor(Matrix(QQ, [[2]]), Matrix(QQ, [[3]])).rows == ((6,),)


@pytest.mark.parametrize("ring", [QQ, ZZ])
def test_kronecker_naturality_random(ring):
    hs = rows(ring).hom_structure
    r = rng(2)
    for _ in range(100):
        a1, a, b, b1 = (r.randint(0, 3) for _ in range(4))
        assert _naturality(hs, rand_matrix(r, ring, a1, a), rand_matrix(r, ring, a, b), rand_matrix(r, ring, b, b1))


def test_lift_via_hom_structure_examples():
    R = rows(QQ)
    hs = R.hom_structure
    alpha, gamma = Matrix(QQ, [[2, 2]]), Matrix(QQ, [[1, 1]])
    lam = lift_via_hom_structure(alpha, gamma, hs)
    assert lam.rows == ((2,),)
    assert lift_via_hom_structure(alpha, R.identity(2), hs) == alpha
    zero = R.zero_morphism(1, 2)
    assert R.is_zero(lift_via_hom_structure(zero, gamma, hs))


@pytest.mark.parametrize("ring", [QQ, ZZ])
def test_lift_via_hom_agrees_with_solve_left(ring):
    R = rows(ring)
    hs = R.hom_structure
    r = rng(3)
    for _ in range(100):
        a, b, c = r.randint(1, 3), r.randint(1, 3), r.randint(1, 3)
        gamma = rand_matrix(r, ring, c, b, density=0.6)
        alpha = rand_matrix(r, ring, a, c) * gamma if r.random() < 0.5 else rand_matrix(r, ring, a, b)
        direct = solve_left(gamma, alpha)
        via = lift_via_hom_structure(alpha, gamma, hs)
        assert (direct is None) == (via is None)
        if via is not None:
            assert via * gamma == alpha


# -- quivers ----------------------------------------------------------------------


def test_path_enumeration_examples():
    K = Quiver.build(["v", "w"], [("a", "v", "w"), ("b", "v", "w")])
    assert enumerate_paths(K, "v", "v") == ((),)
    assert enumerate_paths(K, "v", "w") == (("a",), ("b",))
    A3 = Quiver.build(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w")])
    assert enumerate_paths(A3, "u", "w") == (("a", "b"),)
    with pytest.raises(UsageError):
        Quiver.build(["u", "v"], [("a", "u", "v"), ("b", "v", "u")])


def test_parse_quiver():
    Q = parse_quiver("quiver u v w; a: u -> v; b: v -> w")
    assert Q.vertices == ("u", "v", "w") and [a.name for a in Q.arrows] == ["a", "b"]
    assert parse_quiver(str(Q)) == Q


def test_quiver_hom_structure_examples():
    K = QuiverCat(Quiver.build(["v", "w"], [("a", "v", "w"), ("b", "v", "w")]))
    hs = K.hom_structure
    assert hs.nu(K.identity("v")).rows == ((1,),)
    f = K.morphism("v", "w", {"a": 2, "b": -1})
    assert hs.nu(f).rows == ((2, -1),)
    assert K.mor_eq(hs.nu_inv("v", "w", hs.nu(f)), f)
    A3 = QuiverCat(Quiver.build(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w")]))
    hs = A3.hom_structure
    a, b = A3.arrow("a"), A3.arrow("b")
    assert hs.H_mor(a, b).rows == ((1,),)
    assert _naturality(hs, a, A3.identity("v"), b)


def _random_quiver(r):
    n = r.randint(2, 6)
    verts = [f"v{i}" for i in range(n)]
    arrows = []
    for k in range(r.randint(1, 8)):
        i, j = sorted(r.sample(range(n), 2))
        arrows.append((f"a{k}", verts[i], verts[j]))
    return Quiver.build(verts, arrows)


def _random_path_morphism(r, cat, v, w):
    basis = enumerate_paths(cat.quiver, v, w)
    return cat.morphism(v, w, {p: r.randint(-3, 3) for p in basis})


def test_quiver_naturality_random():
    r = rng(4)
    count = 0
    while count < 100:
        cat = QuiverCat(_random_quiver(r))
        hs = cat.hom_structure
        vs = cat.quiver.vertices
        v1, v, w, w1 = (r.choice(vs) for _ in range(4))
        if not all(enumerate_paths(cat.quiver, s, t) for s, t in ((v1, v), (v, w), (w, w1))):
            continue
        alpha, X, beta = (_random_path_morphism(r, cat, s, t) for s, t in ((v1, v), (v, w), (w, w1)))
        assert _naturality(hs, alpha, X, beta)
        count += 1


def test_path_composition_laws():
    r = rng(5)
    for _ in range(50):
        cat = QuiverCat(_random_quiver(r))
        vs = cat.quiver.vertices
        v, w = r.choice(vs), r.choice(vs)
        f = _random_path_morphism(r, cat, v, w)
        g = _random_path_morphism(r, cat, v, w)
        assert cat.mor_eq(cat.compose(cat.identity(v), f), f)
        assert cat.mor_eq(cat.compose(f, cat.identity(w)), f)
        h = _random_path_morphism(r, cat, w, r.choice(vs))
        assert cat.mor_eq(cat.compose(cat.add(f, g), h), cat.add(cat.compose(f, h), cat.compose(g, h)))


# -- additive closure -----------------------------------------------------------------


def test_direct_sum_identities():
    R = rows(QQ)
    assert R.direct_sum([2, 3]) == 5
    objs = [2, 3]
    i1, i2 = R.injection(objs, 0), R.injection(objs, 1)
    p1, p2 = R.projection(objs, 0), R.projection(objs, 1)
    assert R.mor_eq(R.compose(i1, p1), R.identity(2))
    assert R.is_zero(R.compose(i1, p2))
    assert R.mor_eq(R.add(R.compose(p1, i1), R.compose(p2, i2)), R.identity(5))
    Z = R.direct_sum([])
    assert R.mor_eq(R.identity(Z), R.zero_morphism(Z, Z))
    with pytest.raises(UsageError):
        R.injection(objs, 2)


def test_generic_closure_over_quiver():
    Q = Quiver.build(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w"), ("c", "u", "w")])
    base = QuiverCat(Q)
    A = additive_closure(base)
    assert isinstance(A, AdditiveClosure)
    S = A.obj("u", "v")
    T = A.obj("w")
    f = A.morphism(S, T, [[base.arrow("c")], [base.arrow("b")]])
    g = A.morphism(A.obj("u"), S, [[base.identity("u"), base.arrow("a")]])
    fg = A.compose(g, f)
    assert base.mor_eq(fg.blocks[0][0], base.add(base.arrow("c"), base.compose(base.arrow("a"), base.arrow("b"))))
    objs = [S, T]
    assert A.mor_eq(A.compose(A.injection(objs, 0), A.projection(objs, 0)), A.identity(S))
    assert A.is_zero(A.compose(A.injection(objs, 0), A.projection(objs, 1)))
    # lifts are decided through the Rows_Q hom structure
    assert A.has_decidable_lifts
    lam = A.lift(fg, f)
    assert lam is not None and A.mor_eq(A.compose(lam, f), fg)
    hs = A.hom_structure
    assert hs.H(S, T) == 3  # u->w: c, a.b; v->w: b
    assert _naturality(hs, g, f, A.identity(T))


def test_generic_closure_over_ring_matches_rows():
    A = AdditiveClosure(ring_cat(ZZ))
    C = A.child
    r = rng(6)
    for _ in range(30):
        m, n = r.randint(1, 3), r.randint(1, 3)
        M = rand_matrix(r, ZZ, m, n)
        f = A.morphism(("*",) * m, ("*",) * n, [[C.morphism(e) for e in row] for row in M.rows])
        hs = A.hom_structure
        assert hs.nu(f) == rows(ZZ).hom_structure.nu(M)
        assert A.mor_eq(hs.nu_inv(f.source, f.range, hs.nu(f)), f)


def test_matrix_components_round_trip():
    R = rows(ZZ)
    r = rng(7)
    for _ in range(50):
        srcs = [r.randint(0, 2) for _ in range(r.randint(1, 3))]
        dsts = [r.randint(0, 2) for _ in range(r.randint(1, 3))]
        f = rand_matrix(r, ZZ, sum(srcs), sum(dsts))
        blocks = R.components(f, srcs, dsts)
        assert R.matrix_morphism(srcs, dsts, blocks) == f


def test_weak_kernel_rows_examples():
    n, emb = weak_kernel_rows(Matrix.identity(QQ, 2))
    assert n == 0
    n, emb = weak_kernel_rows(Matrix(QXY, [[X], [Y]]))
    assert n == 1 and solve_left(emb, Matrix(QXY, [[Y, -X]])) is not None
    n, emb = weak_kernel_rows(Matrix(ZZ, [[2], [4]]))
    target = Matrix(ZZ, [[2, -1]])
    assert solve_left(emb, target) is not None and solve_left(target, emb) is not None
    with pytest.raises(CapabilityError):
        weak_kernel_rows("not a matrix")


@pytest.mark.parametrize("ring", [QQ, ZZ])
def test_weak_kernel_lift_property(ring):
    R = rows(ring)
    r = rng(8)
    for _ in range(50):
        f = rand_matrix(r, ring, r.randint(1, 4), r.randint(1, 3))
        emb = R.weak_kernel(f)
        tau = rand_matrix(r, ring, 2, emb.nrows) * emb
        u = R.weak_kernel_lift(f, tau)
        assert u * emb == tau
    with pytest.raises(UsageError):
        R.weak_kernel_lift(Matrix(ring, [[1]]), Matrix(ring, [[1]]))


def test_capability_table():
    assert {"additive", "weak_kernels", "decidable_lifts"} <= rows(ZZ).capabilities()
    Q = QuiverCat(Quiver.build(["u", "v"], [("a", "u", "v")]))
    A = additive_closure(Q)
    assert "weak_kernels" not in A.capabilities()
    F = freyd(A)
    assert "cokernels" in F.capabilities() and "abelian" not in F.capabilities()
    obj = F.free(A.obj("u"))
    with pytest.raises(CapabilityError):
        F.kernel_embedding(F.identity(obj))
    assert "abelian" in freyd(rows(QQ)).capabilities()
    assert freyd(rows(QQ)).is_abelian


@pytest.mark.parametrize("ring", [QQ, ZZ])
def test_freyd_over_quiver_cokernels(ring):
    Q = QuiverCat(Quiver.build(["u", "v"], [("a", "u", "v"), ("b", "u", "v")]))
    A = additive_closure(Q)
    F = freyd(A)
    U, V = F.free(A.obj("u")), F.free(A.obj("v"))
    f = F.free_morphism(A.morphism(("u",), ("v",), [[Q.arrow("a")]]))
    p = F.cokernel_projection(f)
    assert F.is_zero(F.compose(f, p))
    g = F.free_morphism(A.morphism(("u",), ("v",), [[Q.arrow("b")]]))
    assert not F.is_zero(F.compose(g, p))
    assert U != V


def test_all_sums_of_small_objects():
    R = rows(QQ)
    for objs in itertools.product(range(3), repeat=2):
        total = R.direct_sum(list(objs))
        acc = R.zero_morphism(total, total)
        for k in range(2):
            acc = R.add(acc, R.compose(R.projection(list(objs), k), R.injection(list(objs), k)))
        assert R.mor_eq(acc, R.identity(total))
