from math import gcd

import pytest

from fpcat import QQ, ZZ, Matrix, UsageError, ext_functor, fpfun, functor_iso_test, hom_nat, invariant_factors, \
    module, module_iso_test, representable, resolution, solve_left, tensor_functor, tor_functor
from fpcat.fpfunctors import fitting_ideal, format_factors, fpmod, free_module, nat_generators, prune, \
    syzygy_module

from helpers import QXY, X, Y, rand_matrix, rand_module, rng


def zmod(n):
    return module(ZZ, [[n]])


def koszul_module():
    return module(QXY, Matrix(QXY, [[X, Y]]))


def test_representable_objects():
    F = representable(zmod(2))
    assert F.rel.u.source == zmod(2) and fpmod(ZZ).is_zero_object(F.rel.u.range)
    G = fpfun(ZZ)
    assert G.is_zero_object(representable(fpmod(ZZ).zero_object()))
    R1 = representable(free_module(ZZ, 1))
    assert R1.rel.u.source.rel.shape == (0, 1)


def test_ext_representations():
    E = ext_functor(zmod(2), 1)
    u = E.rel.u
    assert u.mor.rows == ((2,),) and u.source.rel.nrows == 0 and u.range.rel.nrows == 0
    assert fpfun(ZZ).is_zero_object(ext_functor(free_module(ZZ, 2), 1))
    E = ext_functor(koszul_module(), 1)
    assert E.rel.u.mor == Matrix(QXY, [[X, Y]])
    assert ext_functor(zmod(3), 0) == representable(zmod(3))
    with pytest.raises(UsageError):
        ext_functor(zmod(3), -1)


def test_tensor_representations():
    T = tensor_functor(koszul_module())
    assert T.rel.u.mor == Matrix(QXY, [[X], [Y]])
    T = tensor_functor(zmod(2))
    assert T.rel.u.mor.rows == ((2,),)
    T = tensor_functor(free_module(ZZ, 2))
    assert T.rel.u.mor.shape == (2, 0)


def _evaluate(F, N):
    """F(N) through Yoneda: Nat(Hom(N, -), F)."""
    return hom_nat(representable(N), F)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_tor_and_ext_of_z2_evaluated(n):
    expected = [] if gcd(2, n) == 1 else [2]
    assert invariant_factors(_evaluate(tor_functor(zmod(2), 1), zmod(n))) == expected
    assert invariant_factors(_evaluate(ext_functor(zmod(2), 1), zmod(n))) == expected
    # Hom(Z/2, Z/n) has the same size
    assert invariant_factors(_evaluate(representable(zmod(2)), zmod(n))) == expected


def test_tor_of_z2_is_representable():
    assert functor_iso_test(tor_functor(zmod(2), 1), representable(zmod(2))) is not None


def test_tensor_evaluates_to_tensor_product():
    # Z/4 (x) Z/6 = Z/2
    assert invariant_factors(_evaluate(tensor_functor(zmod(4)), zmod(6))) == [2]
    assert invariant_factors(_evaluate(tensor_functor(zmod(4)), free_module(ZZ, 1))) == [4]


def test_higher_ext_and_tor_over_z_vanish():
    M = module(ZZ, [[2, 4], [0, 6]])
    for i in (2, 3):
        assert fpfun(ZZ).is_zero_object(ext_functor(M, i)) or \
            functor_iso_test(ext_functor(M, i), fpfun(ZZ).zero_object()) is not None
        T = tor_functor(M, i)
        assert functor_iso_test(T, fpfun(ZZ).zero_object()) is not None


def test_ext_tor_vanish_on_free_modules():
    r = rng(31)
    for k in range(20):
        ring = QQ if k % 2 else ZZ
        n = r.randint(1, 3)
        basis_change = rand_matrix(r, ring, 0, n)
        M = module(ring, basis_change, n)
        G = fpfun(ring)
        assert G.is_zero_object(ext_functor(M, 1))
        assert functor_iso_test(tor_functor(M, 1), G.zero_object()) is not None


def test_resolution_exactness():
    r = rng(32)
    for k in range(15):
        ring = (ZZ, QQ, QXY)[k % 3]
        M = rand_module(r, ring, 2, 2)
        ds = resolution(M, 3)
        for a, b in zip(ds, ds[1:]):
            assert (b * a).is_zero()
            from fpcat import row_syzygies
            S = row_syzygies(a)
            assert solve_left(b, S) is not None and solve_left(S, b) is not None
    with pytest.raises(UsageError):
        resolution(zmod(2), 0)
    with pytest.raises(UsageError):
        syzygy_module(zmod(2), 0)


def test_yoneda_on_representables():
    F = fpmod(ZZ)
    r = rng(33)
    for _ in range(50):
        M, N = rand_module(r, ZZ, 2, 2, -4, 4), rand_module(r, ZZ, 2, 2, -4, 4)
        direct = F.hom_structure.H(N, M)
        assert module_iso_test(hom_nat(representable(M), representable(N)), direct) is not None


def test_hom_nat_additive():
    r = rng(34)
    G = fpfun(ZZ)
    for _ in range(8):
        M1, M2, N = (rand_module(r, ZZ, 2, 2, -4, 4) for _ in range(3))
        F1, F2 = ext_functor(M1, 1), representable(M2)
        Gt = tensor_functor(N)
        lhs = hom_nat(G.direct_sum([F1, F2]), Gt)
        rhs = fpmod(ZZ).direct_sum([hom_nat(F1, Gt), hom_nat(F2, Gt)])
        assert module_iso_test(lhs, rhs) is not None
        lhs = hom_nat(Gt, G.direct_sum([F1, F2]))
        rhs = fpmod(ZZ).direct_sum([hom_nat(Gt, F1), hom_nat(Gt, F2)])
        assert module_iso_test(lhs, rhs) is not None


def test_nat_generators_are_natural_transformations():
    F, G = representable(zmod(2)), ext_functor(zmod(2), 1)
    gens = nat_generators(F, G)
    assert len(gens) == hom_nat(F, G).gens
    hs = F.category.hom_structure
    for eta in gens:
        assert eta.is_valid()
        assert F.category.mor_eq(hs.nu_inv(F, G, hs.nu(eta)), eta)


def test_invariant_factors_and_format():
    M = module(ZZ, [[2, 0, 0], [0, 3, 0]])
    assert invariant_factors(M) == [6, 0]
    assert format_factors(invariant_factors(M)) == "[6, 0^1]"
    assert format_factors([]) == "[]"
    with pytest.raises(UsageError):
        invariant_factors(koszul_module())


def test_module_iso_examples():
    M = module(ZZ, [[2, 0], [0, 3]])
    f, g = module_iso_test(M, M)
    assert f == g == fpmod(ZZ).identity(M)
    found = module_iso_test(M, zmod(6))
    assert found is not None
    f, g = found
    F = fpmod(ZZ)
    assert F.mor_eq(F.compose(f, g), F.identity(M)) and F.mor_eq(F.compose(g, f), F.identity(zmod(6)))
    assert module_iso_test(zmod(2), zmod(4)) is None


def test_module_iso_over_polynomials():
    F = fpmod(QXY)
    k2 = module(QXY, Matrix(QXY, [[X, 0], [Y, 0], [0, X], [0, Y]]))
    scrambled = module(QXY, Matrix(QXY, [[X, X], [Y, Y], [0, X], [0, Y], [X * Y, 0]]))
    f, g = module_iso_test(k2, scrambled)
    assert F.mor_eq(F.compose(f, g), F.identity(k2)) and F.mor_eq(F.compose(g, f), F.identity(scrambled))
    assert module_iso_test(module(QXY, Matrix(QXY, [[X]])), module(QXY, Matrix(QXY, [[Y]]))) is None


def test_prune_keeps_the_module():
    M = module(QXY, Matrix(QXY, [[1, X, 0], [0, Y, X]]))
    Mp, to, back = prune(M)
    F = fpmod(QXY)
    assert Mp.gens == 2
    assert F.mor_eq(F.compose(back, to), F.identity(Mp))
    assert F.mor_eq(F.compose(to, back), F.identity(M))


def test_fitting_ideals():
    M = module(QXY, Matrix(QXY, [[X, Y]]))
    fit0 = fitting_ideal(M, 0)
    assert len(fit0) == 0
    fit1 = fitting_ideal(M, 1)
    assert sorted(map(str, fit1)) == ["x", "y"]
