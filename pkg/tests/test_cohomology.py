import pytest
from hypothesis import given, settings, strategies as st

from gbundles import abgroup, cohomology as co, complex as cx, groupdata as gd, zlinalg
from gbundles.abgroup import AbHom, FgAbGroup, cyclic
from gbundles.classify import enumerate_mu1

Z, Z2, Z4, V4 = cyclic(0), cyclic(2), cyclic(4), FgAbGroup((2, 2))


def system(x, coeff, mats):
    return co.LocalSystem(x, coeff, tuple(AbHom.from_matrix(coeff, coeff, m) for m in mats))


def mu1_system(x, group, images):
    d = gd.builtin(group)
    return co.local_system(x, d, cx.hom_from_generator_images(x, d.pi0, images))


def test_local_system_examples():
    t = cx.torus()
    assert mu1_system(t, "O(2)", [[0], [0]]).is_trivial
    s = mu1_system(t, "O(2)", [[1], [0]])
    assert [h.matrix for h in s.rho] == [((-1,),), ((1,),)]
    s = mu1_system(cx.projective_plane(), "PO(6)", [[1]])
    assert s.rho[0].matrix == ((3,),)


def test_local_system_must_kill_relators():
    assert system(cx.projective_plane(), Z4, [[[-1]]]).rho[0].matrix == ((3,),)
    with pytest.raises(ValueError):
        system(cx.projective_plane(), Z4, [[[2]]])
    with pytest.raises(ValueError):
        system(cx.TwoComplex(1, ((1,),)), Z, [[[-1]]])


def test_coboundary_examples():
    _, d1 = co.coboundaries(co.trivial_system(cx.torus(), Z))
    assert d1 == [[0, 0]]
    _, d1 = co.coboundaries(co.trivial_system(cx.projective_plane(), Z))
    assert d1 == [[2]]
    _, d1 = co.coboundaries(system(cx.torus(), Z, [[[-1]], [[1]]]))
    assert d1 == [[0, -2]]


@pytest.mark.parametrize("g", [1, 2, 3])
def test_h2_orientable_integral(g):
    assert co.h2(co.trivial_system(cx.orientable_surface(g), Z)).group == Z


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_h2_nonorientable_integral(k):
    assert co.h2(co.trivial_system(cx.nonorientable_surface(k), Z)).group == Z2


def test_h2_twisted_torus():
    assert co.h2(system(cx.torus(), Z, [[[-1]], [[1]]])).group == Z2


@pytest.mark.parametrize("a", [Z, Z2, Z4, V4, FgAbGroup((2,), 1)])
def test_h2_sphere_is_coefficients(a):
    assert co.h2(co.trivial_system(cx.sphere(), a)).group == a


def test_h0_examples():
    assert co.h0(co.trivial_system(cx.torus(), V4)) == V4
    assert co.h0(system(cx.projective_plane(), Z, [[[-1]]])) == FgAbGroup()
    assert co.h0(system(cx.projective_plane(), Z4, [[[-1]]])) == Z2


def test_h1_examples():
    assert co.h1(co.trivial_system(cx.torus(), Z2)) == V4
    for a in (Z, Z2, Z4):
        assert co.h1(co.trivial_system(cx.sphere(), a)) == FgAbGroup()
    assert co.h1(co.trivial_system(cx.projective_plane(), Z2)) == Z2
    assert co.h1(co.trivial_system(cx.torus(), Z)) == FgAbGroup((), 2)
    assert co.h1(co.trivial_system(cx.klein_bottle(), Z)) == Z


@pytest.mark.parametrize("x", [cx.sphere(), cx.torus(), cx.orientable_surface(2), cx.projective_plane(),
                               cx.klein_bottle(), cx.nonorientable_surface(3),
                               cx.TwoComplex(3, ((1, 2, 1, -2), (3, 3, 3)))])
@pytest.mark.parametrize("p", [2, 3, 4])
def test_h1_trivial_mod_p_counts_homs(x, p):
    h = co.h1(co.trivial_system(x, cyclic(p)))
    assert h.order() == len(abgroup.enumerate_homs(cx.h1(x)[0], cyclic(p)))


def test_coinvariants_examples():
    assert co.coinvariants(Z, [AbHom.from_matrix(Z, Z, [[-1]])]) == Z2
    for a in (Z, Z4, V4):
        assert co.coinvariants(a, [AbHom.identity(a)]) == a
    assert co.coinvariants(Z4, [AbHom.from_matrix(Z4, Z4, [[-1]])]) == Z2
    with pytest.raises(ValueError):
        co.coinvariants(Z, [AbHom.from_matrix(Z, Z, [[2]])])


def test_duality_examples():
    t = cx.torus()
    dc = co.duality_check(t, mu1_system(t, "O(2)", [[1], [0]]))
    assert dc.lhs == dc.rhs == Z2 and dc.agree
    rp2 = cx.projective_plane()
    dc = co.duality_check(rp2, system(rp2, Z, [[[-1]]]))
    assert dc.lhs == dc.rhs == Z
    k = cx.klein_bottle()
    s = system(k, Z, [[[-1]], [[1]]])
    assert co.coboundaries(s)[1] == [[0, 2]]
    dc = co.duality_check(k, s)
    assert dc.lhs == dc.rhs == Z2
    with pytest.raises(ValueError):
        co.duality_check(cx.TwoComplex(1, ((1, 1),)), co.trivial_system(cx.TwoComplex(1, ((1, 1),)), Z))


def _composite_vanishes(s):
    d0, d1 = co.coboundaries(s)
    a = s.coeff
    n = s.complex.num_relators
    comp = zlinalg.matmul(d1, d0, inner=len(d0), cols=a.ngens)
    for j in range(n):
        for q in range(a.ngens):
            assert not any(a.reduce([comp[j * a.ngens + p][q] for p in range(a.ngens)]))


GROUPS = ["O(2)", "O(3)", "PO(4)", "PO(6)", "U(1)"]
relator_words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=0, max_size=8)


@settings(max_examples=60, deadline=None)
@given(st.lists(relator_words, min_size=1, max_size=2), st.sampled_from(GROUPS), st.data())
def test_cochain_identity_on_random_presentations(rels, group, data):
    x = cx.TwoComplex(3, tuple(tuple(r) for r in rels))
    d = gd.builtin(group)
    classes = enumerate_mu1(x, d)
    mu = data.draw(st.sampled_from(classes))
    _composite_vanishes(co.local_system(x, d, mu.hom))


@pytest.mark.parametrize("surface", ["sphere", "orientable:1", "orientable:2", "nonorientable:1",
                                     "nonorientable:2", "nonorientable:3"])
@pytest.mark.parametrize("group", GROUPS)
def test_tietze_move_preserves_cohomology(surface, group):
    x = cx.from_builtin(surface)
    m = x.num_gens
    y = cx.TwoComplex(m + 1, x.relators + ((m + 1,),))
    d = gd.builtin(group)
    for mu in enumerate_mu1(x, d):
        images = [list(v) for v in mu.generator_images] + [[0] * d.pi0.ngens]
        sx = co.local_system(x, d, mu.hom)
        sy = co.local_system(y, d, cx.hom_from_generator_images(y, d.pi0, images))
        assert co.h0(sx) == co.h0(sy)
        assert co.h1(sx) == co.h1(sy)
        assert co.h2(sx).group == co.h2(sy).group
