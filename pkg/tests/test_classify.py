import itertools

import pytest

from gbundles import abgroup, classify as cl, cohomology as co, complex as cx, groupdata as gd
from gbundles.abgroup import AbElement, AbHom, FgAbGroup, cyclic

SURFACES = ["sphere", "orientable:1", "orientable:2", "nonorientable:1", "nonorientable:2", "nonorientable:3"]
GROUPS = ["O(2)", "O(3)", "SO(3)", "U(1)", "PO(4)", "PO(6)", "PO(8)"]


def slot(surface, group, images=None):
    x, d = cx.from_builtin(surface), gd.builtin(group)
    mu = cl.enumerate_mu1(x, d)[0] if images is None else cl.mu1_from_images(x, d, images)
    s = co.local_system(x, d, mu.hom)
    return x, d, mu, s, co.h2(s)


def test_enumerate_mu1_counts():
    z2 = gd.builtin("O(2)")
    for g in range(3):
        assert len(cl.enumerate_mu1(cx.orientable_surface(g), z2)) == 2 ** (2 * g)
    for k in range(1, 5):
        classes = cl.enumerate_mu1(cx.nonorientable_surface(k), z2)
        assert len(classes) == 2**k
        assert classes[0].is_zero
        assert [c.index for c in classes] == list(range(2**k))
    assert len(cl.enumerate_mu1(cx.sphere(), gd.builtin("PO(6)"))) == 1


def test_induced_action_examples():
    x, d, _, s, h = slot("orientable:1", "O(2)")
    assert h.group == cyclic(0)
    assert cl.induced_action(s, d, d.pi0.zero(), h) == AbHom.identity(h.group)
    assert cl.induced_action(s, d, d.pi0.element(1), h).matrix == ((-1,),)
    x, d, _, s, h = slot("orientable:1", "O(2)", [[1], [0]])
    assert h.group == cyclic(2)
    assert cl.induced_action(s, d, d.pi0.element(1), h) == AbHom.identity(h.group)


def test_induced_action_rejects_inconsistent_descriptor():
    # monodromy swaps the Z/2 summands; the descriptor's action does not commute with it
    v = FgAbGroup((2, 2))
    s = co.LocalSystem(cx.torus(), v, (AbHom.from_matrix(v, v, [[0, 1], [1, 0]]), AbHom.identity(v)))
    h = co.h2(s)
    assert h.group == cyclic(2)
    d = gd.GroupDescriptor("bad", cyclic(2), v, (((1, 1), (0, 1)),))
    with pytest.raises(ArithmeticError):
        cl.induced_action(s, d, d.pi0.element(1), h)


def test_orbit_rep_examples():
    z = cyclic(0)
    neg = [AbHom.identity(z), AbHom.from_matrix(z, z, [[-1]])]
    assert cl.orbit_rep(neg, z.element(-3)).coords == (3,)
    assert cl.orbit_rep(neg, z.element(3)).coords == (3,)
    assert cl.orbit_rep([AbHom.identity(z)], z.element(-3)).coords == (-3,)
    x, d, _, s, h = slot("orientable:1", "PO(4)")
    assert h.group == FgAbGroup((2, 2))
    actions = cl.all_actions(s, d, h)
    orbits = {frozenset(cl.orbit(actions, e)) for e in abgroup.enumerate_elements(h.group)}
    assert sorted(len(o) for o in orbits) == [1, 1, 2]
    big = next(o for o in orbits if len(o) == 2)
    for c in big:
        assert cl.orbit_rep(actions, AbElement(h.group, c)).coords == min(big)


@pytest.mark.parametrize("surface", SURFACES)
@pytest.mark.parametrize("group", GROUPS)
def test_induced_action_is_a_group_action(surface, group):
    x, d = cx.from_builtin(surface), gd.builtin(group)
    pi0 = list(abgroup.enumerate_elements(d.pi0))
    for mu in cl.enumerate_mu1(x, d):
        s = co.local_system(x, d, mu.hom)
        h = co.h2(s)
        act = {a.coords: cl.induced_action(s, d, a, h) for a in pi0}
        assert act[d.pi0.zero().coords] == AbHom.identity(h.group)
        for a, b in itertools.product(pi0, repeat=2):
            assert act[(a + b).coords] == act[a.coords].compose(act[b.coords])
            assert abgroup.is_automorphism(act[a.coords])


@pytest.mark.parametrize("surface", SURFACES)
@pytest.mark.parametrize("group", GROUPS)
def test_orbit_partition(surface, group):
    x, d = cx.from_builtin(surface), gd.builtin(group)
    for mu in cl.enumerate_mu1(x, d):
        r = cl.classify(x, d, mu)
        g = r.h2.group
        s = co.local_system(x, d, mu.hom)
        actions = cl.all_actions(s, d, r.h2)
        if g.is_finite:
            assert sum(r.orbit_sizes) == g.order()
            assert all(d.pi0.order() % n == 0 for n in r.orbit_sizes)
            assert len(r.orbit_reps) == r.orbit_count
            elems = list(abgroup.enumerate_elements(g))
        else:
            assert r.is_infinite
            elems = list(itertools.islice(abgroup.enumerate_canonical(g), 40))
        # reps are lex-min of their orbit and pairwise inequivalent
        seen = set()
        for rep in r.orbit_reps:
            assert cl.orbit_rep(actions, rep) == rep
            o = frozenset(cl.orbit(actions, rep))
            assert o not in seen
            seen.add(o)
        for e, f in itertools.product(elems[:40], repeat=2):
            re, rf = cl.orbit_rep(actions, e), cl.orbit_rep(actions, f)
            assert cl.orbit_rep(actions, re) == re
            assert (re == rf) == (f.coords in cl.orbit(actions, e))


def test_classify_examples():
    x, d = cx.orientable_surface(2), gd.builtin("O(2)")
    r = cl.classify(x, d, cl.enumerate_mu1(x, d)[0])
    assert r.is_infinite
    assert [e.coords[0] for e in r.orbit_reps] == list(range(10))
    r = cl.classify(x, d, cl.enumerate_mu1(x, d)[0], max_reps=3)
    assert [e.coords[0] for e in r.orbit_reps] == [0, 1, 2]
    for g in (1, 2):
        x, d = cx.orientable_surface(g), gd.builtin("PO(6)")
        assert cl.classify(x, d, cl.enumerate_mu1(x, d)[0]).orbit_count == 3


@pytest.mark.parametrize("surface,group,total", [
    ("orientable:1", "PO(4)", 9),
    ("orientable:1", "PO(6)", 9),
    ("orientable:2", "PO(4)", 33),
    ("orientable:2", "O(3)", 32),
    ("nonorientable:3", "O(3)", 16),
    ("nonorientable:2", "PO(4)", 9),
    ("sphere", "PO(6)", 3),
    ("sphere", "O(2)", cl.INFINITE),
])
def test_classify_all_totals(surface, group, total):
    c = cl.classify_all(cx.from_builtin(surface), gd.builtin(group))
    assert c.total == total
    assert [e.mu1.index for e in c.entries] == list(range(len(c.entries)))


def test_o2_nonorientable_slots():
    for k in (1, 2, 3):
        x, d = cx.nonorientable_surface(k), gd.builtin("O(2)")
        c = cl.classify_all(x, d)
        w = tuple((1,) for _ in range(k))
        for e in c.entries:
            if e.mu1.generator_images == w:
                assert e.h2.group == cyclic(0) and e.is_infinite
                assert [r.coords[0] for r in e.orbit_reps] == list(range(10))
                assert e.warnings
            else:
                assert e.orbit_count == 2 and not e.warnings


def test_connected_group_degeneration():
    for surface in SURFACES:
        x = cx.from_builtin(surface)
        for name in ("SO(3)", "SO(4)"):
            d = gd.builtin(name)
            c = cl.classify_all(x, d)
            (e,) = c.entries
            assert e.orbit_count == e.h2.group.order()
            assert all(n == 1 for n in e.orbit_sizes)


@pytest.mark.parametrize("surface", SURFACES)
@pytest.mark.parametrize("d", [
    gd.builtin("O(3)"),
    gd.GroupDescriptor("triv4", cyclic(4), cyclic(2), (((1,),),)),
    gd.GroupDescriptor("triv22", FgAbGroup((2, 2)), cyclic(3), (((1,),), ((1,),))),
])
def test_trivial_action_degeneration(surface, d):
    x = cx.from_builtin(surface)
    c = cl.classify_all(x, d)
    h2 = co.h2(co.trivial_system(x, d.pi1)).group
    assert c.total == abgroup.count_homs(cx.h1(x)[0], d.pi0) * h2.order()


def test_classification_is_deterministic():
    x, d = cx.nonorientable_surface(2), gd.builtin("PO(6)")
    a, b = cl.classify_all(x, d), cl.classify_all(x, d)
    assert [(e.orbit_count, [r.coords for r in e.orbit_reps]) for e in a.entries] == \
           [(e.orbit_count, [r.coords for r in e.orbit_reps]) for e in b.entries]
