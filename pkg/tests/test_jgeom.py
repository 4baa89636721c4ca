"""Strip geometry tests.

The membership oracle used here is independent of the production code
path: an alcove lies in the strip iff its barycenter does, and the
barycenter check runs in exact rational arithmetic straight from the
inequalities defining the strip.
"""

from fractions import Fraction

import pytest

from alcove_hecke.jgeom import (
    AI_P_elements,
    FundamentalDomain,
    TJ_order,
    WJ_reps,
    decompose_WbbJ,
    default_domain,
    in_AJ,
    in_TJ,
    in_WbbJ,
    jcontext,
    phi1_rep,
    project_AJ,
    separating_wall,
    sigma_domain,
    tJ_inverse,
    tJ_mul,
    tJ_of,
    yJ_of,
)
from alcove_hecke.rootdata import RootSystem, pairing
from alcove_hecke.weyl import (
    aff_from_fin,
    aff_identity,
    aff_mul,
    element_of_word,
    fin_apply_coweight,
    node_perm,
    reduced_word,
    simple_aff,
)


def ball(rs, radius):
    """All non-extended affine elements of length <= radius, by BFS."""
    gens = [simple_aff(rs, i) for i in range(rs.rank + 1)]
    seen = {aff_identity(rs.rank)}
    frontier = list(seen)
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for g in gens:
                x = aff_mul(w, g)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return seen


def interior_point(rs):
    h = sum(rs.highest_root)
    eps = Fraction(1, h + 1)
    return (eps,) * rs.rank


def alcove_inside_strip(ctx, w):
    """Barycenter-style oracle for strip membership."""
    x0 = interior_point(ctx.rs)
    img = tuple(a + b for a, b in
                zip(w.wt, fin_apply_coweight(w.lin, x0)))
    if any(img[j - 1] < 0 for j in ctx.J):
        return False
    return all(pairing(img, phi) <= 1 for phi in ctx.highest_roots)


def test_components_and_highest_roots():
    bc3 = RootSystem("BC", 3)
    ctx = jcontext(bc3, (1, 3))
    assert ctx.components == ((1,), (3,))
    assert ctx.highest_roots == ((1, 0, 0), (0, 0, 2))

    ctx = jcontext(bc3, (2, 3))
    assert ctx.components == ((2, 3),)
    assert ctx.highest_roots == ((0, 2, 2),)
    assert len(ctx.phiJ_positive) == 6

    a3 = RootSystem("A", 3)
    ctx = jcontext(a3, (1, 2))
    assert ctx.highest_roots == ((1, 1, 0),)


def test_strip_membership_basics():
    ctx = jcontext(RootSystem("A", 2), (1,))
    assert in_AJ(ctx, (0, 5))
    assert in_AJ(ctx, (1, -7))
    assert not in_AJ(ctx, (2, 0))
    assert not in_AJ(ctx, (-1, 3))

    # non-reduced wall: <lam, 2 alpha_2> <= 1 forces lam_2 = 0 on the lattice
    ctx = jcontext(RootSystem("BC", 2), (2,))
    assert ctx.highest_roots == ((0, 2),)
    assert in_AJ(ctx, (4, 0))
    assert not in_AJ(ctx, (0, 1))


def test_project_lands_in_strip_and_keeps_grading():
    ctx = jcontext(RootSystem("A", 2), (1, 2))
    assert project_AJ(ctx, (5, -3)) == (0, 1)
    assert project_AJ(ctx, (0, 0)) == (0, 0)
    assert project_AJ(ctx, (1, 0)) == (1, 0)

    ctx = jcontext(RootSystem("G", 2), (1,))
    for lam in [(3, -2), (-4, 1), (7, 0), (0, 0), (-1, -1)]:
        mu = project_AJ(ctx, lam)
        assert in_AJ(ctx, mu)
        assert ctx.zeta_exponent(mu) == ctx.zeta_exponent(lam)


def test_zeta_exponents_frozen():
    assert jcontext(RootSystem("A", 2), (1,)).zeta_exponent((1, 0)) == (1,)
    assert jcontext(RootSystem("A", 2), (1,)).zeta_exponent((0, 1)) == (2,)
    assert jcontext(RootSystem("A", 2), (1,)).zeta_exponent((2, -1)) == (0,)

    assert jcontext(RootSystem("G", 2), (1,)).zeta_exponent((0, 1)) == (2,)
    assert jcontext(RootSystem("G", 2), (1,)).zeta_exponent((1, 0)) == (1,)

    # short-node strip: the two coweights land at 3 and 2 on the grading
    assert jcontext(RootSystem("G", 2), (2,)).zeta_exponent((0, 1)) == (3,)
    assert jcontext(RootSystem("G", 2), (2,)).zeta_exponent((1, 0)) == (2,)

    # middle coroot of the non-reduced rank two system is killed too
    ctx = jcontext(RootSystem("BC", 2), (2,))
    assert ctx.zeta_exponent((-1, 1)) == (0,)
    assert ctx.zeta_exponent((1, 0)) == (1,)

    # family A with all nodes but the last: the first coweight maps to +1
    for n in (2, 3, 4):
        ctx = jcontext(RootSystem("A", n), tuple(range(1, n)))
        assert ctx.zeta_arity == 1
        e1 = (1,) + (0,) * (n - 1)
        assert ctx.zeta_exponent(e1) == (1,)

    # empty J: the grading is the identity on coordinates
    ctx = jcontext(RootSystem("C", 2), ())
    assert ctx.zeta_exponent((3, -1)) == (3, -1)

    # full J: trivial grading
    ctx = jcontext(RootSystem("A", 3), (1, 2, 3))
    assert ctx.zeta_arity == 0
    assert ctx.zeta_exponent((2, 5, -1)) == ()


def test_strip_translations_A2():
    rs = RootSystem("A", 2)
    ctx = jcontext(rs, (1, 2))
    w1, w2 = (1, 0), (0, 1)
    assert yJ_of(ctx, (0, 0)).is_identity()
    assert not yJ_of(ctx, w1).is_identity()
    assert tJ_mul(ctx, w1, w1) == w2
    assert tJ_mul(ctx, w1, w2) == (0, 0)
    assert tJ_inverse(ctx, w1) == w2

    # with every node in J the strip translations are length zero
    t = tJ_of(ctx, w1)
    word, sig = reduced_word(rs, t)
    assert word == ()
    assert sig == t
    assert node_perm(rs, t) == (1, 2, 0)

    # with J = {1} the same coweight factors as s_0 times the rotation
    ctx1 = jcontext(rs, (1,))
    t1 = tJ_of(ctx1, w1)
    word1, sig1 = reduced_word(rs, t1)
    assert word1 == (0,)
    assert node_perm(rs, sig1) == (1, 2, 0)

    # group law matches multiplication of the actual affine elements
    prod = aff_mul(tJ_of(ctx, w1), tJ_of(ctx, w1))
    assert prod == tJ_of(ctx, tJ_mul(ctx, w1, w1))
    assert in_TJ(ctx, prod)


@pytest.mark.parametrize("family,rank,J", [
    ("A", 2, (1,)),
    ("BC", 2, (2,)),
    ("G", 2, (2,)),
    ("C", 2, (1, 2)),
])
def test_membership_against_barycenter_oracle(family, rank, J):
    ctx = jcontext(RootSystem(family, rank), J)
    for w in ball(ctx.rs, 4):
        assert in_WbbJ(ctx, w) == alcove_inside_strip(ctx, w)


def test_decompose_round_trip():
    ctx = jcontext(RootSystem("BC", 2), (2,))
    for w in ball(ctx.rs, 5):
        if not in_WbbJ(ctx, w):
            with pytest.raises(ValueError):
                decompose_WbbJ(ctx, w)
            continue
        lam, u = decompose_WbbJ(ctx, w)
        assert in_AJ(ctx, lam)
        assert u in WJ_reps(ctx)
        assert aff_mul(tJ_of(ctx, lam), aff_from_fin(u)) == w


def test_minimal_reps_frozen():
    ctx = jcontext(RootSystem("A", 2), (1,))
    words = []
    for u in WJ_reps(ctx):
        word, _ = reduced_word(ctx.rs, aff_from_fin(u))
        words.append(word)
    assert words == [(), (2,), (2, 1)]

    assert len(WJ_reps(jcontext(RootSystem("C", 2), (1, 2)))) == 1
    assert len(WJ_reps(jcontext(RootSystem("C", 2), ()))) == 8
    assert len(WJ_reps(jcontext(RootSystem("G", 2), (2,)))) == 6


def test_default_domain_factorization():
    ctx = jcontext(RootSystem("A", 2), (1,))
    dom = default_domain(ctx)
    pts = [(0, 0), (1, 0), (0, 2), (1, -3), (0, 1)]
    for lam in pts:
        assert in_AJ(ctx, lam)
        for f in dom:
            end = aff_mul(tJ_of(ctx, lam), f)
            got_lam, got_f = dom.wt_theta(end)
            assert got_lam == lam
            assert got_f == f


def test_sigma_domain_A_family():
    for n in (2, 3):
        rs = RootSystem("A", n)
        ctx = jcontext(rs, tuple(range(1, n)))
        dom = sigma_domain(ctx)
        assert len(dom) == n + 1
        assert dom.elements[-1].is_identity()
        for f in dom.elements:
            assert len(reduced_word(rs, f)[0]) == 0

    with pytest.raises(ValueError):
        sigma_domain(jcontext(RootSystem("C", 2), (1,)))


def test_domain_validation_rejects():
    ctx = jcontext(RootSystem("A", 2), (1,))
    e = aff_identity(2)
    s2 = simple_aff(ctx.rs, 2)
    s1 = simple_aff(ctx.rs, 1)
    with pytest.raises(ValueError):
        FundamentalDomain(ctx, (e, s2))  # wrong count
    with pytest.raises(ValueError):
        FundamentalDomain(ctx, (e, s1, aff_mul(s2, s1)))  # s1 not in strip
    # e and t_{omega_1} share an orbit
    t = tJ_of(ctx, (1, 0))
    with pytest.raises(ValueError):
        FundamentalDomain(ctx, (e, s2, t))


def test_separating_wall_normalization():
    ctx = jcontext(RootSystem("A", 2), (1,))
    e = aff_identity(2)
    assert separating_wall(ctx, e, 1) == (((1, 0), 0), 1)
    assert separating_wall(ctx, e, 0) == (((1, 1), 1), -1)

    bc = jcontext(RootSystem("BC", 2), (2,))
    s2 = simple_aff(bc.rs, 2)
    wall, side = separating_wall(bc, s2, 2)
    assert wall == ((0, 2), 0)
    assert side == -1

    assert phi1_rep(bc.rs, (0, -1), -1) == ((0, 2), 2)


def test_full_strip_lattice_counts():
    expected = {
        ("A", 1): 2, ("A", 2): 3, ("A", 7): 8,
        ("B", 3): 2, ("C", 4): 2, ("D", 4): 4, ("D", 5): 4,
        ("E", 6): 3, ("E", 7): 2, ("E", 8): 1,
        ("F", 4): 1, ("G", 2): 1,
        ("BC", 1): 1, ("BC", 5): 1,
    }
    for (fam, rank), order in expected.items():
        ctx = jcontext(RootSystem(fam, rank), tuple(range(1, rank + 1)))
        assert TJ_order(ctx) == order, (fam, rank)
        assert len(AI_P_elements(ctx)) == order, (fam, rank)


def test_custom_domain_G2_short_node():
    # Six specific strip alcoves form a fundamental domain for the
    # short-node strip of G_2, and refactoring the element t_{w2} * s1*s2
    # over that domain lands on the 010 alcove with coweight w1.
    rs = RootSystem("G", 2)
    ctx = jcontext(rs, (2,))
    words = [(), (1,), (0, 1, 0), (0, 1, 2), (0, 1), (0,)]
    elems = [element_of_word(rs, w) for w in words]
    dom = FundamentalDomain(ctx, elems)

    u = element_of_word(rs, (1, 2))
    end = aff_mul(tJ_of(ctx, (0, 1)), u)
    assert decompose_WbbJ(ctx, end) == ((0, 1), u.lin)

    lam, f = dom.wt_theta(end)
    assert lam == (1, 0)
    assert f == element_of_word(rs, (0, 1, 0))
