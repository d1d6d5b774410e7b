import pytest
from hypothesis import given, settings, strategies as st

from crossmod.derivations import (
    FreeDerivation,
    Homotopy,
    aut_action,
    delta,
    der_multiply,
    derivation_violations,
    enumerate_der_star,
    enumerate_fder,
    enumerate_msec,
    fder_inverse,
    fder_monoid_table,
    fder_multiply,
    identity_derivation,
    identity_section,
    induced_morphism,
    is_invertible,
    merge_fder,
    msec_action_on_der,
    msec_der_semidirect,
    msec_multiply,
    split_as_semidirect_index,
    split_fder,
    validate_free_derivation,
    zero_derivation,
)
from crossmod.errors import NotInvertible
from crossmod.xmod import compose_xmod_morphisms, identity_xmod_morphism, validate_xmod_morphism
from conftest import XMOD_NAMES, aut, fder, fder_star, xmod
from oracles import brute_isomorphic, inverse_via_f2, raw_f1, raw_f2, searched_inverse

SMALL = [n for n in XMOD_NAMES if len(fder(n)) <= 64]


# -- worked examples on C2 -> C2 --------------------------------------------

def test_c2c2_examples():
    x = xmod("c2c2")
    e, a = 0, 1
    collapse = FreeDerivation((e,), (0, 1))
    assert validate_free_derivation(x, collapse).ok
    assert delta(x, collapse).f1 == (0, 0)
    assert not is_invertible(x, collapse)
    swap = FreeDerivation((a,), (0, 0))
    assert delta(x, swap).f1 == (0, 1)
    assert is_invertible(x, swap)
    assert fder_inverse(x, swap) == swap
    assert fder_multiply(x, swap, swap) == identity_derivation(x)


def test_c2c2_counts():
    assert len(fder("c2c2")) == 4
    assert fder_star("c2c2").order == 2


def test_a3s3_transposition_section_conjugates():
    x = xmod("a3s3")
    G = x.G
    t = next(a for a in G.arrows if a != G.id_of(0) and G.add(a, a) == G.id_of(0))
    f = delta(x, FreeDerivation((t,), zero_derivation(x)))
    assert f.f1 == tuple(G.sum(t, a, G.neg(t)) for a in G.arrows)


def test_indiscrete_sections():
    x = xmod("indisc2")
    msec = enumerate_msec(x)
    assert msec.order == 2
    swap = next(msec.label(i) for i in msec.elements if i != msec.identity)
    assert msec_multiply(x, swap, swap) == identity_section(x)
    assert fder_star("indisc2").order == 2


def test_der_multiply_on_c2c2():
    x = xmod("c2c2")
    zero = zero_derivation(x)
    for s1 in [(0, 0), (0, 1)]:
        for t1 in [(0, 0), (0, 1)]:
            got = der_multiply(x, s1, t1)
            assert got == tuple(x.cadd(t1[a], s1[x.G.add(a, x.delta[t1[a]])]) for a in x.G.arrows)
        assert der_multiply(x, zero, s1) == s1 == der_multiply(x, s1, zero)
        assert msec_action_on_der(x, s1, identity_section(x)) == s1


def test_inverse_of_non_invertible_raises():
    x = xmod("c2c2")
    with pytest.raises(NotInvertible):
        fder_inverse(x, FreeDerivation((0,), (0, 1)))
    with pytest.raises(NotInvertible):
        split_fder(x, FreeDerivation((0,), (0, 1)))


# -- exhaustive laws ----------------------------------------------------------

@pytest.mark.parametrize("name", XMOD_NAMES)
def test_every_element_is_a_valid_derivation(name):
    x = xmod(name)
    for s in fder(name):
        assert validate_free_derivation(x, s).ok
        assert not derivation_violations(x, s.s1).violations


@pytest.mark.parametrize("name", XMOD_NAMES)
def test_induced_morphisms_match_raw_formulas(name):
    x = xmod(name)
    for s in fder(name):
        f = delta(x, s)
        assert validate_xmod_morphism(f, x, x).ok
        assert f.f1 == raw_f1(x, s.s0, s.s1)
        assert f.f2 == raw_f2(x, s.s0, s.s1)


@pytest.mark.parametrize("name", ["c3c2zero", "indisc2c2"])
def test_homotopies_over_automorphisms_induce_morphisms(name):
    from crossmod.derivations import homotopies_over

    x = xmod(name)
    grp = aut(name)
    for i in grp.elements:
        for h in homotopies_over(x, grp.label(i)):
            assert validate_xmod_morphism(induced_morphism(h, x), x, x).ok


@pytest.mark.parametrize("name", SMALL)
def test_monoid_laws(name):
    x = xmod(name)
    els = fder(name)
    one = identity_derivation(x)
    assert delta(x, one) == identity_xmod_morphism(x)
    table = fder_monoid_table(x, els)
    deltas = [delta(x, s) for s in els]
    for i, s in enumerate(els):
        assert fder_multiply(x, s, one) == s == fder_multiply(x, one, s)
        for j in range(len(els)):
            assert deltas[table[i][j]] == compose_xmod_morphisms(deltas[i], deltas[j])
            row = table[table[i][j]]
            for k in range(len(els)):
                assert row[k] == table[i][table[j][k]]


@pytest.mark.parametrize("name", XMOD_NAMES)
def test_invertibility_agrees_with_search(name):
    x = xmod(name)
    els = fder(name)
    for s in els:
        inv = is_invertible(x, s)
        f = delta(x, s)
        assert inv.f1_bijective == (len(set(f.f1)) == len(f.f1))
        assert inv.f2_bijective == (len(set(f.f2)) == len(f.f2))
        found = searched_inverse(x, s, els)
        assert inv.invertible == (found is not None)
        if inv:
            assert fder_inverse(x, s) == found == inverse_via_f2(x, s)


@pytest.mark.parametrize("name", XMOD_NAMES)
def test_aut_action_laws(name):
    x, grp, star = xmod(name), aut(name), fder_star(name)
    for s in (star.label(i) for i in star.elements):
        assert aut_action(x, s, identity_xmod_morphism(x)) == s
        for i in grp.elements:
            f = grp.label(i)
            sf = aut_action(x, s, f)
            assert is_invertible(x, sf)
            assert delta(x, sf) == compose_xmod_morphisms(f.inverse(), compose_xmod_morphisms(delta(x, s), f))
            for j in grp.elements:
                g = grp.label(j)
                assert aut_action(x, s, grp.label(grp.mul(i, j))) == aut_action(x, sf, g)


def test_order_two_automorphism_of_c3():
    x, grp, star = xmod("c3zero"), aut("c3zero"), fder_star("c3zero")
    f = grp.label(next(i for i in grp.elements if i != grp.identity))
    for s in (star.label(i) for i in star.elements):
        assert aut_action(x, aut_action(x, s, f), f) == s


@pytest.mark.parametrize("name", XMOD_NAMES)
def test_split_merge(name):
    x, star = xmod(name), fder_star(name)
    sd, der, msec = msec_der_semidirect(x)
    assert sd.order == star.order
    assert split_fder(x, identity_derivation(x)) == (identity_section(x), zero_derivation(x))
    index = {}
    for i in star.elements:
        s = star.label(i)
        assert merge_fder(x, split_fder(x, s)) == s
        index[i] = split_as_semidirect_index(x, sd, der, msec, s)
    assert sorted(index.values()) == list(sd.elements)
    for i in star.elements:
        for j in star.elements:
            assert index[star.mul(i, j)] == sd.mul(index[i], index[j])
    assert brute_isomorphic(star.table, sd.table)


def test_c2c2_fder_star_is_sections():
    x = xmod("c2c2")
    star = fder_star("c2c2")
    assert all(star.label(i).s1 == zero_derivation(x) for i in star.elements)
    assert enumerate_der_star(x).order == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["a3s3", "c3c2zero", "indisc2c2", "bundle2", "c3s3mm"]), st.data())
def test_random_products_stay_invertible(name, data):
    x, star = xmod(name), fder_star(name)
    i = data.draw(st.sampled_from(list(star.elements)))
    j = data.draw(st.sampled_from(list(star.elements)))
    s, t = star.label(i), star.label(j)
    u = fder_multiply(x, s, t)
    assert is_invertible(x, u)
    assert fder_multiply(x, u, fder_inverse(x, u)) == identity_derivation(x)
    assert fder_inverse(x, u) == fder_multiply(x, fder_inverse(x, t), fder_inverse(x, s))


def test_homotopy_on_identity_is_delta():
    x = xmod("s3s3")
    for s in fder("s3s3")[:20]:
        h = Homotopy(s.s0, s.s1, identity_xmod_morphism(x))
        assert induced_morphism(h, x, check=True) == delta(x, s)
