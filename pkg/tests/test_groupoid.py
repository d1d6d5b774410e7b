from dataclasses import replace

from crossmod.groupoid import (
    GroupBundle,
    discrete_groupoid,
    enumerate_groupoid_automorphisms,
    groupoid_from_group,
    identity_morphism,
    indiscrete_groupoid,
    indiscrete_times_group,
    validate_groupoid,
    validate_groupoid_morphism,
)
from crossmod.groups import cyclic_group, symmetric_group


def test_examples_validate():
    for g in (
        groupoid_from_group(symmetric_group(3)),
        discrete_groupoid(3),
        indiscrete_groupoid(3),
        indiscrete_times_group(2, cyclic_group(2)),
        GroupBundle((cyclic_group(2), cyclic_group(3))).to_groupoid(),
    ):
        assert validate_groupoid(g).ok, g


def test_indiscrete_shape():
    g = indiscrete_groupoid(3)
    assert g.n_arrows == 9
    assert all(len(g.hom(x, y)) == 1 for x in g.objects for y in g.objects)
    for a in g.arrows:
        assert g.add(a, g.neg(a)) == g.id_of(g.src[a])


def test_costars():
    g = indiscrete_groupoid(2)
    assert [len(g.costar(x)) for x in g.objects] == [2, 2]
    assert all(g.tgt[a] == x for x in g.objects for a in g.costar(x))
    b = GroupBundle((cyclic_group(2), cyclic_group(3))).to_groupoid()
    assert b.is_totally_intransitive
    assert sorted(len(c) for c in b.costars) == [2, 3]


def test_broken_associativity_reported():
    g = groupoid_from_group(cyclic_group(3))
    comp = [list(r) for r in g.comp]
    comp[1][1] = 0
    bad = replace(g, comp=tuple(tuple(r) for r in comp))
    rep = validate_groupoid(bad)
    assert not rep.ok
    assert rep.axioms() & {"associativity", "inverse", "identity"}


def test_undefined_composition_reported():
    g = discrete_groupoid(2)
    comp = [list(r) for r in g.comp]
    comp[0][1] = 0
    rep = validate_groupoid(replace(g, comp=tuple(tuple(r) for r in comp)))
    assert "composition domain" in rep.axioms()


def test_automorphism_counts():
    assert enumerate_groupoid_automorphisms(indiscrete_groupoid(2)).order == 2
    assert enumerate_groupoid_automorphisms(indiscrete_groupoid(3)).order == 6
    assert enumerate_groupoid_automorphisms(discrete_groupoid(2)).order == 2
    assert enumerate_groupoid_automorphisms(groupoid_from_group(symmetric_group(3))).order == 6
    # C2 x C2 bundle: swap the objects, and Aut(C2) is trivial
    b = GroupBundle((cyclic_group(2), cyclic_group(2))).to_groupoid()
    assert enumerate_groupoid_automorphisms(b).order == 2


def test_automorphisms_are_morphisms():
    g = indiscrete_times_group(2, cyclic_group(2))
    grp = enumerate_groupoid_automorphisms(g)
    for i in grp.elements:
        assert validate_groupoid_morphism(grp.label(i), g, g).ok
    assert validate_groupoid_morphism(identity_morphism(g), g, g).ok
