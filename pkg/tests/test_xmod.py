from dataclasses import replace

import pytest

from crossmod.errors import NotAbelian, NotEquivariant, NotNormal
from crossmod.groupoid import GroupBundle, groupoid_from_group
from crossmod.groups import cyclic_group, symmetric_group, trivial_group
from crossmod.xmod import (
    CROSSED,
    NEITHER,
    PRE_CROSSED,
    CrossedModule,
    GroupoidAction,
    compose_xmod_morphisms,
    from_module_morphism,
    from_module_zero_map,
    from_normal_subgroup,
    identity_xmod_morphism,
    validate_action,
    validate_crossed_module,
    validate_xmod_morphism,
)
from conftest import XMOD_NAMES, aut, xmod


@pytest.mark.parametrize("name", XMOD_NAMES)
def test_catalog_is_crossed(name):
    x = xmod(name)
    assert validate_action(x.action).ok
    rep = validate_crossed_module(x)
    assert rep.ok, str(rep)
    assert rep.flags["verdict"] == CROSSED


def test_non_normal_subgroup_rejected():
    s3 = symmetric_group(3)
    transposition = next(a for a in s3.elements if a != s3.identity and s3.mul(a, a) == s3.identity)
    with pytest.raises(NotNormal):
        from_normal_subgroup(s3, [s3.identity, transposition])


def test_zero_map_needs_abelian_kernel():
    s3 = symmetric_group(3)
    with pytest.raises(NotAbelian):
        from_module_zero_map(trivial_group(), s3, [[m] for m in s3.elements])


def test_module_morphism_must_be_equivariant():
    c2, c3 = cyclic_group(2), cyclic_group(3)
    inv = [[m if g == 0 else (-m) % 3 for g in range(2)] for m in range(3)]
    triv = [[m, m] for m in range(3)]
    with pytest.raises(NotEquivariant):
        from_module_morphism(c2, c3, c3, triv, inv, [0, 1, 2])


def test_non_abelian_zero_boundary_is_pre_crossed():
    s3 = symmetric_group(3)
    G = groupoid_from_group(trivial_group())
    C = GroupBundle((s3,)).to_groupoid()
    x = CrossedModule(GroupoidAction(C, G, tuple((c,) for c in C.arrows)), (0,) * 6)
    rep = validate_crossed_module(x)
    assert rep.flags["verdict"] == PRE_CROSSED
    assert rep.axioms() == {"CM2"}


def test_trivial_action_on_a3_breaks_cm1():
    x = xmod("a3s3")
    act = tuple(tuple(c if v is not None else None for v in row) for c, row in enumerate(x.action.act))
    y = replace(x, action=GroupoidAction(x.C, x.G, act))
    rep = validate_crossed_module(y)
    assert rep.flags["verdict"] == NEITHER
    assert "CM1" in rep.axioms()


def test_aut_orders():
    expected = {"trivial": 1, "c2c2": 1, "c3zero": 2, "a3s3": 6, "s3s3": 6, "indisc2": 2, "bundle2": 2}
    for name, n in expected.items():
        assert aut(name).order == n, name


@pytest.mark.parametrize("name", ["c3c2zero", "a3s3", "indisc2c2", "bundle2"])
def test_aut_closed_under_composition(name):
    x, grp = xmod(name), aut(name)
    for i in grp.elements:
        f = grp.label(i)
        assert validate_xmod_morphism(f, x, x).ok
        assert compose_xmod_morphisms(f, f.inverse()) == identity_xmod_morphism(x)
        for j in grp.elements:
            g = grp.label(j)
            assert grp.label(grp.mul(i, j)) == compose_xmod_morphisms(f, g)
