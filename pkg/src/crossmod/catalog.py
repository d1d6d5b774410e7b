"""Small named crossed modules used as the shipped corpus and in tests."""

from __future__ import annotations

from typing import Callable

from .actor import TwoCrossedModule
from .groupoid import GroupBundle, indiscrete_groupoid, indiscrete_times_group
from .groups import FiniteGroup, alternating_group, cyclic_group, symmetric_group, trivial_group
from .xmod import (
    CrossedModule,
    from_module_morphism,
    from_module_zero_map,
    from_normal_subgroup,
    from_normal_subgroupoid,
)


def _inversion_on_c3():
    """C2 acting on C3 by inversion, as a right action table act[m][g]."""
    return [[m if g == 0 else (-m) % 3 for g in range(2)] for m in range(3)]


def _trivial_action(m: int, g: int):
    return [[x] * g for x in range(m)]


def trivial() -> CrossedModule:
    return from_normal_subgroup(trivial_group(), [0], "trivial")


def c2c2() -> CrossedModule:
    """C2 -> C2 with identity boundary and trivial action."""
    return from_normal_subgroup(cyclic_group(2), [0, 1], "c2c2")


def c2c4() -> CrossedModule:
    return from_normal_subgroup(cyclic_group(4), [0, 2], "c2c4")


def a3s3() -> CrossedModule:
    s3 = symmetric_group(3)
    a3 = {s3.index(p) for p in alternating_group(3).labels}
    return from_normal_subgroup(s3, a3, "a3s3")


def s3s3() -> CrossedModule:
    s3 = symmetric_group(3)
    return from_normal_subgroup(s3, s3.elements, "s3s3")


def c3_zero() -> CrossedModule:
    """C3 -> 1, trivial action."""
    return from_module_zero_map(trivial_group(), cyclic_group(3), _trivial_action(3, 1), "c3zero")


def c3_zero_c2() -> CrossedModule:
    """C3 -> C2 with zero boundary, C2 acting by inversion."""
    return from_module_zero_map(cyclic_group(2), cyclic_group(3), _inversion_on_c3(), "c3c2zero")


def c2_module_morphism() -> CrossedModule:
    """eta = id: C2 -> C2 over the trivial group, so delta(m) = (m, 1) in C2 x| 1."""
    c2 = cyclic_group(2)
    return from_module_morphism(trivial_group(), c2, c2, _trivial_action(2, 1), _trivial_action(2, 1),
                                [0, 1], "c2mm")


def c3_module_morphism() -> CrossedModule:
    """eta = id: C3 -> C3 of C2-modules (inversion), landing in C3 x| C2 = S3."""
    c2, c3 = cyclic_group(2), cyclic_group(3)
    inv = _inversion_on_c3()
    return from_module_morphism(c2, c3, c3, inv, inv, [0, 1, 2], "c3s3mm")


def indiscrete2() -> CrossedModule:
    """Trivial C over the indiscrete groupoid on two objects."""
    return from_normal_subgroupoid(indiscrete_groupoid(2, ("x", "y")), {}, "indisc2")


def indiscrete2_c2() -> CrossedModule:
    """Vertex groups C2 of (indiscrete on two objects) x C2, included as C."""
    G = indiscrete_times_group(2, cyclic_group(2), ("x", "y"))
    loops = {x: G.hom(x, x) for x in G.objects}
    return from_normal_subgroupoid(G, loops, "indisc2c2")


def bundle_c2_c2() -> CrossedModule:
    """Two disjoint objects, each with C2 -> C2 the identity."""
    c2 = cyclic_group(2)
    G = GroupBundle((c2, c2), ("x", "y")).to_groupoid()
    loops = {x: G.hom(x, x) for x in G.objects}
    return from_normal_subgroupoid(G, loops, "bundle2")


CATALOG: dict[str, Callable[[], CrossedModule]] = {
    "trivial": trivial,
    "c2c2": c2c2,
    "c2c4": c2c4,
    "a3s3": a3s3,
    "s3s3": s3s3,
    "c3zero": c3_zero,
    "c3c2zero": c3_zero_c2,
    "c2mm": c2_module_morphism,
    "c3s3mm": c3_module_morphism,
    "indisc2": indiscrete2,
    "indisc2c2": indiscrete2_c2,
    "bundle2": bundle_c2_c2,
}


# -- 2-crossed modules ------------------------------------------------------

def _identity_2crossed(g: FiniteGroup, name: str) -> TwoCrossedModule:
    """G --id--> G --> 1 with conjugation and the commutator lift <m0, m1> = m0^-1 m1^-1 m0 m1."""
    p = trivial_group()
    inv = g.inverses
    conj = tuple(tuple(g.conj(l, m) for m in g.elements) for l in g.elements)
    lift = tuple(
        tuple(g.mul(g.mul(g.mul(inv[a], inv[b]), a), b) for b in g.elements) for a in g.elements
    )
    fixed = tuple((l,) for l in g.elements)
    return TwoCrossedModule(g, g, p, tuple(g.elements), tuple(p.identity for _ in g.elements),
                            fixed, fixed, conj, lift, name)


def c3_c3_id() -> TwoCrossedModule:
    return _identity_2crossed(cyclic_group(3), "c3c3id")


def s3_s3_id() -> TwoCrossedModule:
    return _identity_2crossed(symmetric_group(3), "s3s3id")


def one_one_group(g: FiniteGroup | None = None, name: str = "11c2") -> TwoCrossedModule:
    """1 --> 1 --> G with everything trivial."""
    g = g or cyclic_group(2)
    one = trivial_group()
    row = tuple(0 for _ in g.elements)
    return TwoCrossedModule(one, one, g, (0,), (g.identity,), (row,), (row,), ((0,),), ((0,),), name)


TWO_CATALOG: dict[str, Callable[[], TwoCrossedModule]] = {
    "c3c3id": c3_c3_id,
    "s3s3id": s3_s3_id,
    "11c2": one_one_group,
    "11s3": lambda: one_one_group(symmetric_group(3), "11s3"),
}
