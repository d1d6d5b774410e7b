"""Crossed modules of groupoids.

A crossed module is a group bundle C and a groupoid G over the same objects,
a right action c^a of G on C (defined when tgt c = src a) and a boundary
delta: C -> G that is the identity on objects, satisfying

    CM1  delta(c^a) = -a + delta(c) + a
    CM2  c^(delta c1) = -c1 + c + c1
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BaseMismatch,
    DomainMismatch,
    MalformedTable,
    NotAbelian,
    NotAnAction,
    NotEquivariant,
    NotNormal,
    ValidationReport,
)
from .groupoid import (
    FiniteGroupoid,
    GroupBundle,
    GroupoidMorphism,
    groupoid_from_group,
    iter_groupoid_isomorphisms,
    validate_groupoid,
    validate_groupoid_morphism,
)
from .groups import (
    FiniteGroup,
    check_right_action,
    check_search_space,
    is_normal_subset,
    iter_isomorphisms,
    product_size,
    semidirect_product,
    subgroup,
)

CROSSED = "crossed"
PRE_CROSSED = "pre-crossed only"
NEITHER = "neither"


@dataclass(frozen=True)
class GroupoidAction:
    c: FiniteGroupoid
    g: FiniteGroupoid
    act: tuple[tuple, ...]  # act[c][a] = c^a or None


@dataclass(frozen=True)
class CrossedModule:
    action: GroupoidAction
    delta: tuple[int, ...]
    name: str = ""

    @property
    def C(self) -> FiniteGroupoid:
        return self.action.c

    @property
    def G(self) -> FiniteGroupoid:
        return self.action.g

    @property
    def objects(self) -> range:
        return self.action.g.objects

    def act(self, c: int, a: int) -> int:
        v = self.action.act[c][a]
        if v is None:
            raise MalformedTable(f"action {self.C.arrow_name(c)}^{self.G.arrow_name(a)} is undefined")
        return v

    def cadd(self, *cs: int) -> int:
        return self.C.sum(*cs)

    def cneg(self, c: int) -> int:
        return self.C.neg(c)

    def zero(self, x: int) -> int:
        return self.C.id_of(x)

    def base(self, c: int) -> int:
        return self.C.src[c]

    def fibre(self, x: int) -> tuple[int, ...]:
        return self.C.costar(x)

    def __repr__(self) -> str:
        return f"CrossedModule({self.name or '?'}: |C|={self.C.n_arrows}, |G|={self.G.n_arrows}, |X|={self.G.n_objects})"


# -- validation -------------------------------------------------------------

def validate_action(a: GroupoidAction) -> ValidationReport:
    c, g, act = a.c, a.g, a.act
    if c.n_objects != g.n_objects:
        raise BaseMismatch(f"C has {c.n_objects} objects, G has {g.n_objects}")
    report = ValidationReport()
    report.extend(validate_groupoid(c), "C ")
    report.extend(validate_groupoid(g), "G ")
    if not c.is_totally_intransitive:
        report.add("C totally intransitive", tuple(x for x in c.arrows if c.src[x] != c.tgt[x])[:1])
    if not report.ok:
        return report
    for x in c.arrows:
        for y in g.arrows:
            v = act[x][y]
            if c.tgt[x] == g.src[y]:
                if v is None:
                    report.add("(i) domain", (x, y), "action undefined where tgt c = src a")
                elif c.tgt[v] != g.tgt[y]:
                    report.add("(i) target", (x, y))
            elif v is not None:
                report.add("(i) domain", (x, y), "action defined where tgt c != src a")
    if not report.ok:
        return report
    for y in g.arrows:
        xs = c.costar(g.src[y])
        for x1 in xs:
            for x2 in xs:
                if act[c.add(x1, x2)][y] != c.add(act[x1][y], act[x2][y]):
                    report.add("(ii) additivity", (x1, x2, y))
    for x in c.arrows:
        e = g.id_of(c.tgt[x])
        if act[x][e] != x:
            report.add("(iii) unit", (x, e))
        for y in g.arrows:
            if g.src[y] != c.tgt[x]:
                continue
            xy = act[x][y]
            for z in g.arrows:
                if g.src[z] == g.tgt[y] and act[x][g.add(y, z)] != act[xy][z]:
                    report.add("(iii) composition", (x, y, z))
    return report


def validate_crossed_module(x: CrossedModule) -> ValidationReport:
    """Check the action, the boundary, CM1 and CM2.

    The verdict flag is CROSSED, PRE_CROSSED (everything but CM2) or NEITHER.
    """
    report = validate_action(x.action)
    c, g = x.C, x.G
    if report.ok:
        d = x.delta
        if len(d) != c.n_arrows or any(not (0 <= v < g.n_arrows) for v in d):
            report.add("boundary shape", (len(d),))
        else:
            m = GroupoidMorphism(tuple(g.objects), tuple(d))
            report.extend(validate_groupoid_morphism(m, c, g), "boundary ")
    if report.ok:
        d = x.delta
        for cc in c.arrows:
            for a in g.arrows:
                if g.src[a] != c.tgt[cc]:
                    continue
                lhs = d[x.act(cc, a)]
                rhs = g.sum(g.neg(a), d[cc], a)
                if lhs != rhs:
                    report.add("CM1", (cc, a))
    cm1_ok = report.ok
    if cm1_ok:
        for cc in c.arrows:
            for c1 in c.costar(c.tgt[cc]):
                if x.act(cc, x.delta[c1]) != c.sum(c.neg(c1), cc, c1):
                    report.add("CM2", (cc, c1))
    if report.ok:
        report.flags["verdict"] = CROSSED
    elif cm1_ok:
        report.flags["verdict"] = PRE_CROSSED
    else:
        report.flags["verdict"] = NEITHER
    return report


# -- constructors -----------------------------------------------------------

def _make(c: FiniteGroupoid, g: FiniteGroupoid, act_fn, delta: Sequence[int], name: str) -> CrossedModule:
    act = tuple(
        tuple(act_fn(x, y) if c.tgt[x] == g.src[y] else None for y in g.arrows) for x in c.arrows
    )
    return CrossedModule(GroupoidAction(c, g, act), tuple(delta), name)


def from_normal_subgroup(g: FiniteGroup, h: Iterable[int], name: str = "") -> CrossedModule:
    """(H, G, inclusion) with conjugation action c^a = -a + c + a."""
    h = sorted(set(h))
    if not is_normal_subset(g, h):
        raise NotNormal("subgroup is not normal")
    hg, incl = subgroup(g, h, "H")
    G = groupoid_from_group(g)
    C = GroupBundle((hg,)).to_groupoid()
    back = {v: i for i, v in enumerate(incl)}
    return _make(C, G, lambda c, a: back[g.conj(incl[c], a)], incl, name or f"{hg.order}<|{g.name}")


def from_normal_subgroupoid(G: FiniteGroupoid, loops: dict, name: str = "") -> CrossedModule:
    """Totally intransitive normal subgroupoid: loops[x] lists the loop arrows at x kept in C."""
    keep = []
    for x in G.objects:
        keep.append(sorted(set(loops.get(x, ())) | {G.id_of(x)}))
    members = set(itertools.chain.from_iterable(keep))
    for c in members:
        for a in G.arrows:
            if G.src[a] == G.tgt[c] and G.sum(G.neg(a), c, a) not in members:
                raise NotNormal(f"conjugate of {G.arrow_name(c)} by {G.arrow_name(a)} leaves the subgroupoid")
    groups = []
    for x in G.objects:
        vg, vl = G.vertex_group(x)
        idx = {a: i for i, a in enumerate(vl)}
        sub, _ = subgroup(vg, [idx[a] for a in keep[x]], G.object_name(x))
        groups.append(sub)
    C = GroupBundle(tuple(groups), tuple(G.object_name(x) for x in G.objects)).to_groupoid()
    incl = [keep[x][i] for x in G.objects for i in range(len(keep[x]))]
    back = {v: i for i, v in enumerate(incl)}
    return _make(C, G, lambda c, a: back[G.sum(G.neg(a), incl[c], a)], incl, name)


def from_module_zero_map(g: FiniteGroup, m: FiniteGroup, act, name: str = "") -> CrossedModule:
    """(M, G, 0) for a right G-module M; ``act[m][g]`` is m^g."""
    if not m.is_abelian:
        raise NotAbelian("the kernel of the zero boundary must be abelian")
    rep = check_right_action(m, g, act)
    if not rep.ok:
        raise NotAnAction(str(rep))
    G = groupoid_from_group(g)
    C = GroupBundle((m,)).to_groupoid()
    return _make(C, G, lambda c, a: act[c][a], [g.identity] * m.order, name or f"{m.name}-0->{g.name}")


def from_module_morphism(g: FiniteGroup, m: FiniteGroup, n: FiniteGroup, act_m, act_n, eta: Sequence[int],
                         name: str = "") -> CrossedModule:
    """(M, N x| G, m -> (eta m, 1)) with N x| G acting on M through its projection to G.

    Modules are given by right actions ``act_m[m][g]``, ``act_n[k][g]``.
    """
    for grp in (m, n):
        if not grp.is_abelian:
            raise NotAbelian(f"{grp.name} is not abelian")
    for grp, act in ((m, act_m), (n, act_n)):
        rep = check_right_action(grp, g, act)
        if not rep.ok:
            raise NotAnAction(str(rep))
    for x in m.elements:
        for y in m.elements:
            if eta[m.mul(x, y)] != n.mul(eta[x], eta[y]):
                raise NotEquivariant("eta is not a homomorphism")
        for k in g.elements:
            if eta[act_m[x][k]] != act_n[eta[x]][k]:
                raise NotEquivariant(f"eta(m^g) != eta(m)^g at m={x}, g={k}")
    sd = semidirect_product(n, g, act_n, f"{n.name}x|{g.name}")
    G = groupoid_from_group(sd)
    C = GroupBundle((m,)).to_groupoid()
    delta = [sd.index((eta[x], g.identity)) for x in m.elements]
    return _make(C, G, lambda c, a: act_m[c][sd.label(a)[1]], delta, name or f"{m.name}->{sd.name}")


# -- morphisms --------------------------------------------------------------

@dataclass(frozen=True)
class XmodMorphism:
    f0: tuple[int, ...]
    f1: tuple[int, ...]
    f2: tuple[int, ...]

    @property
    def groupoid_part(self) -> GroupoidMorphism:
        return GroupoidMorphism(self.f0, self.f1)

    @property
    def is_bijective(self) -> bool:
        return all(len(set(t)) == len(t) for t in (self.f0, self.f1, self.f2))

    def inverse(self) -> "XmodMorphism":
        return XmodMorphism(*(_invert(t) for t in (self.f0, self.f1, self.f2)))


def _invert(t: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(t)
    for i, v in enumerate(t):
        out[v] = i
    return tuple(out)


def identity_xmod_morphism(x: CrossedModule) -> XmodMorphism:
    return XmodMorphism(tuple(x.G.objects), tuple(x.G.arrows), tuple(x.C.arrows))


def validate_xmod_morphism(f: XmodMorphism, dom: CrossedModule, cod: CrossedModule) -> ValidationReport:
    report = ValidationReport()
    if len(f.f0) != dom.G.n_objects or len(f.f1) != dom.G.n_arrows or len(f.f2) != dom.C.n_arrows:
        report.add("morphism shape", (len(f.f0), len(f.f1), len(f.f2)))
        return report
    report.extend(validate_groupoid_morphism(GroupoidMorphism(f.f0, f.f1), dom.G, cod.G), "f1 ")
    report.extend(validate_groupoid_morphism(GroupoidMorphism(f.f0, f.f2), dom.C, cod.C), "f2 ")
    if not report.ok:
        return report
    for c in dom.C.arrows:
        if cod.delta[f.f2[c]] != f.f1[dom.delta[c]]:
            report.add("boundary square", (c,))
    for c in dom.C.arrows:
        for a in dom.G.arrows:
            if dom.G.src[a] == dom.C.tgt[c]:
                if f.f2[dom.act(c, a)] != cod.act(f.f2[c], f.f1[a]):
                    report.add("action square", (c, a))
    return report


def compose_xmod_morphisms(f: XmodMorphism, g: XmodMorphism) -> XmodMorphism:
    """f after g."""
    for mine, theirs in ((f.f0, g.f0), (f.f1, g.f1), (f.f2, g.f2)):
        if theirs and max(theirs) >= len(mine):
            raise DomainMismatch("codomain of g does not match the domain of f")
    return XmodMorphism(
        tuple(f.f0[v] for v in g.f0),
        tuple(f.f1[v] for v in g.f1),
        tuple(f.f2[v] for v in g.f2),
    )


def _bundle_isomorphism_candidates(x: CrossedModule, f0, f1) -> list[list[dict]]:
    """Per object, the isomorphisms C(obj) -> C(f0 obj) commuting with delta."""
    per_object = []
    for obj in x.objects:
        src_fibre, dst_fibre = x.fibre(obj), x.fibre(f0[obj])
        gs = _fibre_group(x, obj)
        gd = _fibre_group(x, f0[obj])
        options = []
        for iso in iter_isomorphisms(gs, gd):
            m = {src_fibre[i]: dst_fibre[iso[i]] for i in range(len(src_fibre))}
            if all(x.delta[m[c]] == f1[x.delta[c]] for c in src_fibre):
                options.append(m)
        per_object.append(options)
    return per_object


def _fibre_group(x: CrossedModule, obj: int) -> FiniteGroup:
    return x.C.vertex_group(obj)[0]


def enumerate_xmod_automorphisms(x: CrossedModule) -> FiniteGroup:
    """Aut of a crossed module; product f*g = f after g; labels are XmodMorphism."""
    autos = []
    for gm in iter_groupoid_isomorphisms(x.G, x.G):
        f0, f1 = gm.obj_map, gm.arr_map
        options = _bundle_isomorphism_candidates(x, f0, f1)
        check_search_space(product_size(len(o) for o in options), "bundle automorphism search")
        for choice in itertools.product(*options):
            f2 = [0] * x.C.n_arrows
            for m in choice:
                for k, v in m.items():
                    f2[k] = v
            ok = True
            for c in x.C.arrows:
                for a in x.G.arrows:
                    if x.G.src[a] == x.C.tgt[c] and f2[x.act(c, a)] != x.act(f2[c], f1[a]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                autos.append(XmodMorphism(tuple(f0), tuple(f1), tuple(f2)))
    autos.sort(key=lambda m: (m.f0, m.f1, m.f2))
    return FiniteGroup.from_elements(autos, compose_xmod_morphisms, "Aut")
