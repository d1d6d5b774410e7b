"""Homotopies, free derivations and the groups built from them.

Tables are indexed by object or arrow id:

* ``s0[x]`` is an arrow of G with target x (source f0(x) for the induced f);
* ``s1[a]`` is an element of C over tgt(g1 a) for a g-derivation.

The derivation law is s1(a + b) = s1(a)^(g1 b) + s1(b).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidHomotopy, NotAutomorphism, NotInvertible, ValidationReport
from .groupoid import generators, propagate
from .groups import FiniteGroup, check_search_space, product_size
from .xmod import CrossedModule, XmodMorphism, identity_xmod_morphism


@dataclass(frozen=True)
class FreeDerivation:
    s0: tuple[int, ...]
    s1: tuple[int, ...]


@dataclass(frozen=True)
class Homotopy:
    """A homotopy (s, g) on a morphism g: C -> D; it induces f with f ~ g."""

    s0: tuple[int, ...]
    s1: tuple[int, ...]
    g: XmodMorphism


CoadmissibleSection = tuple  # s0 only
PlainDerivation = tuple  # s1 only, with s0 = identities


# -- basic pieces -----------------------------------------------------------

def identity_section(x: CrossedModule) -> tuple[int, ...]:
    return tuple(x.G.id_of(o) for o in x.objects)


def zero_derivation(x: CrossedModule) -> tuple[int, ...]:
    return tuple(x.zero(x.G.tgt[a]) for a in x.G.arrows)


def identity_derivation(x: CrossedModule) -> FreeDerivation:
    return FreeDerivation(identity_section(x), zero_derivation(x))


def derivation_violations(x: CrossedModule, s1: Sequence[int], g: XmodMorphism | None = None,
                          d: CrossedModule | None = None) -> ValidationReport:
    """Check the g-derivation law for s1: G -> D exhaustively over composable pairs."""
    d = d or x
    G = x.G
    g1 = g.f1 if g else tuple(G.arrows)
    g0 = g.f0 if g else tuple(G.objects)
    report = ValidationReport()
    for a in G.arrows:
        if d.C.src[s1[a]] != g0[G.tgt[a]]:
            report.add("derivation typing", (a,), "tgt(s1 a) != tgt(g1 a)")
    if not report.ok:
        return report
    for a in G.arrows:
        for b in G.arrows:
            if G.tgt[a] != G.src[b]:
                continue
            lhs = s1[G.add(a, b)]
            rhs = d.cadd(d.act(s1[a], g1[b]), s1[b])
            if lhs != rhs:
                report.add("derivation law", (a, b))
    return report


def validate_homotopy(h: Homotopy, dom: CrossedModule, cod: CrossedModule | None = None) -> ValidationReport:
    cod = cod or dom
    report = ValidationReport()
    for o in dom.objects:
        if cod.G.tgt[h.s0[o]] != h.g.f0[o]:
            report.add("section typing", (o,), "tgt(s0 x) != g0 x")
    report.extend(derivation_violations(dom, h.s1, h.g, cod))
    return report


def validate_free_derivation(x: CrossedModule, s: FreeDerivation) -> ValidationReport:
    return validate_homotopy(Homotopy(s.s0, s.s1, identity_xmod_morphism(x)), x)


def induced_morphism(h: Homotopy, dom: CrossedModule, cod: CrossedModule | None = None,
                     check: bool = False) -> XmodMorphism:
    """The morphism f with (s, g): f ~ g.

    f0(x) = src s0(x)
    f1(a) = s0(src a) + g1(a) + delta s1(a) - s0(tgt a)
    f2(c) = (g2(c) + s1(delta c))^(-s0(base c))
    """
    cod = cod or dom
    if check:
        rep = validate_homotopy(h, dom, cod)
        if not rep.ok:
            raise InvalidHomotopy(str(rep))
    H = cod.G
    s0, s1, g = h.s0, h.s1, h.g
    f0 = tuple(H.src[s0[o]] for o in dom.objects)
    f1 = tuple(
        H.sum(s0[dom.G.src[a]], g.f1[a], cod.delta[s1[a]], H.neg(s0[dom.G.tgt[a]]))
        for a in dom.G.arrows
    )
    f2 = tuple(
        cod.act(cod.cadd(g.f2[c], s1[dom.delta[c]]), H.neg(s0[dom.base(c)]))
        for c in dom.C.arrows
    )
    return XmodMorphism(f0, f1, f2)


def delta(x: CrossedModule, s: FreeDerivation) -> XmodMorphism:
    """The endomorphism Delta(s) induced by a free derivation."""
    return induced_morphism(Homotopy(s.s0, s.s1, identity_xmod_morphism(x)), x)


def fder_multiply(x: CrossedModule, s: FreeDerivation, t: FreeDerivation) -> FreeDerivation:
    """s * t, with Delta(s * t) = Delta(s) after Delta(t)."""
    G = x.G
    g = delta(x, t)
    u0 = tuple(G.add(s.s0[g.f0[z]], t.s0[z]) for z in G.objects)
    u1 = tuple(x.cadd(t.s1[a], x.act(s.s1[g.f1[a]], t.s0[G.tgt[a]])) for a in G.arrows)
    return FreeDerivation(u0, u1)


# -- invertibility ----------------------------------------------------------

@dataclass(frozen=True)
class Invertibility:
    invertible: bool
    f1_bijective: bool
    f2_bijective: bool
    witness: object  # the inverse when invertible, else a collision (a, b) with f1 a = f1 b

    def __bool__(self) -> bool:
        return self.invertible


def is_invertible(x: CrossedModule, s: FreeDerivation) -> Invertibility:
    f = delta(x, s)
    f1_ok = len(set(f.f1)) == len(f.f1)
    f2_ok = len(set(f.f2)) == len(f.f2)
    if f1_ok != f2_ok:
        raise AssertionError(f"f1 and f2 bijectivity disagree for {s}")
    if f1_ok:
        return Invertibility(True, True, True, fder_inverse(x, s, f))
    seen: dict[int, int] = {}
    witness = None
    for a, b in enumerate(f.f1):
        if b in seen:
            witness = (seen[b], a)
            break
        seen[b] = a
    return Invertibility(False, False, False, witness)


def fder_inverse(x: CrossedModule, s: FreeDerivation, f: XmodMorphism | None = None) -> FreeDerivation:
    """s^-1 with s0^-1(x) = -s0(f0^-1 x) and s1^-1(a) = -(s1(f1^-1 a)^(s0^-1(tgt a)))."""
    G = x.G
    f = f or delta(x, s)
    if len(set(f.f1)) != len(f.f1):
        raise NotInvertible("Delta(s) is not bijective on arrows")
    inv0 = _invert(f.f0)
    inv1 = _invert(f.f1)
    t0 = tuple(G.neg(s.s0[inv0[o]]) for o in G.objects)
    t1 = tuple(x.cneg(x.act(s.s1[inv1[a]], t0[G.tgt[a]])) for a in G.arrows)
    return FreeDerivation(t0, t1)


def _invert(t: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(t)
    for i, v in enumerate(t):
        out[v] = i
    return tuple(out)


# -- enumeration ------------------------------------------------------------

def enumerate_sections(x: CrossedModule, g0: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """All s0 with tgt(s0 o) = g0(o) (g0 = identity by default)."""
    G = x.G
    g0 = g0 if g0 is not None else tuple(G.objects)
    options = [G.costar(g0[o]) for o in G.objects]
    check_search_space(product_size(len(c) for c in options), "section enumeration")
    return [tuple(c) for c in itertools.product(*options)]


def enumerate_derivations(x: CrossedModule, g: XmodMorphism | None = None) -> list[tuple[int, ...]]:
    """All g-derivations G -> C (g an endomorphism; identity by default).

    A derivation is determined by its values on a generating set; candidates
    are extended along words and rejected on conflict.
    """
    G = x.G
    g1 = g.f1 if g else tuple(G.arrows)
    g0 = g.f0 if g else tuple(G.objects)
    gens = generators(G)
    options = [x.fibre(g0[G.tgt[s]]) for s in gens]
    check_search_space(product_size(len(o) for o in options), "derivation enumeration")

    def step(w, vw, s, vs):
        return x.cadd(x.act(vw, g1[s]), vs)

    out = []
    for values in itertools.product(*options):
        seed = {G.id_of(o): x.zero(g0[o]) for o in G.objects}
        consistent = True
        for s, v in zip(gens, values):
            ns = G.neg(s)
            # 0 = s1(s + -s) = s1(s)^(g1 -s) + s1(-s)
            for k, val in ((s, v), (ns, x.cneg(x.act(v, g1[ns])))):
                if seed.setdefault(k, val) != val:
                    consistent = False
        table = propagate(G, gens, seed, step) if consistent else None
        if table is not None:
            out.append(tuple(table))
    return sorted(out)


def enumerate_fder(x: CrossedModule) -> list[FreeDerivation]:
    sections = enumerate_sections(x)
    ders = enumerate_derivations(x)
    check_search_space(len(sections) * len(ders), "FDer enumeration")
    return [FreeDerivation(s0, s1) for s0 in sections for s1 in ders]


def enumerate_fder_star(x: CrossedModule) -> FiniteGroup:
    """The unit group FDer* with the * product, labelled by FreeDerivation."""
    units = []
    for s in enumerate_fder(x):
        f1 = delta(x, s).f1
        if len(set(f1)) == len(f1):
            units.append(s)
    return FiniteGroup.from_elements(units, lambda s, t: fder_multiply(x, s, t), "FDer*")


def fder_monoid_table(x: CrossedModule, elements: Sequence[FreeDerivation]) -> list[list[int]]:
    index = {s: i for i, s in enumerate(elements)}
    return [[index[fder_multiply(x, s, t)] for t in elements] for s in elements]


# -- the Aut-action ---------------------------------------------------------

def aut_action(x: CrossedModule, s: FreeDerivation, f: XmodMorphism) -> FreeDerivation:
    """s^f = (f1^-1 s0 f0, f2^-1 s1 f1) for an automorphism f."""
    if not f.is_bijective:
        raise NotAutomorphism("the acting morphism must be invertible")
    inv1 = _invert(f.f1)
    inv2 = _invert(f.f2)
    t0 = tuple(inv1[s.s0[f.f0[o]]] for o in x.objects)
    t1 = tuple(inv2[s.s1[f.f1[a]]] for a in x.G.arrows)
    return FreeDerivation(t0, t1)


# -- coadmissible sections and plain derivations ----------------------------

def is_coadmissible(x: CrossedModule, s0: Sequence[int]) -> bool:
    G = x.G
    return (all(G.tgt[s0[o]] == o for o in G.objects)
            and len({G.src[s0[o]] for o in G.objects}) == G.n_objects)


def msec_multiply(x: CrossedModule, s0: Sequence[int], t0: Sequence[int]) -> tuple[int, ...]:
    """(s0 * t0)(o) = s0(src t0(o)) + t0(o)."""
    G = x.G
    return tuple(G.add(s0[G.src[t0[o]]], t0[o]) for o in G.objects)


def msec_inverse(x: CrossedModule, s0: Sequence[int]) -> tuple[int, ...]:
    G = x.G
    back = [0] * G.n_objects
    for o in G.objects:
        back[G.src[s0[o]]] = o
    return tuple(G.neg(s0[back[o]]) for o in G.objects)


def enumerate_msec(x: CrossedModule) -> FiniteGroup:
    secs = [s for s in enumerate_sections(x) if is_coadmissible(x, s)]
    return FiniteGroup.from_elements(secs, lambda s, t: msec_multiply(x, s, t), "M(G)")


def der_multiply(x: CrossedModule, s1: Sequence[int], t1: Sequence[int]) -> tuple[int, ...]:
    """(s1 * t1)(a) = t1(a) + s1(a + delta t1(a))."""
    G = x.G
    return tuple(x.cadd(t1[a], s1[G.add(a, x.delta[t1[a]])]) for a in G.arrows)


def msec_action_on_der(x: CrossedModule, s1: Sequence[int], t0: Sequence[int]) -> tuple[int, ...]:
    """(s1^t0)(a) = s1(t0(src a) + a - t0(tgt a))^(t0(tgt a))."""
    G = x.G
    return tuple(
        x.act(s1[G.sum(t0[G.src[a]], a, G.neg(t0[G.tgt[a]]))], t0[G.tgt[a]])
        for a in G.arrows
    )


def is_invertible_plain(x: CrossedModule, s1: Sequence[int]) -> bool:
    G = x.G
    image = {G.add(a, x.delta[s1[a]]) for a in G.arrows}
    return len(image) == G.n_arrows


def enumerate_der_star(x: CrossedModule) -> FiniteGroup:
    ders = [d for d in enumerate_derivations(x) if is_invertible_plain(x, d)]
    return FiniteGroup.from_elements(ders, lambda s, t: der_multiply(x, s, t), "Der*")


def split_fder(x: CrossedModule, s: FreeDerivation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """FDer* -> M(G) x Der*: s = (s0, 0) * (1, s1)."""
    if not is_coadmissible(x, s.s0) or not is_invertible_plain(x, s.s1):
        raise NotInvertible("not an invertible free derivation")
    return tuple(s.s0), tuple(s.s1)


def merge_fder(x: CrossedModule, pair: tuple[Sequence[int], Sequence[int]]) -> FreeDerivation:
    s0, s1 = pair
    return FreeDerivation(tuple(s0), tuple(s1))


def msec_der_semidirect(x: CrossedModule, msec: FiniteGroup | None = None, der: FiniteGroup | None = None):
    """Der* x| M(G) with (d1, h1)(d2, h2) = (d1^h2 * d2, h1 * h2), plus the two factors."""
    from .groups import semidirect_product

    msec = msec or enumerate_msec(x)
    der = der or enumerate_der_star(x)
    act = [[der.index(msec_action_on_der(x, der.label(d), msec.label(h))) for h in msec.elements]
           for d in der.elements]
    return semidirect_product(der, msec, act, "Der*x|M(G)"), der, msec


def split_as_semidirect_index(x: CrossedModule, sd: FiniteGroup, der: FiniteGroup, msec: FiniteGroup,
                              s: FreeDerivation) -> int:
    s0, s1 = split_fder(x, s)
    return sd.index((der.index(s1), msec.index(s0)))


def homotopies_over(x: CrossedModule, f: XmodMorphism) -> Iterable[Homotopy]:
    """All homotopies (s, f) on the endomorphism f."""
    sections = enumerate_sections(x, f.f0)
    ders = enumerate_derivations(x, f)
    check_search_space(len(sections) * len(ders), "homotopy enumeration")
    for s0 in sections:
        for s1 in ders:
            yield Homotopy(s0, s1, f)
