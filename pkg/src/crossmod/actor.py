"""The actor 2-crossed module  M2(C) --zeta--> FDer*(C) --Delta--> Aut(C).

2-crossed modules are stored with one abstract multiplication per group;
the Peiffer-lifting axioms are checked in that multiplicative form:

    P1  d1<m0,m1> = m0^-1 m1^-1 m0 m1^(d2 m0)
    P2  <d1 l, m> = l^-1 l^m
    P3  <m, d1 l> = (l^m)^-1 l^(d2 m)
    P4  <m0, m1 m2> = <m0,m2> <m0,m1>^(m2^(d2 m0))
    P5  <m0 m1, m2> = <m0,m2>^m1 <m1, m2^(d2 m0)>
    P6  <m0,m1>^p = <m0^p, m1^p>
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .derivations import (
    FreeDerivation,
    aut_action,
    delta,
    enumerate_fder_star,
    fder_inverse,
    msec_inverse,
    msec_multiply,
)
from .errors import NotInvertible, ValidationReport
from .groups import FiniteGroup, check_search_space, product_size
from .xmod import CrossedModule, XmodMorphism, enumerate_xmod_automorphisms

Section2 = tuple  # s2[x] is an element of C(x)


@dataclass(frozen=True)
class TwoCrossedModule:
    """L --d1--> M --d2--> P with right actions and a Peiffer lifting.

    act_pl[l][p] = l^p, act_pm[m][p] = m^p, act_ml[l][m] = l^m, lift[m0][m1] = <m0, m1>.
    """

    L: FiniteGroup
    M: FiniteGroup
    P: FiniteGroup
    d1: tuple[int, ...]
    d2: tuple[int, ...]
    act_pl: tuple[tuple[int, ...], ...]
    act_pm: tuple[tuple[int, ...], ...]
    act_ml: tuple[tuple[int, ...], ...]
    lift: tuple[tuple[int, ...], ...]
    name: str = ""

    @property
    def orders(self) -> tuple[int, int, int]:
        return (self.L.order, self.M.order, self.P.order)


def _tuple2(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in rows)


# -- M2 and zeta ------------------------------------------------------------

def m2_group(x: CrossedModule) -> FiniteGroup:
    """Sections s2: X -> C under pointwise addition."""
    options = [x.fibre(o) for o in x.objects]
    check_search_space(product_size(len(o) for o in options), "M2 enumeration")
    secs = [tuple(s) for s in itertools.product(*options)]
    return FiniteGroup.from_elements(secs, lambda s, t: tuple(x.cadd(a, b) for a, b in zip(s, t)), "M2")


def zeta(x: CrossedModule, s2: Section2) -> FreeDerivation:
    """s2 |-> (delta s2, a |-> -(s2(src a)^a) + s2(tgt a))."""
    G = x.G
    s0 = tuple(x.delta[s2[o]] for o in x.objects)
    s1 = tuple(x.cadd(x.cneg(x.act(s2[G.src[a]], a)), s2[G.tgt[a]]) for a in G.arrows)
    return FreeDerivation(s0, s1)


def fder_action_on_m2(x: CrossedModule, s2: Section2, t: FreeDerivation) -> Section2:
    """s2^t: o |-> s2(src t0(o))^(t0(o))."""
    G = x.G
    return tuple(x.act(s2[G.src[t.s0[o]]], t.s0[o]) for o in x.objects)


def aut_action_on_m2(x: CrossedModule, s2: Section2, f: XmodMorphism) -> Section2:
    """s2^f = f2^-1 . s2 . f0."""
    inv2 = {v: i for i, v in enumerate(f.f2)}
    return tuple(inv2[s2[f.f0[o]]] for o in x.objects)


def actor_peiffer_lifting(x: CrossedModule, s: FreeDerivation, t: FreeDerivation) -> Section2:
    """<s, t>: o |-> ((s^-1)_1(t0(f0 o)))^(s0 o), with f = Delta(s).

    This is the braiding of s^-1 with t, moved to the base object by Delta(s)
    and acted on by s.
    """
    f = delta(x, s)
    if len(set(f.f1)) != len(f.f1):
        raise NotInvertible("the first argument of the Peiffer lifting must be invertible")
    sinv = fder_inverse(x, s, f)
    return tuple(x.act(sinv.s1[t.s0[f.f0[o]]], s.s0[o]) for o in x.objects)


def literal_peiffer_lifting(x: CrossedModule, s: FreeDerivation, t: FreeDerivation) -> Section2:
    """o |-> (s^-1)_1((s0^-1 * t0 * s0)(o)); kept for comparison, it fails P1 in general."""
    sinv = fder_inverse(x, s)
    conj = msec_multiply(x, msec_multiply(x, msec_inverse(x, s.s0), t.s0), s.s0)
    return tuple(sinv.s1[conj[o]] for o in x.objects)


def build_actor_2crossed(x: CrossedModule) -> TwoCrossedModule:
    aut = enumerate_xmod_automorphisms(x)
    fstar = enumerate_fder_star(x)
    m2 = m2_group(x)
    L, M, P = m2, fstar, aut
    d1 = tuple(M.index(zeta(x, L.label(l))) for l in L.elements)
    d2 = tuple(P.index(delta(x, M.label(m))) for m in M.elements)
    act_pl = [[L.index(aut_action_on_m2(x, L.label(l), P.label(p))) for p in P.elements] for l in L.elements]
    act_pm = [[M.index(aut_action(x, M.label(m), P.label(p))) for p in P.elements] for m in M.elements]
    act_ml = [[L.index(fder_action_on_m2(x, L.label(l), M.label(m))) for m in M.elements] for l in L.elements]
    lift = [[L.index(actor_peiffer_lifting(x, M.label(a), M.label(b))) for b in M.elements] for a in M.elements]
    return TwoCrossedModule(L, M, P, d1, d2, _tuple2(act_pl), _tuple2(act_pm), _tuple2(act_ml),
                            _tuple2(lift), f"actor({x.name})")


# -- validation -------------------------------------------------------------

def _check_action(report, name, n: FiniteGroup, h: FiniteGroup, act, index_act) -> None:
    for k in h.elements:
        for a in n.elements:
            for b in n.elements:
                if index_act(act, n.mul(a, b), k) != n.mul(index_act(act, a, k), index_act(act, b, k)):
                    report.add(name + " by automorphisms", (a, b, k))
    for a in n.elements:
        if index_act(act, a, h.identity) != a:
            report.add(name + " unit", (a,))
        for k1 in h.elements:
            ak1 = index_act(act, a, k1)
            for k2 in h.elements:
                if index_act(act, ak1, k2) != index_act(act, a, h.mul(k1, k2)):
                    report.add(name + " composition", (a, k1, k2))


def _table_act(act, a, k):
    return act[a][k]


def validate_2crossed(t: TwoCrossedModule) -> ValidationReport:
    L, M, P = t.L, t.M, t.P
    d1, d2 = t.d1, t.d2
    pl, pm, ml, lift = t.act_pl, t.act_pm, t.act_ml, t.lift
    report = ValidationReport()
    shapes = (
        len(d1) == L.order and len(d2) == M.order
        and len(pl) == L.order and all(len(r) == P.order for r in pl)
        and len(pm) == M.order and all(len(r) == P.order for r in pm)
        and len(ml) == L.order and all(len(r) == M.order for r in ml)
        and len(lift) == M.order and all(len(r) == M.order for r in lift)
    )
    if not shapes:
        report.add("table shapes", t.orders)
        return report

    for a in L.elements:
        for b in L.elements:
            if d1[L.mul(a, b)] != M.mul(d1[a], d1[b]):
                report.add("d1 homomorphism", (a, b))
    for a in M.elements:
        for b in M.elements:
            if d2[M.mul(a, b)] != P.mul(d2[a], d2[b]):
                report.add("d2 homomorphism", (a, b))
    for l in L.elements:
        if d2[d1[l]] != P.identity:
            report.add("complex d2 d1 = 1", (l,))

    _check_action(report, "P-action on L", L, P, pl, _table_act)
    _check_action(report, "P-action on M", M, P, pm, _table_act)
    _check_action(report, "M-action on L", L, M, ml, _table_act)
    if not report.ok:
        return report

    for p in P.elements:
        for l in L.elements:
            if d1[pl[l][p]] != pm[d1[l]][p]:
                report.add("d1 P-equivariant", (l, p))
        for m in M.elements:
            if d2[pm[m][p]] != P.conj(d2[m], p):
                report.add("d2 P-equivariant", (m, p))
    for l in L.elements:
        for m in M.elements:
            if d1[ml[l][m]] != M.conj(d1[l], m):
                report.add("crossed module CM1", (l, m))
        for l2 in L.elements:
            if ml[l][d1[l2]] != L.conj(l, l2):
                report.add("crossed module CM2", (l, l2))
    for l in L.elements:
        for m in M.elements:
            for p in P.elements:
                if pl[ml[l][m]][p] != ml[pl[l][p]][pm[m][p]]:
                    report.add("compatibility (l^m)^p = (l^p)^(m^p)", (l, m, p))

    inv_m, inv_l = M.inverses, L.inverses
    for m0 in M.elements:
        for m1 in M.elements:
            rhs = M.mul(M.mul(M.mul(inv_m[m0], inv_m[m1]), m0), pm[m1][d2[m0]])
            if d1[lift[m0][m1]] != rhs:
                report.add("P1", (m0, m1))
    for l in L.elements:
        for m in M.elements:
            if lift[d1[l]][m] != L.mul(inv_l[l], ml[l][m]):
                report.add("P2", (l, m))
            if lift[m][d1[l]] != L.mul(inv_l[ml[l][m]], pl[l][d2[m]]):
                report.add("P3", (m, l))
    for m0, m1, m2 in itertools.product(M.elements, repeat=3):
        lhs4 = lift[m0][M.mul(m1, m2)]
        rhs4 = L.mul(lift[m0][m2], ml[lift[m0][m1]][pm[m2][d2[m0]]])
        if lhs4 != rhs4:
            report.add("P4", (m0, m1, m2))
        lhs5 = lift[M.mul(m0, m1)][m2]
        rhs5 = L.mul(ml[lift[m0][m2]][m1], lift[m1][pm[m2][d2[m0]]])
        if lhs5 != rhs5:
            report.add("P5", (m0, m1, m2))
    for p in P.elements:
        for m0 in M.elements:
            for m1 in M.elements:
                if pl[lift[m0][m1]][p] != lift[pm[m0][p]][pm[m1][p]]:
                    report.add("P6", (m0, m1, p))
    return report
