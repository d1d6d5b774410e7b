"""Braided regular crossed modules and their correspondence with 2-crossed modules.

A braided structure is stored as a crossed module (A2, A1, delta) whose
objects are the elements 0..n-1 of the monoid A0, together with tables

    a0[x][y]      = xy
    left1[x][a]   = x.a        right1[a][x] = a.x
    left2[x][c]   = x.c        right2[c][x] = c.x
    braid[a][b]   = {a, b}

Groupoid composition follows the rest of the package: a + b is defined when
tgt(a) = src(b).  With that convention the costar product is ab = (a.src b) + b.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .actor import TwoCrossedModule, build_actor_2crossed, validate_2crossed
from .derivations import FreeDerivation, homotopies_over, induced_morphism
from .errors import (
    InvalidTwoCrossed,
    NoIsomorphismFound,
    NotRegular,
    ValidationReport,
)
from .groupoid import FiniteGroupoid, GroupBundle
from .groups import FiniteGroup, check_search_space, iter_isomorphisms
from .xmod import CrossedModule, GroupoidAction, enumerate_xmod_automorphisms, validate_crossed_module

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BraidedRegularXmod:
    xmod: CrossedModule
    a0: Table
    unit: int
    left1: Table
    right1: Table
    left2: Table
    right2: Table
    braid: Table
    name: str = ""
    a0_labels: tuple = ()
    a1_labels: tuple = ()
    a2_labels: tuple = ()

    @property
    def A1(self) -> FiniteGroupoid:
        return self.xmod.G

    @property
    def A2(self) -> FiniteGroupoid:
        return self.xmod.C

    @property
    def n0(self) -> int:
        return len(self.a0)

    def inverse0(self, x: int) -> int | None:
        for y in range(self.n0):
            if self.a0[x][y] == self.unit == self.a0[y][x]:
                return y
        return None

    @property
    def is_regular(self) -> bool:
        return all(self.inverse0(x) is not None for x in range(self.n0))

    def a0_group(self) -> FiniteGroup:
        if not self.is_regular:
            raise NotRegular("A0 is not a group")
        return FiniteGroup(self.a0, self.a0_labels, "A0")


def _tt(rows) -> Table:
    return tuple(tuple(r) for r in rows)


# -- validation -------------------------------------------------------------

def _check_monoid(b: BraidedRegularXmod, report: ValidationReport) -> None:
    m, e, n = b.a0, b.unit, b.n0
    for x in range(n):
        if m[e][x] != x or m[x][e] != x:
            report.add("B1 unit", (x,))
        for y in range(n):
            for z in range(n):
                if m[m[x][y]][z] != m[x][m[y][z]]:
                    report.add("B1 associativity", (x, y, z))


def _check_biaction(b: BraidedRegularXmod, report: ValidationReport, level: int) -> None:
    m, e, n = b.a0, b.unit, b.n0
    g = b.A1 if level == 1 else b.A2
    left, right = (b.left1, b.right1) if level == 1 else (b.left2, b.right2)
    tag = f"B2 A{level} "
    for a in g.arrows:
        if left[e][a] != a:
            report.add(tag + "left unit", (a,))
        if right[a][e] != a:
            report.add(tag + "right unit", (a,))
        sa, ta = g.src[a], g.tgt[a]
        for x in range(n):
            xa, ax = left[x][a], right[a][x]
            if (g.src[xa], g.tgt[xa]) != (m[x][sa], m[x][ta]):
                report.add(tag + "left equivariance of src/tgt", (x, a))
            if (g.src[ax], g.tgt[ax]) != (m[sa][x], m[ta][x]):
                report.add(tag + "right equivariance of src/tgt", (a, x))
            for y in range(n):
                if left[x][left[y][a]] != left[m[x][y]][a]:
                    report.add(tag + "left composition", (x, y, a))
                if right[right[a][x]][y] != right[a][m[x][y]]:
                    report.add(tag + "right composition", (a, x, y))
                if left[x][right[a][y]] != right[left[x][a]][y]:
                    report.add(tag + "actions commute", (x, a, y))
    for a in g.arrows:
        for c in g.arrows:
            ac = g.comp[a][c]
            if ac is None:
                continue
            for x in range(n):
                if g.comp[left[x][a]][left[x][c]] != left[x][ac]:
                    report.add(tag + "left action preserves composition", (x, a, c))
                if g.comp[right[a][x]][right[c][x]] != right[ac][x]:
                    report.add(tag + "right action preserves composition", (a, c, x))


def validate_braided(b: BraidedRegularXmod) -> ValidationReport:
    """Check the braided axioms B1-B11 exhaustively.

    B1 A0 is a monoid; B2 it acts on both sides of A1 and A2; B3, B4 the
    actions respect the crossed-module action and delta; B5 the braiding is
    well typed and vanishes at the unit; B6, B7 it is additive in each
    variable; B8 delta of the braiding; B9, B10 braiding with boundaries;
    B11 the braiding is balanced and equivariant.  flags["regular"] records
    whether A0 is a group.
    """
    report = ValidationReport()
    report.extend(validate_crossed_module(b.xmod), "crossed module: ")
    n = b.n0
    A1, A2 = b.A1, b.A2
    if A1.n_objects != n:
        report.add("object count", (A1.n_objects, n))
        return report
    report.flags["regular"] = b.is_regular
    _check_monoid(b, report)
    _check_biaction(b, report, 1)
    _check_biaction(b, report, 2)
    if not report.ok:
        return report

    m, e = b.a0, b.unit
    l1, r1, l2, r2, br = b.left1, b.right1, b.left2, b.right2, b.braid
    x = b.xmod
    d = x.delta
    src, tgt, add1, neg1 = A1.src, A1.tgt, A1.comp, A1.inverses
    base = A2.src
    act = x.action.act
    out_of = [[a for a in A1.arrows if src[a] == o] for o in range(n)]

    # B3, B4
    for c in A2.arrows:
        for z in range(n):
            if d[l2[z][c]] != l1[z][d[c]]:
                report.add("B4 left", (z, c))
            if d[r2[c][z]] != r1[d[c]][z]:
                report.add("B4 right", (c, z))
        for a in out_of[base[c]]:
            ca = act[c][a]
            for z in range(n):
                if l2[z][ca] != act[l2[z][c]][l1[z][a]]:
                    report.add("B3 left", (z, c, a))
                if r2[ca][z] != act[r2[c][z]][r1[a][z]]:
                    report.add("B3 right", (c, a, z))

    zero = A2.identities
    ident = A1.identities

    for a in A1.arrows:
        for b_ in A1.arrows:
            if base[br[a][b_]] != m[tgt[a]][tgt[b_]]:
                report.add("B5 typing", (a, b_))
    if not report.ok:
        # the remaining identities are not even well typed
        return report

    for a in A1.arrows:
        for b_ in A1.arrows:
            v = br[a][b_]
            # B8
            lhs = d[v]
            rhs = A1.sum(neg1[l1[tgt[a]][b_]], neg1[r1[a][src[b_]]], l1[src[a]][b_], r1[a][tgt[b_]])
            if lhs != rhs:
                report.add("B8", (a, b_))
            # B11
            for z in range(n):
                if l2[z][v] != br[l1[z][a]][b_]:
                    report.add("B11 left", (z, a, b_))
                if r2[v][z] != br[a][r1[b_][z]]:
                    report.add("B11 right", (a, b_, z))
                if br[r1[a][z]][b_] != br[a][l1[z][b_]]:
                    report.add("B11 middle", (a, z, b_))

    for b_ in A1.arrows:
        if br[ident[e]][b_] != zero[tgt[b_]]:
            report.add("B5 left zero", (b_,))
        if br[b_][ident[e]] != zero[tgt[b_]]:
            report.add("B5 right zero", (b_,))

    # B6 and B7 over composable pairs
    for a in A1.arrows:
        ta = tgt[a]
        for b_ in A1.arrows:
            v = br[a][b_]
            for b2 in out_of[tgt[b_]]:
                bb = add1[b_][b2]
                rhs = A2.comp[act[v][l1[ta][b2]]][br[a][b2]]
                if br[a][bb] != rhs:
                    report.add("B6", (a, b_, b2))
            for a2 in out_of[ta]:
                aa = add1[a][a2]
                rhs = A2.comp[br[a2][b_]][act[v][r1[a2][tgt[b_]]]]
                if br[aa][b_] != rhs:
                    report.add("B7", (a, a2, b_))

    # B9 and B10
    for c in A2.arrows:
        y = base[c]
        dc = d[c]
        for a in A1.arrows:
            rhs = A2.comp[A2.inverses[l2[tgt[a]][c]]][act[l2[src[a]][c]][r1[a][y]]]
            if br[a][dc] != rhs:
                report.add("B9", (a, c))
            rhs = A2.comp[A2.inverses[act[r2[c][src[a]]][l1[y][a]]]][r2[c][tgt[a]]]
            if br[dc][a] != rhs:
                report.add("B10", (c, a))
    return report


# -- AUT(C) -----------------------------------------------------------------

def build_aut_braided(x: CrossedModule, aut: FiniteGroup | None = None) -> BraidedRegularXmod:
    """The braided regular crossed module AUT(C).

    Objects are automorphisms, arrows are homotopies (s0, s1, f) over an
    automorphism f whose induced endomorphism is again an automorphism
    (src = induced, tgt = f), and the top level is sections (s2, f) with
    s2(o) in C(f0 o).
    """
    aut = aut or enumerate_xmod_automorphisms(x)
    G, C = x.G, x.C
    n0 = aut.order
    autlab = [aut.label(i) for i in aut.elements]

    a1_labels, a1_src, a1_tgt = [], [], []
    for fi in aut.elements:
        f = autlab[fi]
        for h in homotopies_over(x, f):
            ind = induced_morphism(h, x)
            if not ind.is_bijective:
                continue
            a1_labels.append((h.s0, h.s1, fi))
            a1_src.append(aut.index(ind))
            a1_tgt.append(fi)
    n1 = len(a1_labels)
    check_search_space(n1 * n1, "AUT arrow tables")
    idx1 = {lab: i for i, lab in enumerate(a1_labels)}

    comp1 = [[None] * n1 for _ in range(n1)]
    for i, (u0, u1, _) in enumerate(a1_labels):
        for j, (v0, v1, g) in enumerate(a1_labels):
            if a1_tgt[i] != a1_src[j]:
                continue
            w0 = tuple(G.add(u0[o], v0[o]) for o in x.objects)
            w1 = tuple(x.cadd(v1[a], x.act(u1[a], v0[G.tgt[a]])) for a in G.arrows)
            comp1[i][j] = idx1[(w0, w1, g)]
    arrow_names = tuple(f"h{i}" for i in range(n1))
    obj_names = tuple(f"f{i}" for i in range(n0))
    A1 = FiniteGroupoid(n0, tuple(a1_src), tuple(a1_tgt), _tt(comp1), obj_names, arrow_names)

    a2_labels = []
    for fi in aut.elements:
        f = autlab[fi]
        for s2 in itertools.product(*(x.fibre(f.f0[o]) for o in x.objects)):
            a2_labels.append((tuple(s2), fi))
    idx2 = {lab: i for i, lab in enumerate(a2_labels)}
    n2 = len(a2_labels)
    comp2 = [[None] * n2 for _ in range(n2)]
    for i, (s2, f) in enumerate(a2_labels):
        for j, (t2, g) in enumerate(a2_labels):
            if f == g:
                comp2[i][j] = idx2[(tuple(x.cadd(p, q) for p, q in zip(s2, t2)), f)]
    a2_base = tuple(f for _, f in a2_labels)
    A2 = FiniteGroupoid(n0, a2_base, a2_base, _tt(comp2), obj_names, tuple(f"c{i}" for i in range(n2)))

    dl = []
    for s2, fi in a2_labels:
        f1 = autlab[fi].f1
        s0 = tuple(x.delta[s2[o]] for o in x.objects)
        s1 = tuple(x.cadd(x.cneg(x.act(s2[G.src[a]], f1[a])), s2[G.tgt[a]]) for a in G.arrows)
        dl.append(idx1[(s0, s1, fi)])
    act = [[None] * n1 for _ in range(n2)]
    for i, (s2, fi) in enumerate(a2_labels):
        for j, (t0, _, g) in enumerate(a1_labels):
            if a1_src[j] == fi:
                act[i][j] = idx2[(tuple(x.act(s2[o], t0[o]) for o in x.objects), g)]
    xm = CrossedModule(GroupoidAction(A2, A1, _tt(act)), tuple(dl), f"AUT({x.name})")

    def compose_after(p, table):
        return tuple(p[v] for v in table)

    left1 = [[0] * n1 for _ in range(n0)]
    right1 = [[0] * n0 for _ in range(n1)]
    for j, (s0, s1, fi) in enumerate(a1_labels):
        for pi in aut.elements:
            p = autlab[pi]
            left1[pi][j] = idx1[(compose_after(p.f1, s0), compose_after(p.f2, s1), aut.mul(pi, fi))]
            right1[j][pi] = idx1[(compose_after(s0, p.f0), compose_after(s1, p.f1), aut.mul(fi, pi))]
    left2 = [[0] * n2 for _ in range(n0)]
    right2 = [[0] * n0 for _ in range(n2)]
    for i, (s2, fi) in enumerate(a2_labels):
        for pi in aut.elements:
            p = autlab[pi]
            left2[pi][i] = idx2[(compose_after(p.f2, s2), aut.mul(pi, fi))]
            right2[i][pi] = idx2[(compose_after(s2, p.f0), aut.mul(fi, pi))]
    braid = [[0] * n1 for _ in range(n1)]
    for i, (_, s1, fi) in enumerate(a1_labels):
        for j, (t0, _, gi) in enumerate(a1_labels):
            braid[i][j] = idx2[(compose_after(s1, t0), aut.mul(fi, gi))]

    return BraidedRegularXmod(
        xm, aut.table, aut.identity, _tt(left1), _tt(right1), _tt(left2), _tt(right2), _tt(braid),
        f"AUT({x.name})", tuple(autlab), tuple(a1_labels), tuple(a2_labels),
    )


# -- braided -> 2-crossed ---------------------------------------------------

def costar_group(b: BraidedRegularXmod) -> FiniteGroup:
    """K = arrows with target e, with ab = (a.src b) + b; labels are arrow ids."""
    A1 = b.A1
    K = A1.costar(b.unit)
    return FiniteGroup.from_elements(K, lambda a, c: A1.add(b.right1[a][A1.src[c]], c), "K")


def bang(b: BraidedRegularXmod, c: int, a: int) -> int:
    """c!a = (c.src a)^a for c in A2(e) and a in K."""
    return b.xmod.act(b.right2[c][b.A1.src[a]], a)


def braided_to_2crossed(b: BraidedRegularXmod) -> TwoCrossedModule:
    P = b.a0_group()
    A1, A2 = b.A1, b.A2
    K = costar_group(b)
    L = FiniteGroup.from_elements(A2.costar(b.unit), A2.add, "A2(e)")
    pinv = P.inverses
    d1 = tuple(K.index(b.xmod.delta[L.label(l)]) for l in L.elements)
    d2 = tuple(A1.src[K.label(k)] for k in K.elements)
    act_pl = [[L.index(b.left2[pinv[p]][b.right2[L.label(l)][p]]) for p in P.elements] for l in L.elements]
    act_pm = [[K.index(b.left1[pinv[p]][b.right1[K.label(k)][p]]) for p in P.elements] for k in K.elements]
    act_ml = [[L.index(bang(b, L.label(l), K.label(k))) for k in K.elements] for l in L.elements]
    kinv = K.inverses
    lift = [
        [L.index(bang(b, b.braid[K.label(kinv[m0])][K.label(m1)], K.label(m0))) for m1 in K.elements]
        for m0 in K.elements
    ]
    return TwoCrossedModule(L, K, P, d1, d2, _tt(act_pl), _tt(act_pm), _tt(act_ml), _tt(lift),
                            f"2xmod({b.name})")


# -- 2-crossed -> braided ---------------------------------------------------

def twocrossed_to_braided(t: TwoCrossedModule, check: bool = True) -> BraidedRegularXmod:
    """A1 = M x P with src (g,p) = d2(g)p and tgt (g,p) = p; A2 = L x P.

    Arrow (g, p) has id p*|M| + g and (l, p) has id p*|L| + l.
    """
    if check:
        rep = validate_2crossed(t)
        if not rep.ok:
            raise InvalidTwoCrossed(str(rep))
    L, M, P = t.L, t.M, t.P
    nL, nM, nP = L.order, M.order, P.order
    pinv = P.inverses

    def a1(g, p):
        return p * nM + g

    def a2(l, p):
        return p * nL + l

    n1 = nM * nP
    src = [0] * n1
    tgt = [0] * n1
    comp = [[None] * n1 for _ in range(n1)]
    for p in P.elements:
        for g in M.elements:
            src[a1(g, p)] = P.mul(t.d2[g], p)
            tgt[a1(g, p)] = p
    for p1 in P.elements:
        for g1 in M.elements:
            for g2 in M.elements:
                p2_needed = [p for p in P.elements if P.mul(t.d2[g2], p) == p1]
                for p2 in p2_needed:
                    comp[a1(g1, p1)][a1(g2, p2)] = a1(M.mul(g1, g2), p2)
    obj_names = tuple(f"p{p}" for p in P.elements)
    A1 = FiniteGroupoid(nP, tuple(src), tuple(tgt), _tt(comp), obj_names,
                        tuple(f"({g},{p})" for p in P.elements for g in M.elements))
    A2 = GroupBundle(tuple(L for _ in P.elements), obj_names).to_groupoid()

    delta = tuple(a1(t.d1[l], p) for p in P.elements for l in L.elements)
    act = [[None] * n1 for _ in range(nL * nP)]
    for p in P.elements:
        for l in L.elements:
            for q in P.elements:
                for g in M.elements:
                    if P.mul(t.d2[g], q) == p:
                        act[a2(l, p)][a1(g, q)] = a2(t.act_ml[l][g], q)
    xm = CrossedModule(GroupoidAction(A2, A1, _tt(act)), delta, f"braided({t.name})")

    left1 = [[a1(t.act_pm[g][pinv[p]], P.mul(p, q)) for q in P.elements for g in M.elements] for p in P.elements]
    right1 = [[a1(g, P.mul(q, p)) for p in P.elements] for q in P.elements for g in M.elements]
    left2 = [[a2(t.act_pl[l][pinv[p]], P.mul(p, q)) for q in P.elements for l in L.elements] for p in P.elements]
    right2 = [[a2(l, P.mul(q, p)) for p in P.elements] for q in P.elements for l in L.elements]
    minv = M.inverses
    braid = [[0] * n1 for _ in range(n1)]
    for p1 in P.elements:
        for g1 in M.elements:
            for p2 in P.elements:
                for g2 in M.elements:
                    inner = t.lift[minv[g1]][t.act_pm[g2][p1]]
                    braid[a1(g1, p1)][a1(g2, p2)] = a2(t.act_ml[inner][g1], P.mul(p1, p2))
    return BraidedRegularXmod(
        xm, P.table, P.identity, _tt(left1), _tt(right1), _tt(left2), _tt(right2), _tt(braid),
        f"braided({t.name})",
    )


# -- isomorphisms of 2-crossed modules -------------------------------------

@dataclass(frozen=True)
class IsomorphismWitness:
    """Element maps L -> L', M -> M', P -> P' commuting with all structure."""

    phi_l: tuple[int, ...]
    phi_m: tuple[int, ...]
    phi_p: tuple[int, ...]
    method: str = "canonical"


def check_2crossed_isomorphism(t: TwoCrossedModule, u: TwoCrossedModule, w: IsomorphismWitness) -> ValidationReport:
    report = ValidationReport()
    fl, fm, fp = w.phi_l, w.phi_m, w.phi_p
    for name, f, g, h in (("L", fl, t.L, u.L), ("M", fm, t.M, u.M), ("P", fp, t.P, u.P)):
        if len(f) != g.order or sorted(f) != list(h.elements):
            report.add(f"{name} bijection", (len(f), h.order))
            return report
        for a in g.elements:
            for b in g.elements:
                if f[g.mul(a, b)] != h.mul(f[a], f[b]):
                    report.add(f"{name} homomorphism", (a, b))
    for l in t.L.elements:
        if fm[t.d1[l]] != u.d1[fl[l]]:
            report.add("d1", (l,))
        for p in t.P.elements:
            if fl[t.act_pl[l][p]] != u.act_pl[fl[l]][fp[p]]:
                report.add("P-action on L", (l, p))
        for m in t.M.elements:
            if fl[t.act_ml[l][m]] != u.act_ml[fl[l]][fm[m]]:
                report.add("M-action on L", (l, m))
    for m in t.M.elements:
        if fp[t.d2[m]] != u.d2[fm[m]]:
            report.add("d2", (m,))
        for p in t.P.elements:
            if fm[t.act_pm[m][p]] != u.act_pm[fm[m]][fp[p]]:
                report.add("P-action on M", (m, p))
        for m1 in t.M.elements:
            if fl[t.lift[m][m1]] != u.lift[fm[m]][fm[m1]]:
                report.add("Peiffer lifting", (m, m1))
    return report


def search_2crossed_isomorphism(t: TwoCrossedModule, u: TwoCrossedModule) -> IsomorphismWitness | None:
    """Exhaustive search, pruned level by level through d2 and d1."""
    for fp in iter_isomorphisms(t.P, u.P):
        for fm in iter_isomorphisms(t.M, u.M):
            if any(fp[t.d2[m]] != u.d2[fm[m]] for m in t.M.elements):
                continue
            if any(fm[t.act_pm[m][p]] != u.act_pm[fm[m]][fp[p]] for m in t.M.elements for p in t.P.elements):
                continue
            for fl in iter_isomorphisms(t.L, u.L):
                w = IsomorphismWitness(fl, fm, fp, "search")
                if check_2crossed_isomorphism(t, u, w).ok:
                    return w
    return None


def roundtrip_check(t: TwoCrossedModule) -> IsomorphismWitness:
    """Send t to a braided module and back; return an isomorphism back to t."""
    b = twocrossed_to_braided(t)
    back = braided_to_2crossed(b)
    nL, nM = t.L.order, t.M.order
    e = t.P.identity
    try:
        w = IsomorphismWitness(
            tuple(back.L.index(e * nL + l) for l in t.L.elements),
            tuple(back.M.index(e * nM + m) for m in t.M.elements),
            tuple(t.P.elements),
        )
    except KeyError:
        w = None
    if w is not None and check_2crossed_isomorphism(t, back, w).ok:
        return w
    w = search_2crossed_isomorphism(t, back)
    if w is None:
        raise NoIsomorphismFound(f"roundtrip of {t.name or '2-crossed module'} is not isomorphic to it")
    return w


def compare_with_actor(x: CrossedModule) -> ValidationReport:
    """Compare the 2-crossed module obtained from AUT(x) with the actor of x.

    K is identified with FDer* by (s0, s1, I) -> (s0, s1) and A2(I) with M2 by
    (s2, I) -> s2, so the check includes equality of the two Peiffer lifts.
    """
    actor = build_actor_2crossed(x)
    b = build_aut_braided(x)
    bt = braided_to_2crossed(b)
    report = ValidationReport()
    if bt.orders != actor.orders:
        report.add("orders", (bt.orders, actor.orders))
        return report
    try:
        fm = tuple(actor.M.index(FreeDerivation(*b.a1_labels[bt.M.label(k)][:2])) for k in bt.M.elements)
        fl = tuple(actor.L.index(b.a2_labels[bt.L.label(l)][0]) for l in bt.L.elements)
        fp = tuple(actor.P.index(b.a0_labels[p]) for p in bt.P.elements)
    except KeyError as exc:
        report.add("identification", (str(exc),))
        return report
    report.extend(check_2crossed_isomorphism(bt, actor, IsomorphismWitness(fl, fm, fp)))
    return report
