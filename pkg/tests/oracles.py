"""Independent brute-force oracles.

These read only the raw tables of a crossed module (src, tgt, comp, the
action table and delta) and recompute everything by exhaustive search,
without calling the enumeration or formula code under test.
"""

from __future__ import annotations

import itertools


def _comp(g, a, b):
    return g.comp[a][b]


def _ident(g, o):
    for a in range(len(g.src)):
        if g.src[a] == o == g.tgt[a] and all(g.comp[a][b] == b for b in range(len(g.src)) if g.src[b] == o):
            return a
    raise AssertionError("no identity")


def _neg(g, a):
    e = _ident(g, g.src[a])
    for b in range(len(g.src)):
        if g.comp[a][b] == e:
            return b
    raise AssertionError("no inverse")


def raw_sections(x):
    """Every map s0: X -> arrows with tgt(s0 o) = o."""
    G = x.G
    per = [[a for a in range(len(G.src)) if G.tgt[a] == o] for o in range(G.n_objects)]
    return [tuple(s) for s in itertools.product(*per)]


def raw_derivations(x):
    """Every s1: arrows -> C with s1(a) in C(tgt a) and s1(a+b) = s1(a)^b + s1(b)."""
    G, C = x.G, x.C
    nG = len(G.src)
    per = [[c for c in range(len(C.src)) if C.src[c] == G.tgt[a]] for a in range(nG)]
    out = []
    for s1 in itertools.product(*per):
        ok = True
        for a in range(nG):
            for b in range(nG):
                ab = G.comp[a][b]
                if ab is None:
                    continue
                if s1[ab] != C.comp[x.action.act[s1[a]][b]][s1[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(s1))
    return out


def raw_f1(x, s0, s1):
    """f1(a) = s0(src a) + a + delta s1(a) - s0(tgt a), computed from tables."""
    G = x.G
    out = []
    for a in range(len(G.src)):
        v = _comp(G, s0[G.src[a]], a)
        v = _comp(G, v, x.delta[s1[a]])
        v = _comp(G, v, _neg(G, s0[G.tgt[a]]))
        out.append(v)
    return tuple(out)


def raw_f2(x, s0, s1):
    """f2(c) = (c + s1(delta c))^(-s0(base c))."""
    C = x.C
    out = []
    for c in range(len(C.src)):
        v = C.comp[c][s1[x.delta[c]]]
        out.append(x.action.act[v][_neg(x.G, s0[C.src[c]])])
    return tuple(out)


def raw_fder_counts(x) -> tuple[int, int]:
    """(|FDer|, |FDer*|) with invertibility decided by bijectivity of f1."""
    total = inv = 0
    ders = raw_derivations(x)
    for s0 in raw_sections(x):
        for s1 in ders:
            total += 1
            if len(set(raw_f1(x, s0, s1))) == len(x.G.src):
                inv += 1
    return total, inv


def raw_m2_order(x) -> int:
    C = x.C
    n = 1
    for o in range(C.n_objects):
        n *= sum(1 for c in range(len(C.src)) if C.src[c] == o)
    return n


def raw_msec_order(x) -> int:
    G = x.G
    return sum(1 for s in raw_sections(x) if len({G.src[s[o]] for o in range(G.n_objects)}) == G.n_objects)


def raw_product(x, s, t):
    """(s*t)0(z) = s0(g0 z) + t0(z), (s*t)1(a) = t1(a) + s1(g1 a)^(t0(tgt a)), g induced by t."""
    G = x.G
    g1 = raw_f1(x, t.s0, t.s1)
    g0 = [G.src[t.s0[o]] for o in range(G.n_objects)]
    u0 = tuple(_comp(G, s.s0[g0[z]], t.s0[z]) for z in range(G.n_objects))
    u1 = tuple(
        x.C.comp[t.s1[a]][x.action.act[s.s1[g1[a]]][t.s0[G.tgt[a]]]] for a in range(len(G.src))
    )
    return type(s)(u0, u1)


def searched_inverse(x, s, candidates):
    """The two-sided inverse of s among candidates, found by exhaustive search."""
    ident = type(s)(tuple(_ident(x.G, o) for o in range(x.G.n_objects)),
                    tuple(_ident(x.C, x.G.tgt[a]) for a in range(len(x.G.src))))
    for t in candidates:
        if raw_product(x, s, t) == ident and raw_product(x, t, s) == ident:
            return t
    return None


def inverse_via_f2(x, s):
    """The inverse built from f2^-1 alone, the alternative construction.

    s0^-1(o) = -s0(f0^-1 o), and s1^-1 is read off from
    f2(s1^-1 a) = (-s1(a) - s1(s0^-1 p)^a + s1(s0^-1 q))^(-s0(q)) for a: p -> q.
    """
    G, C = x.G, x.C
    n = G.n_objects
    f0 = [G.src[s.s0[o]] for o in range(n)]
    f0inv = [0] * n
    for o in range(n):
        f0inv[f0[o]] = o
    t0 = tuple(_neg(G, s.s0[f0inv[o]]) for o in range(n))
    f2 = raw_f2(x, s.s0, s.s1)
    f2inv = {v: i for i, v in enumerate(f2)}
    act = x.action.act
    t1 = []
    for a in range(len(G.src)):
        p, q = G.src[a], G.tgt[a]
        v = C.comp[_neg(C, s.s1[a])][_neg(C, act[s.s1[t0[p]]][a])]
        v = C.comp[v][s.s1[t0[q]]]
        v = act[v][_neg(G, s.s0[q])]
        t1.append(f2inv[v])
    return type(s)(t0, tuple(t1))


def _orders(table):
    n = len(table)
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    out = []
    for a in range(n):
        k, x = 1, a
        while x != e:
            x, k = table[x][a], k + 1
        out.append(k)
    return out


def _span(table, gens):
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        a = frontier.pop()
        for g in gens:
            for c in (table[a][g], table[g][a]):
                if c not in seen:
                    seen.add(c)
                    frontier.append(c)
    return seen


def brute_isomorphic(table_a, table_b) -> bool:
    """Isomorphism of two Cayley tables by exhaustive search.

    Images of a greedy generating sequence of A are tried in every
    combination with matching element orders; each candidate is extended
    over words in the generators and checked on the full table.
    """
    n = len(table_a)
    if n != len(table_b):
        return False
    oa, ob = _orders(table_a), _orders(table_b)
    if sorted(oa) != sorted(ob):
        return False
    gens, covered = [], set()
    while len(covered) < n:
        gens.append(next(a for a in range(n) if a not in covered))
        covered = _span(table_a, gens)
    options = [[b for b in range(n) if ob[b] == oa[g]] for g in gens]
    for images in itertools.product(*options):
        phi = dict(zip(gens, images))
        frontier = list(gens)
        ok = True
        while frontier and ok:
            a = frontier.pop()
            for g in gens:
                c, v = table_a[a][g], table_b[phi[a]][phi[g]]
                if c in phi:
                    ok = phi[c] == v
                    if not ok:
                        break
                else:
                    phi[c] = v
                    frontier.append(c)
        if not ok or len(set(phi.values())) != n:
            continue
        if all(phi[table_a[i][j]] == table_b[phi[i]][phi[j]] for i in range(n) for j in range(n)):
            return True
    return False
