"""Finite groupoids, group bundles and their morphisms.

Composition is written ``comp[a][b]`` for the groupoid sum a + b, defined
when ``tgt[a] == src[b]``: a is applied first, then b.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import MalformedTable, UnknownObject, ValidationReport
from .groups import FiniteGroup, check_search_space, product_size


@dataclass(frozen=True)
class FiniteGroupoid:
    n_objects: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    comp: tuple[tuple, ...]  # comp[a][b] is an arrow id or None
    object_names: tuple = ()
    arrow_names: tuple = ()

    def __post_init__(self):
        if self.n_objects <= 0:
            raise MalformedTable("a groupoid needs at least one object")
        n = len(self.src)
        if len(self.tgt) != n or len(self.comp) != n:
            raise MalformedTable("src, tgt and comp must cover the same arrows")
        for a in range(n):
            if not (0 <= self.src[a] < self.n_objects and 0 <= self.tgt[a] < self.n_objects):
                raise UnknownObject(f"arrow {a} refers to an unknown object")
            row = self.comp[a]
            if len(row) != n:
                raise MalformedTable("composition table must be square")
            for c in row:
                if c is not None and not (0 <= c < n):
                    raise MalformedTable(f"composition refers to unknown arrow id {c}")

    @property
    def n_arrows(self) -> int:
        return len(self.src)

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def arrows(self) -> range:
        return range(len(self.src))

    def add(self, a: int, b: int) -> int:
        c = self.comp[a][b]
        if c is None:
            raise MalformedTable(f"{self.arrow_name(a)} + {self.arrow_name(b)} is undefined")
        return c

    def composable(self, a: int, b: int) -> bool:
        return self.tgt[a] == self.src[b]

    @cached_property
    def identities(self) -> tuple:
        ids = [None] * self.n_objects
        for a in self.arrows:
            x = self.src[a]
            if self.tgt[a] == x and self.comp[a][a] == a and ids[x] is None:
                ids[x] = a
        return tuple(ids)

    def id_of(self, x: int) -> int:
        if not (0 <= x < self.n_objects):
            raise UnknownObject(str(x))
        e = self.identities[x]
        if e is None:
            raise MalformedTable(f"object {self.object_name(x)} has no identity arrow")
        return e

    @cached_property
    def inverses(self) -> tuple:
        out = []
        for a in self.arrows:
            e = self.identities[self.src[a]]
            row = self.comp[a]
            found = None
            for b in self.arrows:
                if row[b] == e and self.comp[b][a] == self.identities[self.tgt[a]]:
                    found = b
                    break
            out.append(found)
        return tuple(out)

    def neg(self, a: int) -> int:
        b = self.inverses[a]
        if b is None:
            raise MalformedTable(f"arrow {self.arrow_name(a)} has no inverse")
        return b

    def sum(self, *arrows: int) -> int:
        acc = arrows[0]
        for b in arrows[1:]:
            acc = self.add(acc, b)
        return acc

    def hom(self, x: int, y: int) -> list[int]:
        return [a for a in self.arrows if self.src[a] == x and self.tgt[a] == y]

    @cached_property
    def costars(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.objects]
        for a in self.arrows:
            out[self.tgt[a]].append(a)
        return tuple(tuple(c) for c in out)

    def costar(self, x: int) -> tuple[int, ...]:
        if not (0 <= x < self.n_objects):
            raise UnknownObject(str(x))
        return self.costars[x]

    @cached_property
    def is_totally_intransitive(self) -> bool:
        return self.src == self.tgt

    def object_name(self, x: int) -> str:
        return str(self.object_names[x]) if self.object_names else str(x)

    def arrow_name(self, a: int) -> str:
        return str(self.arrow_names[a]) if self.arrow_names else str(a)

    def vertex_group(self, x: int) -> tuple[FiniteGroup, tuple[int, ...]]:
        """The vertex group at x and the list of its arrows (index -> arrow id)."""
        loops = self.hom(x, x)
        index = {a: i for i, a in enumerate(loops)}
        table = tuple(tuple(index[self.add(a, b)] for b in loops) for a in loops)
        return FiniteGroup(table, tuple(self.arrow_name(a) for a in loops), self.object_name(x)), tuple(loops)

    def __repr__(self) -> str:
        return f"FiniteGroupoid(objects={self.n_objects}, arrows={self.n_arrows})"


def validate_groupoid(g: FiniteGroupoid) -> ValidationReport:
    report = ValidationReport()
    arrows = g.arrows
    comp = g.comp
    for a in arrows:
        for b in arrows:
            c = comp[a][b]
            if g.tgt[a] != g.src[b]:
                if c is not None:
                    report.add("composition domain", (a, b), "defined although tgt(a) != src(b)")
                continue
            if c is None:
                report.add("composition totality", (a, b))
            elif g.src[c] != g.src[a] or g.tgt[c] != g.tgt[b]:
                report.add("composition typing", (a, b, c))
    if report.axioms() & {"composition totality", "composition typing"}:
        return report
    for a in arrows:
        for b in arrows:
            ab = comp[a][b]
            if ab is None or g.tgt[a] != g.src[b]:
                continue
            for c in arrows:
                if g.tgt[b] != g.src[c]:
                    continue
                if comp[ab][c] != comp[a][comp[b][c]]:
                    report.add("associativity", (a, b, c))
    for x in g.objects:
        e = g.identities[x]
        if e is None:
            report.add("identity", (x,), "no identity arrow")
            continue
        for a in arrows:
            if g.src[a] == x and comp[e][a] != a:
                report.add("identity", (x, a), "left unit fails")
            if g.tgt[a] == x and comp[a][e] != a:
                report.add("identity", (x, a), "right unit fails")
    if "identity" in report.axioms():
        return report
    for a in arrows:
        if g.inverses[a] is None:
            report.add("inverse", (a,))
    return report


# -- group bundles ----------------------------------------------------------

@dataclass(frozen=True)
class GroupBundle:
    """A family of groups indexed by the objects 0..n-1."""

    groups: tuple[FiniteGroup, ...]
    object_names: tuple = ()

    def to_groupoid(self) -> FiniteGroupoid:
        offsets, src, names = [], [], []
        for x, grp in enumerate(self.groups):
            offsets.append(len(src))
            src.extend([x] * grp.order)
            xname = self.object_names[x] if self.object_names else str(x)
            names.extend(f"{xname}:{grp.label(i)}" for i in grp.elements)
        n = len(src)
        comp = [[None] * n for _ in range(n)]
        for x, grp in enumerate(self.groups):
            off = offsets[x]
            for i in grp.elements:
                for j in grp.elements:
                    comp[off + i][off + j] = off + grp.mul(i, j)
        return FiniteGroupoid(
            len(self.groups), tuple(src), tuple(src), tuple(tuple(r) for r in comp),
            tuple(self.object_names), tuple(names),
        )

    @classmethod
    def from_groupoid(cls, g: FiniteGroupoid) -> "GroupBundle":
        if not g.is_totally_intransitive:
            raise MalformedTable("a group bundle must have src == tgt")
        groups = []
        for x in g.objects:
            loops = g.hom(x, x)
            index = {a: i for i, a in enumerate(loops)}
            table = tuple(tuple(index[g.add(a, b)] for b in loops) for a in loops)
            prefix = f"{g.object_name(x)}:"
            labels = tuple(
                g.arrow_name(a)[len(prefix):] if g.arrow_name(a).startswith(prefix) else g.arrow_name(a)
                for a in loops
            )
            groups.append(FiniteGroup(table, labels, g.object_name(x)))
        return cls(tuple(groups), tuple(g.object_names))


# -- standard groupoids -----------------------------------------------------

def groupoid_from_group(g: FiniteGroup, object_name: str = "*") -> FiniteGroupoid:
    n = g.order
    zeros = (0,) * n
    comp = tuple(tuple(g.mul(a, b) for b in range(n)) for a in range(n))
    return FiniteGroupoid(1, zeros, zeros, comp, (object_name,), tuple(str(g.label(a)) for a in range(n)))


def discrete_groupoid(n: int) -> FiniteGroupoid:
    comp = tuple(tuple(a if a == b else None for b in range(n)) for a in range(n))
    return FiniteGroupoid(n, tuple(range(n)), tuple(range(n)), comp, (), tuple(f"1_{x}" for x in range(n)))


def indiscrete_times_group(n: int, g: FiniteGroup | None = None, object_names: Sequence = ()) -> FiniteGroupoid:
    """The groupoid with arrows (x, y, k): x -> y for every k in g (g trivial: indiscrete)."""
    from .groups import trivial_group

    g = g or trivial_group()
    names = tuple(object_names) or tuple(f"x{i}" for i in range(n))
    arrows = [(x, y, k) for x in range(n) for y in range(n) for k in g.elements]
    index = {a: i for i, a in enumerate(arrows)}
    comp = []
    for (x, y, k) in arrows:
        row = []
        for (u, v, m) in arrows:
            row.append(index[(x, v, g.mul(k, m))] if y == u else None)
        comp.append(tuple(row))
    if g.order == 1:
        anames = tuple(f"{names[x]}>{names[y]}" for (x, y, _) in arrows)
    else:
        anames = tuple(f"{names[x]}>{names[y]}.{g.label(k)}" for (x, y, k) in arrows)
    return FiniteGroupoid(
        n, tuple(a[0] for a in arrows), tuple(a[1] for a in arrows), tuple(comp), names, anames
    )


def indiscrete_groupoid(n: int, object_names: Sequence = ()) -> FiniteGroupoid:
    return indiscrete_times_group(n, None, object_names)


# -- morphisms --------------------------------------------------------------

@dataclass(frozen=True)
class GroupoidMorphism:
    obj_map: tuple[int, ...]
    arr_map: tuple[int, ...]

    def compose(self, first: "GroupoidMorphism") -> "GroupoidMorphism":
        """self after first."""
        return GroupoidMorphism(
            tuple(self.obj_map[x] for x in first.obj_map),
            tuple(self.arr_map[a] for a in first.arr_map),
        )

    def inverse(self) -> "GroupoidMorphism":
        o = [0] * len(self.obj_map)
        for x, y in enumerate(self.obj_map):
            o[y] = x
        r = [0] * len(self.arr_map)
        for a, b in enumerate(self.arr_map):
            r[b] = a
        return GroupoidMorphism(tuple(o), tuple(r))

    @property
    def is_bijective(self) -> bool:
        return (len(set(self.obj_map)) == len(self.obj_map)
                and len(set(self.arr_map)) == len(self.arr_map))


def identity_morphism(g: FiniteGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(tuple(g.objects), tuple(g.arrows))


def validate_groupoid_morphism(m: GroupoidMorphism, dom: FiniteGroupoid, cod: FiniteGroupoid) -> ValidationReport:
    report = ValidationReport()
    if len(m.obj_map) != dom.n_objects or len(m.arr_map) != dom.n_arrows:
        report.add("morphism shape", (len(m.obj_map), len(m.arr_map)))
        return report
    for a in dom.arrows:
        b = m.arr_map[a]
        if cod.src[b] != m.obj_map[dom.src[a]] or cod.tgt[b] != m.obj_map[dom.tgt[a]]:
            report.add("morphism preserves src/tgt", (a,))
    for x in dom.objects:
        if m.arr_map[dom.id_of(x)] != cod.id_of(m.obj_map[x]):
            report.add("morphism preserves identities", (x,))
    for a in dom.arrows:
        for b in dom.arrows:
            if dom.tgt[a] == dom.src[b]:
                if m.arr_map[dom.add(a, b)] != cod.comp[m.arr_map[a]][m.arr_map[b]]:
                    report.add("morphism preserves composition", (a, b))
    return report


# -- generators, extension, automorphisms -----------------------------------

def generators(g: FiniteGroupoid) -> list[int]:
    """Greedy generating set: every arrow is a word in these and their inverses."""
    span = set(a for a in g.identities)
    gens: list[int] = []
    for a in g.arrows:
        if a in span:
            continue
        gens.append(a)
        span = _closure(g, gens)
        if len(span) == g.n_arrows:
            break
    return gens


def _closure(g: FiniteGroupoid, gens: Sequence[int]) -> set[int]:
    steps = list(gens) + [g.neg(s) for s in gens]
    seen = set(g.identities)
    queue = list(seen)
    for w in queue:
        for s in steps:
            if g.tgt[w] == g.src[s]:
                c = g.add(w, s)
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
    return seen


def propagate(g: FiniteGroupoid, gens: Sequence[int], seed: dict, step) -> list | None:
    """Fill a table over all arrows from values on identities and generators.

    ``seed`` gives the values on identities and on each generator; ``step(w, vw, s, vs)``
    returns the value on ``w + s``. Values on generator inverses must also be in
    ``seed``. Returns None on any conflict or if some arrow is unreached.
    """
    steps = list(gens) + [g.neg(s) for s in gens]
    val = [None] * g.n_arrows
    for a, v in seed.items():
        if val[a] is not None and val[a] != v:
            return None
        val[a] = v
    queue = list(g.identities) + [a for a in seed if a not in g.identities]
    for w in queue:
        vw = val[w]
        for s in steps:
            if g.tgt[w] != g.src[s]:
                continue
            c = g.add(w, s)
            v = step(w, vw, s, val[s])
            if val[c] is None:
                val[c] = v
                queue.append(c)
            elif val[c] != v:
                return None
    if any(v is None for v in val):
        return None
    return val


def _vertex_orders(g: FiniteGroupoid) -> list[int]:
    """Order of each loop in its vertex group (0 for non-loops)."""
    out = []
    for a in g.arrows:
        if g.src[a] != g.tgt[a]:
            out.append(0)
            continue
        e = g.identities[g.src[a]]
        k, x = 1, a
        while x != e:
            x = g.add(x, a)
            k += 1
        out.append(k)
    return out


def _object_signature(g: FiniteGroupoid, x: int) -> tuple:
    return (len(g.hom(x, x)), len(g.costar(x)))


def iter_groupoid_isomorphisms(g: FiniteGroupoid, h: FiniteGroupoid) -> Iterator[GroupoidMorphism]:
    """All isomorphisms g -> h, searched over object bijections and generator images."""
    if g.n_objects != h.n_objects or g.n_arrows != h.n_arrows:
        return
    gsig = [_object_signature(g, x) for x in g.objects]
    hsig = [_object_signature(h, x) for x in h.objects]
    if sorted(gsig) != sorted(hsig):
        return
    gens = generators(g)
    go, ho = _vertex_orders(g), _vertex_orders(h)
    perms = [p for p in itertools.permutations(h.objects) if all(gsig[x] == hsig[p[x]] for x in g.objects)]
    for f0 in perms:
        cands = []
        for s in gens:
            x, y = f0[g.src[s]], f0[g.tgt[s]]
            cands.append([b for b in h.hom(x, y) if ho[b] == go[s]])
        check_search_space(len(perms) * product_size(len(c) for c in cands), "groupoid isomorphism search")
        for images in itertools.product(*cands):
            seed = {g.identities[x]: h.identities[f0[x]] for x in g.objects}
            consistent = True
            for s, b in zip(gens, images):
                for k, val in ((s, b), (g.neg(s), h.neg(b))):
                    if seed.setdefault(k, val) != val:
                        consistent = False
            if not consistent:
                continue
            table = propagate(g, gens, seed, lambda w, vw, s, vs: h.comp[vw][vs])
            if table is None or len(set(table)) != h.n_arrows:
                continue
            yield GroupoidMorphism(tuple(f0), tuple(table))


def enumerate_groupoid_automorphisms(g: FiniteGroupoid) -> FiniteGroup:
    """Aut(g) with product f*h = f after h, elements labelled by GroupoidMorphism."""
    autos = sorted(iter_groupoid_isomorphisms(g, g), key=lambda m: (m.obj_map, m.arr_map))
    return FiniteGroup.from_elements(autos, lambda f, h: f.compose(h), "Aut")


def find_groupoid_isomorphism(g: FiniteGroupoid, h: FiniteGroupoid):
    return next(iter_groupoid_isomorphisms(g, h), None)
