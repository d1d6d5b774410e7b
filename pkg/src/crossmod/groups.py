"""Finite groups as explicit Cayley tables.

Elements are the integers ``0..n-1``; ``labels`` carries an optional
hashable name per element so that groups built from structured elements
(sections, derivations, automorphisms) can be looked up by value.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .errors import MalformedTable, NotAnAction, SearchSpaceExceeded, ValidationReport

DEFAULT_MAX_SIZE = 10**6


def search_limit() -> int:
    raw = os.environ.get("XMOD_MAX_SIZE")
    if not raw:
        return DEFAULT_MAX_SIZE
    try:
        return int(float(raw))
    except ValueError:
        return DEFAULT_MAX_SIZE


def check_search_space(size: int, what: str) -> None:
    limit = search_limit()
    if size > limit:
        raise SearchSpaceExceeded(f"{what}: {size} candidates exceed XMOD_MAX_SIZE={limit}")


def product_size(sizes: Iterable[int]) -> int:
    n = 1
    for s in sizes:
        n *= s
    return n


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise MalformedTable("a group needs at least one element")
        for row in self.table:
            if len(row) != n or any(not (0 <= v < n) for v in row):
                raise MalformedTable("multiplication table must be square with entries in range")
        if self.labels and len(self.labels) != n:
            raise MalformedTable("one label per element required")

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], mul: Callable, name: str = "") -> "FiniteGroup":
        elements = list(elements)
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise MalformedTable("duplicate group elements")
        rows = []
        for a in elements:
            row = []
            for b in elements:
                c = mul(a, b)
                if c not in index:
                    raise MalformedTable(f"product {a!r}*{b!r} leaves the element set")
                row.append(index[c])
            rows.append(tuple(row))
        return cls(tuple(rows), tuple(elements), name)

    def __len__(self) -> int:
        return len(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def identity(self) -> int:
        for e in self.elements:
            if all(self.table[e][a] == a == self.table[a][e] for a in self.elements):
                return e
        raise MalformedTable("no identity element")

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        inv = []
        for a in self.elements:
            row = self.table[a]
            try:
                inv.append(row.index(e))
            except ValueError:
                raise MalformedTable(f"element {a} has no inverse") from None
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, a: int, b: int) -> int:
        """b^-1 a b (right conjugation)."""
        return self.table[self.table[self.inverses[b]][a]][b]

    def label(self, a: int):
        return self.labels[a] if self.labels else a

    @cached_property
    def _index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label) -> int:
        if not self.labels:
            return int(label)
        return self._index[label]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        e = self.identity
        out = []
        for a in self.elements:
            k, x = 1, a
            while x != e:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in self.elements)

    def relabel(self, labels: Sequence, name: str | None = None) -> "FiniteGroup":
        return FiniteGroup(self.table, tuple(labels), self.name if name is None else name)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, name={self.name!r})"


def validate_group(g: FiniteGroup) -> ValidationReport:
    report = ValidationReport()
    t = g.table
    els = g.elements
    for a, b, c in itertools.product(els, repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            report.add("associativity", (a, b, c))
    try:
        g.identity
    except MalformedTable:
        report.add("identity", ())
        return report
    try:
        g.inverses
    except MalformedTable as exc:
        report.add("inverse", (), str(exc))
    return report


# -- constructors -----------------------------------------------------------

def trivial_group(name: str = "1") -> FiniteGroup:
    return FiniteGroup(((0,),), (0,), name)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), tuple(range(n)), f"C{n}")


def _compose_perm(p: tuple, q: tuple) -> tuple:
    # apply p first, then q
    return tuple(q[p[i]] for i in range(len(p)))


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    return FiniteGroup.from_elements(perms, _compose_perm, f"S{n}")


def _parity(p: tuple) -> int:
    seen, sign = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        sign += length - 1
    return sign % 2


def alternating_group(n: int) -> FiniteGroup:
    perms = sorted(p for p in itertools.permutations(range(n)) if _parity(p) == 0)
    return FiniteGroup.from_elements(perms, _compose_perm, f"A{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    elements = [(a, b) for a in g.elements for b in h.elements]
    return FiniteGroup.from_elements(
        elements, lambda x, y: (g.mul(x[0], y[0]), h.mul(x[1], y[1])), f"{g.name}x{h.name}"
    )


def subgroup_elements(g: FiniteGroup, gens: Iterable[int]) -> list[int]:
    """Elements of the subgroup generated by ``gens``, in increasing order."""
    gens = list(gens)
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                c = g.mul(w, s)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(seen)


def subgroup(g: FiniteGroup, elements: Iterable[int], name: str = "") -> tuple[FiniteGroup, tuple[int, ...]]:
    """The subgroup on ``elements`` and its inclusion map into ``g``."""
    elements = sorted(set(elements))
    index = {e: i for i, e in enumerate(elements)}
    rows = []
    for a in elements:
        row = []
        for b in elements:
            c = g.mul(a, b)
            if c not in index:
                raise MalformedTable("subset is not closed under multiplication")
            row.append(index[c])
        rows.append(tuple(row))
    labels = tuple(g.label(e) for e in elements)
    return FiniteGroup(tuple(rows), labels, name), tuple(elements)


def is_normal_subset(g: FiniteGroup, elements: Iterable[int]) -> bool:
    s = set(elements)
    return all(g.conj(h, a) in s for h in s for a in g.elements)


def is_homomorphism(f: Sequence[int], g: FiniteGroup, h: FiniteGroup) -> bool:
    return all(f[g.mul(a, b)] == h.mul(f[a], f[b]) for a in g.elements for b in g.elements)


def check_right_action(n: FiniteGroup, h: FiniteGroup, act) -> ValidationReport:
    """Check that ``act[x][k]`` (x^k) is a right action of ``h`` on ``n`` by automorphisms."""
    report = ValidationReport()
    for k in h.elements:
        for x in n.elements:
            for y in n.elements:
                if act[n.mul(x, y)][k] != n.mul(act[x][k], act[y][k]):
                    report.add("action by automorphisms", (x, y, k))
        if sorted(act[x][k] for x in n.elements) != list(n.elements):
            report.add("action bijective", (k,))
    for x in n.elements:
        if act[x][h.identity] != x:
            report.add("action unit", (x,))
        for k1 in h.elements:
            for k2 in h.elements:
                if act[act[x][k1]][k2] != act[x][h.mul(k1, k2)]:
                    report.add("action composition", (x, k1, k2))
    return report


def semidirect_product(n: FiniteGroup, h: FiniteGroup, act, name: str = "") -> FiniteGroup:
    """Semidirect product on pairs (x, k) with (x1,k1)(x2,k2) = (x1^k2 x2, k1 k2).

    ``act[x][k]`` is the right action x^k. Elements are labelled by the pairs
    of element indices.
    """
    report = check_right_action(n, h, act)
    if not report.ok:
        raise NotAnAction(str(report))
    elements = [(x, k) for x in n.elements for k in h.elements]
    return FiniteGroup.from_elements(
        elements,
        lambda a, b: (n.mul(act[a[0]][b[1]], b[0]), h.mul(a[1], b[1])),
        name or f"{n.name}x|{h.name}",
    )


# -- generators and isomorphism search --------------------------------------

def generators(g: FiniteGroup) -> list[int]:
    """A small generating set, chosen greedily from high-order elements."""
    orders = g.element_orders
    gens: list[int] = []
    span = {g.identity}
    for a in sorted(g.elements, key=lambda x: (-orders[x], x)):
        if a not in span:
            gens.append(a)
            span = set(subgroup_elements(g, gens))
        if len(span) == g.order:
            break
    return gens


def extend_homomorphism(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], images: Sequence[int]):
    """Extend generator images to a homomorphism table, or None if inconsistent."""
    val = [None] * g.order
    val[g.identity] = h.identity
    queue = [g.identity]
    for w in queue:
        vw = val[w]
        for s, img in zip(gens, images):
            c = g.mul(w, s)
            v = h.mul(vw, img)
            if val[c] is None:
                val[c] = v
                queue.append(c)
            elif val[c] != v:
                return None
    if any(v is None for v in val):
        return None
    return tuple(val)


def iter_isomorphisms(g: FiniteGroup, h: FiniteGroup) -> Iterator[tuple[int, ...]]:
    """All isomorphisms g -> h as element maps, pruned by element orders."""
    if g.order != h.order:
        return
    if sorted(g.element_orders) != sorted(h.element_orders):
        return
    gens = generators(g)
    go, ho = g.element_orders, h.element_orders
    cands = [[b for b in h.elements if ho[b] == go[a]] for a in gens]
    check_search_space(product_size(len(c) for c in cands), "group isomorphism search")
    for images in itertools.product(*cands):
        f = extend_homomorphism(g, h, gens, images)
        if f is not None and len(set(f)) == h.order:
            yield f


def find_isomorphism(g: FiniteGroup, h: FiniteGroup):
    return next(iter_isomorphisms(g, h), None)


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return find_isomorphism(g, h) is not None


def automorphisms(g: FiniteGroup) -> list[tuple[int, ...]]:
    return sorted(iter_isomorphisms(g, g))
