"""Line-oriented text format for crossed modules and 2-crossed modules.

A crossed-module file looks like::

    version 1
    kind xmod
    name c2c2

    OBJECTS
    *

    ARROWS
    # name src tgt
    e * *
    a * *

    COMP
    # a b a+b
    e e e
    ...

    GROUPS
    elements * 0 1
    mul *:0 *:0 *:0
    ...

    DELTA
    *:0 e
    *:1 a

    ACTION
    # c a c^a
    *:0 e *:0
    ...

Elements of the bundle C are always written object:element.  A 2-crossed
module file uses ``kind 2xmod``, declares the groups L, M and P in GROUPS
(so elements are L:x, M:y, P:z) and has sections D1, D2, ACTION and LIFT;
ACTION lines start with PL, PM or ML.

``#`` starts a comment.  Missing entries of a table that must be total raise
SemanticError; entries that are present but wrong are left to the validators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actor import TwoCrossedModule
from .errors import CrossmodError
from .groupoid import FiniteGroupoid, GroupBundle
from .groups import FiniteGroup
from .xmod import CrossedModule, GroupoidAction

VERSION = "1"
XMOD_SECTIONS = ("OBJECTS", "ARROWS", "COMP", "GROUPS", "DELTA", "ACTION")
TWOXMOD_SECTIONS = ("GROUPS", "D1", "D2", "ACTION", "LIFT")
TWOXMOD_GROUPS = ("L", "M", "P")


class ParseError(CrossmodError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message, self.line, self.column = message, line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class FormatSyntaxError(ParseError):
    """Malformed text: bad header, unknown section, wrong number of fields."""


class SemanticError(ParseError):
    """Well-formed text that refers to undeclared ids or leaves a table partial."""


@dataclass
class GroupTable:
    elements: list[str] = field(default_factory=list)
    mul: dict[tuple[str, str], str] = field(default_factory=dict)


@dataclass
class XmodDocument:
    kind: str = "xmod"
    name: str = ""
    version: str = VERSION
    objects: list[str] = field(default_factory=list)
    arrows: list[tuple[str, str, str]] = field(default_factory=list)
    comp: dict[tuple[str, str], str] = field(default_factory=dict)
    groups: dict[str, GroupTable] = field(default_factory=dict)
    delta: dict[str, str] = field(default_factory=dict)
    action: dict[tuple[str, str], str] = field(default_factory=dict)
    # 2xmod only
    d1: dict[str, str] = field(default_factory=dict)
    d2: dict[str, str] = field(default_factory=dict)
    actions2: dict[str, dict[tuple[str, str], str]] = field(default_factory=dict)
    lift: dict[tuple[str, str], str] = field(default_factory=dict)
    meta: dict[str, str] = field(default_factory=dict)


# -- tokenising -------------------------------------------------------------

def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with 1-based columns, comments stripped."""
    out, i, n = [], 0, len(line)
    while i < n:
        if line[i] == "#":
            break
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not line[j].isspace() and line[j] != "#":
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _split(tok: str, lineno: int, col: int) -> tuple[str, str]:
    if ":" not in tok:
        raise FormatSyntaxError(f"expected object:element, got {tok!r}", lineno, col)
    obj, _, el = tok.partition(":")
    if not obj or not el:
        raise FormatSyntaxError(f"expected object:element, got {tok!r}", lineno, col)
    return obj, el


def parse(data: bytes | str) -> XmodDocument:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatSyntaxError(f"input is not UTF-8: {exc}") from None
    doc = XmodDocument()
    lines = data.splitlines()
    header: dict[str, str] = {}
    section = None
    seen_sections: list[str] = []
    # where each id was declared, for error messages
    arrow_names: set[str] = set()
    object_names: set[str] = set()

    def need(cond, msg, ln, col, cls=SemanticError):
        if not cond:
            raise cls(msg, ln, col)

    for ln, raw in enumerate(lines, 1):
        toks = _tokens(raw)
        if not toks:
            continue
        word, col = toks[0]
        if section is None and word in ("version", "kind", "name", "meta"):
            if word == "meta":
                need(len(toks) >= 2, "meta needs a key", ln, col, FormatSyntaxError)
                doc.meta[toks[1][0]] = " ".join(t for t, _ in toks[2:])
                continue
            need(len(toks) == 2, f"{word} takes exactly one value", ln, col, FormatSyntaxError)
            need(word not in header, f"duplicate {word} line", ln, col, FormatSyntaxError)
            header[word] = toks[1][0]
            continue
        if word.isupper() and len(toks) == 1:
            if "version" not in header:
                raise FormatSyntaxError("missing 'version 1' header", ln, col)
            kind = header.get("kind", "xmod")
            allowed = XMOD_SECTIONS if kind == "xmod" else TWOXMOD_SECTIONS
            need(word in allowed, f"unknown section {word} for kind {kind}", ln, col, FormatSyntaxError)
            need(word not in seen_sections, f"duplicate section {word}", ln, col, FormatSyntaxError)
            seen_sections.append(word)
            section = word
            continue
        if section is None:
            if "version" not in header:
                raise FormatSyntaxError("missing 'version 1' header", ln, col)
            raise FormatSyntaxError(f"unexpected {word!r} before any section", ln, col)
        _parse_line(doc, header.get("kind", "xmod"), section, toks, ln, object_names, arrow_names)

    if "version" not in header:
        raise FormatSyntaxError("missing 'version 1' header", 1, 1)
    if header["version"] != VERSION:
        raise FormatSyntaxError(f"unsupported version {header['version']}", 1, 1)
    doc.kind = header.get("kind", "xmod")
    if doc.kind not in ("xmod", "2xmod"):
        raise FormatSyntaxError(f"unknown kind {doc.kind}", 1, 1)
    doc.name = header.get("name", "")
    _check_total(doc)
    return doc


def _parse_line(doc: XmodDocument, kind: str, section: str, toks, ln: int, objects: set, arrows: set) -> None:
    def arity(n):
        if len(toks) != n:
            raise FormatSyntaxError(f"{section} lines take {n} fields, got {len(toks)}", ln, toks[0][1])

    def element(tok, col, owner=None):
        obj, el = _split(tok, ln, col)
        grp = doc.groups.get(obj)
        if grp is None:
            raise SemanticError(f"undeclared group or object {obj!r}", ln, col)
        if el not in grp.elements:
            raise SemanticError(f"undeclared element {tok!r}", ln, col)
        if owner is not None and obj != owner:
            raise SemanticError(f"expected an element of {owner}, got {tok!r}", ln, col)
        return tok

    def arrow(tok, col):
        if tok not in arrows:
            raise SemanticError(f"undeclared arrow {tok!r}", ln, col)
        return tok

    if section == "OBJECTS":
        for tok, col in toks:
            if ":" in tok:
                raise FormatSyntaxError(f"object names may not contain ':' ({tok!r})", ln, col)
            if tok in objects:
                raise SemanticError(f"duplicate object {tok!r}", ln, col)
            objects.add(tok)
            doc.objects.append(tok)
    elif section == "ARROWS":
        arity(3)
        (name, c0), (s, c1), (t, c2) = toks
        if name in arrows:
            raise SemanticError(f"duplicate arrow {name!r}", ln, c0)
        for o, c in ((s, c1), (t, c2)):
            if o not in objects:
                raise SemanticError(f"arrow {name!r} refers to undeclared object {o!r}", ln, c)
        arrows.add(name)
        doc.arrows.append((name, s, t))
    elif section == "COMP":
        arity(3)
        a, b, c = (arrow(t, col) for t, col in toks)
        if (a, b) in doc.comp:
            raise SemanticError(f"duplicate composition entry {a} {b}", ln, toks[0][1])
        doc.comp[(a, b)] = c
    elif section == "GROUPS":
        word, col = toks[0]
        if word == "elements":
            if len(toks) < 3:
                raise FormatSyntaxError("elements needs an owner and at least one element", ln, col)
            owner, ocol = toks[1]
            if kind == "xmod" and owner not in objects:
                raise SemanticError(f"group over undeclared object {owner!r}", ln, ocol)
            if kind == "2xmod" and owner not in TWOXMOD_GROUPS:
                raise SemanticError(f"group name must be one of L, M, P, got {owner!r}", ln, ocol)
            if owner in doc.groups:
                raise SemanticError(f"duplicate group for {owner!r}", ln, ocol)
            els = [t for t, _ in toks[2:]]
            if len(set(els)) != len(els):
                raise SemanticError(f"duplicate element in group {owner!r}", ln, col)
            doc.groups[owner] = GroupTable(els)
        elif word == "mul":
            arity(4)
            a, b, c = (element(t, col) for t, col in toks[1:])
            owners = {x.partition(":")[0] for x in (a, b, c)}
            if len(owners) != 1:
                raise SemanticError("mul entries must stay inside one group", ln, col)
            grp = doc.groups[owners.pop()]
            key = (a.partition(":")[2], b.partition(":")[2])
            if key in grp.mul:
                raise SemanticError(f"duplicate mul entry {a} {b}", ln, col)
            grp.mul[key] = c.partition(":")[2]
        else:
            raise FormatSyntaxError(f"GROUPS lines start with 'elements' or 'mul', got {word!r}", ln, col)
    elif section == "DELTA":
        arity(2)
        c = element(*toks[0])
        if c in doc.delta:
            raise SemanticError(f"duplicate boundary entry for {c}", ln, toks[0][1])
        doc.delta[c] = arrow(*toks[1])
    elif section == "ACTION" and kind == "xmod":
        arity(3)
        c = element(*toks[0])
        a = arrow(*toks[1])
        if (c, a) in doc.action:
            raise SemanticError(f"duplicate action entry {c} {a}", ln, toks[0][1])
        doc.action[(c, a)] = element(*toks[2])
    elif section == "ACTION":
        arity(4)
        which, col = toks[0]
        owners = {"PL": ("L", "P"), "PM": ("M", "P"), "ML": ("L", "M")}
        if which not in owners:
            raise FormatSyntaxError(f"ACTION lines start with PL, PM or ML, got {which!r}", ln, col)
        on, by = owners[which]
        x = element(*toks[1], owner=on)
        k = element(*toks[2], owner=by)
        table = doc.actions2.setdefault(which, {})
        if (x, k) in table:
            raise SemanticError(f"duplicate action entry {which} {x} {k}", ln, col)
        table[(x, k)] = element(*toks[3], owner=on)
    elif section in ("D1", "D2"):
        arity(2)
        src, dst = ("L", "M") if section == "D1" else ("M", "P")
        x = element(*toks[0], owner=src)
        table = doc.d1 if section == "D1" else doc.d2
        if x in table:
            raise SemanticError(f"duplicate {section} entry for {x}", ln, toks[0][1])
        table[x] = element(*toks[1], owner=dst)
    elif section == "LIFT":
        arity(3)
        a = element(*toks[0], owner="M")
        b = element(*toks[1], owner="M")
        if (a, b) in doc.lift:
            raise SemanticError(f"duplicate lift entry {a} {b}", ln, toks[0][1])
        doc.lift[(a, b)] = element(*toks[2], owner="L")


def _check_total(doc: XmodDocument) -> None:
    def missing(what, key):
        raise SemanticError(f"{what} is not total: no entry for {' '.join(key)}")

    owners = doc.objects if doc.kind == "xmod" else list(TWOXMOD_GROUPS)
    for o in owners:
        if o not in doc.groups:
            raise SemanticError(f"no group declared for {o!r}")
        grp = doc.groups[o]
        for a in grp.elements:
            for b in grp.elements:
                if (a, b) not in grp.mul:
                    missing(f"group table of {o}", (f"{o}:{a}", f"{o}:{b}"))
    if doc.kind == "xmod":
        if not doc.objects:
            raise SemanticError("at least one object is required")
        ends = {name: (s, t) for name, s, t in doc.arrows}
        for a, (_, ta) in ends.items():
            for b, (sb, _) in ends.items():
                if ta == sb and (a, b) not in doc.comp:
                    missing("composition table", (a, b))
        for o in doc.objects:
            for el in doc.groups[o].elements:
                c = f"{o}:{el}"
                if c not in doc.delta:
                    missing("boundary", (c,))
                for a, (sa, _) in ends.items():
                    if sa == o and (c, a) not in doc.action:
                        missing("action", (c, a))
        return
    els = {g: [f"{g}:{e}" for e in doc.groups[g].elements] for g in TWOXMOD_GROUPS}
    for x in els["L"]:
        if x not in doc.d1:
            missing("D1", (x,))
    for x in els["M"]:
        if x not in doc.d2:
            missing("D2", (x,))
    for which, (on, by) in (("PL", ("L", "P")), ("PM", ("M", "P")), ("ML", ("L", "M"))):
        table = doc.actions2.get(which, {})
        for x in els[on]:
            for k in els[by]:
                if (x, k) not in table:
                    missing(f"action {which}", (x, k))
    for a in els["M"]:
        for b in els["M"]:
            if (a, b) not in doc.lift:
                missing("LIFT", (a, b))


# -- serialising ------------------------------------------------------------

def serialize(doc: XmodDocument) -> str:
    """Canonical text: fixed section order, entries in declaration order."""
    out = [f"version {doc.version}", f"kind {doc.kind}"]
    if doc.name:
        out.append(f"name {doc.name}")
    for k in sorted(doc.meta):
        out.append(f"meta {k} {doc.meta[k]}".rstrip())

    def group_lines(owner):
        grp = doc.groups[owner]
        lines = [f"elements {owner} " + " ".join(grp.elements)]
        for a in grp.elements:
            for b in grp.elements:
                lines.append(f"mul {owner}:{a} {owner}:{b} {owner}:{grp.mul[(a, b)]}")
        return lines

    if doc.kind == "xmod":
        out += ["", "OBJECTS", " ".join(doc.objects), "", "ARROWS"]
        out += [f"{n} {s} {t}" for n, s, t in doc.arrows]
        out += ["", "COMP"]
        order = {name: i for i, (name, _, _) in enumerate(doc.arrows)}
        for (a, b) in sorted(doc.comp, key=lambda k: (order[k[0]], order[k[1]])):
            out.append(f"{a} {b} {doc.comp[(a, b)]}")
        out += ["", "GROUPS"]
        for o in doc.objects:
            out += group_lines(o)
        cs = [f"{o}:{e}" for o in doc.objects for e in doc.groups[o].elements]
        out += ["", "DELTA"] + [f"{c} {doc.delta[c]}" for c in cs]
        out += ["", "ACTION"]
        corder = {c: i for i, c in enumerate(cs)}
        for (c, a) in sorted(doc.action, key=lambda k: (corder[k[0]], order[k[1]])):
            out.append(f"{c} {a} {doc.action[(c, a)]}")
    else:
        out += ["", "GROUPS"]
        for g in TWOXMOD_GROUPS:
            out += group_lines(g)
        els = {g: [f"{g}:{e}" for e in doc.groups[g].elements] for g in TWOXMOD_GROUPS}
        out += ["", "D1"] + [f"{x} {doc.d1[x]}" for x in els["L"]]
        out += ["", "D2"] + [f"{x} {doc.d2[x]}" for x in els["M"]]
        out += ["", "ACTION"]
        for which, (on, by) in (("PL", ("L", "P")), ("PM", ("M", "P")), ("ML", ("L", "M"))):
            for x in els[on]:
                for k in els[by]:
                    out.append(f"{which} {x} {k} {doc.actions2[which][(x, k)]}")
        out += ["", "LIFT"]
        for a in els["M"]:
            for b in els["M"]:
                out.append(f"{a} {b} {doc.lift[(a, b)]}")
    return "\n".join(out) + "\n"


# -- documents <-> structures ----------------------------------------------

def to_crossed_module(doc: XmodDocument) -> CrossedModule:
    if doc.kind != "xmod":
        raise SemanticError(f"expected kind xmod, got {doc.kind}")
    oid = {o: i for i, o in enumerate(doc.objects)}
    aid = {a: i for i, (a, _, _) in enumerate(doc.arrows)}
    n = len(doc.arrows)
    comp = [[None] * n for _ in range(n)]
    for (a, b), c in doc.comp.items():
        comp[aid[a]][aid[b]] = aid[c]
    G = FiniteGroupoid(
        len(doc.objects),
        tuple(oid[s] for _, s, _ in doc.arrows),
        tuple(oid[t] for _, _, t in doc.arrows),
        tuple(tuple(r) for r in comp),
        tuple(doc.objects),
        tuple(a for a, _, _ in doc.arrows),
    )
    groups = []
    for o in doc.objects:
        grp = doc.groups[o]
        eid = {e: i for i, e in enumerate(grp.elements)}
        table = tuple(tuple(eid[grp.mul[(a, b)]] for b in grp.elements) for a in grp.elements)
        groups.append(FiniteGroup(table, tuple(grp.elements), o))
    C = GroupBundle(tuple(groups), tuple(doc.objects)).to_groupoid()
    cid = {name: i for i, name in enumerate(C.arrow_names)}
    delta = tuple(aid[doc.delta[C.arrow_names[i]]] for i in C.arrows)
    act = [[None] * n for _ in C.arrows]
    for (c, a), v in doc.action.items():
        act[cid[c]][aid[a]] = cid[v]
    return CrossedModule(GroupoidAction(C, G, tuple(tuple(r) for r in act)), delta, doc.name)


def _clean(name, fallback: str) -> str:
    s = str(name)
    if not s or any(ch.isspace() or ch in ":#" for ch in s):
        return fallback
    return s


def _element_names(labels, n: int, prefix: str) -> list[str]:
    names = [_clean(lab, f"{prefix}{i}") for i, lab in enumerate(labels)] if labels else []
    if len(names) != n or len(set(names)) != n:
        names = [f"{prefix}{i}" for i in range(n)]
    return names


def from_crossed_module(x: CrossedModule) -> XmodDocument:
    G, C = x.G, x.C
    onames = _element_names([G.object_name(o) for o in G.objects], G.n_objects, "x")
    anames = _element_names([G.arrow_name(a) for a in G.arrows], G.n_arrows, "a")
    doc = XmodDocument(kind="xmod", name=_clean(x.name, ""))
    doc.objects = onames
    doc.arrows = [(anames[a], onames[G.src[a]], onames[G.tgt[a]]) for a in G.arrows]
    for a in G.arrows:
        for b in G.arrows:
            if G.comp[a][b] is not None:
                doc.comp[(anames[a], anames[b])] = anames[G.comp[a][b]]
    cname = {}
    for o in G.objects:
        fib = x.fibre(o)
        prefix = f"{C.object_name(o)}:"
        raw = [C.arrow_name(c) for c in fib]
        raw = [r[len(prefix):] if r.startswith(prefix) else r for r in raw]
        els = _element_names(raw, len(fib), "c")
        grp = GroupTable(els)
        for i, c in enumerate(fib):
            cname[c] = (onames[o], els[i])
        for c in fib:
            for d in fib:
                grp.mul[(cname[c][1], cname[d][1])] = cname[C.add(c, d)][1]
        doc.groups[onames[o]] = grp

    def full(c):
        return f"{cname[c][0]}:{cname[c][1]}"

    for c in C.arrows:
        doc.delta[full(c)] = anames[x.delta[c]]
        for a in G.arrows:
            v = x.action.act[c][a]
            if v is not None:
                doc.action[(full(c), anames[a])] = full(v)
    return doc


def to_twocrossed(doc: XmodDocument) -> TwoCrossedModule:
    if doc.kind != "2xmod":
        raise SemanticError(f"expected kind 2xmod, got {doc.kind}")
    groups, ids = {}, {}
    for g in TWOXMOD_GROUPS:
        grp = doc.groups[g]
        eid = {f"{g}:{e}": i for i, e in enumerate(grp.elements)}
        ids[g] = eid
        table = tuple(tuple(eid[f"{g}:{grp.mul[(a, b)]}"] for b in grp.elements) for a in grp.elements)
        groups[g] = FiniteGroup(table, tuple(grp.elements), g)
    L, M, P = (groups[g] for g in TWOXMOD_GROUPS)
    il, im, ip = (ids[g] for g in TWOXMOD_GROUPS)

    def table(which, on, by, ion, iby):
        t = doc.actions2[which]
        return tuple(
            tuple(ion[t[(x, k)]] for k in sorted(iby, key=iby.get)) for x in sorted(ion, key=ion.get)
        )

    d1 = tuple(im[doc.d1[x]] for x in sorted(il, key=il.get))
    d2 = tuple(ip[doc.d2[x]] for x in sorted(im, key=im.get))
    mlist = sorted(im, key=im.get)
    lift = tuple(tuple(il[doc.lift[(a, b)]] for b in mlist) for a in mlist)
    return TwoCrossedModule(
        L, M, P, d1, d2,
        table("PL", "L", "P", il, ip), table("PM", "M", "P", im, ip), table("ML", "L", "M", il, im),
        lift, doc.name,
    )


def from_twocrossed(t: TwoCrossedModule) -> XmodDocument:
    doc = XmodDocument(kind="2xmod", name=_clean(t.name, ""))
    names = {}
    for g, grp, prefix in (("L", t.L, "l"), ("M", t.M, "m"), ("P", t.P, "p")):
        els = _element_names(grp.labels, grp.order, prefix)
        names[g] = [f"{g}:{e}" for e in els]
        gt = GroupTable(els)
        for a in grp.elements:
            for b in grp.elements:
                gt.mul[(els[a], els[b])] = els[grp.mul(a, b)]
        doc.groups[g] = gt
    nl, nm, np_ = names["L"], names["M"], names["P"]
    doc.d1 = {nl[i]: nm[v] for i, v in enumerate(t.d1)}
    doc.d2 = {nm[i]: np_[v] for i, v in enumerate(t.d2)}
    doc.actions2 = {
        "PL": {(nl[a], np_[k]): nl[t.act_pl[a][k]] for a in t.L.elements for k in t.P.elements},
        "PM": {(nm[a], np_[k]): nm[t.act_pm[a][k]] for a in t.M.elements for k in t.P.elements},
        "ML": {(nl[a], nm[k]): nl[t.act_ml[a][k]] for a in t.L.elements for k in t.M.elements},
    }
    doc.lift = {(nm[a], nm[b]): nl[t.lift[a][b]] for a in t.M.elements for b in t.M.elements}
    return doc


def load(path) -> XmodDocument:
    with open(path, "rb") as fh:
        return parse(fh.read())
