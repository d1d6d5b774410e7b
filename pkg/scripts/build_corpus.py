"""Regenerate corpus/ from the catalog.

    python scripts/build_corpus.py [OUTDIR]

Positive files are canonical serialisations.  Negative files start with
``# expect-exit: N`` and ``# expect: TEXT`` lines naming the exit code of
``crossmod check`` and a string its output must contain.
"""

from __future__ import annotations

import sys
from dataclasses import replace
from pathlib import Path

from crossmod.actor import build_actor_2crossed
from crossmod.catalog import CATALOG, TWO_CATALOG, a3s3, c2c2, s3_s3_id
from crossmod.groups import symmetric_group, trivial_group
from crossmod.io import from_crossed_module, from_twocrossed, serialize
from crossmod.groupoid import groupoid_from_group
from crossmod.xmod import CrossedModule, GroupoidAction

NEGATIVE_TEXT = {
    "no_version.xmod": (2, "missing 'version 1' header", """\
kind xmod
OBJECTS
*
"""),
    "bad_arity.xmod": (2, "ARROWS lines take 3 fields", """\
version 1
kind xmod
OBJECTS
*
ARROWS
e *
"""),
    "dangling_object.xmod": (2, "undeclared object 'y'", """\
version 1
kind xmod
OBJECTS
x
ARROWS
e x x
a x y
"""),
    "partial_comp.xmod": (2, "composition table is not total", """\
version 1
kind xmod
OBJECTS
*
ARROWS
e * *
a * *
COMP
e e e
e a a
a e a
GROUPS
elements * 0
mul *:0 *:0 *:0
DELTA
*:0 e
ACTION
*:0 e *:0
*:0 a *:0
"""),
    "bad_element.xmod": (2, "undeclared element '*:2'", """\
version 1
kind xmod
OBJECTS
*
ARROWS
e * *
COMP
e e e
GROUPS
elements * 0 1
mul *:0 *:0 *:0
mul *:0 *:1 *:1
mul *:1 *:0 *:1
mul *:1 *:1 *:2
"""),
}


def _with_header(code: int, expect: str, body: str) -> str:
    return f"# expect-exit: {code}\n# expect: {expect}\n" + body


def negative_structures() -> dict[str, tuple[int, str, str]]:
    out = {}

    # S3 -> 1 with trivial action: CM1 holds, CM2 fails since S3 is not abelian.
    s3 = symmetric_group(3)
    G = groupoid_from_group(trivial_group())
    C = groupoid_from_group(s3)
    act = tuple((c,) for c in C.arrows)
    x = CrossedModule(GroupoidAction(C, G, act), tuple(0 for _ in C.arrows), "s3zero")
    out["cm2_fails.xmod"] = (1, "pre-crossed only", serialize(from_crossed_module(x)))

    # A3 in S3 with the trivial action: CM1 fails.
    y = a3s3()
    act = tuple(tuple(c if v is not None else None for v in row) for c, row in enumerate(y.action.act))
    y = replace(y, action=GroupoidAction(y.C, y.G, act), name="a3s3trivial")
    out["cm1_fails.xmod"] = (1, "CM1", serialize(from_crossed_module(y)))

    # c2c2 with a composition entry outside the domain of composition.
    text = serialize(from_crossed_module(replace(c2c2(), name="c2c2domain")))
    text = text.replace("OBJECTS\n*\n", "OBJECTS\n* z\n").replace("ARROWS\n", "ARROWS\nz0 z z\n")
    text = text.replace("COMP\n", "COMP\nz0 z0 z0\nz0 0 0\n")
    text = text.replace("GROUPS\n", "GROUPS\nelements z 0\nmul z:0 z:0 z:0\n")
    text = text.replace("DELTA\n", "DELTA\nz:0 z0\n").replace("ACTION\n", "ACTION\nz:0 z0 z:0\n")
    out["comp_domain.xmod"] = (1, "composition domain", text)

    # s3s3id with the zero lift: P1 fails because S3 is not abelian.
    t = s3_s3_id()
    zero = tuple(tuple(t.L.identity for _ in t.M.elements) for _ in t.M.elements)
    bad = replace(t, lift=zero, name="s3s3zerolift")
    out["zero_lift.2xmod"] = (1, "P1", serialize(from_twocrossed(bad)))
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    root = Path(argv[0]) if argv else Path(__file__).resolve().parent.parent / "corpus"
    neg = root / "negative"
    root.mkdir(parents=True, exist_ok=True)
    neg.mkdir(exist_ok=True)
    for name, fn in CATALOG.items():
        (root / f"{name}.xmod").write_text(serialize(from_crossed_module(fn())))
    for name, fn in TWO_CATALOG.items():
        (root / f"{name}.2xmod").write_text(serialize(from_twocrossed(fn())))
    for name in ("c2c2", "c3zero", "c3c2zero"):
        t = build_actor_2crossed(CATALOG[name]())
        (root / f"actor_{name}.2xmod").write_text(serialize(from_twocrossed(t)))
    for fname, (code, expect, body) in {**NEGATIVE_TEXT, **negative_structures()}.items():
        (neg / fname).write_text(_with_header(code, expect, body))
    return 0


if __name__ == "__main__":
    sys.exit(main())
