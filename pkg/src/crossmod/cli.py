"""Command-line driver.

Exit codes: 0 success, 1 validation failure (the report is still printed),
2 I/O or schema error, 3 enumeration cap (XMOD_MAX_SIZE) exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .actor import build_actor_2crossed, validate_2crossed
from .braided import build_aut_braided, compare_with_actor, roundtrip_check, validate_braided
from .derivations import enumerate_fder, enumerate_fder_star, fder_monoid_table, is_invertible
from .errors import CrossmodError, NoIsomorphismFound, SearchSpaceExceeded, ValidationReport
from .groups import generators
from .io import ParseError, from_twocrossed, load, serialize, to_crossed_module, to_twocrossed
from .xmod import CROSSED, CrossedModule, enumerate_xmod_automorphisms, validate_crossed_module

EXIT_OK, EXIT_INVALID, EXIT_SCHEMA, EXIT_CAP = 0, 1, 2, 3


class Failed(Exception):
    """Validation failed; carries the partial report."""

    def __init__(self, report: dict):
        super().__init__("validation failed")
        self.report = report


# -- report helpers ---------------------------------------------------------

def _violations(rep: ValidationReport) -> dict:
    return {
        "counts": dict(sorted(rep.flags.get("counts", {}).items())),
        "witnesses": [
            {"axiom": v.axiom, "witness": list(v.witness), **({"detail": v.detail} if v.detail else {})}
            for v in rep.violations
        ],
    }


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            flat = isinstance(v, list) and all(not isinstance(i, (dict, list)) for i in v)
            if isinstance(v, (dict, list)) and v and not flat:
                lines.append(f"{pad}{k}:")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                inner = _render_text(v, indent + 1)
                lines.append(f"{pad}- " + inner[0].lstrip())
                lines += inner[1:]
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    return "\n".join(_render_text(report)) + "\n"


# -- loading ----------------------------------------------------------------

def _load_xmod(path: str) -> tuple[CrossedModule, dict]:
    doc = load(path)
    if doc.kind != "xmod":
        raise ParseError(f"{path}: expected a crossed module (kind xmod), got kind {doc.kind}")
    x = to_crossed_module(doc)
    rep = validate_crossed_module(x)
    head = _xmod_summary(x, rep)
    if not rep.ok:
        raise Failed(head)
    return x, head


def _xmod_summary(x: CrossedModule, rep: ValidationReport) -> dict:
    out = {
        "name": x.name,
        "objects": x.G.n_objects,
        "arrows of G": x.G.n_arrows,
        "elements of C": x.C.n_arrows,
        "verdict": rep.flags.get("verdict", "neither"),
    }
    if not rep.ok:
        out["violations"] = _violations(rep)
    return out


def _arrow_names(x: CrossedModule, arrows) -> list[str]:
    return [x.G.arrow_name(a) for a in arrows]


def _c_names(x: CrossedModule, cs) -> list[str]:
    return [x.C.arrow_name(c) for c in cs]


def _table(grp) -> list[list[int]]:
    return [list(row) for row in grp.table]


# -- commands ---------------------------------------------------------------

def cmd_check(args) -> tuple[dict, int]:
    doc = load(args.file)
    if doc.kind == "2xmod":
        t = to_twocrossed(doc)
        rep = validate_2crossed(t)
        out = {
            "command": "check",
            "kind": "2xmod",
            "name": t.name,
            "orders": {"L": t.L.order, "M": t.M.order, "P": t.P.order},
            "verdict": "2-crossed module" if rep.ok else "not a 2-crossed module",
        }
        if not rep.ok:
            out["violations"] = _violations(rep)
        return out, EXIT_OK if rep.ok else EXIT_INVALID
    x = to_crossed_module(doc)
    rep = validate_crossed_module(x)
    out = {"command": "check", "kind": "xmod", **_xmod_summary(x, rep)}
    return out, EXIT_OK if rep.flags.get("verdict") == CROSSED else EXIT_INVALID


def cmd_fder(args) -> tuple[dict, int]:
    x, head = _load_xmod(args.file)
    out = {"command": "fder", **head}
    if args.invertible:
        grp = enumerate_fder_star(x)
        elements = [grp.label(i) for i in grp.elements]
        table = _table(grp) if args.table else None
        out["set"] = "FDer*"
    else:
        elements = enumerate_fder(x)
        table = fder_monoid_table(x, elements) if args.table else None
        out["set"] = "FDer"
    out["order"] = len(elements)
    rows = []
    for i, s in enumerate(elements):
        rows.append({
            "index": i,
            "s0": _arrow_names(x, s.s0),
            "s1": _c_names(x, s.s1),
            "invertible": bool(is_invertible(x, s)),
        })
    out["elements"] = rows
    if table is not None:
        out["table"] = table
    return out, EXIT_OK


def cmd_aut(args) -> tuple[dict, int]:
    x, head = _load_xmod(args.file)
    grp = enumerate_xmod_automorphisms(x)
    gens = generators(grp)
    out = {"command": "aut", **head, "order": grp.order, "abelian": grp.is_abelian}
    out["generators"] = [
        {
            "index": g,
            "f0": [x.G.object_name(o) for o in grp.label(g).f0],
            "f1": _arrow_names(x, grp.label(g).f1),
            "f2": _c_names(x, grp.label(g).f2),
        }
        for g in gens
    ]
    out["table"] = _table(grp)
    return out, EXIT_OK


def cmd_actor(args) -> tuple[dict, int]:
    x, head = _load_xmod(args.file)
    t = build_actor_2crossed(x)
    rep = validate_2crossed(t)
    out = {
        "command": "actor",
        **head,
        "orders": {"M2": t.L.order, "FDer*": t.M.order, "Aut": t.P.order},
        "result": "2-crossed module" if rep.ok else "not a 2-crossed module",
    }
    if not rep.ok:
        out["violations"] = _violations(rep)
    if args.emit:
        try:
            with open(args.emit, "w", encoding="utf-8") as fh:
                fh.write(serialize(from_twocrossed(t)))
        except OSError as exc:
            raise ParseError(f"cannot write {args.emit}: {exc}") from None
        out["emitted"] = args.emit
    return out, EXIT_OK if rep.ok else EXIT_INVALID


def cmd_braided(args) -> tuple[dict, int]:
    x, head = _load_xmod(args.file)
    b = build_aut_braided(x)
    rep = validate_braided(b)
    out = {
        "command": "braided",
        **head,
        "orders": {"A0": b.n0, "A1": b.A1.n_arrows, "A2": b.A2.n_arrows},
        "regular": bool(rep.flags.get("regular", False)),
        "result": "braided regular crossed module" if rep.ok and b.is_regular else "invalid",
    }
    if not rep.ok:
        out["violations"] = _violations(rep)
    return out, EXIT_OK if rep.ok else EXIT_INVALID


def cmd_roundtrip(args) -> tuple[dict, int]:
    doc = load(args.file)
    out = {"command": "roundtrip"}
    code = EXIT_OK
    if doc.kind == "2xmod":
        t = to_twocrossed(doc)
        rep = validate_2crossed(t)
        out.update({"kind": "2xmod", "name": t.name})
        if not rep.ok:
            out["verdict"] = "not a 2-crossed module"
            out["violations"] = _violations(rep)
            return out, EXIT_INVALID
    else:
        x, head = _load_xmod(args.file)
        out.update({"kind": "xmod", **head})
        t = build_actor_2crossed(x)
        cmp = compare_with_actor(x)
        out["actor comparison"] = "agrees" if cmp.ok else "differs"
        if not cmp.ok:
            out["comparison violations"] = _violations(cmp)
            code = EXIT_INVALID
    out["orders"] = {"L": t.L.order, "M": t.M.order, "P": t.P.order}
    try:
        w = roundtrip_check(t)
    except NoIsomorphismFound as exc:
        out["witness"] = f"none ({exc})"
        return out, EXIT_INVALID
    out["witness"] = {"method": w.method, "L": list(w.phi_l), "M": list(w.phi_m), "P": list(w.phi_p)}
    return out, code


COMMANDS = {
    "check": cmd_check,
    "fder": cmd_fder,
    "aut": cmd_aut,
    "actor": cmd_actor,
    "braided": cmd_braided,
    "roundtrip": cmd_roundtrip,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="crossed module (.xmod) or 2-crossed module (.2xmod) file")
    common.add_argument("--format", choices=("text", "json"), default="text", help="report format")

    parser = argparse.ArgumentParser(prog="crossmod", description="Finite crossed modules of groupoids and their actors.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="validate a crossed module or 2-crossed module")
    p = sub.add_parser("fder", parents=[common], help="list free derivations")
    p.add_argument("--invertible", action="store_true", help="only the unit group FDer*")
    p.add_argument("--table", action="store_true", help="include the * Cayley table")
    sub.add_parser("aut", parents=[common], help="automorphism group")
    p = sub.add_parser("actor", parents=[common], help="actor 2-crossed module")
    p.add_argument("--emit", metavar="PATH", help="write the 2-crossed module document to PATH")
    sub.add_parser("braided", parents=[common], help="braided structure AUT(C) and its axioms")
    sub.add_parser("roundtrip", parents=[common], help="braided <-> 2-crossed roundtrip with witness")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format
    try:
        report, code = COMMANDS[args.command](args)
    except Failed as exc:
        report, code = {"command": args.command, **exc.report}, EXIT_INVALID
    except SearchSpaceExceeded as exc:
        print(f"crossmod: search space exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ParseError as exc:
        print(f"crossmod: {args.file}: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"crossmod: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except CrossmodError as exc:
        print(f"crossmod: {args.file}: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    sys.stdout.write(render(report, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
