"""Command-line front end.

Exit codes: 0 success or property holds, 1 definite negative, 2 input
error, 3 enumeration bound exceeded.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import config
from .bilinear import classify_form, curry
from .errors import BoundExceeded, InputError, NotSymplectic
from .grouptable import (TableGroup, cocycle_from_section, factorized_commutator, format_table,
                         group_basics, heisenberg_pair_search, mumford_from_cocycle, parse_table,
                         random_section, recognize_heisenberg)
from .gspec import parse_spec
from .heisenberg import center_and_derived, is_mumford_group, is_reflexive
from .symplectic import is_symplectic, mumford_group_from_duality, symplectic_decompose
from .verify import CRITERIA, run_criterion

OK, NEGATIVE, INPUT_ERROR, BOUND_ERROR = 0, 1, 2, 3


def yes_no(flag):
    return "yes" if flag else "no"


def format_matrix(w):
    """Form matrix in GSPEC syntax."""
    def entry(v):
        return str(v[0]) if len(v) == 1 else "(" + ",".join(map(str, v)) + ")"
    return "[" + ";".join("[" + ",".join(entry(v) for v in row) + "]" for row in w.matrix) + "]"


def _load(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text, base_dir=path.parent)


def _select(spec, kind, name, what):
    items = getattr(spec, kind)
    if name is not None:
        if name not in items:
            raise InputError(f"no {what} named {name!r}")
        return [(name, items[name])]
    if not items:
        raise InputError(f"the instance file declares no {what}")
    return list(items.items())


def _tables(args):
    """Table groups named by ``--table`` or declared in the instance file (Heisenberg
    declarations are exported to tables)."""
    if args.table:
        return [(Path(args.table).name, parse_table(_read(args.table)))]
    if args.spec is None:
        raise InputError("give an instance file or --table")
    spec = _load(args.spec)
    pool = dict(spec.tables)
    pool.update((n, TableGroup.from_heisenberg(G)) for n, G in spec.heisenbergs.items())
    if args.name is not None:
        if args.name not in pool:
            raise InputError(f"no table or heisenberg named {args.name!r}")
        return [(args.name, pool[args.name])]
    if not pool:
        raise InputError("the instance file declares no table or heisenberg groups")
    order = [n for n in list(spec.tables) + list(spec.heisenbergs)]
    return [(n, pool[n]) for n in order]


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


# Commands return (exit code, list of report items); an item is an ordered dict.

def cmd_analyze_form(args):
    items = []
    for name, w in _select(_load(args.spec), "forms", args.name, "form"):
        c = classify_form(w)
        left, right = curry(w, "left"), curry(w, "right")
        item = {"name": name, "E": str(w.E), "F": str(w.F), "A": str(w.A), "matrix": format_matrix(w),
                "separated": c.separated,
                "omega_E": "bijective" if left.is_bijective() else
                           "injective" if left.is_injective() else "not injective",
                "omega_F": "bijective" if right.is_bijective() else
                           "injective" if right.is_injective() else "not injective"}
        if w.is_square:
            item["alternating"] = c.alternating
            item["symmetric"] = c.symmetric
        items.append(item)
    return OK, items


def cmd_heisenberg_build(args):
    items = []
    for name, G in _select(_load(args.spec), "heisenbergs", args.name, "heisenberg group"):
        item = {"name": name, "summary": f"H({G.E}, {G.F}, {G.A}) of order {G.order}",
                "order": G.order, "E": str(G.E), "F": str(G.F), "A": str(G.A),
                "omega": format_matrix(G.omega)}
        if G.order <= config.MAX_TABLE_ORDER and config.within_bound(G.order):
            basics = group_basics(TableGroup.from_heisenberg(G))
            item["table"] = "validated group"
            item["class2"] = basics.is_class2
        else:
            item["table"] = "not built (above table limit)"
        items.append(item)
    return OK, items


def cmd_heisenberg_report(args):
    items, code = [], OK
    for name, G in _select(_load(args.spec), "heisenbergs", args.name, "heisenberg group"):
        cd = center_and_derived(G)
        m = is_mumford_group(G)
        item = {"name": name,
                "summary": (f"order {G.order}, |Z|={len(cd.center)}, |[G,G]|={len(cd.derived)}, "
                            f"mumford: {yes_no(m.mumford)}"),
                "order": G.order, "center": len(cd.center), "derived": len(cd.derived),
                "verified": cd.verified, "mumford": m.mumford,
                "omega_E_bijective": m.omega_E_bijective, "omega_F_bijective": m.omega_F_bijective,
                "E_reflexive": is_reflexive(G.E, G.A), "F_reflexive": is_reflexive(G.F, G.A)}
        if not m.mumford:
            item["verdict"] = "not a Mumford group"
            code = NEGATIVE
        items.append(item)
    return code, items


def cmd_table_export(args):
    (name, G), = _select(_load(args.spec), "heisenbergs", args.name, "heisenberg group")[:1]
    text = format_table(G.cayley_table())
    item = {"name": name, "order": G.order}
    if args.output:
        Path(args.output).write_text(text)
        item["written"] = args.output
    else:
        item["table"] = text
    return OK, [item]


def _basics_item(name, G):
    b = group_basics(G)
    return {"name": name, "order": G.n, "abelian": G.is_abelian(), "center": len(b.center.members),
            "derived": len(b.derived.members), "class2": b.is_class2,
            "element_orders": {str(k): v for k, v in G.order_profile().items()}}


def cmd_table_import(args):
    G = parse_table(_read(args.path))
    return OK, [_basics_item(Path(args.path).name, G)]


def cmd_recognize(args):
    items, code = [], OK
    for name, G in _tables(args):
        if not group_basics(G).is_class2:
            items.append({"name": name, "order": G.n, "verdict": "not nilpotent of class 2"})
            code = NEGATIVE
            continue
        dec = recognize_heisenberg(G)
        if dec is None:
            checks, maximal, _, _ = heisenberg_pair_search(G)
            q = sum(c.qualifies for c in checks)
            items.append({"name": name, "order": G.n, "verdict": "not a generalized Heisenberg group",
                          "maximal_abelian": len(maximal), "qualifying_pairs": q,
                          "pairs_splitting_center": 0})
            code = NEGATIVE
            continue
        H = dec.heisenberg
        items.append({"name": name, "order": G.n,
                      "summary": f"H({H.E}, {H.F}, {H.A}, omega = {format_matrix(H.omega)})",
                      "E": str(H.E), "F": str(H.F), "A": str(H.A), "omega": format_matrix(H.omega),
                      "M1": len(dec.M1), "M2": len(dec.M2), "isomorphism": "verified"})
    return code, items


def cmd_cocycle_check(args):
    items, code = [], OK
    rng = np.random.default_rng(args.seed)
    for name, G in _tables(args):
        if not group_basics(G).is_class2:
            items.append({"name": name, "verdict": "not nilpotent of class 2"})
            code = NEGATIVE
            continue
        fc = factorized_commutator(G)
        base = mumford_from_cocycle(cocycle_from_section(fc))
        same = True
        for _ in range(args.sections):
            value = mumford_from_cocycle(cocycle_from_section(fc, random_section(fc, rng)))
            same &= bool(np.array_equal(value, base))
        items.append({"name": name, "order": G.n, "K": str(fc.K_structure.group),
                      "center": str(fc.Z.group), "sections": args.sections + 1,
                      "five_term_identity": "holds", "section_independent": same})
        if not same:
            code = NEGATIVE
    return code, items


def cmd_symplectic_decompose(args):
    items, code = [], OK
    for name, d in _select(_load(args.spec), "dualities", args.name, "duality"):
        try:
            dec = symplectic_decompose(d)
        except NotSymplectic as exc:
            items.append({"name": name, "verdict": f"no decomposition: {exc}"})
            code = NEGATIVE
            continue
        pairs = [{"x": list(x.coords), "y": list(y.coords), "m": m} for x, y, m in dec.pairs]
        items.append({"name": name, "summary": f"A = {dec.A}", "K": str(d.K), "A": str(dec.A),
                      "pairs": pairs, "verification": "exact" if dec.verified else "failed"})
    return code, items


def cmd_duality_roundtrip(args):
    items, code = [], OK
    for name, d in _select(_load(args.spec), "dualities", args.name, "duality"):
        if not is_symplectic(d):
            items.append({"name": name, "verdict": "not symplectic"})
            code = NEGATIVE
            continue
        r = mumford_group_from_duality(d)
        G = r.group
        item = {"name": name, "summary": f"H({G.E}, {G.F}, {G.A}) of order {G.order}",
                "A": str(r.decomposition.A), "order": G.order,
                "mumford_data": "isomorphic" if r.mumford_matches else "different",
                "cocycle_identity": "exact" if r.cocycle_matches else "failed"}
        if r.degenerate:
            item["flag"] = r.degenerate
        items.append(item)
    return code, items


def cmd_verify_suite(args):
    names = args.only.split(",") if args.only else list(CRITERIA)
    unknown = [n for n in names if n not in CRITERIA]
    if unknown:
        raise InputError(f"unknown criteria {unknown}")
    items, code = [], OK
    for n in names:
        r = run_criterion(n)
        ok = r.passed and r.in_time
        items.append({"name": n, "summary": r.line().split(" ", 1)[1], "passed": ok})
        if not ok:
            code = NEGATIVE
    return code, items


def _render_text(command, items):
    if command == "table-export" and "table" in items[0]:
        return items[0]["table"].rstrip("\n")
    lines = []
    for item in items:
        head = item.get("summary")
        lines.append(f"{item['name']}: {head}" if head else f"{item['name']}:")
        for key, value in item.items():
            if key in ("name", "summary"):
                continue
            if isinstance(value, bool):
                value = yes_no(value)
            elif isinstance(value, (list, dict)):
                value = json.dumps(value, sort_keys=True)
            lines.append(f"  {key}: {value}")
    return "\n".join(lines)


COMMANDS = {
    "analyze-form": cmd_analyze_form,
    "heisenberg-build": cmd_heisenberg_build,
    "heisenberg-report": cmd_heisenberg_report,
    "table-export": cmd_table_export,
    "table-import": cmd_table_import,
    "recognize": cmd_recognize,
    "cocycle-check": cmd_cocycle_check,
    "symplectic-decompose": cmd_symplectic_decompose,
    "duality-roundtrip": cmd_duality_roundtrip,
    "verify-suite": cmd_verify_suite,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", default=argparse.SUPPRESS,
                        help="enumeration bound (overrides HEISKIT_BOUND)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit the report as canonical JSON")
    parser = _Parser(prog="heiskit", parents=[common],
                     description="Exact Heisenberg-group and self-duality computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, spec=True, name_opt=True):
        p = sub.add_parser(name, help=help_, parents=[common])
        if spec:
            p.add_argument("spec", help="GSPEC instance file")
        if name_opt:
            p.add_argument("--name", help="restrict to one declaration")
        return p

    add("analyze-form", "classify declared forms")
    add("heisenberg-build", "build declared Heisenberg groups")
    add("heisenberg-report", "center, derived subgroup, Mumford and reflexivity predicates")
    p = add("table-export", "write the Cayley table of a Heisenberg group")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p = add("table-import", "validate a Cayley table file", spec=False, name_opt=False)
    p.add_argument("path")
    for name, help_ in (("recognize", "recognize a table group as generalized Heisenberg"),
                        ("cocycle-check", "check the five-term cocycle identity")):
        p = add(name, help_, spec=False)
        p.add_argument("spec", nargs="?", help="GSPEC instance file")
        p.add_argument("--table", help="Cayley table file instead of an instance file")
        if name == "cocycle-check":
            p.add_argument("--sections", type=int, default=10, help="random sections to try")
            p.add_argument("--seed", type=int, default=0)
    add("symplectic-decompose", "split declared dualities into hyperbolic pairs")
    add("duality-roundtrip", "realize declared dualities by Mackey-Weil groups")
    p = add("verify-suite", "run the acceptance checks", spec=False, name_opt=False)
    p.add_argument("--only", help="comma-separated criteria, e.g. A1,A7")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    use_json = getattr(args, "json", False)
    try:
        if hasattr(args, "bound"):
            config.set_bound(args.bound)
        code, items = COMMANDS[args.command](args)
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BOUND_ERROR
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    finally:
        config.set_bound(None)
    if use_json:
        print(json.dumps({"command": args.command, "exit_code": code, "items": items},
                         sort_keys=True, indent=2))
    else:
        print(_render_text(args.command, items))
    return code


if __name__ == "__main__":
    sys.exit(main())
