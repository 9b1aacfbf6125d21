"""Command-line front end.

Every command takes a diagram from exactly one of ``--pd``, ``--catalog``
or ``--file`` and prints text, or JSON with ``--json``. The exit status says
whether the computation ran (0) or broke (1 for bad input, 2 for bad
usage); an INCONCLUSIVE verdict is still a successful run.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .catalog import DEFAULT_LISTING, CatalogError, LmJ, resolve, verify_all
from .diagram import DiagramError, LinkDiagram, linking_matrix, parse_pd
from .laurent import AlgebraError, format_poly
from .modules import ModuleError, generates
from .obstruction import (OBSTRUCTED, ObstructionError, PolynomialSet, assert_slice,
                          check_boundary, check_corollary, exterior, find_twist_parameter,
                          full_scan, scan_verdict)

ERRORS = (DiagramError, AlgebraError, ModuleError, ObstructionError, CatalogError, OSError)


class UsageError(Exception):
    pass


def load_diagram(args) -> LinkDiagram:
    given = [x for x in (args.pd, args.catalog, args.file) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --pd, --catalog, --file")
    if args.pd is not None:
        return parse_pd(args.pd)
    if args.catalog is not None:
        return resolve(args.catalog).diagram
    with open(args.file) as fh:
        return parse_pd(fh.read())


def _slice_provenance(args) -> dict:
    if args.catalog is not None:
        try:
            notes = {s.component: s.provenance for s in resolve(args.catalog).slice_components}
        except CatalogError:
            notes = {}
        return notes
    return {}


def load_polys(spec: Optional[str]) -> PolynomialSet:
    if spec is None:
        return PolynomialSet.unknot()
    if spec.startswith("@") or (os.path.isfile(spec) and spec.lower() != "unknot"):
        with open(spec.lstrip("@")) as fh:
            return PolynomialSet.from_lines(fh)
    return PolynomialSet.parse(spec)


def parse_ids(spec: Optional[str], L: LinkDiagram) -> List[int]:
    if spec is None or spec == "":
        return []
    if spec.strip().lower() == "all":
        return list(L.component_ids)
    try:
        ids = [int(s) for s in spec.replace(" ", "").split(",") if s]
    except ValueError:
        raise UsageError(f"bad component list {spec!r}")
    for i in ids:
        L.check_component(i)
    return ids


def _components(args, L: LinkDiagram) -> List[int]:
    if getattr(args, "component", None) is not None:
        L.check_component(args.component)
        return [args.component]
    return list(L.component_ids)


def _emit(args, obj, text: str):
    if args.json:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


# -- commands --------------------------------------------------------------------------


def cmd_alex(args) -> int:
    L = load_diagram(args)
    ids = _components(args, L)
    rows, lines = [], []
    for i in ids:
        ext = exterior(L, i)
        divs = [format_poly(d) for d in ext.M.divisors()]
        rows.append({"component": i, "delta": format_poly(ext.delta), "divisors": divs})
        head = format_poly(ext.delta) if len(ids) == 1 else f"L{i}: {format_poly(ext.delta)}"
        lines += [head, f"  divisors: [{', '.join(divs)}]"]
    _emit(args, rows if len(rows) > 1 else rows[0], "\n".join(lines))
    return 0


def cmd_obstruct(args) -> int:
    L = load_diagram(args)
    D = load_polys(args.against)
    ids = parse_ids(args.assert_slice, L)
    if args.strict and not ids:
        raise UsageError("strict mode: no sliceness assertions given (use --assert-slice)")
    notes = _slice_provenance(args)
    assertions = [assert_slice(L, i, notes.get(i, "user assertion")) for i in ids]
    if args.strict:
        bad = [a.component for a in assertions if not a.usable()]
        if bad:
            raise UsageError(f"strict mode: assertions for {bad} fail the Fox-Milnor check")
    if args.component is not None:
        rep = check_corollary(L, args.component, D, assertions)
        rep.boundary_link_obstructed = (
            check_boundary(L, args.component, assertions).verdict == OBSTRUCTED)
        reports = [rep]
    else:
        reports = full_scan(L, D, assertions)
    verdict = scan_verdict(reports)
    obj = {"verdict": verdict, "against": D.to_json_obj(),
           "reports": [r.to_json_obj() for r in reports]}
    text = "\n".join([r.to_text() for r in reports] + [f"overall: {verdict}"])
    _emit(args, obj, text)
    return 0


def cmd_liftclass(args) -> int:
    L = load_diagram(args)
    if args.exterior is None or args.curve is None:
        raise UsageError("liftclass needs --exterior and --curve")
    L.check_component(args.exterior)
    L.check_component(args.curve)
    if args.exterior == args.curve:
        raise UsageError("--curve must differ from --exterior")
    ext = exterior(L, args.exterior)
    v = ext.lift(args.curve)
    obj = {"exterior": args.exterior, "curve": args.curve,
           "word": str(ext.W.peripheral_words[args.curve]), "class": v.to_json_obj()}
    lines = [f"word: {ext.W.peripheral_words[args.curve]}", f"class: {v}"]
    if args.generates:
        g = generates(ext.M, [v])
        obj["generates"] = g
        lines.append(f"generates: {str(g).lower()}")
    _emit(args, obj, "\n".join(lines))
    return 0


def cmd_lk(args) -> int:
    L = load_diagram(args)
    lk = linking_matrix(L)
    _emit(args, {"linking_matrix": lk}, json.dumps(lk))
    return 0


def cmd_snf(args) -> int:
    L = load_diagram(args)
    ids = _components(args, L)
    rows, lines = [], []
    for i in ids:
        M = exterior(L, i).M
        S = M.snf
        row = {"component": i, "generators": M.generator_count,
               "divisors": [format_poly(d) for d in S.divisors]}
        if args.verify:
            row["verified"] = (S.U @ M.relations @ S.V) == S.D
        rows.append(row)
        line = f"L{i}: {M.generator_count} generators, divisors [{', '.join(row['divisors'])}]"
        if args.verify:
            line += f", U A V = D: {str(row['verified']).lower()}"
        lines.append(line)
    _emit(args, rows if len(rows) > 1 else rows[0], "\n".join(lines))
    return 0


def cmd_catalog(args) -> int:
    if not args.verify:
        _emit(args, list(DEFAULT_LISTING), "\n".join(DEFAULT_LISTING))
        return 0
    results = verify_all()
    ok = all(passed for pins in results.values() for _, passed in pins)
    obj = {name: [{"claim": c, "pass": p} for c, p in pins] for name, pins in results.items()}
    lines = []
    for name, pins in results.items():
        n_ok = sum(p for _, p in pins)
        lines.append(f"{name}: {n_ok}/{len(pins)} pins pass")
        lines += [f"  FAIL {c}" for c, p in pins if not p]
    _emit(args, obj, "\n".join(lines))
    return 0 if ok else 1


def cmd_twist(args) -> int:
    D = load_polys(args.against)
    J = args.knot
    res = find_twist_parameter(lambda m: LmJ(m, J), D, args.m_max)
    text = "\n".join([f"m = {k}: {format_poly(d)}" for k, d in res.table]
                     + [f"smallest admissible m: {res.m}"])
    _emit(args, res.to_json_obj(), text)
    return 0


# -- argument parsing ----------------------------------------------------------------------


def _inputs(p):
    p.add_argument("--pd", help="inline PD code, e.g. 'X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)'")
    p.add_argument("--catalog", help="catalog name: fig1, chain:4, LmJ:3:trefoil, 9_46, ...")
    p.add_argument("--file", help="file holding a PD code or a JSON diagram")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linkconc",
                                 description="Alexander modules, lift classes and concordance obstructions")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, inputs=True):
        p = sub.add_parser(name, help=help_)
        if inputs:
            _inputs(p)
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(fn=fn)
        return p

    p = add("alex", cmd_alex, "Alexander polynomial and module divisors")
    p.add_argument("--component", type=int)
    p = add("obstruct", cmd_obstruct, "run the concordance obstruction")
    p.add_argument("--component", type=int, help="check one component instead of all")
    p.add_argument("--against", help="'unknot', an inline polynomial list, or a file (one per line)")
    p.add_argument("--assert-slice", dest="assert_slice", help="'1,2' or 'all'")
    p.add_argument("--strict", action="store_true", help="reject runs without usable assertions")
    p = add("liftclass", cmd_liftclass, "class of a lift in an Alexander module")
    p.add_argument("--exterior", type=int)
    p.add_argument("--curve", type=int)
    p.add_argument("--generates", action="store_true", help="also test whether the class generates")
    add("lk", cmd_lk, "linking matrix")
    p = add("snf", cmd_snf, "Smith normal form of the Alexander presentation")
    p.add_argument("--component", type=int)
    p.add_argument("--verify", action="store_true", help="check U A V = D")
    p = add("catalog", cmd_catalog, "list catalog entries or re-run their pins", inputs=False)
    p.add_argument("--verify", action="store_true")
    p = add("twist", cmd_twist, "smallest admissible twist parameter of the L(m, J) family",
            inputs=False)
    p.add_argument("--knot", default="unknot", help="the knot J tied into the family")
    p.add_argument("--against", help="'unknot', an inline polynomial list, or a file")
    p.add_argument("--m-max", dest="m_max", type=int, default=25)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
