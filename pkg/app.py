'''
Description: SuperCtrl command line.
    check <file>                      decide a system from a spec file
    bracket-table <name|file>         nonzero brackets of an algebra
    simulate <file> <schedule> <out>  integrate a schedule and write a CSV trajectory
    verify-catalog [--only <name>]    recompute every printed catalog claim
    export <name> <out.json>          write a catalog system as a spec file
Each command prints a human summary followed by a fenced JSON block.
'''
import argparse
import json
import os
import sys
from typing import Any, Dict, List, Optional, TextIO

from CATALOG.Catalog import load, verify_catalog
from CATALOG.SpecFile import dump, export_entry, load_schedule, load_spec
from COMMON.Config import Settings
from COMMON.Description import EXIT_CODES, EXIT_INPUT_ERROR, EXIT_OK, STATUS_PASS
from COMMON.Errors import SpecFileError, SuperCtrlError
from CONTROL.Flows import simulate
from CONTROL.Rank import decide
from LSA.Algebra import LieSuperalgebra
from SUPERMAT.SuperMatrix import SuperMatrix
from logger.log import logger


def _machine_block(payload: Dict[str, Any], out: TextIO) -> None:
    out.write("```json\n")
    out.write(json.dumps(payload, sort_keys=True, indent=2))
    out.write("\n```\n")


def _dim(d) -> str:
    return f"({d[0]}|{d[1]})"


def _fail(exc: BaseException, err: TextIO) -> int:
    logger.debug("command failed", exc_info=exc)
    err.write(f"error: {exc}\n")
    return EXIT_INPUT_ERROR


#========[ COMMANDS ]================================================================
def cmd_check(path: str, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        loaded = load_spec(path)
        verdict = decide(loaded.system, loaded.options.p_cap)
    except (SuperCtrlError, OSError) as exc:
        return _fail(exc, err)
    sys_spec = loaded.system
    out.write(f"system {sys_spec.name} on {sys_spec.algebra.name} {_dim(sys_spec.algebra.dim)}\n")
    out.write(f"  LSARC     : {'holds' if verdict.lsarc_holds else 'fails'}, span {_dim(verdict.lsarc_dim)}\n")
    out.write(f"  ad-rank   : {'holds' if verdict.ad_rank_holds else 'fails'}, span {_dim(verdict.ad_rank_dim)}"
              f" with p = {verdict.p}\n")
    if verdict.ad_rank_witnesses:
        out.write(f"  outside   : {', '.join(verdict.ad_rank_witnesses)}\n")
    out.write(f"  hull      : {_dim(verdict.hull_dim)} after {verdict.hull_trace.terminated_at} steps\n")
    out.write(f"{verdict.classification}: {verdict.annotation}\n")
    _machine_block(verdict.to_report(), out)
    return EXIT_CODES[verdict.classification]


def _algebra_from(ref: str) -> LieSuperalgebra:
    if os.path.isfile(ref):
        return load_spec(ref).system.algebra
    return load(ref).algebra


def cmd_bracket_table(ref: str, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        g = _algebra_from(ref)
    except (SuperCtrlError, OSError) as exc:
        return _fail(exc, err)
    rows = []
    for i, j, value in g.bracket_table():
        left, right = g.names[i], g.names[j]
        out.write(f"[{left}, {right}] = {value}\n")
        rows.append({"left": left, "right": right, "value": str(value)})
    if not rows:
        out.write(f"{g.name}: all brackets vanish\n")
    _machine_block({"algebra": g.name, "dim": list(g.dim), "table": rows}, out)
    return EXIT_OK


def cmd_simulate(path: str, schedule_path: str, out_path: str, out: Optional[TextIO] = None,
                 err: Optional[TextIO] = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        loaded = load_spec(path)
        L_default = loaded.options.generators
        if L_default is None:
            L_default = Settings.from_env().generators
        schedule, L, start_rows = load_schedule(schedule_path, L_default)
        g = loaded.system.algebra
        if g.realization is None:
            raise SpecFileError("algebra.realization", "simulation needs a matrix realization")
        first = g.realization[0]
        if start_rows is None:
            start = SuperMatrix.identity(first.m, first.n)
        else:
            if len(start_rows) != first.size:
                raise SpecFileError("start", f"expected a {first.size}x{first.size} matrix")
            start = SuperMatrix(first.m, first.n, start_rows)
        trajectory = simulate(loaded.system, start, schedule, L)
        trajectory.write_csv(out_path)
    except (SuperCtrlError, OSError) as exc:
        return _fail(exc, err)
    final = trajectory.final
    out.write(f"simulated {len(schedule.segments)} segments up to t = {schedule.horizon:g} with L = {L}\n")
    out.write(f"trajectory written to {out_path}\n")
    _machine_block({
        "system": loaded.system.name,
        "generators": L,
        "segments": len(schedule.segments),
        "horizon": schedule.horizon,
        "final_body": final.body().tolist(),
        "csv": out_path,
    }, out)
    return EXIT_OK


def cmd_verify_catalog(only: Optional[str] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        report = verify_catalog(only)
    except SuperCtrlError as exc:
        return _fail(exc, err)
    for it in report.items:
        line = f"{it.status:8s} {it.entry:10s} {it.check}"
        if it.status != STATUS_PASS:
            line += f"  ({it.detail})"
        out.write(line + "\n")
    out.write(f"{len(report.items)} checks, {len(report.flagged())} flagged, "
              f"{'ok' if report.ok else 'FAILED'}\n")
    _machine_block({"ok": report.ok, "items": report.as_rows()}, out)
    return EXIT_OK if report.ok else EXIT_INPUT_ERROR


def cmd_export(name: str, out_path: str, system: Optional[str] = None, out: Optional[TextIO] = None,
               err: Optional[TextIO] = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        doc = export_entry(load(name), system)
        dump(doc, out_path)
    except (SuperCtrlError, KeyError, OSError) as exc:
        return _fail(exc, err)
    out.write(f"exported {doc['name']} on {name} to {out_path}\n")
    _machine_block({"system": doc["name"], "algebra": doc["algebra"]["name"], "path": out_path}, out)
    return EXIT_OK


#========[ ENTRY POINT ]=============================================================
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superctrl", description="Controllability of linear systems on matrix Lie supergroups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide LSARC and the super ad-rank condition")
    p.add_argument("file")

    p = sub.add_parser("bracket-table", help="print nonzero brackets of a catalog algebra or spec file")
    p.add_argument("ref")

    p = sub.add_parser("simulate", help="integrate a control schedule")
    p.add_argument("file")
    p.add_argument("schedule")
    p.add_argument("out")

    p = sub.add_parser("verify-catalog", help="recompute every printed catalog claim")
    p.add_argument("--only", default=None)

    p = sub.add_parser("export", help="write a catalog system as a spec file")
    p.add_argument("name")
    p.add_argument("out")
    p.add_argument("--system", default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        return cmd_check(args.file)
    if args.command == "bracket-table":
        return cmd_bracket_table(args.ref)
    if args.command == "simulate":
        return cmd_simulate(args.file, args.schedule, args.out)
    if args.command == "verify-catalog":
        return cmd_verify_catalog(args.only)
    return cmd_export(args.name, args.out, args.system)


if __name__ == "__main__":
    sys.exit(main())
