"""Command-line driver.

Exit status: 0 when the query holds, 1 when it does not, 2 on usage or input
errors.  ``--format structured`` prints one JSON document per run.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import __version__
from . import energy as en
from . import hml, oracle, spectrum
from .ccs import expand_lts, parse_ccs
from .errors import InputError, StateSpaceExceeded
from .game import solve
from .lts import load_transition_list, preprocess
from .spectroscopy import GameVariant, SpectroscopyGame
from .strategy import certificate, check_certificate

SCHEMA = "weakspec-report/1"
OK, NOT_OK, USAGE = 0, 1, 2
GRID = (0, 1, 2, en.INF)


def _json_energy(e):
    return ["inf" if c == en.INF else c for c in e]


def admissible_for_simplified(coordinate) -> bool:
    """Coordinates whose verdicts the simplified game decides faithfully."""
    if coordinate[1] > 0:
        return all(coordinate[i] in (0, en.INF) for i in (2, 3, 4))
    return True


# -- input -------------------------------------------------------------------------


def load_system(path: str, fmt: str = "auto", max_states: int = 10_000, preprocessing=()):
    """Read a CCS program or transition list into an :class:`Lts`."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    if fmt == "auto":
        fmt = "ccs" if path.endswith(".ccs") else "transition-list"
    if fmt == "ccs":
        try:
            prog = parse_ccs(text)
        except InputError as exc:
            raise InputError(f"{path}: {exc}") from None
        l, _ = expand_lts(prog, list(prog.definitions), bound=max_states)
    else:
        l = load_transition_list(text, source=path)
        if len(l) > max_states:
            raise StateSpaceExceeded(f"state-space bound exceeded ({max_states} states)")
    flags = set(preprocessing)
    return preprocess(l, completion="completion" in flags, divergence="divergence" in flags)


def _preprocess_flags(value: str):
    flags = [f.strip() for f in value.split(",") if f.strip()]
    for f in flags:
        if f not in ("divergence", "completion"):
            raise argparse.ArgumentTypeError(f"unknown preprocessing step {f!r}")
    return tuple(flags)


# -- reports -----------------------------------------------------------------------


def _certificates(result: spectrum.PairResult, table, direction: str):
    front = result.front if direction == "left" else result.converse_front
    p, q = (result.left, result.right) if direction == "left" else (result.right, result.left)
    verdict = spectrum.verdicts(front, table)
    _, coarsest = spectrum.frontier(verdict)
    by_name = {n.name: n for n in table}
    certs = []
    for name in coarsest:
        budget = next(b for b in front if en.leq(b, by_name[name].coordinate))
        defeats = [n.name for n in table if en.leq(budget, n.coordinate)]
        c = certificate(result.winmap, result.game, p, [q], budget, defeats)
        certs.append((name, c, check_certificate(c, result.game.l)))
    return certs


def cmd_check(args, out):
    l = load_system(args.input, args.input_format, args.max_states, args.preprocess)
    variant = GameVariant(args.variant)
    table = spectrum.builtin_table()
    if args.notion:
        notion = spectrum.lookup(args.notion, table)
        if variant is GameVariant.SIMPLIFIED and not admissible_for_simplified(notion.coordinate):
            raise InputError(f"the simplified game cannot decide {notion.name}; use --variant full")
        table_used = [notion]
    else:
        table_used = [n for n in table if variant is not GameVariant.SIMPLIFIED
                      or admissible_for_simplified(n.coordinate)]
    result = spectrum.compare(l, args.left, args.right, variant)
    v = result.verdict(table_used)
    finest, coarsest = spectrum.frontier(v)
    cfinest, ccoarsest = spectrum.frontier(v, "converse")
    if args.notion:
        holds = v.equivalent[notion.name] if args.equivalence else v.preordered[notion.name]
    else:
        holds = all(v.equivalent.values()) if args.equivalence else all(v.preordered.values())
    certs = []
    if args.certificates:
        certs = _certificates(result, table_used, "left")
        if args.equivalence:
            certs += _certificates(result, table_used, "right")

    if args.format == "structured":
        doc = {
            "schema": SCHEMA,
            "command": "check",
            "left": result.left,
            "right": result.right,
            "variant": variant.value,
            "preprocess": sorted(args.preprocess),
            "notion": notion.name if args.notion else None,
            "equivalence": bool(args.equivalence),
            "holds": holds,
            "budgets": {
                "left_right": [_json_energy(b) for b in result.front],
                "right_left": [_json_energy(b) for b in result.converse_front],
            },
            "notions": [
                {
                    "name": n.name,
                    "coordinate": _json_energy(n.coordinate),
                    "left_right": v.preordered[n.name],
                    "right_left": v.converse[n.name],
                    "equivalent": v.equivalent[n.name],
                }
                for n in table_used
            ],
            "frontier": {
                "left_right": {"finest_preserved": finest, "coarsest_violated": coarsest},
                "right_left": {"finest_preserved": cfinest, "coarsest_violated": ccoarsest},
            },
            "certificates": [dict(c.to_dict(), notion=name, verified=ok) for name, c, ok in certs],
        }
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        L, R = result.left, result.right
        w = max([len("notion")] + [len(n.name) for n in table_used])
        lines = [f"variant: {variant.value}"]
        for label, front in ((f"{L} <= {R}", result.front), (f"{R} <= {L}", result.converse_front)):
            lines.append(f"minimal distinguishing budgets for {label}:")
            lines += [f"  {en.render(b)}" for b in front] or ["  none"]
        lines.append("")
        lines.append(f"{'notion':<{w}}  {'coordinate':<19}  {L}<={R}  {R}<={L}  equivalent")
        for n in table_used:
            yn = lambda b: "yes" if b else "no"  # noqa: E731
            lines.append(
                f"{n.name:<{w}}  {en.render(n.coordinate):<19}  {yn(v.preordered[n.name]):<{len(L + R) + 2}}  "
                f"{yn(v.converse[n.name]):<{len(L + R) + 2}}  {yn(v.equivalent[n.name])}"
            )
        lines.append("")
        lines.append(f"{L} <= {R}: finest preserved: {', '.join(finest) or '-'}; "
                     f"coarsest violated: {', '.join(coarsest) or '-'}")
        lines.append(f"{R} <= {L}: finest preserved: {', '.join(cfinest) or '-'}; "
                     f"coarsest violated: {', '.join(ccoarsest) or '-'}")
        for name, c, ok in certs:
            lines.append("")
            lines.append(f"certificate against {name} ({'verified' if ok else 'NOT VERIFIED'}):")
            lines += ["  " + s for s in c.to_text().splitlines()]
        lines.append("")
        lines.append(f"result: {'holds' if holds else 'does not hold'}")
        out.write("\n".join(lines) + "\n")
    return OK if holds else NOT_OK


def cmd_budgets(args, out):
    l = load_system(args.input, args.input_format, args.max_states, args.preprocess)
    variant = GameVariant(args.variant)
    game = SpectroscopyGame(l, variant)
    root = game.root(args.left, [args.right])
    wm = solve(game.graph, [root])
    front = wm.minima(root)
    if args.format == "structured":
        doc = {
            "schema": SCHEMA,
            "command": "budgets",
            "position": game.describe(root),
            "variant": variant.value,
            "budgets": [_json_energy(b) for b in front],
        }
        if args.dump:
            doc["positions"] = [
                {
                    "kind": "defender" if wm.graph.defender[i] else "attacker",
                    "position": game.describe(wm.graph.positions[i]),
                    "budgets": [_json_energy(b) for b in wm.fronts[i]],
                }
                for i in wm.reachable
            ]
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(f"{game.describe(root)} ({variant.value})\n")
        out.write("".join(f"  {en.render(b)}\n" for b in front) or "  none\n")
        if args.dump:
            out.write(wm.dump() + "\n")
    return OK


def cmd_formula_price(args, out):
    f = hml.parse_formula(args.formula)
    price = hml.price(f)
    if args.format == "structured":
        doc = {"schema": SCHEMA, "command": "formula-price", "formula": hml.render(f),
               "price": _json_energy(price)}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(f"{hml.render(f)}\n{en.render(price)}\n")
    return OK


def cmd_parse(args, out):
    l = load_system(args.input, args.input_format, args.max_states, args.preprocess)
    if args.format == "structured":
        doc = {
            "schema": SCHEMA,
            "command": "parse",
            "processes": list(l.names),
            "transitions": [[l.names[s], a, l.names[t]] for s, a, t in sorted(l.transitions)],
        }
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(l.to_text())
    return OK


def verify_pair(l, p, q, variant=GameVariant.FULL, res=None):
    """Mismatches between game and oracle for ``(p, {q})`` on the grid {0,1,2,inf}^8."""
    res = res or oracle.explore(l)
    game = SpectroscopyGame(l, variant)
    root = game.root(p, [q])
    wm = solve(game.graph, [root])
    gfront, ofront = wm.minima(root), res.front(p, [q])
    bad = []
    for e in itertools.product(GRID, repeat=en.DIM):
        if en.dominated(gfront, e) != en.dominated(ofront, e):
            bad.append(e)
    return gfront, ofront, bad


def cmd_verify(args, out):
    l = load_system(args.input, args.input_format, args.max_states, args.preprocess)
    res = oracle.explore(l)
    pairs = [(args.left, args.right), (args.right, args.left)]
    report = []
    for p, q in pairs:
        gfront, ofront, bad = verify_pair(l, p, q, GameVariant.FULL, res)
        report.append((p, q, gfront, ofront, bad))
    ok = not any(r[4] for r in report)
    if args.format == "structured":
        doc = {
            "schema": SCHEMA,
            "command": "verify",
            "agree": ok,
            "pairs": [
                {"left": p, "right": q, "game": [_json_energy(b) for b in g],
                 "oracle": [_json_energy(b) for b in o], "grid_mismatches": len(bad)}
                for p, q, g, o, bad in report
            ],
        }
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for p, q, g, o, bad in report:
            out.write(f"{p} <= {q}: game {' '.join(map(en.render, g)) or '-'}; "
                      f"oracle {' '.join(map(en.render, o)) or '-'}; grid mismatches {len(bad)}\n")
        out.write("agree\n" if ok else "MISMATCH\n")
    return OK if ok else NOT_OK


# -- argument parsing -------------------------------------------------------------


def _add_input(sp, pair=True):
    sp.add_argument("input", help="CCS program (.ccs) or transition list")
    if pair:
        sp.add_argument("left", nargs="?", help="left process")
        sp.add_argument("right", nargs="?", help="right process")
        sp.add_argument("--left", dest="left_opt", metavar="P")
        sp.add_argument("--right", dest="right_opt", metavar="Q")
    sp.add_argument("--input-format", choices=("auto", "ccs", "transition-list"), default="auto")
    sp.add_argument("--preprocess", type=_preprocess_flags, default=(),
                    metavar="STEPS", help="comma-separated: divergence, completion")
    sp.add_argument("--max-states", type=int, default=10_000, metavar="N")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weakspec", description="Weak equivalence spectroscopy.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--format", choices=("human", "structured"), default="human")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="decide the spectrum or a single notion")
    _add_input(sp)
    sp.add_argument("--notion", metavar="NAME")
    sp.add_argument("--equivalence", action="store_true", help="require both directions")
    sp.add_argument("--variant", choices=[v.value for v in GameVariant], default="full")
    sp.add_argument("--certificates", action="store_true")
    sp.set_defaults(run=cmd_check)

    sp = sub.add_parser("budgets", help="minimal attacker budgets at (left,{right})_a")
    _add_input(sp)
    sp.add_argument("--variant", choices=[v.value for v in GameVariant], default="full")
    sp.add_argument("--dump", action="store_true", help="print every solved position")
    sp.set_defaults(run=cmd_budgets)

    sp = sub.add_parser("formula-price", help="price a formula")
    sp.add_argument("formula")
    sp.set_defaults(run=cmd_formula_price)

    sp = sub.add_parser("parse", help="print the transition system")
    _add_input(sp, pair=False)
    sp.set_defaults(run=cmd_parse)

    sp = sub.add_parser("verify", help="cross-check game budgets with the formula oracle")
    _add_input(sp)
    sp.set_defaults(run=cmd_verify)

    for name in ("check", "budgets", "formula-price", "parse", "verify"):
        sub.choices[name].add_argument("--format", choices=("human", "structured"),
                                       default=argparse.SUPPRESS)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if hasattr(args, "left_opt"):
        args.left = args.left_opt or args.left
        args.right = args.right_opt or args.right
        if not args.left or not args.right:
            err.write("error: two process names are required\n")
            return USAGE
    try:
        return args.run(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return USAGE
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
