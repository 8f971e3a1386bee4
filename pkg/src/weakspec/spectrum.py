"""Notion table and verdicts derived from budget fronts."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from . import energy as en
from .errors import InputError, ParseError
from .game import solve
from .spectroscopy import GameVariant, SpectroscopyGame

ALIASES = {
    "stability-respecting-branching-bisimulation": "srbb",
    "branching-bisimulation": "bb",
    "eta-bisimulation": "etab",
    "eta-simulation": "etas",
    "stability-respecting-delay-bisimulation": "srdb",
    "delay-bisimulation": "db",
    "weak-bisimulation": "wb",
    "stable-bisimulation": "sb",
    "2-nested-simulation": "2s",
    "readiness-simulation": "rs",
    "weak-simulation": "ws",
    "1s": "ws",
    "contrasimulation": "c",
    "impossible-futures": "if",
    "readiness": "r",
    "failures": "f",
    "stable-readiness": "sr",
    "stable-failures": "sf",
    "weak-trace": "t",
    "trace": "t",
}


@dataclass(frozen=True)
class Notion:
    name: str
    coordinate: tuple
    finer_than: tuple = ()
    description: str = ""


def parse_table(text: str, source="<notions>") -> list:
    notions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        fields = body.split()
        if not fields:
            continue
        if len(fields) != 3:
            raise ParseError("expected 'name coordinate finer-than'", lineno, source=source)
        name, coord, finer = fields
        try:
            coordinate = en.parse_energy(coord)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, source=source) from None
        lower = () if finer == "-" else tuple(finer.split(","))
        notions.append(Notion(name, coordinate, lower, comment.strip()))
    names = {n.name for n in notions}
    for n in notions:
        for m in n.finer_than:
            if m not in names:
                raise InputError(f"{source}: notion {n.name!r} refers to unknown notion {m!r}")
    return notions


@lru_cache(maxsize=None)
def _builtin():
    text = resources.files(__package__).joinpath("notions.txt").read_text(encoding="utf-8")
    return tuple(parse_table(text, "notions.txt"))


def builtin_table() -> list:
    return list(_builtin())


def lookup(name: str, table=None) -> Notion:
    table = builtin_table() if table is None else table
    key = ALIASES.get(name.lower(), name)
    for n in table:
        if n.name == key or n.name.lower() == key.lower():
            return n
    raise InputError(f"unknown notion {name!r}; known: {', '.join(n.name for n in table)}")


def coarser_closure(table) -> dict:
    """Map each notion name to the names it is (transitively) strictly finer than."""
    by_name = {n.name: n for n in table}
    out = {}

    def visit(name):
        if name not in out:
            acc = set()
            for m in by_name[name].finer_than if name in by_name else ():
                acc.add(m)
                acc |= visit(m)
            out[name] = acc
        return out[name]

    for n in table:
        visit(n.name)
    return out


@dataclass
class Verdict:
    """Per notion: is the left process preordered below the right set?"""

    preordered: dict
    converse: dict | None = None
    table: list = field(default_factory=builtin_table, repr=False)

    @property
    def equivalent(self) -> dict | None:
        if self.converse is None:
            return None
        return {k: v and self.converse[k] for k, v in self.preordered.items()}


def verdicts(front, table=None, converse_front=None) -> Verdict:
    """Notion N preorders iff no minimal budget lies below its coordinate."""
    table = builtin_table() if table is None else table
    minima = tuple(front)
    pre = {n.name: not en.dominated(minima, n.coordinate) for n in table}
    conv = None
    if converse_front is not None:
        cm = tuple(converse_front)
        conv = {n.name: not en.dominated(cm, n.coordinate) for n in table}
    return Verdict(pre, conv, list(table))


def frontier(v: Verdict, which: str = "preordered"):
    """``(finest preserved, coarsest violated)`` notion names."""
    holds = v.preordered if which == "preordered" else getattr(v, which)
    # order edges come from the full table so that sub-tables keep transitivity
    below = coarser_closure({**{n.name: n for n in builtin_table()}, **{n.name: n for n in v.table}}.values())
    names = [n.name for n in v.table]
    kept = [n for n in names if holds[n]]
    broken = [n for n in names if not holds[n]]
    finest = [n for n in kept if not any(n in below[m] for m in kept)]
    coarsest = [n for n in broken if not any(m in below[n] for m in broken)]
    return finest, coarsest


# -- convenience driver ----------------------------------------------------------


@dataclass
class PairResult:
    game: SpectroscopyGame
    winmap: object
    left: str
    right: str
    front: tuple  # minimal attacker budgets for (left, {right})_a
    converse_front: tuple  # for (right, {left})_a

    def verdict(self, table=None) -> Verdict:
        return verdicts(self.front, table, self.converse_front)


def compare(l, left, right, variant=GameVariant.FULL) -> PairResult:
    """Solve both directions of a process pair in one game."""
    game = SpectroscopyGame(l, variant)
    r1 = game.root(left, [right])
    r2 = game.root(right, [left])
    wm = solve(game.graph, [r1, r2])
    return PairResult(game, wm, l.names[r1.p], l.names[r2.p], wm.minima(r1), wm.minima(r2))
