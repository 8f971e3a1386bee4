"""Distinguishing formulas from attacker strategies, and certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import energy as en
from . import hml
from .game import WinMap
from .hml import TOP, BranchConj, Conj, DelayObs, ImmediateConj, Neg, Obs, Pos, StableConj, immediate
from .lts import Lts
from .spectroscopy import (
    NEGATIVE_CLAUSE,
    OBSERVATION,
    AttackerBranch,
    AttackerClause,
    AttackerDelayed,
    AttackerImmediate,
    DefenderBranch,
    DefenderBranchSimple,
    DefenderConj,
    DefenderStable,
    GameVariant,
    SpectroscopyGame,
)

SIMPLIFIED_CAVEAT = (
    "conjunction counting of the simplified game does not align with formula prices; "
    "only valid for notions whose coordinate has dimension 2 > 0 implying dimensions 3-5 in {0, inf}"
)


def extract(wm: WinMap, game: SpectroscopyGame, pos, e):
    """A strategy formula for a winning ``(pos, e)``.

    The stratum of the result follows the position kind: formulas at
    immediate attacker positions, delayed formulas at delayed positions and
    conjunction defenders, clauses at clause positions.
    """
    return _Extractor(wm, game).run(pos, tuple(e))


class _Extractor:
    def __init__(self, wm, game):
        self.wm = wm
        self.game = game
        self.positions = wm.graph.positions
        self.l = game.l

    def run(self, pos, e):
        i = self.wm.graph.index[pos] if not isinstance(pos, int) else pos
        if not self.wm.wins(i, e):
            raise ValueError(f"attacker does not win {self.game.describe(self.positions[i])} with {en.render(e)}")
        return self.at(i, e)

    def step(self, i, e):
        u, j, r = self.wm.winning_move(i, e)
        return u, j, self.positions[j], r

    def clauses(self, i, e):
        out = []
        for u, j in self.wm.graph.moves(i):
            out.append(self.at(j, en.apply_update(e, u)))
        return out

    def at(self, i, e):
        pos = self.positions[i]
        if isinstance(pos, AttackerImmediate):
            u, j, tgt, r = self.step(i, e)
            if isinstance(tgt, AttackerDelayed):
                return DelayObs(self.at(j, r))
            return immediate(self.at(j, r).clauses)
        if isinstance(pos, AttackerDelayed):
            u, j, tgt, r = self.step(i, e)
            if u == OBSERVATION and isinstance(tgt, AttackerImmediate):
                return Obs(self._observed_action(pos, tgt), self.at(j, r))
            return self.at(j, r)
        if isinstance(pos, AttackerClause):
            u, j, tgt, r = self.step(i, e)
            chi = self.at(j, r)
            return Neg(chi) if u == NEGATIVE_CLAUSE else Pos(chi)
        if isinstance(pos, DefenderConj):
            return Conj(self.clauses(i, e))
        if isinstance(pos, DefenderStable):
            return StableConj(self.clauses(i, e))
        if isinstance(pos, DefenderBranch):
            clauses, phi = [], None
            for u, j in self.wm.graph.moves(i):
                sub = self.at(j, en.apply_update(e, u))
                if isinstance(self.positions[j], AttackerBranch):
                    phi = sub
                else:
                    clauses.append(sub)
            return BranchConj(pos.action, phi, clauses)
        if isinstance(pos, AttackerBranch):
            u, j, tgt, r = self.step(i, e)
            sub = self.at(j, r)
            if isinstance(tgt, AttackerImmediate):
                return sub
            if isinstance(tgt, AttackerDelayed):
                return DelayObs(sub)
            return immediate(sub.clauses)
        if isinstance(pos, DefenderBranchSimple):
            continuations, clauses = [], []
            for u, j in self.wm.graph.moves(i):
                e_q = en.apply_update(e, u)
                u2, k, tgt, r = self.step(j, e_q)
                sub = self.at(k, r)
                if isinstance(tgt, AttackerBranch):
                    continuations.append(sub)
                else:
                    clauses.append(sub)
            return BranchConj(pos.action, merge(continuations), clauses)
        raise TypeError(f"cannot extract at {pos!r}")

    def _observed_action(self, pos, tgt):
        l = self.l
        for a, p2 in l.outgoing(pos.p):
            if p2 == tgt.p and a in l.visible_actions and l.step_image(pos.Q, a) == tgt.Q:
                return a
        raise AssertionError("observation move without a matching transition")


def flatten(formulas):
    out = []
    for f in formulas:
        if isinstance(f, ImmediateConj):
            out.extend(f.clauses)
        elif isinstance(f, DelayObs):
            out.append(Pos(f.chi))
        elif f != TOP:
            raise TypeError(f"cannot flatten {f!r}")
    return out


def merge(formulas):
    """Combine branch continuations into one formula (delayed if all are)."""
    if all(isinstance(f, DelayObs) for f in formulas if f != TOP):
        return DelayObs(Conj(flatten(formulas)))
    return immediate(flatten(formulas))


# -- certificates ---------------------------------------------------------------


@dataclass
class Certificate:
    formula: object
    p: str
    Q: tuple
    budget: tuple
    defeats: list = field(default_factory=list)
    variant: str = GameVariant.FULL.value
    notes: list = field(default_factory=list)

    @property
    def position(self) -> str:
        return f"({self.p},{{{','.join(self.Q)}}})_a"

    def to_dict(self):
        return {
            "formula": hml.render(self.formula),
            "position": self.position,
            "budget": en.render(self.budget),
            "price": en.render(hml.price(self.formula)),
            "defeats": list(self.defeats),
            "variant": self.variant,
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"formula:  {d['formula']}", f"position: {d['position']}", f"budget:   {d['budget']}",
                 f"price:    {d['price']}", f"defeats:  {', '.join(d['defeats']) or '-'}"]
        lines += [f"note:     {n}" for n in d["notes"]]
        return "\n".join(lines)


def certificate(wm: WinMap, game: SpectroscopyGame, p, Q, budget, defeats=()) -> Certificate:
    l = game.l
    root = game.root(p, Q)
    formula = extract(wm, game, root, budget)
    notes = [SIMPLIFIED_CAVEAT] if game.variant is GameVariant.SIMPLIFIED else []
    return Certificate(
        formula=formula,
        p=l.names[root.p],
        Q=tuple(l.names[q] for q in sorted(root.Q)),
        budget=tuple(budget),
        defeats=list(defeats),
        variant=game.variant.value,
        notes=notes,
    )


def check_certificate(c: Certificate, l: Lts) -> bool:
    """Re-verify a certificate using only formula semantics and pricing."""
    return en.leq(hml.price(c.formula), c.budget) and hml.distinguishes(c.formula, l, c.p, c.Q)
