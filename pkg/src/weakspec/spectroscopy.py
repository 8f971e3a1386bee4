"""Spectroscopy game positions and move generation over an :class:`Lts`.

Four variants are layered: ``DELAY`` (observations, conjunctions, clauses),
``STABILITY`` (adds stable conjunctions), ``FULL`` (adds branching
conjunctions with an ex-ante split ``Q \\ Q_alpha`` / ``Q_alpha``), and
``SIMPLIFIED`` (stable layer plus the linear out-degree branching moves).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

from . import energy as en
from .energy import decrement, min_select
from .game import GameGraph
from .lts import TAU, Lts


class GameVariant(enum.Enum):
    DELAY = "delay"
    STABILITY = "stability"
    FULL = "full"
    SIMPLIFIED = "simplified"


# -- positions ------------------------------------------------------------------


@dataclass(frozen=True)
class AttackerImmediate:
    p: int
    Q: frozenset


@dataclass(frozen=True)
class AttackerDelayed:
    p: int
    Q: frozenset


@dataclass(frozen=True)
class AttackerClause:
    p: int
    q: int


@dataclass(frozen=True)
class DefenderConj:
    p: int
    Q: frozenset


@dataclass(frozen=True)
class DefenderStable:
    p: int
    Q: frozenset


@dataclass(frozen=True)
class DefenderBranch:
    p: int
    action: str
    p2: int
    Q: frozenset  # already excludes Q_alpha
    Q_alpha: frozenset


@dataclass(frozen=True)
class AttackerBranch:
    p: int
    Q: frozenset


@dataclass(frozen=True)
class DefenderBranchSimple:
    p: int
    action: str
    p2: int
    Q: frozenset


@dataclass(frozen=True)
class AttackerBranchClause:
    p: int
    action: str
    p2: int
    q: int


DEFENDER_KINDS = (DefenderConj, DefenderStable, DefenderBranch, DefenderBranchSimple)


def is_defender(pos) -> bool:
    return isinstance(pos, DEFENDER_KINDS)


# -- weights --------------------------------------------------------------------

ZERO = en.NO_UPDATE
OBSERVATION = decrement(1)
EARLY_CONJ = decrement(5)
CONJ_ANSWER = decrement(3)
STABLE_ANSWER = decrement(4)
# With no stable q left the defender cannot answer, yet the formula still
# pays for its stable conjunction; charge it on the way in.
EMPTY_STABLE_CONJ = decrement(4)
POSITIVE_CLAUSE = (min_select(1, 6),) + (0,) * 7
NEGATIVE_CLAUSE = (min_select(1, 7),) + (0,) * 6 + (-1,)
BRANCH_ANSWER = decrement(2, 3)
BRANCH_OBSERVATION = (min_select(1, 6), -1, -1, 0, 0, 0, 0, 0)
BRANCH_ACCOUNTING = decrement(1)
SIMPLE_BRANCH_OBSERVATION = POSITIVE_CLAUSE
EARLY_BRANCH_ACCOUNTING = decrement(1, 5)
EARLY_BRANCH_FINISHING = decrement(1)
LATE_BRANCH_ACCOUNTING = decrement(1, 3)


def nonempty_subsets(Q):
    items = sorted(Q)
    for k in range(1, len(items) + 1):
        for c in combinations(items, k):
            yield frozenset(c)


class SpectroscopyGame:
    """Successor generator for one LTS and one variant."""

    def __init__(self, l: Lts, variant: GameVariant = GameVariant.FULL):
        self.l = l
        self.variant = GameVariant(variant)
        self.graph = GameGraph(self.successors, is_defender, self.describe)

    @property
    def stable_layer(self):
        return self.variant is not GameVariant.DELAY

    def successors(self, pos):
        l = self.l
        v = self.variant
        if isinstance(pos, AttackerImmediate):
            p, Q = pos.p, pos.Q
            out = [(ZERO, AttackerDelayed(p, l.tau_closure(Q)))]
            if Q:
                out.append((EARLY_CONJ, DefenderConj(p, Q)))
            else:
                out.append((ZERO, DefenderConj(p, Q)))
            return out
        if isinstance(pos, AttackerDelayed):
            p, Q = pos.p, pos.Q
            out = []
            for a, p2 in l.outgoing(p):
                if a == TAU:
                    if p2 != p:
                        out.append((ZERO, AttackerDelayed(p2, Q)))
                else:
                    out.append((OBSERVATION, AttackerImmediate(p2, l.step_image(Q, a))))
            out.append((ZERO, DefenderConj(p, Q)))
            if self.stable_layer and l.is_stable(p):
                stable = frozenset(q for q in Q if l.is_stable(q))
                out.append((ZERO if stable else EMPTY_STABLE_CONJ, DefenderStable(p, stable)))
            if v is GameVariant.FULL:
                subsets = list(nonempty_subsets(Q))
                for a, p2 in l.outgoing(p):
                    for Qa in subsets:
                        out.append((ZERO, DefenderBranch(p, a, p2, Q - Qa, Qa)))
            elif v is GameVariant.SIMPLIFIED and Q:
                for a, p2 in l.outgoing(p):
                    out.append((ZERO, DefenderBranchSimple(p, a, p2, Q)))
            return out
        if isinstance(pos, AttackerClause):
            p, q = pos.p, pos.q
            out = [(POSITIVE_CLAUSE, AttackerDelayed(p, l.tau_closure([q])))]
            if p != q:
                out.append((NEGATIVE_CLAUSE, AttackerDelayed(q, l.tau_closure([p]))))
            return out
        if isinstance(pos, DefenderConj):
            return [(CONJ_ANSWER, AttackerClause(pos.p, q)) for q in sorted(pos.Q)]
        if isinstance(pos, DefenderStable):
            return [(STABLE_ANSWER, AttackerClause(pos.p, q)) for q in sorted(pos.Q)]
        if isinstance(pos, DefenderBranch):
            out = [(BRANCH_ANSWER, AttackerClause(pos.p, q)) for q in sorted(pos.Q)]
            target = l.soft_step_image(pos.Q_alpha, pos.action)
            out.append((BRANCH_OBSERVATION, AttackerBranch(pos.p2, target)))
            return out
        if isinstance(pos, AttackerBranch):
            if v is GameVariant.FULL:
                return [(BRANCH_ACCOUNTING, AttackerImmediate(pos.p, pos.Q))]
            p, Q = pos.p, pos.Q
            if Q:
                out = [(EARLY_BRANCH_ACCOUNTING, DefenderConj(p, Q))]
            else:
                out = [(EARLY_BRANCH_FINISHING, DefenderConj(p, Q))]
            out.append((LATE_BRANCH_ACCOUNTING, AttackerDelayed(p, l.tau_closure(Q))))
            return out
        if isinstance(pos, DefenderBranchSimple):
            return [
                (BRANCH_ANSWER, AttackerBranchClause(pos.p, pos.action, pos.p2, q)) for q in sorted(pos.Q)
            ]
        if isinstance(pos, AttackerBranchClause):
            target = l.soft_step_image([pos.q], pos.action)
            return [
                (SIMPLE_BRANCH_OBSERVATION, AttackerBranch(pos.p2, target)),
                (ZERO, AttackerClause(pos.p, pos.q)),
            ]
        raise TypeError(f"unknown position {pos!r}")

    # -- rendering ---------------------------------------------------------------

    def describe(self, pos) -> str:
        n = self.l.names
        s = self.l.render_set
        if isinstance(pos, AttackerImmediate):
            return f"({n[pos.p]},{s(pos.Q)})_a"
        if isinstance(pos, AttackerDelayed):
            return f"({n[pos.p]},{s(pos.Q)})_a^eps"
        if isinstance(pos, AttackerClause):
            return f"({n[pos.p]},{n[pos.q]})_a^and"
        if isinstance(pos, DefenderConj):
            return f"({n[pos.p]},{s(pos.Q)})_d"
        if isinstance(pos, DefenderStable):
            return f"({n[pos.p]},{s(pos.Q)})_d^s"
        if isinstance(pos, DefenderBranch):
            return f"({n[pos.p]},{pos.action},{n[pos.p2]},{s(pos.Q)},{s(pos.Q_alpha)})_d^eta"
        if isinstance(pos, AttackerBranch):
            return f"({n[pos.p]},{s(pos.Q)})_a^eta"
        if isinstance(pos, DefenderBranchSimple):
            return f"({n[pos.p]},{pos.action},{n[pos.p2]},{s(pos.Q)})_d^eta"
        if isinstance(pos, AttackerBranchClause):
            return f"({n[pos.p]},{pos.action},{n[pos.p2]},{n[pos.q]})_a^eta"
        return repr(pos)

    def root(self, p, Q) -> AttackerImmediate:
        return AttackerImmediate(self.l.proc(p), self.l.procs(Q))


def build(l: Lts, p, Q, variant: GameVariant = GameVariant.FULL):
    """Game over ``l`` for the given variant, plus its root ``(p, Q)_a``."""
    game = SpectroscopyGame(l, variant)
    return game, game.root(p, Q)
