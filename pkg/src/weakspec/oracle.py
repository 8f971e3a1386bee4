"""Brute-force distinguishing-formula oracle, independent of the game.

Formulas are generated bottom-up per syntactic stratum and grouped by their
denotation (a bitmask over processes).  For each denotation only the
Pareto-minimal prices are kept, each with one witness formula.  Since every
pricing rule is monotone in the prices of subformulas, a formula with a
dominated price can always be swapped for the cheaper one of equal meaning,
so the pruning loses no distinguishing power.  Iterating to a fixpoint thus
yields, for every ``(p, Q)``, the exact minimal prices of formulas that
distinguish ``p`` from ``Q``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import energy as en
from .errors import StateSpaceExceeded
from .hml import (
    TOP,
    BranchConj,
    Conj,
    DelayObs,
    ImmediateConj,
    Neg,
    Obs,
    Pos,
    StableConj,
    neg_clause_price,
    pos_clause_price,
)
from .lts import TAU, Lts

MAX_STATES = 8

E1, E2, E3, E4, E5 = (en.unit(i) for i in (1, 2, 3, 4, 5))


class _Table:
    """Denotation -> antichain of ``(price, witness)``."""

    def __init__(self, cap):
        self.cap = cap
        self.rows: dict[int, list] = {}

    def add(self, mask, price, witness) -> bool:
        if self.cap is not None and not en.leq(price, self.cap):
            return False
        row = self.rows.setdefault(mask, [])
        for p, _ in row:
            if en.leq(p, price):
                return False
        row[:] = [(p, w) for p, w in row if not en.leq(price, p)]
        row.append((price, witness))
        return True

    def items(self):
        return [(m, p, w) for m, row in list(self.rows.items()) for p, w in row]


class _Bits:
    def __init__(self, l: Lts):
        n = len(l)
        self.n = n
        self.all = (1 << n) - 1
        self.stable = sum(1 << p for p in l.stable_processes())
        self.pre = {}
        for a in l.actions:
            self.pre[a] = [sum(1 << s for s in l.pre(a, [t])) for t in range(n)]
        self.pre_eps_one = [sum(1 << s for s in l.pre_eps([t])) for t in range(n)]

    def _lift(self, table, mask):
        out = 0
        t = 0
        while mask:
            if mask & 1:
                out |= table[t]
            mask >>= 1
            t += 1
        return out

    def pre_a(self, a, mask):
        table = self.pre.get(a)
        return self._lift(table, mask) if table else 0

    def pre_eps(self, mask):
        return self._lift(self.pre_eps_one, mask)


@dataclass
class OracleResult:
    l: Lts
    phi: dict  # denotation mask -> [(price, formula)]
    rounds: int

    def entries(self, p, Q):
        pm = 1 << self.l.proc(p)
        qm = sum(1 << q for q in self.l.procs(Q))
        out = []
        for mask, row in self.phi.items():
            if mask & pm and not mask & qm:
                out.extend(row)
        return out

    def front(self, p, Q) -> tuple:
        """Minimal prices of formulas distinguishing ``p`` from ``Q``."""
        return en.minimize(price for price, _ in self.entries(p, Q))

    def formulas(self, p, Q) -> list:
        """One witness per minimal price."""
        best = {}
        for price, f in self.entries(p, Q):
            best.setdefault(price, f)
        return [best[m] for m in self.front(p, Q)]

    def wins(self, p, Q, e) -> bool:
        return en.dominated(self.front(p, Q), e)


def explore(l: Lts, depth: int | None = None, cap=None, max_states: int = MAX_STATES) -> OracleResult:
    """Run the stratified fixpoint (at most ``depth`` rounds, prices ``<= cap``)."""
    if len(l) > max_states:
        raise StateSpaceExceeded(f"oracle is limited to {max_states} states, system has {len(l)}")
    cap = None if cap is None else tuple(cap)
    b = _Bits(l)
    phi, chi, psi, conj = (_Table(cap) for _ in range(4))
    phi.add(b.all, en.ZERO, TOP)
    chi.add(b.all, en.ZERO, Conj(()))
    chi.add(b.stable, E4, StableConj(()))
    visible = l.visible_actions
    branch_actions = tuple(sorted(l.actions))

    rounds = 0
    changed = True
    while changed and (depth is None or rounds < depth):
        changed = False
        rounds += 1
        phis = phi.items()
        conjs = conj.items()
        # chi: observations, conjunctions, stable and branching conjunctions
        for mask, price, f in phis:
            for a in visible:
                changed |= chi.add(b.pre_a(a, mask), en.add(E1, price), Obs(a, f))
        for mask, s, clauses in conjs:
            changed |= chi.add(mask, en.add(E3, s), Conj(clauses))
            changed |= chi.add(mask & b.stable, en.add(E4, s), StableConj(clauses))
        for mask, price, f in phis:
            soft_price = pos_clause_price(en.add(E1, price))
            for a in branch_actions:
                soft = b.pre_a(a, mask) | (mask if a == TAU else 0)
                if not soft:
                    continue
                base = en.add(E2, en.add(E3, soft_price))
                changed |= chi.add(soft, base, BranchConj(a, f))
                for cmask, s, clauses in conjs:
                    changed |= chi.add(
                        soft & cmask, en.add(E2, en.add(E3, en.sup((soft_price, s)))), BranchConj(a, f, clauses)
                    )
        # psi
        for mask, price, f in chi.items():
            reach = b.pre_eps(mask)
            changed |= psi.add(reach, pos_clause_price(price), Pos(f))
            changed |= psi.add(b.all & ~reach, neg_clause_price(price), Neg(f))
        # nonempty partial conjunctions, closed under adding clauses
        clauses = psi.items()
        grew = True
        while grew:
            grew = False
            for mask, price, f in clauses:
                grew |= conj.add(mask, price, (f,))
                for cmask, s, cl in conj.items():
                    if f not in cl:
                        grew |= conj.add(mask & cmask, en.sup((price, s)), cl + (f,))
            changed |= grew
        # phi
        for mask, price, f in chi.items():
            changed |= phi.add(b.pre_eps(mask), price, DelayObs(f))
        for mask, s, cl in conj.items():
            changed |= phi.add(mask, en.add(E5, en.add(E3, s)), ImmediateConj(cl))
    return OracleResult(l, phi.rows, rounds)


def enumerate_oracle(l: Lts, p, Q, depth: int | None = None, cap=None, max_states: int = MAX_STATES) -> list:
    """Distinguishing formulas for ``p`` against ``Q`` within the bounds.

    One witness is returned per Pareto-minimal price; every formula that
    distinguishes within the bounds costs at least one of these prices.
    """
    return explore(l, depth, cap, max_states).formulas(p, Q)
