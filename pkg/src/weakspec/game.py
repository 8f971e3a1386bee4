"""Declining energy games and their attacker winning budgets.

Budgets are computed as the least fixpoint of the two rules

* attacker position: ``e`` wins if some move ``u`` to ``g'`` has
  ``upd(e, u)`` winning at ``g'``;
* defender position: ``e`` wins if ``upd(e, u)`` wins at ``g'`` for every move.

Per position the fixpoint is kept as a finite antichain of minimal budgets.
Every budget ever derived is also logged with a global timestamp; a budget is
only derived from budgets with smaller timestamps, which gives extraction a
well-founded order to descend along (see :meth:`WinMap.winning_move`).
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Iterable

from . import energy as en


class GameGraph:
    """Game graph expanded on demand from a successor callback.

    ``successors(pos)`` returns ``(update, target)`` pairs; ``is_defender(pos)``
    tags positions.  Successor lists are frozen once generated.
    """

    def __init__(self, successors: Callable, is_defender: Callable, describe: Callable = str):
        self._successors = successors
        self._is_defender = is_defender
        self.describe = describe
        self.positions: list = []
        self.index: dict = {}
        self.defender: list[bool] = []
        self._moves: list = []

    def intern(self, pos: Hashable) -> int:
        i = self.index.get(pos)
        if i is None:
            i = len(self.positions)
            self.index[pos] = i
            self.positions.append(pos)
            self.defender.append(bool(self._is_defender(pos)))
            self._moves.append(None)
        return i

    def moves(self, i: int) -> tuple:
        m = self._moves[i]
        if m is None:
            out = []
            for u, target in self._successors(self.positions[i]):
                if not en.is_declining(u):
                    raise ValueError(f"non-declining update {en.render_update(u)}")
                out.append((u, self.intern(target)))
            m = self._moves[i] = tuple(out)
        return m

    def explore(self, roots: Iterable) -> list:
        """Indices of all positions reachable from ``roots`` (BFS order)."""
        order = []
        seen = set()
        queue = deque()
        for r in roots:
            i = self.intern(r)
            if i not in seen:
                seen.add(i)
                queue.append(i)
        while queue:
            i = queue.popleft()
            order.append(i)
            for _, j in self.moves(i):
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return order


class WinMap:
    """Attacker winning budgets per position of a solved game."""

    def __init__(self, graph: GameGraph, reachable: list):
        self.graph = graph
        self.reachable = reachable
        self.fronts: dict[int, tuple] = {i: () for i in reachable}
        # position -> list of (timestamp, budget, move index or None)
        self.history: dict[int, list] = {i: [] for i in reachable}

    def _idx(self, pos) -> int:
        i = pos if isinstance(pos, int) else self.graph.index.get(pos)
        if i is None or i not in self.fronts:
            raise KeyError(f"position not solved: {pos!r}")
        return i

    def front(self, pos) -> en.BudgetFront:
        return en.BudgetFront(self.fronts[self._idx(pos)])

    def minima(self, pos) -> tuple:
        return self.fronts[self._idx(pos)]

    def wins(self, pos, e) -> bool:
        return en.dominated(self.fronts[self._idx(pos)], e)

    def rank(self, pos, e):
        """Earliest timestamp of a derived budget ``<= e`` at ``pos`` (None if losing)."""
        for ts, b, _ in self.history[self._idx(pos)]:
            if en.leq(b, e):
                return ts
        return None

    def winning_move(self, pos, e):
        """A winning attacker move ``(update, target index, residual energy)``.

        Among the moves that lead to a budget derived strictly earlier than the
        one justifying ``e`` here, the lowest-indexed move is chosen, so that
        repeated application always terminates even on cyclic games.
        """
        i = self._idx(pos)
        if self.graph.defender[i]:
            raise ValueError("winning_move is only defined at attacker positions")
        r = self.rank(i, e)
        if r is None:
            raise ValueError(f"attacker does not win {self.graph.describe(self.graph.positions[i])} "
                             f"with {en.render(e)}")
        for u, j in self.graph.moves(i):
            residual = en.apply_update(e, u)
            if residual is None:
                continue
            rj = self.rank(j, residual)
            if rj is not None and rj < r:
                return u, j, residual
        raise AssertionError("no well-founded winning move; solver invariant broken")

    def dump(self) -> str:
        """One line per reachable position: ``kind | description | minima``."""
        lines = []
        for i in self.reachable:
            pos = self.graph.positions[i]
            kind = "defender" if self.graph.defender[i] else "attacker"
            minima = " ".join(en.render(b) for b in self.fronts[i]) or "-"
            lines.append(f"{kind} | {self.graph.describe(pos)} | {minima}")
        return "\n".join(lines)


def solve(graph: GameGraph, roots: Iterable) -> WinMap:
    """Minimal attacker winning budgets for every position reachable from ``roots``."""
    reachable = graph.explore(roots)
    wm = WinMap(graph, reachable)
    fronts = wm.fronts
    history = wm.history
    preds: dict[int, set] = {i: set() for i in reachable}
    for i in reachable:
        for _, j in graph.moves(i):
            preds[j].add(i)

    clock = 0
    queue = deque(reachable)
    queued = set(reachable)
    while queue:
        i = queue.popleft()
        queued.discard(i)
        current = fronts[i]
        moves = graph.moves(i)
        if graph.defender[i]:
            candidates = [(c, None) for c in _defender_candidates(moves, fronts, current)]
        else:
            candidates = []
            for mi, (u, j) in enumerate(moves):
                for b in fronts[j]:
                    candidates.append((en.inverse_update(b, u), mi))
        changed = False
        front = list(current)
        for c, mi in sorted(candidates, key=lambda x: (sum(x[0]), x[0], -1 if x[1] is None else x[1])):
            if en.dominated(front, c):
                continue
            front = [b for b in front if not en.leq(c, b)]
            front.append(c)
            clock += 1
            history[i].append((clock, c, mi))
            changed = True
        if changed:
            fronts[i] = tuple(sorted(front))
            for k in preds[i]:
                if k not in queued:
                    queued.add(k)
                    queue.append(k)
    return wm


def _defender_candidates(moves, fronts, current):
    if not moves:
        return [en.ZERO]
    combos = [en.ZERO]
    for u, j in moves:
        options = [en.inverse_update(b, u) for b in fronts[j]]
        if not options:
            return []
        combos = en.minimize(en.sup((c, o)) for c in combos for o in options)
        # anything above an existing minimum cannot contribute a new one
        combos = [c for c in combos if not en.dominated(current, c)]
        if not combos:
            return []
    return combos
