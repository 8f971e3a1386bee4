"""Finite labeled transition systems with silent steps."""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Iterable

from .errors import InputError, ParseError

TAU = "tau"
RESERVED = "epsilon"
TICK = "tick"
DELTA = "delta"
BOTTOM = "bot"

IDENT = re.compile(r"^[A-Za-z0-9_.'+\-]+$")


class Lts:
    """Immutable LTS over opaque process names mapped to dense indices.

    Process sets are ``frozenset``s of indices throughout.
    """

    def __init__(self, processes: Iterable[str], transitions: Iterable[tuple]):
        names: list[str] = []
        index: dict[str, int] = {}
        for p in processes:
            if p not in index:
                index[p] = len(names)
                names.append(p)
        trans = set()
        for src, act, tgt in transitions:
            if act == RESERVED:
                raise InputError(f"'{RESERVED}' is reserved and cannot label a transition")
            for p in (src, tgt):
                if p not in index:
                    index[p] = len(names)
                    names.append(p)
            trans.add((index[src], act, index[tgt]))
        self.names = tuple(names)
        self.index = index
        self.transitions = frozenset(trans)

        succ = [defaultdict(list) for _ in names]
        pred = [defaultdict(list) for _ in names]
        for s, a, t in sorted(self.transitions):
            succ[s][a].append(t)
            pred[t][a].append(s)
        self._succ = [{a: tuple(ts) for a, ts in d.items()} for d in succ]
        self._pred = [{a: tuple(ss) for a, ss in d.items()} for d in pred]
        self.actions = frozenset(a for _, a, _ in self.transitions)
        self.visible_actions = tuple(sorted(self.actions - {TAU}))
        self._stable = tuple(TAU not in d for d in self._succ)
        self._closure = tuple(self._reach({p}, self._succ) for p in range(len(names)))

    # -- basic queries ---------------------------------------------------------

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"Lts({len(self.names)} processes, {len(self.transitions)} transitions)"

    @property
    def processes(self) -> frozenset:
        return frozenset(range(len(self.names)))

    def proc(self, name) -> int:
        if isinstance(name, int):
            if 0 <= name < len(self.names):
                return name
            raise InputError(f"unknown process index {name}")
        try:
            return self.index[name]
        except KeyError:
            raise InputError(f"unknown process {name!r}") from None

    def procs(self, names) -> frozenset:
        return frozenset(self.proc(n) for n in names)

    def successors(self, p: int, action: str) -> tuple:
        return self._succ[p].get(action, ())

    def outgoing(self, p: int):
        """All ``(action, target)`` pairs of ``p`` in a deterministic order."""
        for a in sorted(self._succ[p]):
            for t in self._succ[p][a]:
                yield a, t

    def is_stable(self, p) -> bool:
        return self._stable[self.proc(p)]

    def stable_processes(self) -> frozenset:
        return frozenset(p for p, s in enumerate(self._stable) if s)

    # -- lifted relations ------------------------------------------------------

    @staticmethod
    def _reach(start, succ):
        seen = set(start)
        stack = list(start)
        while stack:
            p = stack.pop()
            for q in succ[p].get(TAU, ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def tau_closure(self, P) -> frozenset:
        out = set()
        for p in P:
            out |= self._closure[self.proc(p)]
        return frozenset(out)

    def step_image(self, P, action: str) -> frozenset:
        out = set()
        for p in P:
            out.update(self._succ[self.proc(p)].get(action, ()))
        return frozenset(out)

    def soft_step_image(self, P, action: str) -> frozenset:
        img = self.step_image(P, action)
        if action == TAU:
            return img | frozenset(self.proc(p) for p in P)
        return img

    # preimages, used by formula evaluation
    def pre(self, action: str, S) -> frozenset:
        out = set()
        for t in S:
            out.update(self._pred[t].get(action, ()))
        return frozenset(out)

    def pre_eps(self, S) -> frozenset:
        return self._reach(S, self._pred)

    def on_tau_cycle(self, p: int) -> bool:
        return p in self._reach(self._succ[p].get(TAU, ()), self._succ)

    def render_set(self, P) -> str:
        return "{" + ",".join(self.names[p] for p in sorted(P)) + "}"

    def to_text(self) -> str:
        lines = [f"{self.names[s]} {a} {self.names[t]}" for s, a, t in sorted(self.transitions)]
        isolated = set(range(len(self.names))) - {s for s, _, _ in self.transitions} - {
            t for _, _, t in self.transitions
        }
        lines += [f"# process {self.names[p]}" for p in sorted(isolated)]
        return "\n".join(lines) + ("\n" if lines else "")


# -- preprocessing -------------------------------------------------------------


def preprocess(l: Lts, completion: bool = False, divergence: bool = False) -> Lts:
    """Add completion (``tick``) and/or divergence (``delta``) edges to a fresh sink."""
    if not (completion or divergence):
        return l
    if BOTTOM in l.index:
        raise InputError(f"process name {BOTTOM!r} is reserved for preprocessing; rename it")
    for act, wanted in ((TICK, completion), (DELTA, divergence)):
        if wanted and act in l.actions:
            raise InputError(f"action name {act!r} is reserved for preprocessing; rename it")
    extra = []
    for p, name in enumerate(l.names):
        if completion and all(a == TAU for a in l._succ[p]):
            extra.append((name, TICK, BOTTOM))
        if divergence and l.on_tau_cycle(p):
            extra.append((name, DELTA, BOTTOM))
    trans = [(l.names[s], a, l.names[t]) for s, a, t in l.transitions]
    return Lts(list(l.names) + [BOTTOM], trans + extra)


def add_completion_marks(l: Lts) -> Lts:
    return preprocess(l, completion=True)


def add_divergence_marks(l: Lts) -> Lts:
    return preprocess(l, divergence=True)


# -- transition-list format ----------------------------------------------------


def load_transition_list(text: str, source=None) -> Lts:
    processes: list[str] = []
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(
                f"expected 'source action target', got {len(fields)} field(s)", lineno, source=source
            )
        for f in fields:
            if not IDENT.match(f):
                raise ParseError(f"invalid identifier {f!r}", lineno, source=source)
        src, act, tgt = fields
        if act == RESERVED:
            raise ParseError(f"'{RESERVED}' is reserved and cannot be used as an action", lineno, source=source)
        processes += [src, tgt]
        transitions.append((src, act, tgt))
    return Lts(processes, transitions)
