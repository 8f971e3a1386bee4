"""Energy vectors, declining updates and budget fronts.

Energies are plain 8-tuples of ints.  Extended energies may additionally hold
``INF`` (``math.inf``), which compares above every natural number, so the
ordinary tuple arithmetic below works on both without special cases.

An update is an 8-tuple whose entries are either ``0``/``-1`` (relative) or a
:class:`MinSelect` naming the (0-based) components whose minimum replaces the
entry.  Documentation and rendering use 1-based dimensions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

DIM = 8
INF = math.inf

Energy = tuple  # tuple[int, ...] of length DIM; INF allowed for extended energies

ZERO: Energy = (0,) * DIM


def unit(i: int, value: int = 1) -> Energy:
    """Unit vector for the 1-based dimension ``i``."""
    e = [0] * DIM
    e[i - 1] = value
    return tuple(e)


def energy(*components) -> Energy:
    if len(components) != DIM:
        raise ValueError(f"energies have {DIM} components, got {len(components)}")
    for c in components:
        if not (c == INF or (isinstance(c, int) and c >= 0)):
            raise ValueError(f"invalid energy component {c!r}")
    return tuple(components)


@dataclass(frozen=True)
class MinSelect:
    """Minimum-selection entry; ``dims`` holds 0-based component indices."""

    dims: frozenset

    def __repr__(self):
        return "min{" + ",".join(str(d + 1) for d in sorted(self.dims)) + "}"


def min_select(*dims_1based: int) -> MinSelect:
    return MinSelect(frozenset(d - 1 for d in dims_1based))


def update(*entries) -> tuple:
    """Build an update, checking the declining-update side conditions."""
    if len(entries) != DIM:
        raise ValueError(f"updates have {DIM} components, got {len(entries)}")
    for k, u in enumerate(entries):
        if isinstance(u, MinSelect):
            if k not in u.dims or not u.dims:
                raise ValueError(f"min-selection at component {k + 1} must include it")
        elif u not in (0, -1):
            raise ValueError(f"relative update entries must be 0 or -1, got {u!r}")
    return tuple(entries)


NO_UPDATE = (0,) * DIM


def decrement(*dims_1based: int) -> tuple:
    u = [0] * DIM
    for d in dims_1based:
        u[d - 1] = -1
    return tuple(u)


def leq(e: Sequence, f: Sequence) -> bool:
    return all(a <= b for a, b in zip(e, f))


def sup(es: Iterable[Sequence]) -> Energy:
    """Componentwise maximum; the empty supremum is the zero vector."""
    result = list(ZERO)
    for e in es:
        for i, c in enumerate(e):
            if c > result[i]:
                result[i] = c
    return tuple(result)


def add(e: Sequence, f: Sequence) -> Energy:
    return tuple(a + b for a, b in zip(e, f))


def apply_update(e: Sequence, u: Sequence):
    """Apply ``u`` to ``e``; returns ``None`` when a component would go negative."""
    out = []
    for k, uk in enumerate(u):
        if isinstance(uk, MinSelect):
            v = min(e[d] for d in uk.dims)
        else:
            v = e[k] + uk
            if v < 0:
                return None
        out.append(v)
    return tuple(out)


def inverse_update(target: Sequence, u: Sequence) -> Energy:
    """Least ``e`` with ``apply_update(e, u)`` defined and ``>= target``."""
    out = [0] * DIM
    for k, uk in enumerate(u):
        if isinstance(uk, MinSelect):
            for d in uk.dims:
                if target[k] > out[d]:
                    out[d] = target[k]
        else:
            need = target[k] - uk
            if need > out[k]:
                out[k] = need
    return tuple(out)


def is_declining(u: Sequence) -> bool:
    for k, uk in enumerate(u):
        if isinstance(uk, MinSelect):
            if k not in uk.dims:
                return False
        elif uk > 0:
            return False
    return True


def render(e: Sequence) -> str:
    return "(" + ",".join("∞" if c == INF else str(c) for c in e) + ")"


def parse_energy(text: str) -> Energy:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"energy must be parenthesized: {text!r}")
    parts = [p.strip() for p in body[1:-1].split(",")]
    out = []
    for p in parts:
        if p in ("∞", "inf", "oo"):
            out.append(INF)
        else:
            try:
                out.append(int(p))
            except ValueError:
                raise ValueError(f"bad energy component {p!r} in {text!r}") from None
    return energy(*out)


def render_update(u: Sequence) -> str:
    return "(" + ",".join(repr(x) if isinstance(x, MinSelect) else str(x) for x in u) + ")"


# -- antichains ---------------------------------------------------------------


def dominated(front: Iterable[Sequence], e: Sequence) -> bool:
    """True iff some member of ``front`` is ``<= e``."""
    return any(leq(b, e) for b in front)


def minimize(candidates: Iterable[Sequence]) -> tuple:
    """Minimal elements of ``candidates`` as a sorted, duplicate-free tuple."""
    items = sorted(set(candidates), key=sum)
    kept: list = []
    for c in items:
        if not any(leq(k, c) for k in kept):
            kept.append(c)
    return tuple(sorted(kept))


class BudgetFront:
    """Finite antichain of energies denoting its upward closure."""

    __slots__ = ("_minima",)

    def __init__(self, minima: Iterable[Sequence] = ()):
        self._minima = minimize(tuple(m) for m in minima)

    @property
    def minima(self) -> tuple:
        return self._minima

    def __iter__(self):
        return iter(self._minima)

    def __len__(self):
        return len(self._minima)

    def __contains__(self, e) -> bool:
        """Membership in the denoted upward-closed set."""
        return dominated(self._minima, e)

    def __eq__(self, other):
        return isinstance(other, BudgetFront) and self._minima == other._minima

    def __hash__(self):
        return hash(self._minima)

    def __repr__(self):
        return "BudgetFront({" + ", ".join(render(m) for m in self._minima) + "})"

    def insert(self, e: Sequence) -> "BudgetFront":
        e = tuple(e)
        if dominated(self._minima, e):
            return self
        kept = [b for b in self._minima if not leq(e, b)]
        out = BudgetFront.__new__(BudgetFront)
        out._minima = tuple(sorted(kept + [e]))
        return out


def front_insert(front: BudgetFront, e: Sequence) -> BudgetFront:
    return front.insert(e)
