"""A small CCS frontend: parser and SOS expansion into an :class:`Lts`.

Grammar::

    program := (def | comment)*
    def     := NAME "=" term
    term    := par ("+" par)*
    par     := restr ("|" restr)*
    restr   := prefix ("\\" "{" NAME ("," NAME)* "}")?
    prefix  := (ACT ".")* atom
    atom    := "0" | NAME | ACT | "(" term ")"
    ACT     := NAME | "'" NAME

A bare atom starting with an upper-case letter is a process reference; a bare
lower-case (or co-)action stands for ``ACT.0`` as in Milner's notation.
Relabeling and replication are not supported.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

from .errors import InputError, ParseError, StateSpaceExceeded
from .lts import RESERVED, TAU, Lts


@dataclass(frozen=True)
class Nil:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Prefix:
    action: str
    cont: object

    def __str__(self):
        return f"{self.action}.{self.cont}"


@dataclass(frozen=True)
class Choice:
    parts: tuple

    def __str__(self):
        return "(" + "+".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Parallel:
    parts: tuple

    def __str__(self):
        return "(" + "|".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Restrict:
    term: object
    channels: frozenset

    def __str__(self):
        inner = str(self.term)
        if not inner.startswith("("):
            inner = f"({inner})"
        return inner + "\\{" + ",".join(sorted(self.channels)) + "}"


@dataclass(frozen=True)
class Name:
    name: str

    def __str__(self):
        return self.name


NIL = Nil()


@dataclass
class CcsProgram:
    definitions: dict

    def __getitem__(self, name):
        return self.definitions[name]


def co(action: str) -> str:
    return action[1:] if action.startswith("'") else "'" + action


def channel(action: str) -> str:
    return action.lstrip("'")


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|([A-Za-z_][A-Za-z0-9_]*)|(0)|(\\)|([=.+|{}(),']))")


def _tokenize(text):
    pos = 0
    toks = []
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:]
            if rest.strip():
                off = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[off]!r}", *_linecol(text, off))
            break
        pos = m.end()
        if m.group(1):
            continue
        kind = "name" if m.group(2) else "sym"
        start = m.start(2) if m.group(2) else m.start(m.lastindex)
        toks.append((kind, m.group(m.lastindex), start))
    return toks


def _linecol(text, off):
    line = text.count("\n", 0, off) + 1
    col = off - (text.rfind("\n", 0, off) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else (None, None, len(self.text))

    def error(self, msg):
        raise ParseError(msg, *_linecol(self.text, self.peek()[2]))

    def expect(self, sym):
        kind, val, _ = self.peek()
        if val != sym or kind != "sym":
            self.error(f"expected {sym!r}, found {val if val is not None else 'end of input'!r}")
        self.i += 1

    def program(self):
        defs = {}
        while self.peek()[0] is not None:
            kind, name, _ = self.peek()
            if kind != "name":
                self.error(f"expected a definition, found {name!r}")
            self.i += 1
            self.expect("=")
            if name in defs:
                self.error(f"duplicate definition of {name!r}")
            defs[name] = self.term()
        return defs

    def term(self):
        parts = [self.par()]
        while self.peek()[1] == "+":
            self.i += 1
            parts.append(self.par())
        return parts[0] if len(parts) == 1 else Choice(tuple(parts))

    def par(self):
        parts = [self.restr()]
        while self.peek()[1] == "|":
            self.i += 1
            parts.append(self.restr())
        return parts[0] if len(parts) == 1 else Parallel(tuple(parts))

    def restr(self):
        t = self.prefix()
        if self.peek()[1] == "\\":
            self.i += 1
            self.expect("{")
            chans = [self.channel_name()]
            while self.peek()[1] == ",":
                self.i += 1
                chans.append(self.channel_name())
            self.expect("}")
            t = Restrict(t, frozenset(chans))
        return t

    def channel_name(self):
        kind, val, _ = self.peek()
        if val == "'":
            self.error("co-actions cannot appear in restriction sets")
        if kind != "name":
            self.error(f"expected a channel name, found {val!r}")
        if val == TAU:
            self.error("tau cannot be restricted")
        self.i += 1
        return val

    def action(self):
        """Parse ``NAME`` or ``'NAME`` if present, else return None."""
        kind, val, _ = self.peek()
        if kind == "name":
            self.i += 1
            return val
        if val == "'":
            kind2, val2, _ = self.peek(1)
            if kind2 != "name":
                self.i += 1
                self.error("expected a name after \"'\"")
            if val2 == TAU:
                self.error("tau has no co-action")
            self.i += 2
            return "'" + val2
        return None

    def prefix(self):
        kind, val, _ = self.peek()
        if val == "0" or val == "(":
            return self.atom()
        start = self.i
        act = self.action()
        if act is None:
            self.error(f"expected a process term, found {val if val is not None else 'end of input'!r}")
        if act == RESERVED:
            self.i = start
            self.error(f"{RESERVED!r} is reserved")
        if self.peek()[1] == ".":
            self.i += 1
            return Prefix(act, self.prefix())
        if self.peek()[1] == "=":
            # start of the next definition: the previous term ended earlier
            self.i = start
            self.error("incomplete term")
        if act[0].isupper():
            return Name(act)
        return Prefix(act, NIL)

    def atom(self):
        kind, val, _ = self.peek()
        if val == "0" and kind == "sym":
            self.i += 1
            return NIL
        if val == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        self.error(f"unexpected {val!r}")


def _check_names(term, defs):
    if isinstance(term, Name):
        if term.name not in defs:
            raise InputError(f"unbound process name {term.name!r}")
    elif isinstance(term, Prefix):
        _check_names(term.cont, defs)
    elif isinstance(term, (Choice, Parallel)):
        for t in term.parts:
            _check_names(t, defs)
    elif isinstance(term, Restrict):
        _check_names(term.term, defs)


def parse_ccs(text: str) -> CcsProgram:
    p = _Parser(text)
    defs = p.program()
    for body in defs.values():
        _check_names(body, defs)
    return CcsProgram(defs)


# -- semantics -----------------------------------------------------------------


def transitions(term, prog: CcsProgram, _unfolding=()):
    """All ``(label, successor)`` pairs of ``term`` under the CCS SOS rules."""
    if isinstance(term, Nil):
        return []
    if isinstance(term, Prefix):
        return [(term.action, term.cont)]
    if isinstance(term, Choice):
        out = []
        for t in term.parts:
            out += transitions(t, prog, _unfolding)
        return out
    if isinstance(term, Parallel):
        parts = term.parts
        steps = [transitions(t, prog, _unfolding) for t in parts]
        out = []
        for i, si in enumerate(steps):
            for a, t2 in si:
                out.append((a, Parallel(parts[:i] + (t2,) + parts[i + 1 :])))
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                for a, ti in steps[i]:
                    if a == TAU:
                        continue
                    for b, tj in steps[j]:
                        if b == co(a):
                            new = list(parts)
                            new[i], new[j] = ti, tj
                            out.append((TAU, Parallel(tuple(new))))
        return out
    if isinstance(term, Restrict):
        return [
            (a, Restrict(t2, term.channels))
            for a, t2 in transitions(term.term, prog, _unfolding)
            if a == TAU or channel(a) not in term.channels
        ]
    if isinstance(term, Name):
        if term.name in _unfolding:
            # unguarded recursion contributes no further steps
            return []
        return transitions(prog[term.name], prog, _unfolding + (term.name,))
    raise TypeError(f"not a CCS term: {term!r}")


def expand_lts(prog: CcsProgram, roots, bound: int = 10_000):
    """Reachable LTS of ``roots``; returns ``(lts, {state name: term})``.

    Root processes keep their definition names; other states are named by
    their canonical term text.
    """
    if bound <= 0:
        raise InputError("state bound must be positive")
    seen = {}
    queue = deque()
    for r in roots:
        if r not in prog.definitions:
            raise InputError(f"unknown root process {r!r}")
        t = Name(r)
        if t not in seen:
            seen[t] = str(t)
            queue.append(t)
    trans = []
    while queue:
        t = queue.popleft()
        for a, t2 in sorted(set(transitions(t, prog)), key=lambda x: (x[0], str(x[1]))):
            if t2 not in seen:
                if len(seen) >= bound:
                    raise StateSpaceExceeded(f"state-space bound exceeded ({bound} states)")
                seen[t2] = str(t2)
                queue.append(t2)
            trans.append((seen[t], a, seen[t2]))
    names = list(seen.values())
    return Lts(names, trans), {v: k for k, v in seen.items()}
