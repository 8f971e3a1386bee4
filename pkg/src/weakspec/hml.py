"""Stability-respecting branching HML: syntax, semantics, and pricing.

The three syntactic strata are separate classes:

* formulas ``phi``: :class:`Top`, :class:`DelayObs` (``<e>chi``),
  :class:`ImmediateConj`
* delayed formulas ``chi``: :class:`Obs`, :class:`Conj`, :class:`StableConj`,
  :class:`BranchConj`
* clauses ``psi``: :class:`Pos` (``<e>chi``), :class:`Neg` (``~<e>chi``)

ASCII syntax::

    T                     truth (empty conjunction)
    <e>chi                delayed observation / positive clause
    <a>phi                observation of visible action a
    /\\{psi, ...}          conjunction
    /\\{!t, psi, ...}      stable conjunction (implicit ~<tau>T)
    /\\{(a)phi, psi, ...}  branching conjunction, soft modality (a)
    ~<e>chi               negative clause
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import energy as en
from .errors import ParseError
from .lts import TAU, Lts


def _canon(clauses):
    clauses = tuple(clauses)
    for c in clauses:
        if not isinstance(c, (Pos, Neg)):
            raise TypeError(f"conjunction clauses must be Pos/Neg, got {c!r}")
    return tuple(sorted(set(clauses), key=render))


class _Node:
    def __str__(self):
        return render(self)


# -- phi ------------------------------------------------------------------------


@dataclass(frozen=True, repr=False)
class Top(_Node):
    def __repr__(self):
        return "Top()"


TOP = Top()


@dataclass(frozen=True)
class DelayObs(_Node):
    chi: object


@dataclass(frozen=True)
class ImmediateConj(_Node):
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "clauses", _canon(self.clauses))
        if not self.clauses:
            raise ValueError("an empty immediate conjunction is Top")


def immediate(clauses):
    """Top-level conjunction, collapsing the empty case to TOP."""
    clauses = tuple(clauses)
    return ImmediateConj(clauses) if clauses else TOP


# -- chi ------------------------------------------------------------------------


@dataclass(frozen=True)
class Obs(_Node):
    action: str
    phi: object

    def __post_init__(self):
        if self.action == TAU:
            raise ValueError("observations <a> require a visible action")


@dataclass(frozen=True)
class Conj(_Node):
    clauses: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", _canon(self.clauses))


@dataclass(frozen=True)
class StableConj(_Node):
    clauses: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", _canon(self.clauses))


@dataclass(frozen=True)
class BranchConj(_Node):
    action: str
    phi: object
    clauses: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", _canon(self.clauses))


# -- psi ------------------------------------------------------------------------


@dataclass(frozen=True)
class Pos(_Node):
    chi: object


@dataclass(frozen=True)
class Neg(_Node):
    chi: object


PHI = (Top, DelayObs, ImmediateConj)
CHI = (Obs, Conj, StableConj, BranchConj)
PSI = (Pos, Neg)


# -- semantics ------------------------------------------------------------------


def eval(f, l: Lts) -> frozenset:
    """Set of (indices of) processes of ``l`` satisfying ``f``."""
    return _Eval(l)(f)


class _Eval:
    def __init__(self, l):
        self.l = l
        self.all = l.processes
        self.cache = {}

    def __call__(self, f):
        try:
            return self.cache[f]
        except KeyError:
            pass
        r = self._eval(f)
        self.cache[f] = r
        return r

    def conj(self, clauses):
        s = self.all
        for c in clauses:
            s = s & self(c)
        return s

    def _eval(self, f):
        l = self.l
        if isinstance(f, Top):
            return self.all
        if isinstance(f, DelayObs):
            return l.pre_eps(self(f.chi))
        if isinstance(f, (ImmediateConj, Conj)):
            return self.conj(f.clauses)
        if isinstance(f, Obs):
            return l.pre(f.action, self(f.phi))
        if isinstance(f, StableConj):
            return l.stable_processes() & self.conj(f.clauses)
        if isinstance(f, BranchConj):
            target = self(f.phi)
            soft = l.pre(f.action, target)
            if f.action == TAU:
                soft |= target
            return soft & self.conj(f.clauses)
        if isinstance(f, Pos):
            return l.pre_eps(self(f.chi))
        if isinstance(f, Neg):
            return self.all - l.pre_eps(self(f.chi))
        raise TypeError(f"not a formula: {f!r}")


def distinguishes(f, l: Lts, p, Q) -> bool:
    den = eval(f, l)
    return l.proc(p) in den and not (den & l.procs(Q))


# -- pricing --------------------------------------------------------------------

E1, E2, E3, E4, E5, E8 = (en.unit(i) for i in (1, 2, 3, 4, 5, 8))


def pos_clause_price(inner):
    """Price of ``<e>chi`` as a clause, given the price of ``chi``."""
    return en.sup([inner, en.unit(6, inner[0])])


def neg_clause_price(inner):
    return en.sup([en.add(E8, inner), en.unit(7, inner[0])])


def price(f):
    """Expressiveness price of a formula of any stratum."""
    if isinstance(f, Top):
        return en.ZERO
    if isinstance(f, DelayObs):
        return price(f.chi)
    if isinstance(f, ImmediateConj):
        return en.add(E5, _conj_price(f.clauses, E3))
    if isinstance(f, Obs):
        return en.add(E1, price(f.phi))
    if isinstance(f, Conj):
        if not f.clauses:
            return en.ZERO
        return _conj_price(f.clauses, E3)
    if isinstance(f, StableConj):
        return _conj_price(f.clauses, E4)
    if isinstance(f, BranchConj):
        soft = pos_clause_price(en.add(E1, price(f.phi)))
        return en.add(E2, en.add(E3, en.sup([soft] + [price(c) for c in f.clauses])))
    if isinstance(f, Pos):
        return pos_clause_price(price(f.chi))
    if isinstance(f, Neg):
        return neg_clause_price(price(f.chi))
    raise TypeError(f"not a formula: {f!r}")


def _conj_price(clauses, marker):
    return en.add(marker, en.sup(price(c) for c in clauses))


price_eps = price
price_clause = price


def in_notion(f, coordinate) -> bool:
    return en.leq(price(f), coordinate)


# -- concrete syntax ------------------------------------------------------------


def _act(a):
    if a == "e":
        raise ValueError("action 'e' collides with the <e> operator in formula syntax")
    return a


def render(f) -> str:
    if isinstance(f, Top):
        return "T"
    if isinstance(f, (DelayObs, Pos)):
        return "<e>" + render(f.chi)
    if isinstance(f, Neg):
        return "~<e>" + render(f.chi)
    if isinstance(f, Obs):
        return f"<{_act(f.action)}>" + render(f.phi)
    if isinstance(f, Conj) and not f.clauses:
        return "T"
    if isinstance(f, (ImmediateConj, Conj)):
        items = [render(c) for c in f.clauses]
    elif isinstance(f, StableConj):
        items = ["!t"] + [render(c) for c in f.clauses]
    elif isinstance(f, BranchConj):
        items = [f"({_act(f.action)})" + render(f.phi)] + [render(c) for c in f.clauses]
    else:
        raise TypeError(f"not a formula: {f!r}")
    return "/\\{" + ", ".join(items) + "}"


_ACTION = re.compile(r"[A-Za-z0-9_.'+\-]+")


class _FormulaParser:
    def __init__(self, text):
        self.s = text
        self.i = 0

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def at(self, tok):
        self.ws()
        return self.s.startswith(tok, self.i)

    def eat(self, tok):
        if not self.at(tok):
            self.fail(f"expected {tok!r}")
        self.i += len(tok)

    def fail(self, msg):
        raise ParseError(msg, column=self.i + 1)

    def action(self, close):
        m = _ACTION.match(self.s, self.i)
        if not m:
            self.fail("expected an action name")
        self.i = m.end()
        self.eat(close)
        return m.group(0)

    def phi(self):
        if self.at("T"):
            self.i += 1
            return TOP
        if self.at("<e>"):
            self.i += 3
            return DelayObs(self.chi())
        if self.at("/\\{"):
            kind, head, clauses = self.conj_body()
            if kind != "plain":
                self.fail("stable/branching conjunctions must follow <e>")
            return immediate(clauses)
        self.fail("expected a formula (T, <e>..., or /\\{...})")

    def chi(self):
        if self.at("T"):
            self.i += 1
            return Conj(())
        if self.at("/\\{"):
            kind, head, clauses = self.conj_body()
            if kind == "stable":
                return StableConj(clauses)
            if kind == "branch":
                return BranchConj(head[0], head[1], clauses)
            return Conj(clauses)
        if self.at("<"):
            self.i += 1
            self.ws()
            a = self.action(">")
            if a == "e":
                self.fail("<e><e> is not in the grammar")
            if a in (TAU, "t"):
                self.fail("<tau> observations are not in the grammar")
            return Obs(a, self.phi())
        self.fail("expected <a>phi, T, or a conjunction")

    def conj_body(self):
        self.eat("/\\{")
        kind, head, clauses = "plain", None, []
        first = True
        if self.at("}"):
            self.i += 1
            return kind, head, clauses
        while True:
            if self.at("!t"):
                if not first:
                    self.fail("!t must be the first conjunct")
                self.i += 2
                kind = "stable"
            elif self.at("("):
                if not first:
                    self.fail("the soft clause must be the first conjunct")
                self.i += 1
                self.ws()
                a = self.action(")")
                if a == "t":
                    a = TAU
                head = (a, self.phi())
                kind = "branch"
            else:
                clauses.append(self.clause())
            first = False
            if self.at(","):
                self.i += 1
                continue
            self.eat("}")
            return kind, head, clauses

    def clause(self):
        if self.at("~"):
            self.i += 1
            self.eat("<e>")
            return Neg(self.chi())
        if self.at("<e>"):
            self.i += 3
            return Pos(self.chi())
        self.fail("expected a clause <e>chi or ~<e>chi")


def parse_formula(text: str):
    p = _FormulaParser(text)
    f = p.phi()
    p.ws()
    if p.i != len(text):
        p.fail("trailing input")
    return f
