import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_lts, random_suite
from weakspec.errors import InputError, ParseError
from weakspec.lts import BOTTOM, DELTA, TAU, TICK, Lts, load_transition_list, preprocess


def test_load_transition_list_and_stability():
    l = load_transition_list("# comment\np tau q\nq a r   # trailing\n\n")
    assert l.names == ("p", "q", "r")
    assert l.visible_actions == ("a",)
    assert not l.is_stable("p")
    assert l.stable_processes() == l.procs(["q", "r"])
    assert l.tau_closure(["p"]) == l.procs(["p", "q"])
    assert l.step_image(l.procs(["p", "q"]), "a") == l.procs(["r"])
    assert l.soft_step_image(["q"], TAU) == l.procs(["q"])


@pytest.mark.parametrize(
    "text, fragment",
    [("p a", "field"), ("p a q r", "field"), ("p epsilon q", "reserved"), ("p a! q", "identifier")],
)
def test_loader_errors_carry_line_numbers(text, fragment):
    with pytest.raises(ParseError) as exc:
        load_transition_list("p a q\n" + text, source="x.lts")
    assert exc.value.line == 2
    assert fragment in str(exc.value)


def test_unknown_process_name():
    l = load_transition_list("p a q")
    with pytest.raises(InputError):
        l.proc("zzz")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000))
def test_tau_closure_is_a_closure_operator(seed):
    l = random_lts(random.Random(seed))
    rng = random.Random(seed + 1)
    P = frozenset(p for p in l.processes if rng.random() < 0.5)
    Q = P | frozenset(p for p in l.processes if rng.random() < 0.3)
    c = l.tau_closure(P)
    assert P <= c
    assert l.tau_closure(c) == c
    assert c <= l.tau_closure(Q)


def _tau_reach(l, p):
    """Naive path search, independent of the cached closure tables."""
    seen, frontier = {p}, [p]
    while frontier:
        nxt = []
        for s, a, t in l.transitions:
            if a == TAU and s in frontier and t not in seen:
                seen.add(t)
                nxt.append(t)
        frontier = nxt
    return seen


def _on_tau_cycle(l, p):
    return any(p in _tau_reach(l, t) for s, a, t in l.transitions if s == p and a == TAU)


@pytest.mark.parametrize("l", random_suite(100, seed=7, max_states=6))
def test_preprocessing_against_path_oracle(l):
    m = preprocess(l, completion=True, divergence=True)
    assert BOTTOM in m.index and len(m) == len(l) + 1
    for p, name in enumerate(l.names):
        done = all(a == TAU for s, a, _ in l.transitions if s == p)
        q = m.proc(name)
        assert (m.proc(BOTTOM) in m.successors(q, TICK)) == done
        assert (m.proc(BOTTOM) in m.successors(q, DELTA)) == _on_tau_cycle(l, p)


def test_preprocess_is_identity_without_flags_and_guards_names():
    l = load_transition_list("p a q")
    assert preprocess(l) is l
    with pytest.raises(InputError):
        preprocess(load_transition_list("p tick q"), completion=True)
    with pytest.raises(InputError):
        preprocess(load_transition_list("bot a q"), divergence=True)


def test_reserved_action_rejected_by_constructor():
    with pytest.raises(InputError):
        Lts(["p"], [("p", "epsilon", "p")])


def test_to_text_round_trip():
    for l in random_suite(20, seed=3):
        again = load_transition_list(l.to_text())
        named = {(l.names[s], a, l.names[t]) for s, a, t in l.transitions}
        assert {(again.names[s], a, again.names[t]) for s, a, t in again.transitions} == named
