import dataclasses

import pytest

from conftest import random_suite
from weakspec import hml
from weakspec.game import solve
from weakspec.hml import TOP, Conj, DelayObs, ImmediateConj, Neg, Obs, Pos
from weakspec.oracle import explore
from weakspec.spectroscopy import AttackerImmediate, DefenderConj, GameVariant, SpectroscopyGame
from weakspec.strategy import SIMPLIFIED_CAVEAT, Certificate, certificate, check_certificate, extract, flatten, merge

PHI_CP = "<e><op><e>/\\{<e><aEats>T, <e><bEats>T}"


def test_extracted_formula_is_phi_cp(philosophers_pair):
    r = philosophers_pair
    root = r.game.root("P_c", ["P_p"])
    f = extract(r.winmap, r.game, root, (2, 0, 1, 0, 0, 1, 0, 0))
    l = r.game.l
    assert hml.eval(f, l) == hml.eval(hml.parse_formula(PHI_CP), l)
    assert hml.price(f) == (2, 0, 1, 0, 0, 1, 0, 0)


def test_tau_choice_certificate(tau_choice):
    game = SpectroscopyGame(tau_choice)
    root = game.root("p", ["q"])
    wm = solve(game.graph, [root])
    budget = (1, 0, 1, 0, 0, 0, 1, 1)
    assert budget in wm.minima(root)
    f = extract(wm, game, root, budget)
    expected = hml.parse_formula("<e>/\\{~<e><a>T}")
    assert hml.eval(f, tau_choice) == hml.eval(expected, tau_choice)


def test_empty_defender_conjunction_yields_truth(tau_choice):
    game = SpectroscopyGame(tau_choice)
    root = AttackerImmediate(tau_choice.proc("z"), frozenset())
    wm = solve(game.graph, [root])
    assert extract(wm, game, DefenderConj(root.p, frozenset()), (0,) * 8) == Conj(())
    assert hml.eval(extract(wm, game, root, (0,) * 8), tau_choice) == tau_choice.processes


def test_extract_refuses_losing_budget(tau_choice):
    game = SpectroscopyGame(tau_choice)
    root = game.root("q", ["p"])
    wm = solve(game.graph, [root])
    with pytest.raises(ValueError):
        extract(wm, game, root, (9, 0, 9, 0, 0, 9, 0, 0))


def test_certificates_and_tampering(philosophers_pair):
    r = philosophers_pair
    c = certificate(r.winmap, r.game, "P_c", ["P_p"], r.front[0], defeats=["wb"])
    assert check_certificate(c, r.game.l)
    d = c.to_dict()
    assert d["position"] == "(P_c,{P_p})_a" and d["defeats"] == ["wb"] and d["notes"] == []
    assert "formula:" in c.to_text()
    lowered = dataclasses.replace(c, budget=(1, 0, 1, 0, 0, 1, 0, 0))
    assert not check_certificate(lowered, r.game.l)
    swapped = dataclasses.replace(c, p="P_p", Q=("P_c",))
    assert not check_certificate(swapped, r.game.l)


def test_hand_written_certificate(philosophers):
    c = Certificate(hml.parse_formula(PHI_CP), "P_c", ("P_p",), (2, 0, 1, 0, 0, 1, 0, 0))
    assert check_certificate(c, philosophers)


def test_simplified_certificates_carry_caveat(philosophers):
    game = SpectroscopyGame(philosophers, GameVariant.SIMPLIFIED)
    root = game.root("P_c", ["P_p"])
    wm = solve(game.graph, [root])
    c = certificate(wm, game, "P_c", ["P_p"], wm.minima(root)[0])
    assert c.notes == [SIMPLIFIED_CAVEAT]
    assert hml.distinguishes(c.formula, philosophers, "P_c", ["P_p"])


def test_flatten_and_merge():
    a = Pos(Obs("a", TOP))
    b = Neg(Obs("b", TOP))
    assert flatten([TOP, DelayObs(Obs("a", TOP)), ImmediateConj([b])]) == [a, b]
    assert merge([DelayObs(Obs("a", TOP)), TOP]) == DelayObs(Conj([a]))
    assert merge([DelayObs(Obs("a", TOP)), ImmediateConj([b])]) == ImmediateConj([a, b])
    assert merge([TOP]) == DelayObs(Conj(()))
    with pytest.raises(TypeError):
        flatten([Obs("a", TOP)])


@pytest.mark.parametrize("l", random_suite(30, seed=17, max_states=3))
def test_soundness_and_completeness_against_oracle(l):
    game = SpectroscopyGame(l)
    roots = [game.root(l.names[p], [l.names[q]]) for p in l.processes for q in l.processes]
    wm = solve(game.graph, roots)
    res = explore(l)
    for root in roots:
        p, Q = l.names[root.p], [l.names[q] for q in root.Q]
        for b in wm.minima(root):
            assert check_certificate(certificate(wm, game, p, Q, b), l)
        # every distinguishing formula found by brute force is priced into the front
        for f in res.formulas(p, Q):
            assert hml.distinguishes(f, l, p, Q)
            assert wm.wins(root, hml.price(f))
