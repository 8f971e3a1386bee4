import pytest

from conftest import random_suite
from weakspec import energy as en
from weakspec.game import solve
from weakspec.lts import load_transition_list
from weakspec.spectroscopy import (
    EMPTY_STABLE_CONJ,
    OBSERVATION,
    AttackerDelayed,
    AttackerImmediate,
    DefenderBranch,
    DefenderConj,
    DefenderStable,
    GameVariant,
    SpectroscopyGame,
    build,
)


def test_philosopher_opening_delay(philosophers):
    game, root = build(philosophers, "P_c", ["P_p"])
    succ = dict((type(t), (u, t)) for u, t in game.successors(root))
    u, delayed = succ[AttackerDelayed]
    assert u == en.NO_UPDATE
    assert len(delayed.Q) == 3
    assert game.describe(delayed).startswith("(P_c,{")
    assert game.describe(delayed).endswith("})_a^eps")


def test_philosopher_play_reaches_op_observation(philosophers_pair):
    wm, game = philosophers_pair.winmap, philosophers_pair.game
    l = game.l
    pos, e = game.root("P_c", ["P_p"]), (2, 0, 1, 0, 0, 1, 0, 0)
    i = wm.graph.index[pos]
    u, i, e = wm.winning_move(i, e)
    assert isinstance(wm.graph.positions[i], AttackerDelayed)
    while u != OBSERVATION:
        u, i, e = wm.winning_move(i, e)
    target = wm.graph.positions[i]
    assert isinstance(target, AttackerImmediate)
    assert any(a == "op" and t == target.p for p in l.processes for a, t in l.outgoing(p))
    assert e == (1, 0, 1, 0, 0, 1, 0, 0)


def test_branching_successor_count():
    l = load_transition_list("p a p1\np a p2\np tau p3\nq a q1\nr b r1\ns a s1\n")
    game = SpectroscopyGame(l)
    Q = l.procs(["q", "r", "s"])
    branch = [t for _, t in game.successors(AttackerDelayed(l.proc("p"), Q)) if isinstance(t, DefenderBranch)]
    assert len(branch) == 3 * (2**3 - 1)
    assert all(not (t.Q & t.Q_alpha) and t.Q | t.Q_alpha == Q for t in branch)


def test_empty_set_position_offers_delay_and_finishing():
    l = load_transition_list("p a p1")
    game = SpectroscopyGame(l)
    succ = game.successors(AttackerImmediate(0, frozenset()))
    assert (en.NO_UPDATE, AttackerDelayed(0, frozenset())) in succ
    assert (en.NO_UPDATE, DefenderConj(0, frozenset())) in succ
    assert len(succ) == 2


def test_stable_conjunction_without_stable_defenders_is_charged():
    l = load_transition_list("p a p1\nq tau q1\nq1 tau q\n")
    game = SpectroscopyGame(l, GameVariant.STABILITY)
    succ = game.successors(AttackerDelayed(l.proc("p"), l.procs(["q", "q1"])))
    stable = [(u, t) for u, t in succ if isinstance(t, DefenderStable)]
    assert stable == [(EMPTY_STABLE_CONJ, DefenderStable(l.proc("p"), frozenset()))]


@pytest.mark.parametrize("l", random_suite(40, seed=5, max_states=4))
def test_variant_monotonicity(l):
    games = {v: SpectroscopyGame(l, v) for v in GameVariant}
    for p in l.processes:
        order = games[GameVariant.DELAY].graph.explore([AttackerImmediate(p, l.processes - {p})])
        for i in order:
            pos = games[GameVariant.DELAY].graph.positions[i]
            delay = set(games[GameVariant.DELAY].successors(pos))
            stability = set(games[GameVariant.STABILITY].successors(pos))
            assert delay <= stability
            assert stability <= set(games[GameVariant.FULL].successors(pos))
            assert stability <= set(games[GameVariant.SIMPLIFIED].successors(pos))


@pytest.mark.parametrize("l", random_suite(40, seed=6, max_states=4))
def test_all_updates_declining(l):
    for v in GameVariant:
        game = SpectroscopyGame(l, v)
        roots = [game.root(l.names[p], [l.names[q]]) for p in l.processes for q in l.processes]
        for i in game.graph.explore(roots):
            assert all(en.is_declining(u) for u, _ in game.graph.moves(i))


def test_describe_formats():
    l = load_transition_list("p a q\n")
    game = SpectroscopyGame(l)
    p, q = l.proc("p"), l.proc("q")
    assert game.describe(AttackerImmediate(p, frozenset({q}))) == "(p,{q})_a"
    assert game.describe(AttackerDelayed(p, frozenset())) == "(p,{})_a^eps"
    assert game.describe(DefenderBranch(p, "a", q, frozenset({q}), frozenset({p}))) == "(p,a,q,{q},{p})_d^eta"


def test_stability_layer_adds_no_wins_without_stable_conjunctions(philosophers):
    fronts = {}
    for v in (GameVariant.DELAY, GameVariant.STABILITY):
        game, root = build(philosophers, "P_c", ["P_p"], v)
        wm = solve(game.graph, [root])
        fronts[v] = {b for b in wm.minima(root) if b[3] == 0}
    assert fronts[GameVariant.DELAY] == fronts[GameVariant.STABILITY]
    assert fronts[GameVariant.DELAY]


def test_unknown_process_rejected(philosophers):
    with pytest.raises(ValueError):
        build(philosophers, "nope", ["P_p"])
