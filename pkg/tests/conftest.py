import random
from importlib import resources

import pytest

from weakspec.ccs import expand_lts, parse_ccs
from weakspec.lts import Lts, load_transition_list
from weakspec.spectrum import compare


def philosophers_text():
    return resources.files("weakspec").joinpath("data/philosophers.ccs").read_text()


@pytest.fixture(scope="session")
def philosophers():
    prog = parse_ccs(philosophers_text())
    l, _ = expand_lts(prog, ["P_c", "P_p"])
    return l


def random_lts(rng, max_states=5, actions=("a", "b", "tau"), density=2):
    n = rng.randint(1, max_states)
    names = [f"s{i}" for i in range(n)]
    trans = {
        (rng.choice(names), rng.choice(actions), rng.choice(names))
        for _ in range(rng.randint(0, density * n + 1))
    }
    return Lts(names, trans)


def random_suite(count, seed=2024, **kw):
    rng = random.Random(seed)
    return [random_lts(rng, **kw) for _ in range(count)]


@pytest.fixture(scope="session")
def philosophers_pair(philosophers):
    return compare(philosophers, "P_c", "P_p")


@pytest.fixture(scope="session")
def tau_choice():
    """tau + tau.a (process p) against tau.a (process q)."""
    return load_transition_list("p tau p1\np tau p2\np2 a z\nq tau q1\nq1 a z2\n")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.REPORT:
        terminalreporter.write_line(line)
