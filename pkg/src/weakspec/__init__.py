"""Weak linear-time/branching-time spectroscopy via energy games."""

__version__ = "0.1.0"

from .energy import INF, BudgetFront  # noqa: E402
from .game import solve  # noqa: E402
from .lts import Lts, load_transition_list, preprocess  # noqa: E402
from .spectroscopy import GameVariant, SpectroscopyGame, build  # noqa: E402
from .spectrum import builtin_table, compare, frontier, verdicts  # noqa: E402

__all__ = [
    "INF",
    "BudgetFront",
    "GameVariant",
    "Lts",
    "SpectroscopyGame",
    "build",
    "builtin_table",
    "compare",
    "frontier",
    "load_transition_list",
    "preprocess",
    "solve",
    "verdicts",
]
