"""Pure-Python backend: thin adapters over the object-level engine.

Same call surface as the compiled kernels; used when the extension is
unavailable and as the reference side of the backend benchmark.
"""

from __future__ import annotations

from ..efgame import EFGame
from ..evalgame import EvalGame
from ..kernel import ELOISE, solve
from ..structures import tarski_truth


def truth(m, phi):
    return tarski_truth(m, phi, {})


def eval_win(m, phi):
    return solve(EvalGame(m, phi)).winner == ELOISE


def ef_profile(m, n, rounds):
    return [solve(EFGame(m, n, r)).winner == ELOISE for r in range(rounds + 1)]
