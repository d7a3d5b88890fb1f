"""The m-move Ehrenfeucht-Fraisse game EF_m(M, N)."""

from __future__ import annotations

import itertools

from .kernel import ABELARD, ELOISE, Game, GameError, solve

LEFT = "L"
RIGHT = "R"


def partial_iso(m, n, pairs, identity):
    """Do the pair components satisfy the same literals on both sides?

    Checks every relation literal over tuples drawn from the pair set, and
    equality literals when identity is enabled; a mismatch in either
    direction means Abelard has won.
    """
    pairs = list(pairs)
    for rel, arity in m.vocab.relations:
        for combo in itertools.product(pairs, repeat=arity):
            left = tuple(a for a, _ in combo)
            right = tuple(b for _, b in combo)
            if m.holds(rel, left) != n.holds(rel, right):
                return False
    if identity:
        for (a1, b1), (a2, b2) in itertools.combinations(pairs, 2):
            if (a1 == a2) != (b1 == b2):
                return False
    return True


class EFGame(Game):
    """Positions: (frozenset of pairs, rounds used, pending pick or None)."""

    def __init__(self, m, n, rounds):
        if m.vocab != n.vocab:
            raise GameError("structures must share a vocabulary")
        if m.vocab.constants:
            raise GameError("EF games do not support constants")
        if rounds < 0:
            raise GameError("number of rounds must be non-negative")
        self.m = m
        self.n = n
        self.rounds = rounds
        self.identity = m.vocab.identity_enabled

    def initial(self):
        return (frozenset(), 0, None)

    def mover(self, pos):
        pairs, used, pending = pos
        if pending is None and not partial_iso(self.m, self.n, pairs, self.identity):
            return ("terminal", ABELARD)
        if pending is not None:
            return ELOISE
        if used >= self.rounds:
            return ("terminal", ELOISE)
        return ABELARD

    def legal_moves(self, pos):
        pairs, used, pending = pos
        if pending is not None:
            side, _ = pending
            source = self.n if side == LEFT else self.m
            return list(source.domain)
        return [(LEFT, a) for a in self.m.domain] + [(RIGHT, b) for b in self.n.domain]

    def apply(self, pos, move):
        pairs, used, pending = pos
        if pending is None:
            return (pairs, used, move)
        side, elem = pending
        pair = (elem, move) if side == LEFT else (move, elem)
        return (pairs | {pair}, used + 1, None)

    def key(self, pos):
        pairs, used, pending = pos
        out = f"n={used}|" + ",".join(f"{a}:{b}" for a, b in sorted(pairs))
        if pending is not None:
            out += f"|pending={pending[0]}:{pending[1]}"
        return out


def ef_game(m, n, rounds):
    return EFGame(m, n, rounds)


def solve_ef(m, n, rounds):
    game = EFGame(m, n, rounds)
    sol = solve(game)
    return sol.winner, sol.strategy
