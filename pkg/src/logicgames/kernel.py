"""Uniform finite two-player win-lose game abstraction.

Games expose positions, movers and legal moves; ``solve`` labels the
reachable graph by backward induction, ``verify_strategy`` exhaustively
checks a responder against every opponent line, ``play`` runs one game.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

ELOISE = "eloise"
ABELARD = "abelard"


def opponent(player):
    return ABELARD if player == ELOISE else ELOISE


class GameError(Exception):
    pass


class BudgetExceeded(GameError):
    pass


class Game:
    """GameSpec: subclasses define one of the three games.

    ``bound_winner`` names who wins a play truncated at the step bound
    (Eloise for the model existence game); None means truncation is an error.
    """

    bound_winner = None

    def initial(self):
        raise NotImplementedError

    def mover(self, pos):
        """Return ELOISE, ABELARD, or ("terminal", winner)."""
        raise NotImplementedError

    def legal_moves(self, pos):
        raise NotImplementedError

    def apply(self, pos, move):
        raise NotImplementedError

    def key(self, pos):
        raise NotImplementedError

    def serialize_move(self, move):
        return json.dumps(move, sort_keys=True)

    def parse_move(self, text):
        parsed = json.loads(text)
        return tuple(parsed) if isinstance(parsed, list) else parsed


@dataclass
class PositionalStrategy:
    player: str
    moves: dict  # canonical key -> move

    def choose(self, game, history, pos):
        return self.moves[game.key(pos)]

    def dump(self, game):
        return json.dumps({
            "player": self.player,
            "moves": {k: game.serialize_move(m) for k, m in sorted(self.moves.items())},
        }, indent=2)

    @classmethod
    def load(cls, text, game):
        obj = json.loads(text)
        return cls(obj["player"], {k: game.parse_move(v) for k, v in obj["moves"].items()})


@dataclass
class Solution:
    winner: str
    strategy: PositionalStrategy
    labels: dict  # canonical key -> winning player at that position


def _ordered_moves(game, pos):
    return sorted(game.legal_moves(pos), key=game.serialize_move)


def solve(game, step_bound=None):
    """Backward induction over the reachable position DAG, memoized on key.

    With a step bound, positions at the bound are labeled ``bound_winner``
    (BudgetExceeded if the game has none), and the memo is depth-aware.
    """
    labels = {}
    strategy_moves = {}
    memo = {}

    def win(pos, depth):
        mv = game.mover(pos)
        if isinstance(mv, tuple):
            return mv[1]
        key = game.key(pos)
        mkey = key if step_bound is None else (key, depth)
        hit = memo.get(mkey)
        if hit is not None:
            return hit
        if step_bound is not None and depth >= step_bound:
            if game.bound_winner is None:
                raise BudgetExceeded(f"step bound {step_bound} reached at {key}")
            memo[mkey] = game.bound_winner
            labels[key] = game.bound_winner
            return game.bound_winner
        moves = _ordered_moves(game, pos)
        if not moves:
            raise GameError(f"no legal moves at non-terminal position {key}")
        winner = opponent(mv)
        for m in moves:
            w = win(game.apply(pos, m), depth + 1)
            if w == mv:
                winner = mv
                if key not in strategy_moves:
                    strategy_moves[key] = m
                break
        memo[mkey] = winner
        labels[key] = winner
        return winner

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 100000))
    try:
        winner = win(game.initial(), 0)
    finally:
        sys.setrecursionlimit(old)
    # keep only the winner's moves
    strat = PositionalStrategy(winner, {k: m for k, m in strategy_moves.items()
                                        if labels.get(k) == winner})
    return Solution(winner, strat, labels)


@dataclass
class VerifyResult:
    ok: bool
    failing_history: tuple = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_strategy(game, responder, player, step_bound=None):
    """True iff ``player`` wins every play in which they follow ``responder``.

    The opponent's moves range over all legal alternatives (exhaustive walk);
    the responder sees the full move history of its branch, so stateless
    history-driven responders stay consistent across branches.
    """

    def walk(pos, history, depth):
        mv = game.mover(pos)
        if isinstance(mv, tuple):
            if mv[1] != player:
                return VerifyResult(False, history, f"lost at {game.key(pos)}")
            return VerifyResult(True)
        if step_bound is not None and depth >= step_bound:
            if game.bound_winner == player:
                return VerifyResult(True)
            return VerifyResult(False, history, "step bound reached")
        moves = _ordered_moves(game, pos)
        if mv == player:
            try:
                move = responder.choose(game, history, pos)
            except Exception as e:  # noqa: BLE001 - a crashing responder is a failure
                return VerifyResult(False, history, f"responder error: {e}")
            if move is None:
                if game.bound_winner == player:
                    return VerifyResult(True)
                return VerifyResult(False, history, "responder passed")
            if move not in moves:
                return VerifyResult(False, history, f"illegal move {move!r}")
            return walk(game.apply(pos, move), history + ((pos, mv, move),), depth + 1)
        for m in moves:
            r = walk(game.apply(pos, m), history + ((pos, mv, m),), depth + 1)
            if not r.ok:
                return r
        return VerifyResult(True)

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 100000))
    try:
        return walk(game.initial(), (), 0)
    finally:
        sys.setrecursionlimit(old)


@dataclass
class PlayRecord:
    entries: list  # (position, mover, move)
    final: object
    winner: str
    truncated: bool = False

    def moves(self):
        return [m for _, _, m in self.entries]


def play(game, eloise, abelard, step_bound=None):
    """Run one play; a responder returning None ends the play (pass).

    A pass or a truncated play is won by ``bound_winner`` (an error for
    games that are intrinsically finite).
    """
    pos = game.initial()
    entries = []
    steps = 0
    while True:
        mv = game.mover(pos)
        if isinstance(mv, tuple):
            return PlayRecord(entries, pos, mv[1])
        if step_bound is not None and steps >= step_bound:
            if game.bound_winner is None:
                raise BudgetExceeded("step bound reached in a finite game")
            return PlayRecord(entries, pos, game.bound_winner, truncated=True)
        responder = eloise if mv == ELOISE else abelard
        move = responder.choose(game, tuple(entries), pos)
        if move is None:
            # a pass ends the play (e.g. sigma0 reports saturation)
            if game.bound_winner is None:
                raise GameError(f"{mv} passed in a finite game")
            return PlayRecord(entries, pos, game.bound_winner, truncated=False)
        if move not in game.legal_moves(pos):
            raise GameError(f"illegal move {move!r} by {mv} at {game.key(pos)}")
        entries.append((pos, mv, move))
        pos = game.apply(pos, move)
        steps += 1


class FirstLegalResponder:
    """Default policy for a player with no winning strategy."""

    def choose(self, game, history, pos):
        return _ordered_moves(game, pos)[0]
