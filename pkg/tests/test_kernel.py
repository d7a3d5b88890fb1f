"""Solver, verifier and play-out properties of the shared game kernel."""

import itertools

from logicgames.corpus import VOCAB_PR, sentence_corpus
from logicgames.efgame import EFGame
from logicgames.evalgame import eval_game
from logicgames.kernel import (ABELARD, ELOISE, FirstLegalResponder,
                               PositionalStrategy, opponent, play, solve,
                               verify_strategy)
from logicgames.structures import enumerate_structures, linear_order


def _small_games():
    structs = list(itertools.islice(enumerate_structures(VOCAB_PR, 2), 6))
    for m in structs:
        for f in sentence_corpus(VOCAB_PR, count=25):
            yield eval_game(m, f)
    for m, n in itertools.product(structs[:3], repeat=2):
        yield EFGame(m, n, 2)


def test_solver_strategy_always_verifies():
    for game in _small_games():
        sol = solve(game)
        assert sol.winner in (ELOISE, ABELARD)
        assert verify_strategy(game, sol.strategy, sol.winner).ok


def test_loser_has_no_winning_strategy():
    # zero-sum sanity: the solver's labels are consistent with the moves
    for game in itertools.islice(_small_games(), 40):
        sol = solve(game)
        loser = opponent(sol.winner)
        assert not verify_strategy(game, FirstLegalResponder(), loser).ok


def test_play_follows_strategy_to_a_win():
    for game in itertools.islice(_small_games(), 60):
        sol = solve(game)
        filler = FirstLegalResponder()
        pair = ((sol.strategy, filler) if sol.winner == ELOISE
                else (filler, sol.strategy))
        record = play(game, *pair)
        assert record.winner == sol.winner
        assert not record.truncated


def test_tampered_strategy_is_rejected():
    # some single-move edit must break the strategy, and the verifier sees it
    game = EFGame(linear_order(1), linear_order(2), 2)
    sol = solve(game)
    assert sol.winner == ABELARD
    positions = {}
    frontier = [game.initial()]
    while frontier:
        pos = frontier.pop()
        key = game.key(pos)
        if key in positions or isinstance(game.mover(pos), tuple):
            continue
        positions[key] = pos
        frontier.extend(game.apply(pos, m) for m in game.legal_moves(pos))
    broken = False
    for key, pos in sorted(positions.items()):
        if broken:
            break
        if key not in sol.strategy.moves:
            continue
        for alt in game.legal_moves(pos):
            if alt == sol.strategy.moves.get(key):
                continue
            bad = dict(sol.strategy.moves)
            bad[key] = alt
            if not verify_strategy(game, PositionalStrategy(ABELARD, bad), ABELARD).ok:
                broken = True
    assert broken


def test_strategy_dump_round_trip():
    game = EFGame(linear_order(1), linear_order(2), 2)
    sol = solve(game)
    again = PositionalStrategy.load(sol.strategy.dump(game), game)
    assert again.player == sol.strategy.player
    assert again.moves == sol.strategy.moves
    assert verify_strategy(game, again, ABELARD).ok
