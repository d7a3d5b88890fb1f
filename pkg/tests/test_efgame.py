"""Back-and-forth comparison game properties."""

import itertools

from logicgames.corpus import VOCAB_PR, iso_representatives
from logicgames.efgame import EFGame, solve_ef
from logicgames.kernel import ABELARD, ELOISE, solve
from logicgames.structures import (bare_set, enumerate_structures,
                                   find_isomorphism, linear_order)


def _reps(limit):
    return iso_representatives(enumerate_structures(VOCAB_PR, 2))[:limit]


def test_more_rounds_only_help_the_challenger():
    reps = _reps(8)
    for m, n in itertools.product(reps, repeat=2):
        winners = [solve(EFGame(m, n, r)).winner for r in range(4)]
        # once Abelard wins at r rounds he wins at every larger r
        first = next((i for i, w in enumerate(winners) if w == ABELARD), None)
        if first is not None:
            assert all(w == ABELARD for w in winners[first:])


def test_winner_is_symmetric_in_the_two_structures():
    reps = _reps(8)
    for m, n in itertools.product(reps, repeat=2):
        assert solve(EFGame(m, n, 2)).winner == solve(EFGame(n, m, 2)).winner


def test_isomorphic_structures_never_lose():
    structs = list(itertools.islice(enumerate_structures(VOCAB_PR, 3), 60))
    for m, n in itertools.product(structs[:12], repeat=2):
        if find_isomorphism(m, n) is not None:
            assert solve(EFGame(m, n, 3)).winner == ELOISE


def test_zero_round_game_checks_the_empty_pairing():
    m, n = linear_order(2), linear_order(3)
    assert solve(EFGame(m, n, 0)).winner == ELOISE


def test_bare_sets_match_up_to_the_round_count():
    # same-size or both >= m: the matcher wins; otherwise the challenger
    for a, b in itertools.product(range(1, 6), repeat=2):
        for m in range(4):
            winner = solve(EFGame(bare_set(a), bare_set(b), m)).winner
            expected = ELOISE if (a == b or (a >= m and b >= m)) else ABELARD
            assert winner == expected, (a, b, m)


def test_linear_orders_paper_thresholds():
    assert solve_ef(linear_order(4), linear_order(5), 2)[0] == ELOISE
    assert solve_ef(linear_order(1), linear_order(2), 2)[0] == ABELARD
    assert solve_ef(linear_order(8), linear_order(9), 3)[0] == ELOISE
    assert solve_ef(linear_order(2), linear_order(3), 2)[0] == ABELARD
