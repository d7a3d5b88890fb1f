"""Strategy translations preserve winning, exhaustively at desk scale."""

import itertools

import pytest

from logicgames.corpus import VOCAB_P, VOCAB_PR, meg_sentences, sentence_corpus
from logicgames.efgame import EFGame, solve_ef
from logicgames.evalgame import EvalGame, eval_game
from logicgames.kernel import ABELARD, ELOISE, solve, verify_strategy
from logicgames.meg import Budget, ModelFound, solve_meg
from logicgames.structures import (bare_set, enumerate_structures,
                                   linear_order, tarski_truth)
from logicgames.syntax import parse_formula, quantifier_rank
from logicgames.translations import (TranslationError, distinguishing_sentence,
                                     hintikka_formula, phi_survives,
                                     phi_translate, psi_translate,
                                     theta_transfer, xi_a, xi_e)


def _p_structs(size):
    return list(enumerate_structures(VOCAB_P, size))


def test_hintikka_rank_and_self_truth():
    for m in _p_structs(2) + [linear_order(2), bare_set(3)]:
        for rank in range(4):
            psi = hintikka_formula(m, rank)
            assert quantifier_rank(psi) == rank
            assert tarski_truth(m, psi, {})


def test_hintikka_open_formulas_describe_tuples():
    m = linear_order(3)
    for a in m.domain:
        psi = hintikka_formula(m, 1, {"x0": a})
        assert tarski_truth(m, psi, {"x0": a})
        for b in m.domain:
            same = tarski_truth(m, psi, {"x0": b})
            # the rank-1 description pins the element's order type exactly
            assert same == (b == a)


def test_hintikka_truth_matches_ef_winner():
    structs = [linear_order(k) for k in range(1, 5)]
    for m, n in itertools.product(structs, repeat=2):
        for rank in range(3):
            psi = hintikka_formula(m, rank)
            ef = solve(EFGame(m, n, rank)).winner
            assert (ef == ELOISE) == tarski_truth(n, psi, {})


def test_distinguishing_sentence_positive_and_negative():
    m, n = linear_order(1), linear_order(2)
    psi = distinguishing_sentence(m, n, 2)
    assert psi is not None
    assert quantifier_rank(psi) == 2
    assert tarski_truth(m, psi, {}) and not tarski_truth(n, psi, {})
    assert distinguishing_sentence(bare_set(3), bare_set(4), 3) is None
    assert distinguishing_sentence(linear_order(4), linear_order(4), 3) is None


def test_mirror_strategy_defends_the_description():
    for m in [linear_order(1), linear_order(2), bare_set(2)] + _p_structs(2):
        for rank in range(3):
            psi, strategy = xi_e(m, rank)
            assert verify_strategy(eval_game(m, psi), strategy, ELOISE).ok


def test_refuter_strategy_wins_on_the_other_structure():
    cases = [(linear_order(1), linear_order(2), 2),
             (linear_order(2), linear_order(3), 2),
             (bare_set(1), bare_set(3), 2)]
    for m, n in itertools.product(_p_structs(2), repeat=2):
        cases.append((m, n, 2))
    for m, n, rank in cases:
        winner, tau = solve_ef(m, n, rank)
        if winner != ABELARD:
            continue
        psi = hintikka_formula(m, rank)
        refuter = xi_a(tau, m, n, rank)
        assert verify_strategy(eval_game(n, psi), refuter, ABELARD).ok


def test_theta_transfers_truth_along_ef_wins():
    structs = _p_structs(2)
    sentences = [f for f in sentence_corpus(VOCAB_P, count=40)
                 if quantifier_rank(f) <= 2]
    for m, n in itertools.product(structs, repeat=2):
        winner, tau = solve_ef(m, n, 2)
        if winner != ELOISE:
            continue
        for phi in sentences:
            sigma = solve(eval_game(m, phi))
            if sigma.winner != ELOISE:
                continue
            moved = theta_transfer(sigma.strategy, tau, m, n, phi, 2)
            assert verify_strategy(eval_game(n, phi), moved, ELOISE).ok


def test_theta_rejects_formulas_deeper_than_the_rounds():
    m = linear_order(2)
    phi = parse_formula("forall x. exists y. (x = y | Lt(x, y))", m.vocab)
    sigma = solve(eval_game(m, phi))
    _, tau = solve_ef(m, m, 1)
    with pytest.raises(TranslationError):
        theta_transfer(sigma.strategy, tau, m, m, phi, 1)


def test_phi_survives_every_challenger_line():
    budget = Budget(3, 40)
    for m in _p_structs(2):
        for phi in sentence_corpus(VOCAB_P, count=30):
            sigma = solve(eval_game(m, phi))
            if sigma.winner != ELOISE:
                continue
            ok, _ = phi_survives(sigma.strategy, m, phi, budget, VOCAB_P)
            assert ok, (m, phi)


def test_phi_matches_exhaustive_verification():
    from logicgames.meg import meg_game
    budget = Budget(3, 40)
    m = _p_structs(2)[1]
    checked = 0
    for phi in sentence_corpus(VOCAB_P, count=25):
        sigma = solve(eval_game(m, phi))
        if sigma.winner != ELOISE:
            continue
        strategy = phi_translate(sigma.strategy, m, phi, budget)
        game = meg_game(phi, budget, VOCAB_P)
        res = verify_strategy(game, strategy, ELOISE, step_bound=budget.max_steps)
        ok, _ = phi_survives(sigma.strategy, m, phi, budget, VOCAB_P)
        assert res.ok == ok
        checked += 1
    assert checked >= 10


def test_psi_reads_models_off_winning_defenses():
    budget = Budget(3, 60)
    sat, _ = meg_sentences()
    done = 0
    for phi in sat[:8]:
        out = solve_meg(phi, budget, VOCAB_PR)
        assert isinstance(out, ModelFound)
        seed = solve(eval_game(out.structure, phi))
        tau = phi_translate(seed.strategy, out.structure, phi, budget)
        model, responder = psi_translate(tau, phi, budget, VOCAB_PR)
        assert tarski_truth(model, phi, {})
        assert verify_strategy(eval_game(model, phi), responder, ELOISE).ok
        done += 1
    assert done == 8
