"""Command-line surface over the game engine.

All reports go to stdout as stable JSON (sorted keys, no timestamps);
timing goes to stderr so repeated runs are byte-identical on stdout.
Exit codes: 0 success, 1 user error, 2 verification failure, 3 internal
oracle disagreement.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time

import click

from .efgame import EFGame, solve_ef
from .evalgame import EvalGame, eval_game
from .kernel import ABELARD, ELOISE, GameError, PositionalStrategy, solve, verify_strategy
from .meg import Budget, ModelFound, Refuted, Unknown, dump_tableau, solve_meg
from .structures import StructureError, dump_structure, load_structure, tarski_truth
from .syntax import (FormulaError, infer_vocabulary as _infer, parse_formula,
                     print_formula, to_nnf)
from .translations import (distinguishing_sentence, phi_survives,
                           phi_translate, psi_translate, theta_transfer,
                           xi_a, xi_e)

USER_ERROR = 1
VERIFY_FAILED = 2
ORACLE_DISAGREEMENT = 3


def _fail(msg, code=USER_ERROR):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        _fail(str(e))


def _structure(path, identity=True):
    try:
        return load_structure(_read(path), identity_enabled=identity)
    except StructureError as e:
        _fail(str(e))


def _sha(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def infer_vocabulary(text):
    try:
        return _infer(text)
    except FormulaError as e:
        _fail(str(e))


def _formula(text, vocab):
    try:
        f = to_nnf(parse_formula(text, vocab))
    except FormulaError as e:
        _fail(str(e))
    return f


def _report(obj, started):
    click.echo(json.dumps(obj, indent=2, sort_keys=True))
    click.echo(f"elapsed: {time.perf_counter() - started:.3f}s", err=True)


@click.group()
def main():
    """Logic games over finite structures: evaluate, compare, prove, play."""


@main.command("eval")
@click.argument("model_file")
@click.argument("formula")
@click.option("--dump-strategy", type=click.Path(), default=None)
def cmd_eval(model_file, formula, dump_strategy):
    """Solve the evaluation game of FORMULA on MODEL_FILE."""
    t0 = time.perf_counter()
    m = _structure(model_file)
    phi = _formula(formula, m.vocab)
    try:
        game = eval_game(m, phi)
    except GameError as e:
        _fail(str(e))
    sol = solve(game)
    oracle = tarski_truth(m, phi, {})
    if (sol.winner == ELOISE) != oracle:
        _fail("game winner disagrees with the truth oracle", ORACLE_DISAGREEMENT)
    if dump_strategy:
        with open(dump_strategy, "w", encoding="utf-8") as fh:
            fh.write(sol.strategy.dump(game))
    _report({
        "command": "eval",
        "inputs": {"model": _sha(_read(model_file)), "formula": print_formula(phi)},
        "outcome": "true (eloise wins)" if oracle else "false (abelard wins)",
        "winner": sol.winner,
    }, t0)


@main.command("ef")
@click.argument("left_file")
@click.argument("right_file")
@click.option("--rounds", type=int, required=True)
@click.option("--dump-strategy", type=click.Path(), default=None)
def cmd_ef(left_file, right_file, rounds, dump_strategy):
    """Solve the ROUNDS-move comparison game between two structures."""
    t0 = time.perf_counter()
    m, n = _structure(left_file), _structure(right_file)
    try:
        game = EFGame(m, n, rounds)
    except GameError as e:
        _fail(str(e))
    sol = solve(game)
    if dump_strategy:
        with open(dump_strategy, "w", encoding="utf-8") as fh:
            fh.write(sol.strategy.dump(game))
    _report({
        "command": "ef",
        "inputs": {"left": _sha(_read(left_file)), "right": _sha(_read(right_file))},
        "rounds": rounds,
        "winner": sol.winner,
    }, t0)


@main.command("distinguish")
@click.argument("left_file")
@click.argument("right_file")
@click.option("--rounds", type=int, required=True)
def cmd_distinguish(left_file, right_file, rounds):
    """Emit a sentence true left, false right, or report equivalence."""
    t0 = time.perf_counter()
    m, n = _structure(left_file), _structure(right_file)
    try:
        phi = distinguishing_sentence(m, n, rounds)
    except GameError as e:
        _fail(str(e))
    if phi is None:
        outcome = f"elementarily {rounds}-equivalent"
        sentence = None
    else:
        if not tarski_truth(m, phi, {}) or tarski_truth(n, phi, {}):
            _fail("emitted sentence fails the truth oracle", ORACLE_DISAGREEMENT)
        outcome = "distinguished"
        sentence = print_formula(phi)
    _report({
        "command": "distinguish",
        "inputs": {"left": _sha(_read(left_file)), "right": _sha(_read(right_file))},
        "rounds": rounds,
        "outcome": outcome,
        "sentence": sentence,
    }, t0)


@main.command("meg")
@click.argument("formula")
@click.option("--max-consts", type=int, default=3, show_default=True)
@click.option("--max-steps", type=int, default=60, show_default=True)
@click.option("--dump-tableau", type=click.Path(), default=None)
@click.option("--dump-model", type=click.Path(), default=None)
def cmd_meg(formula, max_consts, max_steps, dump_tableau, dump_model):
    """Prove FORMULA unsatisfiable or build a model, within budget."""
    t0 = time.perf_counter()
    vocab = infer_vocabulary(formula)
    phi = _formula(formula, vocab)
    try:
        outcome = solve_meg(phi, Budget(max_consts, max_steps), vocab)
    except GameError as e:
        _fail(str(e))
    report = {
        "command": "meg",
        "inputs": {"formula": print_formula(phi),
                   "max_consts": max_consts, "max_steps": max_steps},
    }
    if isinstance(outcome, Refuted):
        report["outcome"] = "REFUTED"
        if dump_tableau:
            with open(dump_tableau, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(outcome.tableau, indent=2))
    elif isinstance(outcome, ModelFound):
        if not tarski_truth(outcome.structure, phi, {}):
            _fail("found model fails the truth oracle", ORACLE_DISAGREEMENT)
        report["outcome"] = "MODEL FOUND"
        report["model"] = json.loads(dump_structure(outcome.structure))
        if dump_model:
            with open(dump_model, "w", encoding="utf-8") as fh:
                fh.write(dump_structure(outcome.structure))
    else:
        report["outcome"] = f"UNKNOWN ({outcome.reason})"
    _report(report, t0)


@main.command("translate")
@click.argument("kind", type=click.Choice(["phi", "psi", "theta", "xi"]))
@click.option("--model", "model_file", default=None)
@click.option("--left", "left_file", default=None)
@click.option("--right", "right_file", default=None)
@click.option("--formula", default=None)
@click.option("--rounds", type=int, default=None)
@click.option("--max-consts", type=int, default=3, show_default=True)
@click.option("--max-steps", type=int, default=40, show_default=True)
def cmd_translate(kind, model_file, left_file, right_file, formula, rounds,
                  max_consts, max_steps):
    """Run a strategy translation end-to-end and verify its output."""
    t0 = time.perf_counter()
    budget = Budget(max_consts, max_steps)
    report = {"command": f"translate {kind}"}
    try:
        if kind == "phi":
            if not (model_file and formula):
                _fail("translate phi needs --model and --formula")
            m = _structure(model_file, identity=False)
            phi = _formula(formula, m.vocab)
            sol = solve(eval_game(m, phi))
            if sol.winner != ELOISE:
                _fail("formula is false in the model; no evaluation strategy to translate")
            ok, detail = phi_survives(sol.strategy, m, phi, budget, m.vocab)
            report["outcome"] = "VERIFIED" if ok else "FAILED"
            report["detail"] = detail
            if not ok:
                _report(report, t0)
                sys.exit(VERIFY_FAILED)
        elif kind == "psi":
            if not formula:
                _fail("translate psi needs --formula")
            vocab = infer_vocabulary(formula)
            phi = _formula(formula, vocab)
            outcome = solve_meg(phi, budget, vocab)
            if not isinstance(outcome, ModelFound):
                _fail(f"no model within budget ({type(outcome).__name__})")
            seed = solve(eval_game(outcome.structure, phi))
            tau = phi_translate(seed.strategy, outcome.structure, phi, budget)
            model, responder = psi_translate(tau, phi, budget, vocab)
            res = verify_strategy(eval_game(model, phi), responder, ELOISE)
            report["model"] = json.loads(dump_structure(model))
            report["outcome"] = "VERIFIED" if res.ok else "FAILED"
            if not res.ok:
                report["failing_play"] = [str(e) for e in res.failing_history]
                _report(report, t0)
                sys.exit(VERIFY_FAILED)
        elif kind == "theta":
            if not (left_file and right_file and formula and rounds is not None):
                _fail("translate theta needs --left, --right, --formula, --rounds")
            m, n = _structure(left_file), _structure(right_file)
            phi = _formula(formula, m.vocab)
            sigma = solve(eval_game(m, phi))
            if sigma.winner != ELOISE:
                _fail("formula is false in the left structure")
            w, tau = solve_ef(m, n, rounds)
            if w != ELOISE:
                _fail("the matcher loses the comparison game; nothing to transfer")
            th = theta_transfer(sigma.strategy, tau, m, n, phi, rounds)
            res = verify_strategy(eval_game(n, phi), th, ELOISE)
            report["outcome"] = "VERIFIED" if res.ok else "FAILED"
            if not res.ok:
                _report(report, t0)
                sys.exit(VERIFY_FAILED)
        else:
            if not (left_file and right_file and rounds is not None):
                _fail("translate xi needs --left, --right, --rounds")
            m, n = _structure(left_file), _structure(right_file)
            w, tau = solve_ef(m, n, rounds)
            psi_m, mirror = xi_e(m, rounds)
            res_e = verify_strategy(eval_game(m, psi_m), mirror, ELOISE)
            report["sentence"] = print_formula(psi_m)
            report["mirror"] = "VERIFIED" if res_e.ok else "FAILED"
            if w == ABELARD:
                res_a = verify_strategy(eval_game(n, psi_m), xi_a(tau, m, n, rounds), ABELARD)
                report["refuter"] = "VERIFIED" if res_a.ok else "FAILED"
            else:
                report["refuter"] = f"not applicable (winner {w})"
            report["outcome"] = ("VERIFIED" if res_e.ok and
                                 report["refuter"] != "FAILED" else "FAILED")
            if report["outcome"] == "FAILED":
                _report(report, t0)
                sys.exit(VERIFY_FAILED)
    except GameError as e:
        _fail(str(e))
    _report(report, t0)


@main.command("verify")
@click.option("--game", "game_kind", type=click.Choice(["eval", "ef"]), required=True)
@click.option("--model", "model_file", default=None)
@click.option("--left", "left_file", default=None)
@click.option("--right", "right_file", default=None)
@click.option("--formula", default=None)
@click.option("--rounds", type=int, default=None)
@click.option("--strategy", "strategy_file", required=True)
@click.option("--player", type=click.Choice([ELOISE, ABELARD]), required=True)
def cmd_verify(game_kind, model_file, left_file, right_file, formula, rounds,
               strategy_file, player):
    """Check a dumped strategy against every opponent line."""
    t0 = time.perf_counter()
    try:
        if game_kind == "eval":
            if not (model_file and formula):
                _fail("verify --game eval needs --model and --formula")
            m = _structure(model_file)
            game = eval_game(m, _formula(formula, m.vocab))
        else:
            if not (left_file and right_file and rounds is not None):
                _fail("verify --game ef needs --left, --right, --rounds")
            game = EFGame(_structure(left_file), _structure(right_file), rounds)
    except GameError as e:
        _fail(str(e))
    strategy = PositionalStrategy.load(_read(strategy_file), game)
    if strategy.player != player:
        _fail(f"strategy file is for {strategy.player}, not {player}")
    res = verify_strategy(game, strategy, player)
    _report({
        "command": "verify",
        "game": game_kind,
        "player": player,
        "outcome": "VERIFIED" if res.ok else f"FAILED ({res.reason})",
    }, t0)
    if not res.ok:
        sys.exit(VERIFY_FAILED)


@main.command("serve")
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--static-dir", type=click.Path(exists=True), default=None)
def cmd_serve(port, host, static_dir):
    """Serve the JSON session protocol (and optional static assets)."""
    import uvicorn

    from .server import create_app
    uvicorn.run(create_app(static_dir), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
