"""HTTP session protocol for playing the games interactively.

One session holds one game with a fixed human role; the machine plays the
solver's positional strategy whenever it is winning and otherwise the
first legal move.  Model existence games are too large to solve up front,
so there the machine plays the fair enumeration schedule as the challenger
and the first legal move as the defender.  Each session's state is guarded
by a lock, so concurrent requests against one session serialize.
"""

from __future__ import annotations

import itertools
import json
import threading

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .efgame import EFGame
from .evalgame import eval_game
from .kernel import ABELARD, ELOISE, GameError, solve
from .meg import Budget, Sigma0, meg_game
from .structures import StructureError, load_structure
from .syntax import FormulaError, infer_vocabulary, parse_formula, to_nnf

ONGOING = "ongoing"
TRUNCATED = "truncated"


def _bad(status, msg):
    raise HTTPException(status_code=status, detail=msg)


class Session:
    def __init__(self, sid, kind, game, human, solution=None, scheduler=None,
                 step_bound=None):
        self.id = sid
        self.kind = kind
        self.game = game
        self.human = human
        self.machine = ABELARD if human == ELOISE else ELOISE
        self.solution = solution
        self.scheduler = scheduler
        self.step_bound = step_bound
        self.lock = threading.Lock()
        self.pos = game.initial()
        self.history = []  # (position, mover, move) as in kernel plays
        self.status = ONGOING
        self.opening = self._advance()

    # -- machine policy ------------------------------------------------------

    def _machine_move(self):
        game, pos = self.game, self.pos
        if self.scheduler is not None and self.machine == ABELARD:
            return self.scheduler.choose(game, tuple(self.history), pos)
        if self.solution is not None:
            key = game.key(pos)
            if self.solution.labels.get(key) == self.machine:
                return self.solution.strategy.moves[key]
        return min(game.legal_moves(pos), key=game.serialize_move)

    def _advance(self):
        """Let the machine move until it is the human's turn or the end."""
        played = []
        while self.status == ONGOING:
            mover = self.game.mover(self.pos)
            if isinstance(mover, tuple):
                self.status = f"{mover[1]}_won"
                break
            if self.step_bound is not None and len(self.history) >= self.step_bound:
                self.status = TRUNCATED
                break
            if mover == self.human:
                break
            mv = self._machine_move()
            if mv is None:
                # scheduler pass at saturation: the defender wins the play
                self.status = f"{self.game.bound_winner}_won"
                break
            self.history.append((self.pos, mover, mv))
            self.pos = self.game.apply(self.pos, mv)
            played.append(self.game.serialize_move(mv))
        return played

    def play_human(self, move_text):
        mover = self.game.mover(self.pos)
        if self.status != ONGOING or mover != self.human:
            _bad(422, "it is not your turn")
        legal = {self.game.serialize_move(m): m for m in self.game.legal_moves(self.pos)}
        mv = legal.get(move_text)
        if mv is None:
            _bad(422, f"illegal move; legal moves are {sorted(legal)}")
        self.history.append((self.pos, self.human, mv))
        self.pos = self.game.apply(self.pos, mv)
        return self._advance()

    # -- views ---------------------------------------------------------------

    def to_move(self):
        mover = self.game.mover(self.pos)
        return None if isinstance(mover, tuple) else mover

    def _display(self):
        """Render-ready view of the position; the client never re-derives it."""
        game, pos = self.game, self.pos
        if self.kind == "eval":
            from .syntax import print_formula
            sid, assign = pos
            return {"formula": print_formula(game.table.nodes[sid]),
                    "assignment": {v: e for v, e in sorted(assign)}}
        if self.kind == "ef":
            pairs, used, pending = pos
            return {"pairs": sorted(pairs), "used": used,
                    "pending": list(pending) if pending else None,
                    "left_domain": list(game.m.domain),
                    "right_domain": list(game.n.domain)}
        pairs, prompt = pos
        return {"pairs": [game.pair_json(p) for p in
                          sorted(pairs, key=game.pair_key)],
                "prompt": ({"kind": prompt[0], **game.pair_json(prompt[1])}
                           if prompt else None)}

    def state(self):
        return {
            "id": self.id,
            "game": self.kind,
            "human": self.human,
            "position": self.game.key(self.pos),
            "display": self._display(),
            "legal_moves": (sorted(self.game.serialize_move(m)
                                   for m in self.game.legal_moves(self.pos))
                            if self.status == ONGOING else []),
            "to_move": self.to_move() if self.status == ONGOING else None,
            "status": self.status,
        }

    def full_state(self):
        out = self.state()
        out["history"] = [{"player": p, "move": self.game.serialize_move(m)}
                          for _, p, m in self.history]
        return out

    def explain(self):
        if self.solution is None:
            _bad(422, "no solved table for this game kind")
        game, pos = self.game, self.pos
        mover = game.mover(pos)
        if isinstance(mover, tuple):
            return {}
        out = {}
        for mv in game.legal_moves(pos):
            child = game.apply(pos, mv)
            label = self._label(child)
            out[game.serialize_move(mv)] = ("winning" if label == mover
                                            else "losing")
        return out

    def _label(self, pos):
        """Winner at pos; the solver table is partial (it short-circuits)."""
        game = self.game
        mover = game.mover(pos)
        if isinstance(mover, tuple):
            return mover[1]
        key = game.key(pos)
        hit = self.solution.labels.get(key)
        if hit is None:
            kids = [self._label(game.apply(pos, m)) for m in game.legal_moves(pos)]
            hit = mover if mover in kids else kids[0]
            self.solution.labels[key] = hit
        return hit


def _load_structure(body, field):
    raw = body.get(field)
    if raw is None:
        _bad(422, f"missing field {field!r}")
    try:
        return load_structure(raw if isinstance(raw, str) else json.dumps(raw))
    except StructureError as e:
        _bad(422, f"{field}: {e}")


def _int_field(body, field, default=None):
    val = body.get(field, default)
    if not isinstance(val, int) or val < 0:
        _bad(422, f"field {field!r} must be a non-negative integer")
    return val


def create_app(static_dir=None):
    app = FastAPI(title="logicgames")
    sessions = {}
    counter = itertools.count(1)
    registry_lock = threading.Lock()

    def get_session(sid):
        sess = sessions.get(sid)
        if sess is None:
            _bad(404, "no such session")
        return sess

    @app.exception_handler(HTTPException)
    async def handle_http_error(request, exc):
        return JSONResponse(status_code=exc.status_code,
                            content={"error": exc.detail})

    @app.post("/session")
    async def create_session(body: dict):
        kind = body.get("game")
        human = body.get("human")
        if human not in (ELOISE, ABELARD):
            _bad(422, "field 'human' must be 'eloise' or 'abelard'")
        solution = scheduler = step_bound = None
        try:
            if kind == "eval":
                m = _load_structure(body, "model")
                phi = to_nnf(parse_formula(body.get("formula", ""), m.vocab))
                game = eval_game(m, phi)
                solution = solve(game)
            elif kind == "ef":
                left = _load_structure(body, "left")
                right = _load_structure(body, "right")
                game = EFGame(left, right, _int_field(body, "rounds"))
                solution = solve(game)
            elif kind == "meg":
                text = body.get("formula", "")
                vocab = infer_vocabulary(text)
                phi = to_nnf(parse_formula(text, vocab))
                budget = Budget(_int_field(body, "max_consts", 3),
                                _int_field(body, "max_steps", 60))
                game = meg_game(phi, budget, vocab)
                scheduler = Sigma0(game)
                step_bound = budget.max_steps
            else:
                _bad(422, "field 'game' must be 'eval', 'ef' or 'meg'")
        except (FormulaError, GameError) as e:
            _bad(422, str(e))
        with registry_lock:
            sid = str(next(counter))
            sess = Session(sid, kind, game, human, solution, scheduler, step_bound)
            sessions[sid] = sess
        out = sess.state()
        out["machine_moves"] = sess.opening
        return out

    @app.post("/session/{sid}/move")
    async def post_move(sid: str, body: dict):
        sess = get_session(sid)
        move = body.get("move")
        if not isinstance(move, str):
            _bad(422, "field 'move' must be a serialized move string")
        with sess.lock:
            machine_moves = sess.play_human(move)
            out = sess.state()
        out["machine_moves"] = machine_moves
        return out

    @app.get("/session/{sid}")
    async def get_state(sid: str):
        sess = get_session(sid)
        with sess.lock:
            return sess.full_state()

    @app.get("/session/{sid}/explain")
    async def get_explain(sid: str):
        sess = get_session(sid)
        with sess.lock:
            return sess.explain()

    if static_dir:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
