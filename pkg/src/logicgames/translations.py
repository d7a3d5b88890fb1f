"""Strategy translations between the three games.

Each translation returns a stateless responder that re-derives its
bookkeeping from the play history, so exhaustive verification can branch
over opponent moves safely.
"""

from __future__ import annotations

from .efgame import EFGame, LEFT, RIGHT, solve_ef
from .evalgame import EvalGame
from .kernel import (ABELARD, BudgetExceeded, ELOISE, GameError, play,
                     _ordered_moves)
from .meg import (GammaResponder, Sigma0, build_model, const_index,
                  hintikka_saturated, meg_game)
from .structures import satisfies_literal
from .syntax import And, Exists, Forall, Lit, Or, Var, VERUM


class TranslationError(GameError):
    pass


# --- Hintikka formulas (the rank-m description of (M, s)) -------------------


def _dedup(items):
    out = []
    for x in items:
        if x not in out:
            out.append(x)
    return out


def _index_tuples(n, arity):
    out = [()]
    for _ in range(arity):
        out = [t + (i,) for t in out for i in range(n)]
    return out


class HintikkaBuilder:
    """Builds psi(rank, s-tuple) with structural deduplication.

    Children equal as formulas are merged, so the result is a shared DAG;
    interning keeps merged nodes identical objects.
    """

    def __init__(self, m):
        self.m = m
        self.memo = {}
        self.intern = {}

    def _mk(self, f):
        return self.intern.setdefault(f, f)

    def literal_conjuncts(self, stuple):
        n = len(stuple)
        lits = []
        for rel, arity in self.m.vocab.relations:
            for combo in _index_tuples(n, arity):
                args = tuple(Var(f"x{i}") for i in combo)
                positive = self.m.holds(rel, tuple(stuple[i] for i in combo))
                lits.append(Lit(positive, rel, args))
        if self.m.vocab.identity_enabled:
            for i in range(n):
                for j in range(i + 1, n):
                    lits.append(Lit(stuple[i] == stuple[j], "=",
                                    (Var(f"x{i}"), Var(f"x{j}"))))
        return lits

    def build(self, rank, stuple):
        key = (rank, stuple)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if rank == 0:
            lits = [self._mk(l) for l in self.literal_conjuncts(stuple)]
            if not lits:
                if stuple and self.m.vocab.identity_enabled:
                    lits = [self._mk(Lit(True, "=", (Var("x0"), Var("x0"))))]
                else:
                    lits = [self._mk(Lit(True, VERUM, ()))]
            out = lits[0] if len(lits) == 1 else self._mk(And(tuple(lits)))
        else:
            var = f"x{len(stuple)}"
            kids = self.kids(rank, stuple)
            or_part = kids[0] if len(kids) == 1 else self._mk(Or(tuple(kids)))
            forall_part = self._mk(Forall(var, or_part))
            ex_parts = _dedup([self._mk(Exists(var, k)) for k in kids])
            and_part = ex_parts[0] if len(ex_parts) == 1 else self._mk(And(tuple(ex_parts)))
            out = self._mk(And((forall_part, and_part)))
        self.memo[key] = out
        return out

    def kids(self, rank, stuple):
        """Deduplicated successor formulas, in domain order of first witness."""
        return _dedup([self.build(rank - 1, stuple + (a,)) for a in self.m.domain])

    def preimage(self, rank, stuple, child):
        """First element whose successor formula equals ``child``."""
        for a in self.m.domain:
            if self.build(rank - 1, stuple + (a,)) == child:
                return a
        raise TranslationError("formula is not a successor of this tuple")


_builders = {}


def _builder(m):
    b = _builders.get(m)
    if b is None:
        b = _builders[m] = HintikkaBuilder(m)
    return b


def hintikka_formula(m, rank, s=None):
    """psi with the given quantifier rank describing (m, s).

    s must assign exactly x0..x_{n-1}; the result's free variables are a
    subset of those and its quantifier rank is exactly ``rank``.
    """
    s = s or {}
    expected = {f"x{i}" for i in range(len(s))}
    if set(s) != expected:
        raise TranslationError(f"assignment must cover exactly {sorted(expected)}")
    stuple = tuple(s[f"x{i}"] for i in range(len(s)))
    return _builder(m).build(rank, stuple)


def distinguishing_sentence(m, n, rounds):
    """A rank-``rounds`` sentence true in m and false in n, if one exists.

    One exists exactly when Abelard wins the ``rounds``-move comparison game.
    """
    winner, _ = solve_ef(m, n, rounds)
    if winner != ABELARD:
        return None
    return hintikka_formula(m, rounds)


# --- Eloise wins her own description: G(M, psi(rank, M)) --------------------
#
# Evaluation positions inside a Hintikka formula are re-derived from the
# move history by a small automaton over the modes
#   TOP(rank, t) > FORALL > OR > TOP(rank-1, t+(a,))
#   TOP(rank, t) > BIGAND > EXISTS > TOP(rank-1, t+(a,))
# where collapsed singletons (deduplicated one-child Or / big-And) skip
# their mode.  t is the tuple of elements bound to x0..x_{n-1} so far.


class _XiE:
    """Mirror responder: Abelard's element choices are echoed back.

    The invariant is that the current node equals psi(rank, t) for the
    tuple t of elements actually bound in the game, so at rank 0 every
    literal conjunct is satisfied by construction.
    """

    player = ELOISE

    def __init__(self, m, rank):
        self.b = _builder(m)
        self.rank = rank

    def _replay(self, history):
        mode, rank, t, pend = "TOP", self.rank, (), None
        for _, _, move in history:
            if mode == "TOP":
                if rank == 0:
                    mode = "DONE"
                elif move == 0:
                    mode = "FORALL"
                else:
                    and_part = self.b.build(rank, t).children[1]
                    if isinstance(and_part, Exists):
                        mode, pend = "EXISTS", self.b.preimage(rank, t, and_part.body)
                    else:
                        mode = "BIGAND"
            elif mode == "FORALL":
                if len(self.b.kids(rank, t)) == 1:
                    mode, rank, t = "TOP", rank - 1, t + (move,)
                else:
                    mode, pend = "OR", move
            elif mode == "OR":
                mode, rank, t, pend = "TOP", rank - 1, t + (pend,), None
            elif mode == "BIGAND":
                chosen = self.b.build(rank, t).children[1].children[move]
                pend = self.b.preimage(rank, t, chosen.body)
                mode = "EXISTS"
            elif mode == "EXISTS":
                mode, rank, t, pend = "TOP", rank - 1, t + (move,), None
            else:
                raise TranslationError("move after the game ended")
        return mode, rank, t, pend

    def choose(self, game, history, pos):
        mode, rank, t, pend = self._replay(history)
        if mode == "OR":
            or_part = self.b.build(rank, t).children[0].body
            return or_part.children.index(self.b.build(rank - 1, t + (pend,)))
        if mode == "EXISTS":
            return pend
        raise TranslationError(f"no move expected in mode {mode}")


def xi_e(m, rank):
    """The description of m at the given rank, with its winning defense."""
    return _builder(m).build(rank, ()), _XiE(m, rank)


# --- Abelard refutes the description elsewhere: G(N, psi(rank, M)) ----------


def _choose_or_first(responder, game, history, pos):
    try:
        move = responder.choose(game, tuple(history), pos)
    except Exception:  # noqa: BLE001 - fall back to a legal move
        move = None
    if move is None or move not in game.legal_moves(pos):
        move = _ordered_moves(game, pos)[0]
    return move


class _XiA:
    """Drives the evaluation of psi(rank, M) in n by a comparison strategy.

    tau's picks dictate the conjunct choices; the element replies collected
    from the evaluation game feed back into the simulated comparison play,
    so tau winning there forces an unsatisfied literal at rank 0 here.
    """

    player = ABELARD

    def __init__(self, tau, m, n, rank):
        self.tau = tau
        self.m = m
        self.n = n
        self.rank = rank
        self.b = _builder(m)
        self.ef = EFGame(m, n, rank)

    def _tau_move(self, ef_hist, pairs, used):
        pos = (frozenset(pairs), used, None)
        return _choose_or_first(self.tau, self.ef, ef_hist, pos)

    def _replay(self, history):
        mode, rank, t = "TOP", self.rank, ()
        pend = None  # formula-side element of the pending round
        pick = None  # tau's comparison move for the pending round
        ef_hist, pairs, used = [], set(), 0
        for _, _, move in history:
            closed = None  # (a, b) when this move completes a round
            if mode == "TOP":
                if rank == 0:
                    mode = "DONE"
                    continue
                pick = self._tau_move(ef_hist, pairs, used)
                ef_hist.append(((frozenset(pairs), used, None), ABELARD, pick))
                if move == 0:
                    mode = "FORALL"
                else:
                    and_part = self.b.build(rank, t).children[1]
                    if isinstance(and_part, Exists):
                        mode, pend = "EXISTS", pick[1]
                    else:
                        mode = "BIGAND"
            elif mode == "FORALL":
                # our move: tau's n-side element, bound to the quantifier
                if len(self.b.kids(rank, t)) == 1:
                    a = self.b.preimage(rank, t, self.b.kids(rank, t)[0])
                    mode, rank, t = "TOP", rank - 1, t + (a,)
                    closed = (a, move)
                else:
                    mode = "OR"
            elif mode == "OR":
                or_part = self.b.build(rank, t).children[0].body
                a = self.b.preimage(rank, t, or_part.children[move])
                mode, rank, t = "TOP", rank - 1, t + (a,)
                closed = (a, pick[1])
            elif mode == "BIGAND":
                mode, pend = "EXISTS", pick[1]
            elif mode == "EXISTS":
                a = pend
                mode, rank, t, pend = "TOP", rank - 1, t + (a,), None
                closed = (a, move)
            else:
                raise TranslationError("move after the game ended")
            if closed is not None:
                a, bb = closed
                reply = bb if pick[0] == LEFT else a
                ef_hist.append(((frozenset(pairs), used, pick), ELOISE, reply))
                pairs.add((a, bb))
                used += 1
                pick = None
        return mode, rank, t, pick, ef_hist, pairs, used

    def choose(self, game, history, pos):
        mode, rank, t, pick, ef_hist, pairs, used = self._replay(history)
        if mode == "TOP" and rank > 0:
            pick = self._tau_move(ef_hist, pairs, used)
            return 0 if pick[0] == RIGHT else 1
        if mode == "FORALL":
            return pick[1]
        if mode == "BIGAND":
            and_part = self.b.build(rank, t).children[1]
            var = f"x{len(t)}"
            target = Exists(var, self.b.build(rank - 1, t + (pick[1],)))
            return and_part.children.index(target)
        if mode == "TOP" and rank == 0:
            node = game.node(pos)
            s = game.assignment(pos)
            for i, lit in enumerate(node.children):
                if not satisfies_literal(game.m, lit, s):
                    return i
            return 0  # tau was not winning after all; any conjunct is legal
        raise TranslationError(f"no move expected in mode {mode}")


def xi_a(tau, m, n, rank):
    return _XiA(tau, m, n, rank)


# --- truth transfer along a comparison strategy (G(M,phi) to G(N,phi)) ------


class _Theta:
    """Plays G(N, phi) by shadowing G(M, phi) and the comparison game.

    Quantifier moves cross the comparison game: Abelard's n-elements are
    answered by tau with m-elements fed to sigma's game, and sigma's
    m-witnesses are answered by tau with n-elements played here.  Connective
    moves are relayed verbatim (the two games share the formula).
    """

    player = ELOISE

    def __init__(self, sigma, tau, m, n, phi, rounds):
        self.sigma = sigma
        self.tau = tau
        self.phi = phi
        self.mgame = EvalGame(m, phi)
        self.ef = EFGame(m, n, rounds)

    def _tau_reply(self, ef_hist, pairs, used, pick):
        ef_hist.append(((frozenset(pairs), used, None), ABELARD, pick))
        pos = (frozenset(pairs), used, pick)
        reply = _choose_or_first(self.tau, self.ef, ef_hist, pos)
        ef_hist.append((pos, ELOISE, reply))
        return reply

    def _sigma_move(self, mhist, mpos):
        return _choose_or_first(self.sigma, self.mgame, mhist, mpos)

    def _step_m(self, mhist, mpos, mover, move):
        mhist.append((mpos, mover, move))
        return self.mgame.apply(mpos, move)

    def _check_square(self, game, pos, mpos, pairs):
        s = game.assignment(pos)
        ms = self.mgame.assignment(mpos)
        for v, b in s.items():
            if (ms[v], b) not in pairs:
                raise TranslationError("shadow assignments fell out of step")

    def _replay(self, game, history, final_pos):
        mhist, mpos = [], self.mgame.initial()
        ef_hist, pairs, used = [], set(), 0
        for pos, mover, move in history:
            node = game.node(pos)
            if isinstance(node, (And, Or)):
                mpos = self._step_m(mhist, mpos, mover, move)
            elif isinstance(node, Forall):
                # Abelard bound an n-element; tau supplies the m-side twin
                a = self._tau_reply(ef_hist, pairs, used, (RIGHT, move))
                pairs.add((a, move))
                used += 1
                mpos = self._step_m(mhist, mpos, mover, a)
            else:
                a = self._sigma_move(mhist, mpos)
                b = self._tau_reply(ef_hist, pairs, used, (LEFT, a))
                pairs.add((a, b))
                used += 1
                mpos = self._step_m(mhist, mpos, mover, a)
        self._check_square(game, final_pos, mpos, pairs)
        return mhist, mpos, ef_hist, pairs, used

    def choose(self, game, history, pos):
        mhist, mpos, ef_hist, pairs, used = self._replay(game, history, pos)
        node = game.node(pos)
        if isinstance(node, Or):
            return self._sigma_move(mhist, mpos)
        if isinstance(node, Exists):
            a = self._sigma_move(mhist, mpos)
            return self._tau_reply(ef_hist, pairs, used, (LEFT, a))
        raise TranslationError(f"no move expected at {game.key(pos)}")


def theta_transfer(sigma, tau, m, n, phi, rounds):
    """Eloise's strategy for G(n, phi) from her strategies for G(m, phi)
    and the ``rounds``-move comparison game; needs rank(phi) <= rounds."""
    from .syntax import quantifier_rank
    if quantifier_rank(phi) > rounds:
        raise TranslationError("formula rank exceeds the comparison rounds")
    return _Theta(sigma, tau, m, n, phi, rounds)


# --- from evaluation to model existence (G(M,phi) to MEG(phi)) --------------


class _Phi:
    """Answers MEG prompts by shadow-playing tau in G(m, phi).

    Constants name elements through the fixed onto map pi(c_i) =
    domain[i mod |m|]; every pair of the MEG position is kept a constant
    translation of a tau-position, checked on every simulation step.
    """

    player = ELOISE

    def __init__(self, tau, m, phi):
        self.tau = tau
        self.m = m
        self.egame = EvalGame(m, phi)

    def pi(self, c):
        return self.m.domain[const_index(c) % len(self.m.domain)]

    def _derivations(self, game, history):
        """pair -> (parent pair, rule, datum), read off the play so far."""
        derivs = {game._root: None}

        def reg(child, entry):
            derivs.setdefault(child, entry)

        for p, mover, move in history:
            kind = move[0]
            if kind == "and":
                reg(game.child_pair(move[1], move[2]), (move[1], "and", move[2]))
            elif kind == "all":
                reg(game.child_pair(move[1], None, move[2]), (move[1], "all", move[2]))
            elif kind == "pick":
                pair = p[1][1]
                reg(game.child_pair(pair, move[1]), (pair, "or", move[1]))
            elif kind == "wit":
                pair = p[1][1]
                reg(game.child_pair(pair, None, move[1]), (pair, "ex", move[1]))
        return derivs

    def _sim(self, game, derivs, pair, memo):
        """The shadow evaluation play reaching this pair's translation."""
        hit = memo.get(pair)
        if hit is not None:
            return hit
        if derivs[pair] is None:
            out = ((), self.egame.initial())
        else:
            parent, kind, datum = derivs[pair]
            hist, ppos = self._sim(game, derivs, parent, memo)
            if kind in ("and", "or"):
                mover, mv = (ABELARD if kind == "and" else ELOISE), datum
            else:
                mover, mv = (ABELARD if kind == "all" else ELOISE), self.pi(datum)
            out = (hist + ((ppos, mover, mv),), self.egame.apply(ppos, mv))
        sid, assign = pair
        if out[1] != (sid, frozenset((v, self.pi(c)) for v, c in assign)):
            raise TranslationError("pair is not a constant translation")
        memo[pair] = out
        return out

    def answer(self, game, derivs, pairs, prompt, memo):
        kind, pair = prompt
        hist, epos = self._sim(game, derivs, pair, memo)
        choice = self.tau.choose(self.egame, hist, epos)
        if kind == "or":
            return ("pick", choice)
        options = [c for _, c in game.legal_moves((pairs, prompt))]
        cands = sorted((c for c in options if self.pi(c) == choice), key=const_index)
        if not cands:
            raise BudgetExceeded(f"no constant names the witness {choice!r}")
        return ("wit", cands[0])

    def choose(self, game, history, pos):
        pairs, prompt = pos
        if prompt is None:
            raise TranslationError("this responder answers prompts only")
        derivs = self._derivations(game, history)
        return self.answer(game, derivs, pairs, prompt, {})


def phi_translate(tau, m, phi, budget=None):
    """Eloise's model-existence strategy from her evaluation strategy.

    The budget only shapes the game the responder is played in; the
    responder itself needs no bound.
    """
    return _Phi(tau, m, phi)


def phi_survives(tau, m, phi, budget, vocab):
    """Exhaustive check that phi_translate(tau, ...) never loses.

    The translated responder answers each prompt by its pair alone (the
    shadow position is determined by the pair and tau is positional), so
    the union of all reachable pairs is a single deterministic closure:
    no play can meet a contradiction iff the closure is contradiction-free.
    Returns (ok, detail) where detail is the closure size or the clash.
    """
    game = meg_game(phi, budget, vocab)
    resp = _Phi(tau, m, phi)
    derivs = {game._root: None}
    memo = {}
    closure = [game._root]
    seen = {game._root}
    consts = [f"c{i}" for i in range(budget.max_consts)]
    i = 0
    while i < len(closure):
        pair = closure[i]
        i += 1
        sid, assign = pair
        node = game.table.nodes[sid]
        added = []
        if isinstance(node, And):
            for j in range(len(node.children)):
                added.append((game.child_pair(pair, j), (pair, "and", j)))
        elif isinstance(node, Or):
            move = resp.answer(game, derivs, frozenset(seen), ("or", pair), memo)
            added.append((game.child_pair(pair, move[1]), (pair, "or", move[1])))
        elif isinstance(node, Forall):
            for c in consts:
                added.append((game.child_pair(pair, None, c), (pair, "all", c)))
        elif isinstance(node, Exists):
            move = resp.answer(game, derivs, frozenset(), ("ex", pair), memo)
            added.append((game.child_pair(pair, None, move[1]), (pair, "ex", move[1])))
        for child, entry in added:
            derivs.setdefault(child, entry)
            if child not in seen:
                seen.add(child)
                closure.append(child)
    clash = game.contradiction(frozenset(seen))
    if clash:
        return False, [game.pair_key(p) for p in clash]
    for pair in closure:
        resp._sim(game, derivs, pair, memo)  # re-assert the translation invariant
    return True, len(closure)


# --- from model existence to a model and its evaluation strategy ------------


def psi_translate(tau, phi, budget, vocab):
    """Play tau against the enumeration scheduler; read off model + defense.

    Raises unless the play saturates without contradiction (a refuted or
    truncated play yields no model).
    """
    game = meg_game(phi, budget, vocab)
    rec = play(game, tau, Sigma0(game), step_bound=budget.max_steps)
    gamma = rec.final[0]
    if rec.truncated or game.contradiction(gamma) or not hintikka_saturated(gamma, game):
        raise TranslationError("the scheduled play did not saturate")
    model = build_model(gamma, phi, vocab, game)
    return model, GammaResponder(gamma, game)
