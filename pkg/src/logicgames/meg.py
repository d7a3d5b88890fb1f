"""The model existence game MEG(phi), solved under explicit finite budgets.

Abelard schedules tableau rules; Eloise answers disjunction and witness
prompts.  A contradictory pair of literals ends the game for Abelard; a
play in which nothing remains to fire (saturation) certifies a model.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .kernel import ABELARD, ELOISE, Game, GameError
from .structures import Structure, make_structure
from .syntax import (And, Const, Exists, Forall, Lit, Or, SubformulaTable,
                     is_nnf, is_sentence, print_formula)

_CONST = re.compile(r"^c(\d+)$")


@dataclass(frozen=True)
class Budget:
    max_consts: int = 3
    max_steps: int = 60

    def __post_init__(self):
        if self.max_consts < 1 or self.max_steps < 1:
            raise GameError("budget must be positive")


def _check_meg_formula(phi, vocab):
    if not is_nnf(phi) or not is_sentence(phi):
        raise GameError("MEG needs an NNF sentence")
    if vocab.identity_enabled:
        raise GameError("MEG supports identity-free vocabularies only")
    if vocab.constants:
        raise GameError("MEG supports relational vocabularies without constants")

    def no_consts(f):
        if isinstance(f, Lit):
            if any(isinstance(a, Const) for a in f.args):
                raise GameError("MEG formulas may not contain constants")
        elif isinstance(f, (And, Or)):
            for c in f.children:
                no_consts(c)
        else:
            no_consts(f.body)

    no_consts(phi)


def const_index(c):
    return int(_CONST.match(c).group(1))


def fresh_const(used):
    taken = {const_index(c) for c in used}
    i = 0
    while i in taken:
        i += 1
    return f"c{i}"


class MEGGame(Game):
    """Positions: (frozenset of (sid, assignment) pairs, pending prompt).

    Assignments map the free variables of the subformula to C-constants.
    Moves that cannot add a new pair are illegal, so every move grows the
    position and plays are finite; a drained position is an Eloise win.
    """

    bound_winner = ELOISE

    def __init__(self, phi, budget, vocab):
        _check_meg_formula(phi, vocab)
        self.phi = phi
        self.vocab = vocab
        self.budget = budget
        self.table = SubformulaTable.build(phi)
        self._root = (0, frozenset())

    def initial(self):
        return (frozenset([self._root]), None)

    # -- pair helpers --------------------------------------------------------

    def child_pair(self, pair, branch, const=None):
        """The pair added by firing a rule on ``pair``.

        branch is the child index for And/Or; const is the instantiating
        constant for quantifiers (branch ignored).
        """
        sid, assign = pair
        node = self.table.nodes[sid]
        s = dict(assign)
        if isinstance(node, (And, Or)):
            child = self.table.children[sid][branch]
        else:
            s[node.var] = const
            child = self.table.children[sid][0]
        live = self.table.free[child]
        return (child, frozenset((v, s[v]) for v in live))

    def constants_used(self, pairs):
        return {c for _, assign in pairs for _, c in assign}

    def witness_options(self, pairs):
        """Every constant within the budget, used or not.

        The second component flags that no fresh constant was among the
        options (all of them already occur in the position); a refutation
        that branched over a capped choice space is not trustworthy, since
        fresh constants are interchangeable but absent ones are not.
        """
        opts = [f"c{i}" for i in range(self.budget.max_consts)]
        capped = len(self.constants_used(pairs)) >= self.budget.max_consts
        return opts, capped

    def contradiction(self, pairs):
        seen = {}
        for pair in pairs:
            sid, assign = pair
            node = self.table.nodes[sid]
            if not isinstance(node, Lit):
                continue
            s = dict(assign)
            key = (node.rel, tuple(s[a.name] for a in node.args))
            other = seen.get((key, not node.positive))
            if other is not None:
                return (other, pair) if node.positive else (pair, other)
            seen.setdefault((key, node.positive), pair)
        return None

    # -- game interface ------------------------------------------------------

    def mover(self, pos):
        pairs, prompt = pos
        if prompt is not None:
            return ELOISE
        if self.contradiction(pairs):
            return ("terminal", ABELARD)
        if not self.abelard_moves(pairs):
            return ("terminal", ELOISE)
        return ABELARD

    def abelard_moves(self, pairs):
        moves = []
        consts, _ = self.witness_options(pairs)
        known = sorted(self.constants_used(pairs), key=const_index) or ["c0"]
        for pair in pairs:
            sid, _ = pair
            node = self.table.nodes[sid]
            if isinstance(node, And):
                for i in range(len(node.children)):
                    if self.child_pair(pair, i) not in pairs:
                        moves.append(("and", pair, i))
            elif isinstance(node, Or):
                if not any(self.child_pair(pair, i) in pairs
                           for i in range(len(node.children))):
                    moves.append(("or", pair))
            elif isinstance(node, Forall):
                for c in consts:
                    if self.child_pair(pair, None, c) not in pairs:
                        moves.append(("all", pair, c))
            elif isinstance(node, Exists):
                if not any(self.child_pair(pair, None, c) in pairs for c in known):
                    moves.append(("ex", pair))
        return moves

    def legal_moves(self, pos):
        pairs, prompt = pos
        if prompt is None:
            return self.abelard_moves(pairs)
        kind, pair = prompt
        if kind == "or":
            node = self.table.nodes[pair[0]]
            return [("pick", i) for i in range(len(node.children))
                    if self.child_pair(pair, i) not in pairs]
        consts, _ = self.witness_options(pairs)
        return [("wit", c) for c in consts
                if self.child_pair(pair, None, c) not in pairs]

    def apply(self, pos, move):
        pairs, prompt = pos
        if prompt is None:
            kind = move[0]
            if kind == "and":
                return (pairs | {self.child_pair(move[1], move[2])}, None)
            if kind == "all":
                return (pairs | {self.child_pair(move[1], None, move[2])}, None)
            return (pairs, (("or" if kind == "or" else "ex"), move[1]))
        kind, pair = prompt
        if move[0] == "pick":
            return (pairs | {self.child_pair(pair, move[1])}, None)
        return (pairs | {self.child_pair(pair, None, move[1])}, None)

    def pair_key(self, pair):
        sid, assign = pair
        return f"{sid}|" + ",".join(f"{v}={c}" for v, c in sorted(assign))

    def key(self, pos):
        pairs, prompt = pos
        out = ";".join(sorted(self.pair_key(p) for p in pairs))
        if prompt is not None:
            out += f"|prompt={prompt[0]}:{self.pair_key(prompt[1])}"
        return out

    def serialize_move(self, move):
        kind = move[0]
        if kind in ("and", "or", "ex"):
            data = [kind, self.pair_key(move[1])] + ([move[2]] if kind == "and" else [])
        elif kind == "all":
            data = [kind, self.pair_key(move[1]), move[2]]
        else:
            data = list(move)
        return json.dumps(data)

    def pair_json(self, pair):
        sid, assign = pair
        return {"formula": print_formula(self.table.nodes[sid]),
                "assignment": {v: c for v, c in sorted(assign)}}


def meg_game(phi, budget, vocab):
    return MEGGame(phi, budget, vocab)


# --- sigma0: Abelard's fair enumeration strategy ----------------------------


class Sigma0:
    """Abelard's bookkeeping strategy: fire pending obligations FIFO.

    The queue is reconstructed from the play history, so the same object can
    be used across branched plays.  Returns None when the queue drains
    (saturation): the play ends and Eloise wins.
    """

    player = ABELARD

    def __init__(self, game):
        self.game = game

    def _pairs_in_order(self, game, history, pos):
        ordered = [game._root]
        seen = {game._root}
        for p, _, _ in list(history) + [(pos, None, None)]:
            for pair in sorted(p[0] - seen, key=game.pair_key):
                ordered.append(pair)
                seen.add(pair)
        return ordered

    def choose(self, game, history, pos):
        pairs, prompt = pos
        if prompt is not None:
            raise GameError("sigma0 plays Abelard only")
        ordered = self._pairs_in_order(game, history, pos)
        queue = []
        known = []
        forall_pairs = []

        def note_consts(pair):
            for _, c in pair[1]:
                if c not in known:
                    known.append(c)
                    for fp in forall_pairs:
                        queue.append(("all", fp, c))

        for pair in ordered:
            node = game.table.nodes[pair[0]]
            note_consts(pair)
            if isinstance(node, And):
                for i in range(len(node.children)):
                    queue.append(("and", pair, i))
            elif isinstance(node, Or):
                queue.append(("or", pair))
            elif isinstance(node, Forall):
                forall_pairs.append(pair)
                for c in (known or ["c0"]):
                    queue.append(("all", pair, c))
            elif isinstance(node, Exists):
                queue.append(("ex", pair))

        legal = set(map(game.serialize_move, game.abelard_moves(pairs)))
        for task in queue:
            if game.serialize_move(task) in legal:
                return task
        return None  # saturation: nothing left to fire


def sigma0(phi, budget, vocab):
    return Sigma0(meg_game(phi, budget, vocab))


# --- outcomes ----------------------------------------------------------------


@dataclass
class Refuted:
    tableau: dict  # JSON-ready tree

    def __bool__(self):
        return False


@dataclass
class ModelFound:
    structure: Structure
    eloise_strategy: object  # Responder for G(structure, phi)
    gamma: frozenset

    def __bool__(self):
        return True


@dataclass
class Unknown:
    reason: str  # "constants-exhausted" | "steps-exhausted"


def build_model(gamma, phi, vocab, game=None):
    """Read a structure off a saturated, contradiction-free position set."""
    game = game or meg_game(phi, Budget(), vocab)
    if game.contradiction(gamma):
        raise GameError("cannot build a model from a contradictory position")
    consts = sorted(game.constants_used(gamma), key=const_index) or ["c0"]
    relations = {}
    for sid, assign in gamma:
        node = game.table.nodes[sid]
        if isinstance(node, Lit) and node.positive:
            s = dict(assign)
            relations.setdefault(node.rel, []).append(tuple(s[a.name] for a in node.args))
    return make_structure(vocab, consts, relations)


def hintikka_saturated(pairs, game):
    """Is the position closed under every obligation, with no contradiction?"""
    if game.contradiction(pairs):
        return False
    consts = game.constants_used(pairs)
    for pair in pairs:
        node = game.table.nodes[pair[0]]
        if isinstance(node, And):
            if any(game.child_pair(pair, i) not in pairs
                   for i in range(len(node.children))):
                return False
        elif isinstance(node, Or):
            if not any(game.child_pair(pair, i) in pairs
                       for i in range(len(node.children))):
                return False
        elif isinstance(node, Forall):
            if any(game.child_pair(pair, None, c) not in pairs for c in consts):
                return False
        elif isinstance(node, Exists):
            if not any(game.child_pair(pair, None, c) in pairs for c in (consts or [])):
                return False
    return True


# --- Eloise's strategy read off Gamma (the Psi construction) ----------------


class GammaResponder:
    """Eloise in G(M(tau), phi): keep the current pair inside Gamma."""

    player = ELOISE

    def __init__(self, gamma, meg: MEGGame):
        self.gamma = gamma
        self.meg = meg

    def choose(self, game, history, pos):
        sid, assign = pos
        node = game.table.nodes[sid]
        s = dict(assign)
        if isinstance(node, Or):
            for i in range(len(node.children)):
                if self._pair_for(sid, i, s) in self.gamma:
                    return i
            raise GameError("no disjunct of the current pair is recorded")
        if isinstance(node, Exists):
            consts = sorted(self.meg.constants_used(self.gamma), key=const_index)
            for c in consts:
                if self._pair_for(sid, 0, {**s, node.var: c}) in self.gamma:
                    return c
            raise GameError("no witness for the current pair is recorded")
        raise GameError(f"Eloise has no move at {game.key(pos)}")

    def _pair_for(self, sid, i, s):
        child = self.meg.table.children[sid][i]
        live = self.meg.table.free[child]
        return (child, frozenset((v, s[v]) for v in live))


# --- bounded solver (tableau search) ----------------------------------------

_GLOBAL_NODE_CAP = 500_000


def solve_meg(phi, budget, vocab):
    """Refute phi, find a model, or give up within the budget.

    Abelard fires obligations in fair FIFO order (shallow refutations come
    out deterministic); the search branches over Eloise's disjunct and
    witness choices.  All branches contradictory => Refuted with the branch
    tree as a Beth tableau; a saturated branch => ModelFound; otherwise
    Unknown naming the exhausted resource.
    """
    game = meg_game(phi, budget, vocab)
    fired_total = [0]

    def queue_for(ordered, pairs):
        # FIFO obligations in pair-arrival order, mirroring Sigma0.
        queue = []
        known = []
        forall_pairs = []
        for pair in ordered:
            for _, c in sorted(pair[1]):
                if c not in known:
                    known.append(c)
                    queue.extend(("all", fp, c) for fp in forall_pairs)
            node = game.table.nodes[pair[0]]
            if isinstance(node, And):
                queue.extend(("and", pair, i) for i in range(len(node.children)))
            elif isinstance(node, Or):
                queue.append(("or", pair))
            elif isinstance(node, Forall):
                forall_pairs.append(pair)
                queue.extend(("all", pair, c) for c in (known or ["c0"]))
            elif isinstance(node, Exists):
                queue.append(("ex", pair))
        return queue

    def applicable(task, pairs):
        kind, pair = task[0], task[1]
        node = game.table.nodes[pair[0]]
        if kind == "and":
            return game.child_pair(pair, task[2]) not in pairs
        if kind == "or":
            return not any(game.child_pair(pair, i) in pairs
                           for i in range(len(node.children)))
        if kind == "all":
            return game.child_pair(pair, None, task[2]) not in pairs
        known = game.constants_used(pairs)
        return not any(game.child_pair(pair, None, c) in pairs for c in known)

    def search(ordered, pairs, steps):
        if fired_total[0] > _GLOBAL_NODE_CAP:
            return ("unknown", "steps-exhausted")
        contra = game.contradiction(pairs)
        if contra:
            return ("refuted", {"contradiction": [game.pair_json(p) for p in contra]})
        if steps >= budget.max_steps:
            return ("unknown", "steps-exhausted")
        queue = queue_for(ordered, pairs)
        task = next((t for t in queue if applicable(t, pairs)), None)
        if task is None:
            return ("model", list(ordered))
        fired_total[0] += 1
        kind, pair = task[0], task[1]
        node = game.table.nodes[pair[0]]

        def extend(new_pair):
            return ordered + [new_pair], pairs | {new_pair}

        if kind in ("and", "all"):
            new_pair = (game.child_pair(pair, task[2]) if kind == "and"
                        else game.child_pair(pair, None, task[2]))
            o2, p2 = extend(new_pair)
            sub = search(o2, p2, steps + 1)
            if sub[0] != "refuted":
                return sub
            return ("refuted", {"rule": kind, "principal": game.pair_json(pair),
                                "added": [game.pair_json(new_pair)], "children": [sub[1]]})
        if kind == "or":
            children = []
            for i in range(len(node.children)):
                new_pair = game.child_pair(pair, i)
                o2, p2 = extend(new_pair)
                sub = search(o2, p2, steps + 1)
                if sub[0] != "refuted":
                    return sub
                children.append(sub[1])
            return ("refuted", {"rule": "or", "principal": game.pair_json(pair),
                                "added": [], "children": children})
        # existential witness: Eloise branches over the used constants plus
        # one canonical fresh one (fresh constants are interchangeable)
        used = sorted(game.constants_used(pairs), key=const_index)
        capped = len(used) >= budget.max_consts
        consts = used + ([] if capped else [fresh_const(used)])
        children = []
        for c in consts:
            new_pair = game.child_pair(pair, None, c)
            if new_pair in pairs:
                continue
            o2, p2 = extend(new_pair)
            sub = search(o2, p2, steps + 1)
            if sub[0] != "refuted":
                return sub
            children.append(sub[1])
        if capped:
            # refutation relied on the constant cap; not trustworthy
            return ("unknown", "constants-exhausted")
        return ("refuted", {"rule": "ex", "principal": game.pair_json(pair),
                            "added": [], "children": children})

    result = search([game._root], frozenset([game._root]), 0)
    if result[0] == "refuted":
        return Refuted(result[1])
    if result[0] == "unknown":
        return Unknown(result[1])
    gamma = frozenset(result[1])
    model = build_model(gamma, phi, vocab, game)
    return ModelFound(model, GammaResponder(gamma, game), gamma)


def dump_tableau(outcome):
    return json.dumps(outcome.tableau, indent=2)
