"""The evaluation game G(M, phi): truth as a winning strategy for Eloise."""

from __future__ import annotations

from .kernel import ABELARD, ELOISE, Game, GameError, solve
from .structures import satisfies_literal
from .syntax import (And, Exists, Forall, Lit, Or, SubformulaTable, free_vars,
                     is_nnf, is_sentence, validate_formula)


class EvalGame(Game):
    """Positions are (subformula id, assignment restricted to its free vars).

    Restricting assignments to the live free variables merges plays that
    differ only in dead bindings.
    """

    def __init__(self, m, phi, initial_assignment=None):
        if not is_nnf(phi):
            raise GameError("formula must be in negation normal form")
        validate_formula(phi, m.vocab)
        self.m = m
        self.phi = phi
        self.table = SubformulaTable.build(phi)
        init = dict(initial_assignment or {})
        missing = free_vars(phi) - set(init)
        if missing:
            raise GameError(f"free variables without initial assignment: {sorted(missing)}")
        self._initial = (0, self._restrict(0, init))

    def _restrict(self, sid, assignment):
        return frozenset((v, assignment[v]) for v in self.table.free[sid])

    def initial(self):
        return self._initial

    def node(self, pos):
        return self.table.nodes[pos[0]]

    def assignment(self, pos):
        return dict(pos[1])

    def mover(self, pos):
        f = self.node(pos)
        if isinstance(f, Lit):
            winner = ELOISE if satisfies_literal(self.m, f, self.assignment(pos)) else ABELARD
            return ("terminal", winner)
        if isinstance(f, And) or isinstance(f, Forall):
            return ABELARD
        return ELOISE

    def legal_moves(self, pos):
        f = self.node(pos)
        if isinstance(f, (And, Or)):
            return list(range(len(f.children)))
        return list(self.m.domain)

    def apply(self, pos, move):
        sid, assign = pos
        f = self.node(pos)
        s = dict(assign)
        if isinstance(f, (And, Or)):
            child = self.table.children[sid][move]
            return (child, self._restrict(child, s))
        s[f.var] = move
        child = self.table.children[sid][0]
        return (child, self._restrict(child, s))

    def key(self, pos):
        sid, assign = pos
        return f"{sid}|" + ",".join(f"{v}={e}" for v, e in sorted(assign))


def eval_game(m, phi):
    if not is_sentence(phi):
        raise GameError("public evaluation games require a sentence")
    return EvalGame(m, phi)


def is_true(m, phi):
    """phi is true in M iff Eloise has a winning strategy in G(M, phi)."""
    return solve(eval_game(m, phi)).winner == ELOISE
