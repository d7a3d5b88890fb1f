"""Shared test corpora: structure families and enumerated sentence lists.

Everything here is deterministic; sentence generation is enumerative
(smallest syntax trees first), never random.
"""

from __future__ import annotations

import itertools

from .structures import (EMPTY_VOCAB, LINEAR_ORDER_VOCAB, bare_set,
                         canonical_key, enumerate_structures, linear_order)
from .syntax import (And, Exists, Forall, Lit, Or, Var, Vocabulary,
                     parse_formula)

VOCAB_P = Vocabulary((("P", 1),), (), False)
VOCAB_R = Vocabulary((("R", 2),), (), False)
VOCAB_PR = Vocabulary((("P", 1), ("R", 2)), (), False)


def structure_corpus():
    """All acceptance structures, keyed by family name."""
    return {
        "P": list(enumerate_structures(VOCAB_P, 3)),
        "R": list(enumerate_structures(VOCAB_R, 3)),
        "PR": list(enumerate_structures(VOCAB_PR, 3)),
        "orders": [linear_order(k) for k in range(1, 10)],
        "sets": [bare_set(k) for k in range(1, 7)],
    }


def iso_representatives(structs):
    """One structure per isomorphism class, first in enumeration order."""
    reps = {}
    for s in structs:
        reps.setdefault(canonical_key(s), s)
    return list(reps.values())


# --- enumerated sentences ---------------------------------------------------


def _literals(vocab, nvars):
    vs = [Var(f"x{i}") for i in range(nvars)]
    out = []
    for rel, arity in vocab.relations:
        for args in itertools.product(vs, repeat=arity):
            out.append(Lit(True, rel, args))
            out.append(Lit(False, rel, args))
    if vocab.identity_enabled:
        for a in vs:
            for b in vs:
                out.append(Lit(True, "=", (a, b)))
                out.append(Lit(False, "=", (a, b)))
    return out


def _formulas(vocab, size, nvars, rank):
    """All NNF formulas with ``size`` syntax nodes over x0..x_{nvars-1}."""
    if size == 1:
        yield from _literals(vocab, nvars)
        return
    if rank > 0:
        var = f"x{nvars}"
        for body in _formulas(vocab, size - 1, nvars + 1, rank - 1):
            yield Exists(var, body)
            yield Forall(var, body)
    for lsize in range(1, size - 1):
        for left in _formulas(vocab, lsize, nvars, rank):
            for right in _formulas(vocab, size - 1 - lsize, nvars, rank):
                yield And((left, right))
                yield Or((left, right))


def sentence_corpus(vocab, count=200, max_rank=3):
    """The first ``count`` sentences in size order, quantifier rank bounded."""
    out = []
    for size in range(1, 16):
        for f in _formulas(vocab, size, 0, max_rank):
            out.append(f)
            if len(out) == count:
                return out
    raise RuntimeError(f"could not enumerate {count} sentences")


# --- fixed lists for the model existence acceptance check -------------------

SATISFIABLE_SENTENCES = (
    "exists x. P(x)",
    "exists x. exists y. R(x,y)",
    "(forall x. (P(x) | !P(x))) & (exists x. P(x))",
    "forall x. P(x)",
    "forall x. !P(x)",
    "(exists x. P(x)) & (exists y. !P(y))",
    "forall x. exists y. R(x,y)",
    "exists x. R(x,x)",
    "forall x. R(x,x)",
    "forall x. forall y. (R(x,y) | !R(x,y))",
    "(exists x. P(x)) | (forall y. !P(y))",
    "forall x. (P(x) | (exists y. R(x,y)))",
    "exists x. (P(x) & R(x,x))",
    "(forall x. exists y. R(x,y)) & (exists z. P(z))",
    "exists x. forall y. R(x,y)",
    "(forall x. !R(x,x)) & (exists x. exists y. R(x,y))",
    "forall x. forall y. (R(x,y) | R(y,x))",
    "(exists x. !P(x)) & (exists y. exists z. R(y,z))",
    "forall x. (P(x) & (exists y. R(y,x)))",
    "(forall x. (P(x) | !R(x,x))) & (exists u. R(u,u))",
)

UNSATISFIABLE_SENTENCES = (
    "exists x. (P(x) & !P(x))",
    "(forall x. P(x)) & (exists x. !P(x))",
    "forall x. (P(x) & !P(x))",
    "(exists x. P(x)) & (forall y. !P(y))",
    "exists x. (R(x,x) & !R(x,x))",
    "(forall x. R(x,x)) & (exists y. !R(y,y))",
    "(forall x. forall y. R(x,y)) & (exists x. exists y. !R(x,y))",
    "(forall x. exists y. R(x,y)) & (forall u. forall v. !R(u,v))",
    "(exists x. exists y. R(x,y)) & (forall u. forall v. !R(u,v))",
    "forall x. (R(x,x) & !R(x,x))",
    "(forall x. (P(x) | R(x,x))) & ((forall y. !P(y)) & (forall z. !R(z,z)))",
    "(exists x. (P(x) & R(x,x))) & (forall y. !R(y,y))",
    "(exists x. (P(x) & R(x,x))) & (forall y. !P(y))",
    "(forall x. (P(x) & R(x,x))) & (exists y. (!P(y) | !R(y,y)))",
    "((exists x. P(x)) | (exists x. R(x,x))) & ((forall y. !P(y)) & (forall y. !R(y,y)))",
    "forall x. forall y. (R(x,y) & !R(y,x))",
    "(exists x. forall y. R(x,y)) & (forall u. exists v. !R(u,v))",
    "(forall x. (P(x) | !P(x))) & (exists y. (P(y) & !P(y)))",
    "forall x. exists y. (R(x,y) & !R(x,y))",
    "((forall x. P(x)) | (forall x. !P(x))) & ((exists y. !P(y)) & (exists z. P(z)))",
)


def meg_sentences():
    """(satisfiable, unsatisfiable) parsed over the {P, R} vocabulary."""
    sat = [parse_formula(t, VOCAB_PR) for t in SATISFIABLE_SENTENCES]
    unsat = [parse_formula(t, VOCAB_PR) for t in UNSATISFIABLE_SENTENCES]
    return sat, unsat
