"""Finite relational structures, literal satisfaction and the Tarski oracle.

``tarski_truth`` is the independent truth oracle used to validate every
game-derived result; keep it a direct transcription of the usual recursive
satisfaction clauses.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .syntax import (And, Const, Exists, Forall, Lit, Not, Or, Var, VERUM,
                     Vocabulary, free_vars)


class StructureError(Exception):
    pass


@dataclass(frozen=True)
class Structure:
    vocab: Vocabulary
    domain: tuple  # ordered element ids (strings)
    relations: dict  # symbol -> frozenset of tuples of element ids
    constants: dict = field(default_factory=dict)  # symbol -> element id

    def __post_init__(self):
        if not self.domain:
            raise StructureError("domain must be non-empty")
        dom = set(self.domain)
        if len(dom) != len(self.domain):
            raise StructureError("duplicate elements in domain")
        for rel, arity in self.vocab.relations:
            for tup in self.relations.get(rel, ()):
                if len(tup) != arity:
                    raise StructureError(f"arity mismatch in relation {rel}: {tup}")
                for e in tup:
                    if e not in dom:
                        raise StructureError(f"element {e!r} of {rel} not in domain")
        for rel in self.relations:
            if not self.vocab.has_relation(rel):
                raise StructureError(f"relation {rel!r} not in vocabulary")
        for c, e in self.constants.items():
            if c not in self.vocab.constants:
                raise StructureError(f"constant {c!r} not in vocabulary")
            if e not in dom:
                raise StructureError(f"constant value {e!r} not in domain")
        for c in self.vocab.constants:
            if c not in self.constants:
                raise StructureError(f"constant {c!r} not interpreted")

    def holds(self, rel, tup):
        if rel == VERUM:
            return True
        return tup in self.relations.get(rel, frozenset())

    def __hash__(self):
        return hash((self.vocab, self.domain,
                     tuple(sorted((r, tuple(sorted(ts))) for r, ts in self.relations.items())),
                     tuple(sorted(self.constants.items()))))

    def __eq__(self, other):
        if not isinstance(other, Structure):
            return NotImplemented
        return (self.vocab == other.vocab and self.domain == other.domain
                and {r: frozenset(ts) for r, ts in self.relations.items() if ts}
                == {r: frozenset(ts) for r, ts in other.relations.items() if ts}
                and self.constants == other.constants)


def make_structure(vocab, domain, relations=None, constants=None):
    rels = {r: frozenset(tuple(t) for t in (relations or {}).get(r, ())) for r, _ in vocab.relations}
    return Structure(vocab, tuple(domain), rels, dict(constants or {}))


# --- structure files ---------------------------------------------------------


def load_structure(text, vocab=None, identity_enabled=True):
    """Load a structure from its JSON file format.

    If no vocabulary is given, one is inferred: arities come from the file's
    "arities" map when present, else from the tuples (a relation with no
    tuples and no declared arity is an error).
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise StructureError(f"malformed structure file: {e}") from None
    if not isinstance(obj, dict):
        raise StructureError("structure file must be a JSON object")
    unknown = set(obj) - {"domain", "relations", "constants", "arities"}
    if unknown:
        raise StructureError(f"unknown keys in structure file: {sorted(unknown)}")
    domain = obj.get("domain")
    if not isinstance(domain, list) or not all(isinstance(d, str) for d in domain):
        raise StructureError("'domain' must be an array of strings")
    relations = obj.get("relations", {})
    constants = obj.get("constants", {})
    if vocab is None:
        arities = obj.get("arities", {})
        rels = []
        for name, tuples in relations.items():
            if name in arities:
                rels.append((name, arities[name]))
            elif tuples:
                rels.append((name, len(tuples[0])))
            else:
                raise StructureError(
                    f"cannot infer arity of empty relation {name!r}; supply a vocabulary")
        vocab = Vocabulary(tuple(rels), tuple(constants), identity_enabled)
    return make_structure(vocab, domain, relations, constants)


def dump_structure(m):
    return json.dumps({
        "domain": list(m.domain),
        "arities": {r: a for r, a in m.vocab.relations},
        "relations": {r: sorted(list(t) for t in m.relations.get(r, ()))
                      for r, _ in m.vocab.relations},
        **({"constants": dict(sorted(m.constants.items()))} if m.constants else {}),
    }, indent=2)


# --- satisfaction ------------------------------------------------------------


def _term_value(t, m, s):
    if isinstance(t, Var):
        if t.name not in s:
            raise StructureError(f"unassigned variable {t.name!r}")
        return s[t.name]
    return m.constants[t.name]


def satisfies_literal(m, lit, s):
    """Is lit in Gamma(s), the set of literals the assignment satisfies?"""
    vals = tuple(_term_value(t, m, s) for t in lit.args)
    if lit.rel == "=":
        holds = vals[0] == vals[1]
    else:
        holds = m.holds(lit.rel, vals)
    return holds if lit.positive else not holds


def tarski_truth(m, f, s=None):
    """Standard recursive satisfaction (the independent oracle)."""
    s = s or {}
    if isinstance(f, Lit):
        return satisfies_literal(m, f, s)
    if isinstance(f, And):
        return all(tarski_truth(m, c, s) for c in f.children)
    if isinstance(f, Or):
        return any(tarski_truth(m, c, s) for c in f.children)
    if isinstance(f, Forall):
        return all(tarski_truth(m, f.body, {**s, f.var: a}) for a in m.domain)
    if isinstance(f, Exists):
        return any(tarski_truth(m, f.body, {**s, f.var: a}) for a in m.domain)
    raise TypeError(f"not an NNF formula: {f!r}")


def tarski_truth_raw(m, f, s=None):
    """Oracle extended with a Not case, for pre-NNF formulas."""
    s = s or {}
    if isinstance(f, Not):
        return not tarski_truth_raw(m, f.body, s)
    if isinstance(f, Lit):
        return satisfies_literal(m, f, s)
    if isinstance(f, And):
        return all(tarski_truth_raw(m, c, s) for c in f.children)
    if isinstance(f, Or):
        return any(tarski_truth_raw(m, c, s) for c in f.children)
    if isinstance(f, Forall):
        return all(tarski_truth_raw(m, f.body, {**s, f.var: a}) for a in m.domain)
    if isinstance(f, Exists):
        return any(tarski_truth_raw(m, f.body, {**s, f.var: a}) for a in m.domain)
    raise TypeError(f"not a formula: {f!r}")


def tarski_truth_memo(m, f, s=None, _memo=None):
    """Memoized variant of the oracle for large shared-subformula trees.

    Memo keys are (formula identity, assignment restricted to free variables);
    equality with plain tarski_truth is asserted in the test suite.
    """
    memo = {} if _memo is None else _memo
    s = s or {}

    def ev(f, s):
        fv = free_vars(f)
        key = (id(f), tuple(sorted((v, s[v]) for v in fv)))
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Lit):
            out = satisfies_literal(m, f, s)
        elif isinstance(f, And):
            out = all(ev(c, s) for c in f.children)
        elif isinstance(f, Or):
            out = any(ev(c, s) for c in f.children)
        elif isinstance(f, Forall):
            out = all(ev(f.body, {**s, f.var: a}) for a in m.domain)
        elif isinstance(f, Exists):
            out = any(ev(f.body, {**s, f.var: a}) for a in m.domain)
        else:
            raise TypeError(f"not an NNF formula: {f!r}")
        memo[key] = out
        return out

    return ev(f, s)


# --- enumeration and isomorphism --------------------------------------------


def enumerate_structures(vocab, max_size):
    """Yield every structure over vocab with domain {0..k-1}, k <= max_size."""
    for k in range(1, max_size + 1):
        domain = tuple(str(i) for i in range(k))
        spaces = []
        for rel, arity in vocab.relations:
            tuples = list(itertools.product(domain, repeat=arity))
            subsets = []
            for bits in range(1 << len(tuples)):
                subsets.append(frozenset(t for i, t in enumerate(tuples) if bits >> i & 1))
            spaces.append(subsets)
        const_spaces = [list(domain) for _ in vocab.constants]
        for rel_choice in itertools.product(*spaces):
            rels = {rel: rel_choice[i] for i, (rel, _) in enumerate(vocab.relations)}
            for const_choice in itertools.product(*const_spaces):
                consts = dict(zip(vocab.constants, const_choice))
                yield Structure(vocab, domain, rels, consts)


def _relabel(m, perm):
    """Relabel m along a permutation of its domain (element -> element)."""
    rels = {r: frozenset(tuple(perm[e] for e in t) for t in ts)
            for r, ts in m.relations.items()}
    consts = {c: perm[e] for c, e in m.constants.items()}
    return Structure(m.vocab, m.domain, rels, consts)


def canonical_key(m):
    """A relabeling-invariant key: the minimum over domain permutations."""
    best = None
    for p in itertools.permutations(m.domain):
        perm = dict(zip(m.domain, p))
        key = (len(m.domain),
               tuple(tuple(sorted(frozenset(tuple(perm[e] for e in t) for t in m.relations.get(r, ()))))
                     for r, _ in m.vocab.relations),
               tuple(perm[m.constants[c]] for c in m.vocab.constants))
        if best is None or key < best:
            best = key
    return best


def find_isomorphism(m, n):
    """Brute-force isomorphism search; returns an element map or None."""
    if m.vocab != n.vocab or len(m.domain) != len(n.domain):
        return None
    for p in itertools.permutations(n.domain):
        f = dict(zip(m.domain, p))
        if any(f[m.constants[c]] != n.constants[c] for c in m.vocab.constants):
            continue
        ok = True
        for rel, arity in m.vocab.relations:
            for t in itertools.product(m.domain, repeat=arity):
                if m.holds(rel, t) != n.holds(rel, tuple(f[e] for e in t)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return f
    return None


# --- stock structures --------------------------------------------------------

LINEAR_ORDER_VOCAB = Vocabulary((("Lt", 2),), (), identity_enabled=True)
EMPTY_VOCAB = Vocabulary((), (), identity_enabled=True)


def linear_order(k):
    """The strict linear order with k elements 0 < 1 < ... < k-1."""
    domain = [str(i) for i in range(k)]
    pairs = [(str(i), str(j)) for i in range(k) for j in range(k) if i < j]
    return make_structure(LINEAR_ORDER_VOCAB, domain, {"Lt": pairs})


def bare_set(k):
    """A structure of size k in the empty vocabulary."""
    return make_structure(EMPTY_VOCAB, [str(i) for i in range(k)])
