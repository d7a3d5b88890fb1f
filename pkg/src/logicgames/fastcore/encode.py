"""Flat integer encodings consumed by the compiled kernels.

Structures become relation bitmasks (arity at most 2, domain at most 7,
so an arity-2 relation fits one 64-bit word); formulas become preorder
node arrays with quantifier slots assigned by nesting depth.
"""

from __future__ import annotations

from array import array

from ..syntax import And, Const, Exists, Forall, Lit, Or, VERUM

MAX_DOMAIN = 7
MAX_SLOTS = 16

KIND_LIT = 0
KIND_AND = 1
KIND_OR = 2
KIND_ALL = 3
KIND_EX = 4

REL_EQ = -1
REL_VERUM = -2


class EncodingError(ValueError):
    """Input falls outside what the compiled kernels handle."""


def encode_structure(m):
    """(domain size, arity array, one relation bitmask per vocab entry)."""
    n = len(m.domain)
    if n > MAX_DOMAIN:
        raise EncodingError(f"domain larger than {MAX_DOMAIN}")
    idx = {e: i for i, e in enumerate(m.domain)}
    arity = array("i")
    masks = array("Q")
    for rel, ar in m.vocab.relations:
        if ar > 2:
            raise EncodingError("relation arity above 2")
        arity.append(ar)
        mask = 0
        for tup in m.relations.get(rel, ()):
            if ar == 0:
                mask = 1
            elif ar == 1:
                mask |= 1 << idx[tup[0]]
            else:
                mask |= 1 << (idx[tup[0]] * n + idx[tup[1]])
        masks.append(mask)
    return (n, arity, masks)


def encode_formula(phi, vocab):
    """Preorder node arrays (kind, a, b, c, d) plus a flat child-id list.

    Per kind: literal a=relation index (-1 equality, -2 verum), b=sign,
    c/d=argument slots; and/or a=start b=count into childs; quantifier
    a=child id, b=slot.
    """
    rel_index = {rel: i for i, (rel, _) in enumerate(vocab.relations)}
    rel_arity = {rel: ar for rel, ar in vocab.relations}
    kind, a, b, c, d = (array("i") for _ in range(5))
    childs = array("i")

    def emit():
        for arr in (kind, a, b, c, d):
            arr.append(0)
        return len(kind) - 1

    def enc(f, slots, depth):
        node = emit()
        if isinstance(f, Lit):
            kind[node] = KIND_LIT
            b[node] = 1 if f.positive else 0
            c[node] = d[node] = -1
            if any(isinstance(t, Const) for t in f.args):
                raise EncodingError("constants are not encodable")
            if f.rel == "=":
                a[node] = REL_EQ
            elif f.rel == VERUM:
                a[node] = REL_VERUM
                return node
            elif f.rel not in rel_index:
                raise EncodingError(f"unknown relation {f.rel}")
            else:
                a[node] = rel_index[f.rel]
                if rel_arity[f.rel] != len(f.args):
                    raise EncodingError("arity mismatch")
            for i, t in enumerate(f.args):
                (c if i == 0 else d)[node] = slots[t.name]
            return node
        if isinstance(f, (And, Or)):
            kind[node] = KIND_AND if isinstance(f, And) else KIND_OR
            ids = [enc(ch, slots, depth) for ch in f.children]
            a[node] = len(childs)
            b[node] = len(ids)
            childs.extend(ids)
            return node
        kind[node] = KIND_ALL if isinstance(f, Forall) else KIND_EX
        if depth >= MAX_SLOTS:
            raise EncodingError("quantifier nesting too deep")
        b[node] = depth
        a[node] = enc(f.body, {**slots, f.var: depth}, depth + 1)
        return node

    enc(phi, {}, 0)
    return (kind, a, b, c, d, childs)
