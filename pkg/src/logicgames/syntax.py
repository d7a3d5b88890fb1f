"""Vocabulary, formula AST, parser, printer and NNF normalization."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

# Reserved names.  TRUE is a nullary relation that holds in every structure;
# c0, c1, ... are the fresh constants introduced by the model existence game.
VERUM = "TRUE"
_RESERVED_CONST = re.compile(r"^c\d+$")


class FormulaError(Exception):
    """Malformed formula: syntax error, unknown symbol or arity mismatch."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Vocabulary:
    relations: tuple[tuple[str, int], ...]
    constants: tuple[str, ...] = ()
    identity_enabled: bool = True

    def __post_init__(self):
        names = [r for r, _ in self.relations] + list(self.constants)
        if len(set(names)) != len(names):
            raise FormulaError("duplicate symbol names in vocabulary")
        for r, ar in self.relations:
            if ar < 0:
                raise FormulaError(f"negative arity for {r}")
        for c in self.constants:
            if _RESERVED_CONST.match(c):
                raise FormulaError(f"constant name {c!r} is reserved")

    def arity(self, rel):
        if rel == VERUM:
            return 0
        for r, ar in self.relations:
            if r == rel:
                return ar
        raise FormulaError(f"unknown relation symbol {rel!r}")

    def has_relation(self, rel):
        return rel == VERUM or any(r == rel for r, _ in self.relations)


# --- terms -------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


# --- formulas ----------------------------------------------------------------
#
# Formula is the NNF AST: negation only on literals, And/Or children are
# non-empty finite tuples (binary connectives are the 2-child case).
# Not() is only allowed in the raw (pre-NNF) AST.


@dataclass(frozen=True)
class Lit:
    positive: bool
    rel: str  # relation name, or "=" for equality
    args: tuple


@dataclass(frozen=True)
class And:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise FormulaError("empty conjunction")


@dataclass(frozen=True)
class Or:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise FormulaError("empty disjunction")


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True)
class Not:
    body: object


def is_nnf(f):
    if isinstance(f, Lit):
        return True
    if isinstance(f, (And, Or)):
        return all(is_nnf(c) for c in f.children)
    if isinstance(f, (Forall, Exists)):
        return is_nnf(f.body)
    return False


# --- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(forall|exists)\b|([a-z][A-Za-z0-9_]*)|([A-Z][A-Za-z0-9_]*)|([().,&|!=]))")


def _tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        nl = text.count("\n", line_start, pos)
        if nl:
            line += nl
            line_start = text.rfind("\n", 0, pos) + 1
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad = pos + (len(text[pos:]) - len(stripped))
            line += text.count("\n", line_start, bad)
            col = bad - (text.rfind("\n", 0, bad) + 1) + 1
            raise FormulaError(f"unexpected character {text[bad]!r}", line, col)
        kw, low, cap, punct = m.groups()
        tok_start = m.end() - len((kw or low or cap or punct))
        col = tok_start - (text.rfind("\n", 0, tok_start) + 1) + 1
        kind = "kw" if kw else "low" if low else "cap" if cap else "punct"
        tokens.append((kind, kw or low or cap or punct, line, col))
        pos = m.end()
    tokens.append(("eof", "", line, 0))
    return tokens


class _Parser:
    def __init__(self, text, vocab):
        self.tokens = _tokenize(text)
        self.vocab = vocab
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, line, col = self.next()
        if val != value:
            raise FormulaError(f"expected {value!r}, found {val or 'end of input'!r}", line, col)

    def parse(self):
        f = self.formula()
        kind, val, line, col = self.peek()
        if kind != "eof":
            raise FormulaError(f"trailing input {val!r}", line, col)
        return f

    def formula(self):
        kind, val, _, _ = self.peek()
        if kind == "kw":
            self.next()
            vkind, var, line, col = self.next()
            if vkind != "low":
                raise FormulaError("expected a variable after quantifier", line, col)
            if var in self.vocab.constants:
                raise FormulaError(f"{var!r} is a constant, not a variable", line, col)
            self.expect(".")
            body = self.formula()
            return (Forall if val == "forall" else Exists)(var, body)
        return self.binary()

    def binary(self):
        first = self.atomish()
        kind, val, line, col = self.peek()
        if val not in ("&", "|"):
            return first
        op = val
        children = [first]
        while self.peek()[1] == op:
            self.next()
            children.append(self.atomish())
        kind, val, line, col = self.peek()
        if val in ("&", "|"):
            raise FormulaError("mixing '&' and '|' requires parentheses", line, col)
        return (And if op == "&" else Or)(tuple(children))

    def atomish(self):
        kind, val, line, col = self.peek()
        if val == "!":
            self.next()
            inner = self.atomish()
            # Negation directly on an atom is already a literal.
            if isinstance(inner, Lit):
                return Lit(not inner.positive, inner.rel, inner.args)
            if isinstance(inner, Not):
                return inner.body
            return Not(inner)
        if val == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def term(self):
        kind, val, line, col = self.next()
        if kind != "low":
            raise FormulaError(f"expected a term, found {val or 'end of input'!r}", line, col)
        if val in self.vocab.constants:
            return Const(val)
        return Var(val)

    def atom(self):
        kind, val, line, col = self.peek()
        if kind == "cap":
            self.next()
            if not self.vocab.has_relation(val):
                raise FormulaError(f"unknown relation symbol {val!r}", line, col)
            args = []
            if self.peek()[1] == "(":
                self.next()
                args.append(self.term())
                while self.peek()[1] == ",":
                    self.next()
                    args.append(self.term())
                self.expect(")")
            if len(args) != self.vocab.arity(val):
                raise FormulaError(
                    f"relation {val} expects {self.vocab.arity(val)} arguments, got {len(args)}",
                    line, col)
            return Lit(True, val, tuple(args))
        if kind == "low":
            left = self.term()
            kind2, val2, line2, col2 = self.peek()
            if val2 != "=":
                raise FormulaError("expected '=' after term", line2, col2)
            if not self.vocab.identity_enabled:
                raise FormulaError("identity is not enabled in this vocabulary", line2, col2)
            self.next()
            right = self.term()
            return Lit(True, "=", (left, right))
        raise FormulaError(f"expected a formula, found {val or 'end of input'!r}", line, col)


def parse_formula(text, vocab):
    """Parse surface syntax into a raw (possibly non-NNF) AST."""
    return _Parser(text, vocab).parse()


_APPLICATION = re.compile(r"\b(?!forall\b|exists\b)([A-Za-z_]\w*)\s*\(([^()]*)\)")


def infer_vocabulary(text, identity_enabled=False):
    """Read a vocabulary off the relation applications occurring in the text."""
    rels = {}
    for name, args in _APPLICATION.findall(text):
        arity = len([a for a in args.split(",") if a.strip()])
        if rels.setdefault(name, arity) != arity:
            raise FormulaError(f"relation {name} used with inconsistent arities")
    return Vocabulary(tuple(sorted(rels.items())), (), identity_enabled)


# --- printer -----------------------------------------------------------------


def _print_term(t):
    return t.name


def print_formula(f, _top=True):
    if isinstance(f, Lit):
        if f.rel == "=":
            body = f"{_print_term(f.args[0])} = {_print_term(f.args[1])}"
            return body if f.positive else f"!({body})"
        body = f.rel
        if f.args:
            body += "(" + ", ".join(_print_term(a) for a in f.args) + ")"
        return body if f.positive else "!" + body
    if isinstance(f, Not):
        inner = print_formula(f.body, _top=False)
        if isinstance(f.body, (Lit, Not)) and not (isinstance(f.body, Lit) and f.body.rel == "="):
            return "!" + inner
        return "!(" + print_formula(f.body, _top=True) + ")"
    if isinstance(f, (And, Or)):
        op = " & " if isinstance(f, And) else " | "
        if len(f.children) == 1:
            return print_formula(f.children[0], _top=_top)
        parts = []
        for c in f.children:
            if isinstance(c, (Lit,)) or (isinstance(c, Not) and isinstance(c.body, Lit) and c.body.rel != "="):
                parts.append(print_formula(c, _top=False))
            else:
                parts.append("(" + print_formula(c, _top=True) + ")")
        return "(" + op.join(parts) + ")"
    if isinstance(f, (Forall, Exists)):
        q = "forall" if isinstance(f, Forall) else "exists"
        return f"{q} {f.var}. {print_formula(f.body, _top=True)}"
    raise TypeError(f"not a formula: {f!r}")


# --- NNF, rank, free variables ----------------------------------------------


def to_nnf(f, negate=False):
    """Push negations down to literals; output is a Formula in NNF."""
    if isinstance(f, Lit):
        return Lit(f.positive != negate, f.rel, f.args)
    if isinstance(f, Not):
        return to_nnf(f.body, not negate)
    if isinstance(f, And):
        kids = tuple(to_nnf(c, negate) for c in f.children)
        return Or(kids) if negate else And(kids)
    if isinstance(f, Or):
        kids = tuple(to_nnf(c, negate) for c in f.children)
        return And(kids) if negate else Or(kids)
    if isinstance(f, Forall):
        return Exists(f.var, to_nnf(f.body, True)) if negate else Forall(f.var, to_nnf(f.body))
    if isinstance(f, Exists):
        return Forall(f.var, to_nnf(f.body, True)) if negate else Exists(f.var, to_nnf(f.body))
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=None)
def quantifier_rank(f):
    if isinstance(f, Lit):
        return 0
    if isinstance(f, Not):
        return quantifier_rank(f.body)
    if isinstance(f, (And, Or)):
        return max(quantifier_rank(c) for c in f.children)
    return 1 + quantifier_rank(f.body)


@lru_cache(maxsize=None)
def free_vars(f):
    if isinstance(f, Lit):
        return frozenset(a.name for a in f.args if isinstance(a, Var))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        out = frozenset()
        for c in f.children:
            out |= free_vars(c)
        return out
    return free_vars(f.body) - {f.var}


def is_sentence(f):
    return not free_vars(f)


def validate_formula(f, vocab):
    """Check relation symbols, arities and constant symbols against vocab."""
    if isinstance(f, Lit):
        if f.rel == "=":
            if not vocab.identity_enabled:
                raise FormulaError("identity is not enabled in this vocabulary")
            if len(f.args) != 2:
                raise FormulaError("equality takes two terms")
        else:
            if len(f.args) != vocab.arity(f.rel):
                raise FormulaError(f"arity mismatch for {f.rel}")
        for a in f.args:
            if isinstance(a, Const) and a.name not in vocab.constants:
                raise FormulaError(f"unknown constant {a.name!r}")
    elif isinstance(f, Not):
        validate_formula(f.body, vocab)
    elif isinstance(f, (And, Or)):
        for c in f.children:
            validate_formula(c, vocab)
    elif isinstance(f, (Forall, Exists)):
        validate_formula(f.body, vocab)
    else:
        raise TypeError(f"not a formula: {f!r}")


# --- subformula table --------------------------------------------------------


@dataclass
class SubformulaTable:
    """Occurrence-indexed view of a formula tree.

    Ids are dense preorder indices; the root is 0.  Shared subformula objects
    (the Hintikka builder dedupes structurally) get one entry per occurrence.
    """

    root: object
    nodes: list = field(default_factory=list)
    parent: list = field(default_factory=list)
    children: list = field(default_factory=list)
    free: list = field(default_factory=list)  # sorted tuple of free var names

    @classmethod
    def build(cls, root):
        table = cls(root)

        def walk(f, parent):
            sid = len(table.nodes)
            table.nodes.append(f)
            table.parent.append(parent)
            table.children.append([])
            table.free.append(tuple(sorted(free_vars(f))))
            if parent is not None:
                table.children[parent].append(sid)
            if isinstance(f, (And, Or)):
                for c in f.children:
                    walk(c, sid)
            elif isinstance(f, (Forall, Exists)):
                walk(f.body, sid)
            return sid

        walk(root, None)
        return table

    def __len__(self):
        return len(self.nodes)
