"""Bulk solving kernels with a compiled fast path.

The compiled extension is selected at import when present; anything it
cannot encode (large domains, arity above 2, constants) silently falls
back to the pure engine, so results never depend on the backend.
"""

from __future__ import annotations

from . import pure
from .encode import EncodingError, encode_formula, encode_structure

try:
    from . import _speed
    BACKEND = "compiled"
except ImportError:
    _speed = None
    BACKEND = "pure"

_fcache = {}
_scache = {}


def _formula(phi, vocab):
    key = (phi, vocab)
    hit = _fcache.get(key)
    if hit is None:
        hit = _fcache[key] = _speed.compile_formula(encode_formula(phi, vocab))
    return hit


def _structure(m):
    hit = _scache.get(m)
    if hit is None:
        hit = _scache[m] = _speed.compile_structure(encode_structure(m))
    return hit


def truth(m, phi):
    """tarski_truth(m, phi, {}) on the fast path."""
    if _speed is not None:
        try:
            return _speed.truth(_formula(phi, m.vocab), _structure(m))
        except EncodingError:
            pass
    return pure.truth(m, phi)


def eval_win(m, phi):
    """True where the verifier wins the evaluation game G(m, phi)."""
    if _speed is not None:
        try:
            return _speed.eval_win(_formula(phi, m.vocab), _structure(m))
        except EncodingError:
            pass
    return pure.eval_win(m, phi)


def ef_profile(m, n, rounds):
    """Per r = 0..rounds: True where the matcher survives EF_r(m, n)."""
    if _speed is not None:
        try:
            return _speed.ef_profile(_structure(m), _structure(n), rounds,
                                     m.vocab.identity_enabled)
        except EncodingError:
            pass
    return pure.ef_profile(m, n, rounds)


def clear_caches():
    _fcache.clear()
    _scache.clear()
