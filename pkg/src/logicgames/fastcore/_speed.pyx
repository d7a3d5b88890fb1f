# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for bulk game solving over encoded inputs.

Mirrors the object-level engine on the corpus scale hot paths: truth
evaluation, evaluation-game winner, and EF-game winner profiles.
"""

from cpython cimport array
import array


cdef class CFormula:
    cdef int[::1] kind, a, b, c, d, childs

    def __init__(self, enc):
        kind, a, b, c, d, childs = enc
        self.kind = kind
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.childs = childs if len(childs) else array.array("i", [0])


cdef class CStructure:
    cdef int n
    cdef int[::1] arity
    cdef unsigned long long[::1] masks

    def __init__(self, enc):
        n, arity, masks = enc
        self.n = n
        self.arity = arity
        self.masks = masks if len(masks) else array.array("Q", [0])


def compile_formula(enc):
    return CFormula(enc)


def compile_structure(enc):
    return CStructure(enc)


cdef inline bint _holds(CStructure s, int rel, int e0, int e1):
    cdef int ar = s.arity[rel]
    if ar == 0:
        return s.masks[rel] != 0
    if ar == 1:
        return (s.masks[rel] >> e0) & 1
    return (s.masks[rel] >> (e0 * s.n + e1)) & 1


cdef bint _lit(CFormula f, CStructure s, int node, int* env):
    cdef int rel = f.a[node]
    cdef bint val
    if rel == -2:
        val = True
    elif rel == -1:
        val = env[f.c[node]] == env[f.d[node]]
    elif s.arity[rel] == 0:
        val = _holds(s, rel, 0, 0)
    elif s.arity[rel] == 1:
        val = _holds(s, rel, env[f.c[node]], 0)
    else:
        val = _holds(s, rel, env[f.c[node]], env[f.d[node]])
    return val == (f.b[node] == 1)


cdef bint _tarski(CFormula f, CStructure s, int node, int* env):
    cdef int k = f.kind[node], i, e
    if k == 0:
        return _lit(f, s, node, env)
    if k == 1:
        for i in range(f.b[node]):
            if not _tarski(f, s, f.childs[f.a[node] + i], env):
                return False
        return True
    if k == 2:
        for i in range(f.b[node]):
            if _tarski(f, s, f.childs[f.a[node] + i], env):
                return True
        return False
    if k == 3:
        for e in range(s.n):
            env[f.b[node]] = e
            if not _tarski(f, s, f.a[node], env):
                return False
        return True
    for e in range(s.n):
        env[f.b[node]] = e
        if _tarski(f, s, f.a[node], env):
            return True
    return False


def truth(CFormula f, CStructure s):
    """Direct Tarski evaluation of a sentence."""
    cdef int env[16]
    return bool(_tarski(f, s, 0, env))


cdef bint _game_win(CFormula f, CStructure s, int node, int* env):
    # backward induction: 1 where the verifier wins the position
    cdef int k = f.kind[node], i, e
    cdef bint found
    if k == 0:
        return _lit(f, s, node, env)
    if k == 1 or k == 3:
        # falsifier to move: he wins if any move reaches a position he wins
        if k == 1:
            for i in range(f.b[node]):
                if not _game_win(f, s, f.childs[f.a[node] + i], env):
                    return False
        else:
            for e in range(s.n):
                env[f.b[node]] = e
                if not _game_win(f, s, f.a[node], env):
                    return False
        return True
    found = False
    if k == 2:
        for i in range(f.b[node]):
            if _game_win(f, s, f.childs[f.a[node] + i], env):
                found = True
                break
    else:
        for e in range(s.n):
            env[f.b[node]] = e
            if _game_win(f, s, f.a[node], env):
                found = True
                break
    return found


def eval_win(CFormula f, CStructure s):
    """True where the verifier wins the evaluation game from the root."""
    cdef int env[16]
    return bool(_game_win(f, s, 0, env))


cdef bint _piso(CStructure s1, CStructure s2, unsigned long long mask,
                bint identity):
    cdef int pa[64]
    cdef int pb[64]
    cdef int np = 0, i, j, rel, code
    cdef int n2 = s2.n
    for code in range(s1.n * n2):
        if (mask >> code) & 1:
            pa[np] = code // n2
            pb[np] = code % n2
            np += 1
    for rel in range(s1.arity.shape[0]):
        if s1.arity[rel] == 0:
            if (s1.masks[rel] != 0) != (s2.masks[rel] != 0):
                return False
        elif s1.arity[rel] == 1:
            for i in range(np):
                if _holds(s1, rel, pa[i], 0) != _holds(s2, rel, pb[i], 0):
                    return False
        else:
            for i in range(np):
                for j in range(np):
                    if _holds(s1, rel, pa[i], pa[j]) != _holds(s2, rel, pb[i], pb[j]):
                        return False
    if identity:
        for i in range(np):
            for j in range(i + 1, np):
                if (pa[i] == pa[j]) != (pb[i] == pb[j]):
                    return False
    return True


cdef bint _ef_win(CStructure s1, CStructure s2, unsigned long long mask,
                  int r, bint identity, dict memo):
    # 1 where the matcher survives r more rounds from this pair set
    cdef object key = (mask, r)
    cdef object hit = memo.get(key)
    if hit is not None:
        return hit
    cdef bint out = True
    cdef int aa, bb
    cdef unsigned long long nm
    if not _piso(s1, s2, mask, identity):
        out = False
    elif r > 0:
        for aa in range(s1.n):
            out = False
            for bb in range(s2.n):
                nm = mask | (1ULL << (aa * s2.n + bb))
                if _ef_win(s1, s2, nm, r - 1, identity, memo):
                    out = True
                    break
            if not out:
                break
        if out:
            for bb in range(s2.n):
                out = False
                for aa in range(s1.n):
                    nm = mask | (1ULL << (aa * s2.n + bb))
                    if _ef_win(s1, s2, nm, r - 1, identity, memo):
                        out = True
                        break
                if not out:
                    break
    memo[key] = out
    return out


def ef_profile(CStructure s1, CStructure s2, int rounds, bint identity):
    """List over r = 0..rounds: does the matcher survive r rounds?"""
    cdef dict memo = {}
    return [bool(_ef_win(s1, s2, 0, r, identity, memo)) for r in range(rounds + 1)]
