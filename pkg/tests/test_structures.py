"""Structure loading, canonical forms and isomorphism search."""

import itertools

import pytest

from logicgames.corpus import VOCAB_PR, sentence_corpus
from logicgames.structures import (StructureError, canonical_key,
                                   dump_structure, enumerate_structures,
                                   find_isomorphism, linear_order,
                                   load_structure, make_structure,
                                   tarski_truth, tarski_truth_memo,
                                   tarski_truth_raw)


def _relabeled(m, perm):
    mapping = dict(zip(m.domain, perm))
    rels = {rel: {tuple(mapping[e] for e in row) for row in rows}
            for rel, rows in m.relations.items()}
    return make_structure(m.vocab, tuple(sorted(perm)), rels)


def test_load_dump_round_trip():
    m = linear_order(3)
    again = load_structure(dump_structure(m), m.vocab)
    assert again.domain == m.domain and again.relations == m.relations


def test_load_rejects_malformed():
    with pytest.raises(StructureError):
        load_structure('{"domain": []}')
    with pytest.raises(StructureError):
        load_structure('{"domain": ["a"], "relations": {"R": [["a", "b"]]}}')


def test_canonical_key_is_isomorphism_invariant():
    for m in itertools.islice(enumerate_structures(VOCAB_PR, 3), 80):
        for perm in itertools.permutations(m.domain):
            assert canonical_key(_relabeled(m, perm)) == canonical_key(m)


def test_find_isomorphism_agrees_with_canonical_key():
    structs = list(itertools.islice(enumerate_structures(VOCAB_PR, 2), 40))
    for m, n in itertools.product(structs, repeat=2):
        same = canonical_key(m) == canonical_key(n)
        iso = find_isomorphism(m, n)
        assert (iso is not None) == same
        if iso:
            for rel, rows in m.relations.items():
                assert {tuple(iso[e] for e in row) for row in rows} == n.relations[rel]


def test_truth_variants_agree():
    structs = list(itertools.islice(enumerate_structures(VOCAB_PR, 2), 30))
    for f in sentence_corpus(VOCAB_PR, count=60):
        for m in structs:
            expected = tarski_truth_raw(m, f)
            assert tarski_truth(m, f) == expected
            assert tarski_truth_memo(m, f) == expected
