"""Compiled backend agrees with the pure engine on deterministic slices."""

import itertools

import pytest

import logicgames.fastcore as fc
from logicgames.corpus import (VOCAB_P, VOCAB_PR, VOCAB_R, iso_representatives,
                               sentence_corpus, structure_corpus)
from logicgames.fastcore import pure
from logicgames.fastcore.encode import EncodingError, encode_structure
from logicgames.structures import bare_set, make_structure
from logicgames.syntax import Vocabulary, parse_formula


def test_compiled_backend_is_active():
    # the package builds the extension; pure-only runs must be deliberate
    assert fc.BACKEND == "compiled"


@pytest.mark.parametrize("vocab,family", [(VOCAB_P, "P"), (VOCAB_R, "R"),
                                          (VOCAB_PR, "PR")])
def test_truth_and_game_agree_across_backends(vocab, family):
    structs = structure_corpus()[family][::7][:25]
    for f in sentence_corpus(vocab, count=40):
        for m in structs:
            assert fc.truth(m, f) == pure.truth(m, f)
            assert fc.eval_win(m, f) == pure.eval_win(m, f)


def test_ef_profiles_agree_across_backends():
    reps = iso_representatives(structure_corpus()["PR"])[::37][:12]
    for m, n in itertools.product(reps, repeat=2):
        assert fc.ef_profile(m, n, 3) == pure.ef_profile(m, n, 3)
    orders = structure_corpus()["orders"]
    for m, n in itertools.product(orders[:5], repeat=2):
        assert fc.ef_profile(m, n, 3) == pure.ef_profile(m, n, 3)


def test_large_domains_fall_back_to_pure():
    big = bare_set(9)  # beyond the bitmask encoder's domain limit
    with pytest.raises(EncodingError):
        encode_structure(big)
    assert fc.ef_profile(big, bare_set(9), 2) == pure.ef_profile(big, bare_set(9), 2)


def test_high_arity_falls_back_to_pure():
    vocab = Vocabulary((("T", 3),), (), False)
    m = make_structure(vocab, ("a", "b"), {"T": {("a", "a", "b")}})
    f = parse_formula("exists x. exists y. exists z. T(x, y, z)", vocab)
    assert fc.truth(m, f) == pure.truth(m, f) is True
