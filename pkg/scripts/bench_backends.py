"""Benchmark the compiled kernels against the pure-Python engine.

Runs identical deterministic workloads through both backends and prints
per-operation timings plus the speedup. The compiled extension must be
built (pip install -e .) for the comparison to be meaningful.
"""

from __future__ import annotations

import itertools
import time

import logicgames.fastcore as fc
from logicgames.corpus import (VOCAB_PR, iso_representatives, sentence_corpus,
                               structure_corpus)
from logicgames.fastcore import pure


def bench(label, fast, slow, checks):
    t0 = time.perf_counter()
    for args in checks:
        fast(*args)
    t_fast = time.perf_counter() - t0
    t0 = time.perf_counter()
    for args in checks:
        slow(*args)
    t_slow = time.perf_counter() - t0
    n = len(checks)
    print(f"{label:<12} {n:>6} ops   compiled {t_fast:7.3f}s   "
          f"pure {t_slow:7.3f}s   speedup {t_slow / t_fast:5.1f}x")
    return t_fast, t_slow


def main():
    if fc.BACKEND != "compiled":
        print("compiled extension not available; build it first")
        return
    corpus = structure_corpus()["PR"]
    reps = iso_representatives(corpus)
    sentences = sentence_corpus(VOCAB_PR)

    truth_checks = [(m, f) for m in corpus[:120] for f in sentences]
    bench("truth", fc.truth, pure.truth, truth_checks)
    bench("eval_win", fc.eval_win, pure.eval_win, truth_checks)

    ef_checks = [(m, n, 3) for m, n in itertools.product(reps[:70], repeat=2)]
    bench("ef_profile", fc.ef_profile, pure.ef_profile, ef_checks)

    # agreement spot check on the benchmarked workload
    for m, f in truth_checks[::97]:
        assert fc.truth(m, f) == pure.truth(m, f)
        assert fc.eval_win(m, f) == pure.eval_win(m, f)
    for m, n, r in ef_checks[::53]:
        assert fc.ef_profile(m, n, r) == pure.ef_profile(m, n, r)
    print("backends agree on the benchmarked workload")


if __name__ == "__main__":
    main()
