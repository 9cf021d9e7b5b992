#!/usr/bin/env python3
"""Compare the compiled and pure-Python kernels on the hot checks.

Workloads: full brute-force answer-set scans over random propositional
programs (the oracle-style load) and search-based enumeration (candidate
verification dominates). Usage:

    python bench/benchmark_kernels.py [--atoms N] [--programs K]
"""

import argparse
import contextlib
import random
import sys
import time

sys.path.insert(0, "tests")

import randprog

from xplain import kernel
from xplain.ground import ground
from xplain.parser import parse_program
from xplain.stable import enumerate_answer_sets


def make_corpus(rng, count, atoms):
    corpus = []
    while len(corpus) < count:
        text = randprog.random_ground_program(rng, max_atoms=atoms, max_rules=atoms + 4)
        gp = ground(parse_program(text))
        if gp.base_size == atoms:
            corpus.append(gp)
    return corpus


def time_brute(corpus, backend):
    start = time.perf_counter()
    totals = 0
    for gp in corpus:
        compiled = kernel.compile_program(gp, backend=backend)
        totals += len(compiled.answer_sets_brute())
    return time.perf_counter() - start, totals


def time_enumeration(corpus, backend, monkey):
    # enumeration verifies each total candidate through the kernel
    start = time.perf_counter()
    totals = 0
    for gp in corpus:
        with monkey(backend):
            totals += len(enumerate_answer_sets(gp))
    return time.perf_counter() - start, totals


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--atoms", type=int, default=16)
    parser.add_argument("--programs", type=int, default=12)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    if not kernel.compiled_available():
        print("compiled kernel not built; showing pure-Python numbers only")

    rng = random.Random(args.seed)
    corpus = make_corpus(rng, args.programs, args.atoms)
    print(f"{args.programs} random programs, {args.atoms} atoms each")
    print(f"{'workload':<28}{'backend':<12}{'seconds':>10}{'answer sets':>14}")

    rows = []
    backends = ["py"] + (["c"] if kernel.compiled_available() else [])
    for backend in backends:
        seconds, count = time_brute(corpus, backend)
        rows.append(("brute-force scan", backend, seconds, count))

    # stable.py binds the kernel module, so patch through that surface
    import xplain.stable as stable_module

    @contextlib.contextmanager
    def forced_stable(backend):
        original = stable_module.kernel.compile_program
        stable_module.kernel.compile_program = lambda gp, b=None: original(gp, backend=backend)
        try:
            yield
        finally:
            stable_module.kernel.compile_program = original

    for backend in backends:
        seconds, count = time_enumeration(corpus, backend, forced_stable)
        rows.append(("search + verification", backend, seconds, count))

    label = {"py": "python", "c": "compiled"}
    for workload, backend, seconds, count in rows:
        print(f"{workload:<28}{label[backend]:<12}{seconds:>10.3f}{count:>14}")

    if kernel.compiled_available():
        py = {w: s for w, b, s, _ in rows if b == "py"}
        fast = {w: s for w, b, s, _ in rows if b == "c"}
        for workload in py:
            print(f"speedup {workload}: {py[workload] / fast[workload]:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
