"""Compare the numba kernels with their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The JIT column is empty when numba is missing or MARKOV_CYCLES_DISABLE_JIT is set.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from markov_cycles import _kernels, current_matrix, stationary_distribution, validate_generator
from markov_cycles._jit import JIT_ENABLED
from markov_cycles.sim import BLOCK, _jump_table


def best_of(fn, repeat):
    fn()  # warm-up, includes compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    g = validate_generator(rng.uniform(0.1, 10.0, (3, 3)))
    cum, exit_rates = _jump_table(g.q)
    expo, unif = rng.standard_exponential(BLOCK), rng.random(BLOCK)
    out_s, out_t = np.empty(BLOCK, dtype=np.int64), np.empty(BLOCK)
    states = rng.integers(0, 10, 200_000)
    a = rng.normal(size=(60, 60))
    b = rng.normal(size=60)
    g40 = validate_generator(rng.uniform(0.1, 10.0, (40, 40)))
    d40 = np.ascontiguousarray(current_matrix(g40, stationary_distribution(g40)).d)
    nb = 39 * 38 // 2
    return {
        "gillespie_block": lambda k: k["gillespie_block"](cum, exit_rates, 0, 0.0, 1e12, expo, unif, out_s, out_t),
        "transition_counts": lambda k: k["transition_counts"](states, 10),
        "det (60x60)": lambda k: k["det"](a.copy()),
        "solve (60x60)": lambda k: k["solve"](a.copy(), b.copy()),
        "chord_recurrence (N=40)": lambda k: k["chord_recurrence"](d40, np.zeros(nb)),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    names = ("gillespie_block", "transition_counts", "det", "solve", "chord_recurrence")
    py = {n: getattr(_kernels, n + "_py") for n in names}
    jit = {n: getattr(_kernels, n) for n in names}
    print(f"{'kernel':<26}{'numpy (ms)':>12}{'jit (ms)':>12}{'speedup':>10}")
    for label, run in cases(np.random.default_rng(0)).items():
        t_py = best_of(lambda: run(py), args.repeat) * 1e3
        if JIT_ENABLED:
            t_jit = best_of(lambda: run(jit), args.repeat) * 1e3
            print(f"{label:<26}{t_py:>12.3f}{t_jit:>12.3f}{t_py / t_jit:>9.1f}x")
        else:
            print(f"{label:<26}{t_py:>12.3f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
