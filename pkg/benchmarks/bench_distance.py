#!/usr/bin/env python3
"""Benchmark the compiled distance kernel against the pure-Python fallback.

The character-level Levenshtein loop dominates post-edit reports and
pairwise version matrices, so this is the number that decides whether the
extension is worth building on a given platform.

Usage: python benchmarks/bench_distance.py [--pairs 2000] [--length 80]
"""

import argparse
import random
import statistics
import time

from geceval import _kernels_py

try:
    from geceval import _kernels
except ImportError:
    _kernels = None

ALPHABET = "abcdefghijklmnopqrstuvwxyzåäö .,"


def make_pairs(n_pairs: int, length: int, seed: int = 1):
    rng = random.Random(seed)
    pairs = []
    for _ in range(n_pairs):
        a = "".join(rng.choice(ALPHABET) for _ in range(rng.randint(length // 2, length)))
        # perturb a into b: realistic post-edit distance workload
        b = list(a)
        for _ in range(rng.randint(0, max(1, length // 8))):
            op = rng.randrange(3)
            pos = rng.randrange(len(b)) if b else 0
            if op == 0 and b:
                b[pos] = rng.choice(ALPHABET)
            elif op == 1 and b:
                del b[pos]
            else:
                b.insert(pos, rng.choice(ALPHABET))
        pairs.append((a, "".join(b)))
    return pairs


def bench(fn, pairs, repeats: int = 3):
    times = []
    checksum = 0
    for _ in range(repeats):
        started = time.perf_counter()
        checksum = sum(fn(a, b) for a, b in pairs)
        times.append(time.perf_counter() - started)
    return min(times), statistics.mean(times), checksum


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=2000)
    parser.add_argument("--length", type=int, default=80)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    pairs = make_pairs(args.pairs, args.length)
    total_chars = sum(len(a) * len(b) for a, b in pairs)
    print(f"{args.pairs} pairs, max length {args.length}, "
          f"{total_chars / 1e6:.1f}M DP cells per pass\n")

    py_best, py_mean, py_sum = bench(_kernels_py.levenshtein, pairs, args.repeats)
    print(f"pure python : best {py_best:8.3f}s  mean {py_mean:.3f}s")

    if _kernels is None:
        print("compiled    : not built (install with Cython available)")
        return 0

    c_best, c_mean, c_sum = bench(_kernels.levenshtein, pairs, args.repeats)
    print(f"compiled    : best {c_best:8.3f}s  mean {c_mean:.3f}s")
    if c_sum != py_sum:
        print("MISMATCH: kernels disagree!")
        return 1
    print(f"\nspeedup     : {py_best / c_best:.1f}x  (identical results, "
          f"checksum {c_sum})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
