"""Compare the compiled DP kernels against the pure-Python fallback.

Runs levenshtein, lcs_length and the mask-aware aligner on
caption-scale integer-id inputs through both backends and reports
per-call latency and speedup.

    python3 benchmarks/bench_kernels.py --pairs 20000
"""

import argparse
import random
import statistics
import time

from capedit import _kernels_py

try:
    from capedit import _speedups
except ImportError:
    _speedups = None


def make_pairs(rng, count, with_masks):
    pairs = []
    for _ in range(count):
        n = rng.randrange(8, 31)
        m = rng.randrange(8, 31)
        x = [rng.randrange(30) for _ in range(n)]
        y = [rng.randrange(30) for _ in range(m)]
        if with_masks:
            for i in rng.sample(range(n), rng.randrange(1, 4)):
                x[i] = _kernels_py.MASK
        pairs.append((x, y))
    return pairs


def bench(fn, pairs, repeats):
    # best-of-N wall time over the whole batch; per-call time in us
    best = min(
        _timed(fn, pairs) for _ in range(repeats)
    )
    return best / len(pairs) * 1e6


def _timed(fn, pairs):
    start = time.perf_counter()
    for x, y in pairs:
        fn(x, y)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=20000)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _speedups is None:
        raise SystemExit("compiled extension not importable; nothing to compare")

    rng = random.Random(args.seed)
    plain = make_pairs(rng, args.pairs, with_masks=False)
    masked = make_pairs(rng, args.pairs, with_masks=True)
    jobs = [
        ("levenshtein", plain, _kernels_py.levenshtein, _speedups.levenshtein),
        ("lcs_length", plain, _kernels_py.lcs_length, _speedups.lcs_length),
        ("dsa", masked, _kernels_py.dsa, _speedups.dsa),
    ]

    lens = [len(x) + len(y) for x, y in plain]
    print(f"{args.pairs} pairs, combined length "
          f"median {statistics.median(lens):.0f} tokens, best of {args.repeats}")
    print(f"{'kernel':<12} {'python us':>10} {'compiled us':>12} {'speedup':>8}")
    for name, pairs, py_fn, c_fn in jobs:
        for x, y in pairs[:100]:
            assert py_fn(x, y) == c_fn(x, y)
        py_us = bench(py_fn, pairs, args.repeats)
        c_us = bench(c_fn, pairs, args.repeats)
        print(f"{name:<12} {py_us:>10.1f} {c_us:>12.1f} {py_us / c_us:>7.1f}x")


if __name__ == "__main__":
    main()
