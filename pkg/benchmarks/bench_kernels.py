"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends are run on identical inputs; the script also checks that they
return the same answer, so a speedup never hides a disagreement.
"""
import argparse
import time

from hardylab.combinatorics import Scenario
from hardylab.inequality import grid_search
from hardylab.kernels import available_backends
from hardylab.lhv import scan

CASES = [
    ("strategy scan", Scenario(6, 3, 2), lambda s, b: scan(s, backend=b)),
    ("strategy scan", Scenario(8, 4, 2), lambda s, b: scan(s, backend=b)),
    ("strategy scan", Scenario(9, 2, 2), lambda s, b: scan(s, backend=b)),
    ("qm grid 720x720", Scenario(5, 2, 2), lambda s, b: grid_search(s, backend=b)),
    ("qm grid 720x720", Scenario(10, 4, 3), lambda s, b: grid_search(s, backend=b)),
]


def best_time(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'kernel':<16} {'scenario':<13}" + "".join(f"{b + ' [s]':>14}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, s, fn in CASES:
        timings, results = [], []
        for b in backends:
            t, r = best_time(lambda: fn(s, b), args.repeat)
            timings.append(t)
            results.append(r)
        line = f"{name:<16} {s.label():<13}" + "".join(f"{t:>14.4f}" for t in timings)
        if len(backends) == 2:
            line += f"{timings[1] / timings[0]:>9.1f}x"
            if results[0] != results[1]:
                line += "  MISMATCH"
        print(line)


if __name__ == "__main__":
    main()
