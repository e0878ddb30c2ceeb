"""Compare the numba and numpy search backends on morphism enumeration.

    python3 benchmarks/bench_enumeration.py [--repeat 3] [--seed 0]

Each case counts all morphisms of the given constraint between two random
unit-lattice graphs. Both backends must report the same count.
"""
import argparse
import time

import numpy as np

from pbpoplus import _kernels
from pbpoplus.gen import random_graph
from pbpoplus.graph import Graph
from pbpoplus.lattice import chain_lattice, unit_lattice
from pbpoplus.search import count_morphisms

CASES = [
    # (name, lattice, (nv, ne) of pattern or tournament size, (nv, ne) of host, constraint)
    ("path3 -> dense8", unit_lattice(), (3, 2), (8, 30), "any"),
    ("tri -> dense10 mono", unit_lattice(), (3, 3), (10, 45), "mono"),
    ("5v -> 9v any", unit_lattice(), (5, 4), (9, 24), "any"),
    ("chain3 4v -> 9v", chain_lattice(3), (4, 4), (9, 30), "any"),
    ("6v -> 12v mono", unit_lattice(), (6, 6), (12, 50), "mono"),
    # transitive tournaments: few solutions, many dead ends
    ("tourn5 -> 30v mono", unit_lattice(), 5, (30, 300), "mono"),
    ("tourn6 -> 40v mono", unit_lattice(), 6, (40, 600), "mono"),
    ("tourn7 -> 60v mono", unit_lattice(), 7, (60, 1500), "mono"),
]


def tournament(lat, k):
    b = lat.bottom
    return Graph(lat, {f"a{i}": b for i in range(k)},
                 {f"a{i}_{j}": (f"a{i}", f"a{j}", b) for i in range(k) for j in range(i + 1, k)})


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if "numba" in backends:
        # compile outside the timed region
        A = random_graph(rng, unit_lattice(), 2, 1)
        count_morphisms(A, A, backend="numba")
    print(f"{'case':<24}{'count':>10}" + "".join(f"{b + ' (s)':>14}" for b in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for name, lat, pattern, (hv, he), constraint in CASES:
        if isinstance(pattern, int):
            A = tournament(lat, pattern)
        else:
            A = random_graph(rng, lat, *pattern, prefix="a")
        B = random_graph(rng, lat, hv, he, prefix="b")
        times, counts = [], []
        for b in backends:
            t, c = timed(lambda: count_morphisms(A, B, constraint, backend=b), args.repeat)
            times.append(t)
            counts.append(c)
        assert len(set(counts)) == 1, f"backends disagree on {name}: {counts}"
        line = f"{name:<24}{counts[0]:>10}" + "".join(f"{t:>14.4f}" for t in times)
        if len(times) == 2:
            line += f"{times[0] / times[1]:>10.1f}x"
        print(line)


if __name__ == "__main__":
    main()
