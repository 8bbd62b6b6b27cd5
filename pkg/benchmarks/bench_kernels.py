"""Time the numba kernels against their numpy fallbacks on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from frattini_lab import _kernels as K
from frattini_lab.groups import group_from_matrix_generators, symmetric_group
from frattini_lab.repmod import transvection_group


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases():
    s6 = symmetric_group(6)
    sl25 = group_from_matrix_generators(5, 2, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
    sp43 = transvection_group(2, 3)
    T = s6.table
    sub = np.flatnonzero(K.table_closure_np(T, np.array([s6.index([1, 0, 2, 3, 4, 5]), s6.index([1, 2, 0, 3, 4, 5])])))
    E = s6.elements
    return [
        ("closure S6 (720)", lambda k: k["closure_rows"](s6.gens_matrix(), 10**6)),
        ("closure SL(2,5) (120)", lambda k: k["closure_rows"](sl25.gens_matrix(), 10**6)),
        ("closure Sp(4,3) (51840)", lambda k: k["closure_rows"](sp43.gens_matrix(), 10**6)),
        ("table closure S6", lambda k: [k["table_closure"](T, np.array([i, 7])) for i in range(0, 720, 9)]),
        ("coset labels S6 / S3", lambda k: k["coset_labels"](T, sub)),
        ("commuting mask S6", lambda k: k["commuting_mask"](E, np.ascontiguousarray(E[:40]))),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not hasattr(K, "closure_rows_nb"):
        raise SystemExit("numba is not available; nothing to compare")
    flavours = {
        suffix: {name: getattr(K, f"{name}_{suffix}") for name in ("closure_rows", "table_closure", "coset_labels", "commuting_mask")}
        for suffix in ("nb", "np")
    }
    print(f"{'case':<26}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for label, fn in cases():
        fn(flavours["nb"])  # compile
        t_nb = best_of(lambda: fn(flavours["nb"]), args.repeat)
        t_np = best_of(lambda: fn(flavours["np"]), args.repeat)
        print(f"{label:<26}{t_nb:>12.5f}{t_np:>12.5f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
