"""Time the numba and numpy kernel paths side by side.

    python benchmarks/bench_kernels.py --sizes 16 20 24 --repeat 3

Each kernel is run once untimed (numba compiles on first call), then timed
``--repeat`` times; the best time is reported. Results from the two backends
are compared before timing.
"""

import argparse
import time

import numpy as np

from hshdouble.kernels import _numpy

try:
    from hshdouble.kernels import _numba
except ImportError:
    _numba = None


def best_of(fn, make_input, repeat):
    times = []
    for _ in range(repeat):
        arg = make_input()
        t0 = time.perf_counter()
        fn(arg)
        times.append(time.perf_counter() - t0)
    return min(times)


def bench(q, repeat):
    rng = np.random.default_rng(q)
    base = rng.normal(size=2 ** q) + 1j * rng.normal(size=2 ** q)
    targets = np.arange(q, dtype=np.int64)
    mask = np.int64((1 << q) - 1)
    n_sum = min(q, 20)

    cases = {
        "fwht": lambda k: (lambda a: k.fwht(a, targets)),
        "s_phase": lambda k: (lambda a: k.s_phase(a, mask)),
        "residue_counts": lambda k: (lambda a: k.residue_counts(0b1011, 0, 1 << n_sum, -1, -1)),
    }
    backends = {"numpy": _numpy}
    if _numba is not None:
        backends["numba"] = _numba

    # agreement and warm-up
    outs = {}
    for name, k in backends.items():
        a = base[:1024].copy()
        k.fwht(a, np.arange(10, dtype=np.int64))
        k.s_phase(a, np.int64(0x155))
        outs[name] = a
        k.residue_counts(3, 0, 64, -1, -1)
    if len(outs) == 2:
        assert np.allclose(outs["numpy"], outs["numba"])

    rows = []
    for case, build in cases.items():
        timings = {name: best_of(build(k), base.copy, repeat) for name, k in backends.items()}
        rows.append((q, case, timings))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[16, 20, 24])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"{'qubits':>6}  {'kernel':<15} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8}")
    for q in args.sizes:
        for q_, case, t in bench(q, args.repeat):
            nb = t.get("numba")
            speed = f"{t['numpy'] / nb:8.1f}" if nb else "       -"
            nb_s = f"{nb:10.4f}" if nb else "         -"
            print(f"{q_:>6}  {case:<15} {t['numpy']:10.4f} {nb_s} {speed}")


if __name__ == "__main__":
    main()
