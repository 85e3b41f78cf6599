"""Compare the compiled and pure-Python kernel backends.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--json]

Times each kernel on representative inputs with both backends and prints
the speed-up of the compiled one. Exits with status 2 when the extension
is not built.
"""

import argparse
import json
import sys
import timeit

import numpy as np

from opherm import _pykernels

try:
    from opherm import _ckernels
except ImportError:
    _ckernels = None


def _wick_batch(mod):
    for p1 in range(0, 11, 2):
        for q2 in range(0, 11, 2):
            mod.wick_product(p1, 10, 3, 4, 10, q2, 5, 2)


CASES = {
    "gauss_hermite(64)": lambda mod: mod.gauss_hermite(64),
    "gauss_hermite(256)": lambda mod: mod.gauss_hermite(256),
    "hermite_values(20, 10^4 pts)": lambda mod: mod.hermite_values(20, _XS),
    "wavefunction_values(32, 10^4 pts)": lambda mod: mod.wavefunction_values(32, _XS),
    "wick_product x36": _wick_batch,
}
_XS = np.linspace(-6.0, 6.0, 10_000)


def best_time(fn, mod, repeat: int) -> float:
    timer = timeit.Timer(lambda: fn(mod))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 2
    rows = []
    for name, fn in CASES.items():
        t_py = best_time(fn, _pykernels, args.repeat)
        t_c = best_time(fn, _ckernels, args.repeat)
        rows.append({"case": name, "python_s": t_py, "cython_s": t_c, "speedup": t_py / t_c})
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    width = max(len(r["case"]) for r in rows)
    print(f"{'case'.ljust(width)}  {'python':>10}  {'cython':>10}  {'speedup':>8}")
    for r in rows:
        print(f"{r['case'].ljust(width)}  {r['python_s'] * 1e3:9.3f}ms  {r['cython_s'] * 1e3:9.3f}ms  {r['speedup']:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
