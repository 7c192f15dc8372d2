"""Compare the compiled and pure-Python convolution kernels.

Usage: python3 benchmarks/bench_convolution.py [--repeat N]

Times the integer kernel (the rational-coefficient path) on dense random series over two and three generators,
and ``series_exp`` end to end with each backend swapped in.
"""

import argparse
import random
import timeit
from fractions import Fraction

from dtpar import kernels
from dtpar.cone_series import ConeSeries, Generator, Geometry, series_exp


def dense_series(rng, g, n_range=3):
    terms = {
        (rng.randint(-n_range, n_range), b): Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        for b in g.classes()
        for _ in range(2)
    }
    return ConeSeries(g, terms)


def geometries():
    yield "2 gens, d=6", Geometry((Generator("a", 1, 1), Generator("b", 1, 2)), 6)
    yield "3 gens, d=5", Geometry((Generator("a", 1, 1), Generator("b", 1, 2), Generator("c", 2, 1)), 5)
    yield "3 gens, d=7", Geometry((Generator("a", 1, 1), Generator("b", 1, 2), Generator("c", 2, 1)), 7)


def nonzero(d):
    return {k: v for k, v in d.items() if v}


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.c_convolve is None:
        print("compiled kernel not built; only the Python kernel is available")
    rng = random.Random(0)
    print(f"{'case':<16}{'terms':>7}{'python ms':>12}{'cython ms':>12}{'speedup':>9}")
    for label, g in geometries():
        a, b = dense_series(rng, g), dense_series(rng, g)
        pa, pb = a._pack_int()[:3], b._pack_int()[:3]
        py = bench(lambda: kernels.py_convolve_int(*pa, *pb, g.d), args.repeat)
        row = f"{'mul ' + label:<16}{len(a.terms):>7}{py * 1e3:>12.2f}"
        if kernels.c_convolve is not None:
            assert nonzero(kernels.c_convolve_int(*pa, *pb, g.d)) == nonzero(kernels.py_convolve_int(*pa, *pb, g.d))
            cy = bench(lambda: kernels.c_convolve_int(*pa, *pb, g.d), args.repeat)
            row += f"{cy * 1e3:>12.2f}{py / cy:>8.1f}x"
        print(row)
    for label, g in geometries():
        x = dense_series(rng, g)
        x = x - x.constant_term()
        timings = {}
        backends = (
            ("python", kernels.py_convolve, kernels.py_convolve_int),
            ("cython", kernels.c_convolve, kernels.c_convolve_int),
        )
        for name, fn, fn_int in backends:
            if fn is None:
                continue
            saved = kernels.convolve, kernels.convolve_int
            kernels.convolve, kernels.convolve_int = fn, fn_int
            try:
                timings[name] = bench(lambda: series_exp(x), max(1, args.repeat // 2))
            finally:
                kernels.convolve, kernels.convolve_int = saved
        row = f"{'exp ' + label:<16}{len(x.terms):>7}{timings['python'] * 1e3:>12.2f}"
        if "cython" in timings:
            row += f"{timings['cython'] * 1e3:>12.2f}{timings['python'] / timings['cython']:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
