"""Compare the numba and pure-numpy kernels on graph Laplacians of growing size.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--sizes 20 56 120]

The numba functions are warmed up once before timing so JIT compilation is
not counted.  Results of the two paths are also compared numerically.
"""
import argparse
import math
from timeit import default_timer as timer

import numpy as np

from drg_mnhd import graphs, kernels, spectra


def _graph_of_size(n):
    # Johnson graphs J(k, 3) give dense, highly degenerate spectra
    for k in range(6, 40):
        if math.comb(k, 3) >= n:
            return graphs.johnson(k, 3)
    raise ValueError(n)


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = timer()
        out = fn()
        times.append(timer() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 56, 120])
    ap.add_argument("--times", type=int, default=400)
    args = ap.parse_args()

    if not kernels.HAVE_NUMBA:
        print("numba not importable; only the numpy path is available")
        return

    warm = spectra.laplacian(graphs.cycle(5))
    kernels.jacobi_numba(warm, 100, 1e-12)
    kernels.h_grid_numba(np.ones(2), np.ones((1, 2)), np.ones((1, 2)), np.ones(2))

    print(f"{'kernel':<8} {'n':>5} {'numpy s':>10} {'numba s':>10} {'speedup':>8} {'max diff':>10}")
    for n in args.sizes:
        g = _graph_of_size(n)
        L = spectra.laplacian(g)
        t_np, (w_np, _, _, _) = _best(lambda: kernels.jacobi_numpy(L, 100, 1e-12), args.repeat)
        t_nb, (w_nb, _, _, _) = _best(lambda: kernels.jacobi_numba(L, 100, 1e-12), args.repeat)
        diff = float(np.abs(np.sort(w_np) - np.sort(w_nb)).max())
        print(f"{'jacobi':<8} {g.vertex_count:>5} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f} {diff:>10.2e}")

        decomp = spectra.decompose_graph(g)
        pairs = np.array(spectra.all_pairs(g.vertex_count))
        puu, puv = spectra._pair_entries(decomp, pairs)
        ts = spectra.GridSpec(points=args.times).times()
        lams = decomp.eigenvalues
        t_np, h_np = _best(lambda: kernels.h_grid_numpy(lams, puu, puv, ts), args.repeat)
        t_nb, h_nb = _best(lambda: kernels.h_grid_numba(lams, puu, puv, ts), args.repeat)
        diff = float(np.abs(h_np - h_nb).max())
        print(f"{'h_grid':<8} {g.vertex_count:>5} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f} {diff:>10.2e}")


if __name__ == "__main__":
    main()
