"""Benchmark: compiled kernels vs the NumPy fallback.

Runs each hot kernel on a representative mid-size input, checks that
the two backends return identical results, and prints a timing table.
The end-to-end row swaps the backend under the full automorphism
search.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from rank3kit import _kernels_py as pyk
from rank3kit import kernels
from rank3kit.gf import field_make
from rank3kit.graphs import alternating_forms5, hamming2, paley
from rank3kit.iso import _pair_matrix, automorphisms
from rank3kit.permgrp import affine_1dim_group

try:
    from rank3kit import _ck as ck
except ImportError:
    ck = None


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return time.perf_counter() - t0, out


def row(name, c_impl, py_impl, args, check=None):
    tc = out_c = None
    if c_impl is not None:
        tc, out_c = timed(c_impl, *args)
    tp, out_p = timed(py_impl, *args)
    if out_c is not None and check is not None:
        check(out_c, out_p)
    speed = "%.1fx" % (tp / tc) if tc else "-"
    print("%-28s  c=%-8s  python=%-8s  speedup=%s"
          % (name,
             "%.3fs" % tc if tc is not None else "n/a",
             "%.3fs" % tp, speed))


def same_coloring(a, b):
    assert len(a) == len(b), "backend outputs differ"
    assert a[1] == b[1] and (a[0] == b[0]).all(), "backend outputs differ"
    if len(a) > 2:
        assert a[2] == b[2], "refinement traces differ"


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="smaller inputs (for CI smoke runs)")
    args = parser.parse_args()

    if ck is None:
        print("compiled kernels not built; timing the fallback only")

    n_aff = 256 if args.quick else 1024
    G = affine_1dim_group(field_make(2, 8 if args.quick else 10), 3, False)
    row("pair_orbits deg=%d" % n_aff,
        ck.pair_orbits if ck else None, pyk.pair_orbits,
        (G.generators, G.degree), same_coloring)

    g = hamming2(16 if args.quick else 32)
    E = g.dense().astype(np.int16)
    colors = np.zeros(g.n, dtype=np.int32)
    row("refine_partition n=%d" % g.n,
        ck.refine_partition if ck else None, pyk.refine_partition,
        (E, colors, 1), same_coloring)

    w = paley(113) if args.quick else alternating_forms5(2)
    mat, count = _pair_matrix(w)
    row("wl2_round n=%d" % w.n,
        ck.wl2_round if ck else None, pyk.wl2_round,
        (mat, count), same_coloring)

    # end-to-end automorphism search with both backends
    target = hamming2(8 if args.quick else 16)

    def run_search():
        return automorphisms(target).order

    saved = (kernels.pair_orbits, kernels.refine_partition, kernels.wl2_round)
    orders = {}
    if ck is not None:
        kernels.pair_orbits = ck.pair_orbits
        kernels.refine_partition = ck.refine_partition
        kernels.wl2_round = ck.wl2_round
        tc, orders["c"] = timed(run_search)
    else:
        tc = None
    kernels.pair_orbits = pyk.pair_orbits
    kernels.refine_partition = pyk.refine_partition
    kernels.wl2_round = pyk.wl2_round
    tp, orders["python"] = timed(run_search)
    kernels.pair_orbits, kernels.refine_partition, kernels.wl2_round = saved
    if "c" in orders:
        assert orders["c"] == orders["python"], "backends disagree on order"
    print("%-28s  c=%-8s  python=%-8s  speedup=%s"
          % ("automorphisms n=%d" % target.n,
             "%.3fs" % tc if tc is not None else "n/a",
             "%.3fs" % tp,
             "%.1fx" % (tp / tc) if tc else "-"))


if __name__ == "__main__":
    main()
