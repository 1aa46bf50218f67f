"""Compare the compiled and NumPy kernel backends.

    python benchmarks/bench_kernels.py [--samples 200000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from z3rosec import kernels
from z3rosec.array import ArrayGeometry, UserDef, los_channel
from z3rosec.bussgang import rapp_bussgang_mc
from z3rosec.pa import IboSpec, RappParams, psat_from_ibo
from z3rosec.precoders import mrt_with_an, z3ro


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["python"] + (["cython"] if kernels.compiled_backend is not None else [])
    geom = ArrayGeometry(16)
    h = los_channel(geom, UserDef(np.deg2rad(120.0), 1.0))
    rapp = RappParams(psat_from_ibo(IboSpec(-5.0, 1 / 16)))
    cases = {
        f"rapp MC, Z3RO beam, N={args.samples}": lambda b: rapp_bussgang_mc(rapp, z3ro(h), args.samples, 0, b),
        f"rapp MC, MRT+AN (rank 16), N={args.samples}":
            lambda b: rapp_bussgang_mc(rapp, mrt_with_an(h), args.samples, 0, b),
    }
    print(f"{'case':<48}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in cases.items():
        t = [best_of(lambda b=b: fn(b), args.repeat) for b in backends]
        line = f"{name:<48}" + "".join(f"{x * 1e3:>10.1f}ms" for x in t)
        if len(t) > 1:
            line += f"{t[0] / t[1]:>11.2f}x"
        print(line)


if __name__ == "__main__":
    main()
