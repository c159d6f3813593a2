"""Compare the compiled and NumPy kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from su3bloch import kernels
from su3bloch.bloch import bloch_from_density, density_from_amplitudes, generator_matrix
from su3bloch.invariants import ALL_SUBSETS
from su3bloch.model import SystemConfig, dressed_hamiltonian


def workload():
    cfg = SystemConfig("cascade", 1.0, 0.7, 0.3, -0.2)
    m = np.ascontiguousarray(generator_matrix(dressed_hamiltonian(cfg)))
    s0 = np.ascontiguousarray(bloch_from_density(density_from_amplitudes([0.6, 0.48, 0.64])))
    masks = np.array([sum(1 << (i - 1) for i in subset) for subset in ALL_SUBSETS], dtype=np.int64)
    return m, s0, masks


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--steps", type=int, default=20000, help="RK4 steps (default: t=20 at dt=1e-3)")
    args = parser.parse_args(argv)

    m, s0, masks = workload()
    found = kernels.backends()
    states = found["python"].rk4_linear(m, s0, 1e-3, args.steps)
    results = {}
    for name, mod in found.items():
        rk4 = min(timeit.repeat(lambda: mod.rk4_linear(m, s0, 1e-3, args.steps), number=1, repeat=args.repeat))
        scan = min(timeit.repeat(lambda: mod.subset_deviations(states, masks), number=1, repeat=args.repeat))
        results[name] = (rk4, scan)

    print(f"active backend: {kernels.BACKEND}")
    print(f"{'backend':<8} {'rk4_linear':>12} {'subset_dev':>12}   ({args.steps} steps, {len(masks)} subsets)")
    for name, (rk4, scan) in results.items():
        print(f"{name:<8} {rk4 * 1e3:>10.2f}ms {scan * 1e3:>10.2f}ms")
    if "cython" in results:
        py, cy = results["python"], results["cython"]
        print(f"speedup  {py[0] / cy[0]:>11.1f}x {py[1] / cy[1]:>11.1f}x")
        drift = np.abs(found["cython"].rk4_linear(m, s0, 1e-3, args.steps) - states).max()
        print(f"max |cython - python| trajectory difference: {drift:.2e}")


if __name__ == "__main__":
    main()
