"""Benchmark the compiled lattice kernel against the pure-Python fallback.

Usage: python benchmarks/bench_lattice.py [--heavy]

Times full lattice construction (enumeration + definitional flags) for a
few representative finite modules.  --heavy adds (Z/2)^6, which is slow
on the pure backend.
"""

import argparse
import sys
import time

from essentia import _lattice_py, oracle
from essentia.fgmod import FGModule
from essentia.pid import ZZ, polynomial_ring

try:
    from essentia import _lattice as compiled
except ImportError:
    compiled = None

F2 = polynomial_ring(2)


def cases(heavy: bool):
    zmod = lambda *o: FGModule.from_orders(ZZ, o)
    out = [
        zmod(2, 2, 2, 2),
        zmod(2, 2, 2, 2, 2),
        zmod(4, 8),
        zmod(60),
        zmod(3, 3, 9),
        FGModule(F2, 0, (F2.element((0, 1)), F2.element((0, 0, 0, 1)))),
    ]
    if heavy:
        out.append(zmod(2, 2, 2, 2, 2, 2))
    return out


def run_backend(backend, table):
    t0 = time.perf_counter()
    masks = backend.enumerate_masks(table.add, table.actions)
    t1 = time.perf_counter()
    flags = backend.compute_flags(masks, table.add)
    t2 = time.perf_counter()
    return masks, flags, t1 - t0, t2 - t1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--heavy", action="store_true", help="include (Z/2)^6")
    args = ap.parse_args()
    if compiled is None:
        print("compiled kernel not built; showing the pure backend only", file=sys.stderr)
    header = f"{'module':32s} {'lattice':>8s} {'pure (s)':>10s} {'compiled (s)':>13s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for module in cases(args.heavy):
        table = oracle.element_table(module)
        pm, pf, p_enum, p_flags = run_backend(_lattice_py, table)
        p_total = p_enum + p_flags
        if compiled is not None:
            cm, cf, c_enum, c_flags = run_backend(compiled, table)
            c_total = c_enum + c_flags
            assert cm == pm and cf == pf, "backends disagree!"
            print(f"{str(module):32s} {len(pm):8d} {p_total:10.3f} {c_total:13.3f} "
                  f"{p_total / c_total:7.1f}x")
        else:
            print(f"{str(module):32s} {len(pm):8d} {p_total:10.3f} {'-':>13s} {'-':>8s}")


if __name__ == "__main__":
    main()
