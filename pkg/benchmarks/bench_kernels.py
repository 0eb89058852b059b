"""Time the numba and pure-numpy versions of the hot kernels side by side.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both implementations are called directly, so ``BT1FERMAT_NUMBA`` has no effect
here.  The first numba call per kernel (JIT compile or cache load) is excluded.
"""
import argparse
import timeit

import numpy as np

from bt1fermat import _accel
from bt1fermat.fermat import FERMAT, QUOTIENT, _arrays
from bt1fermat.semilinear import field_make


def cycle_cases():
    for p, d, fam in [(3, 728, QUOTIENT), (2, 4095, QUOTIENT), (2, 63, FERMAT), (3, 80, FERMAT), (5, 124, FERMAT)]:
        perm, mask, _ = _arrays(p, d, fam)
        yield f"cycles {fam:<15} p={p} d={d:<5}", (perm, mask), _accel.cycle_decompose_numpy, _accel.cycle_decompose_numba


def rref_cases(rng):
    for p, m, n in [(2, 1, 64), (3, 2, 48), (5, 2, 96)]:
        fld = field_make(p, m)
        M = rng.integers(0, p**m, size=(n, n))
        args = (M, p, m, fld.exp, fld.log)
        yield f"gf_rref GF({p}^{m}) n={n:<3}", args, _accel.gf_rref_numpy, _accel.gf_rref_numba


def run(repeat):
    rng = np.random.default_rng(0)
    print(f"{'kernel':<40}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, args, slow, fast in [*cycle_cases(), *rref_cases(rng)]:
        a, b = slow(*args), fast(*args)
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        t_np = min(timeit.repeat(lambda: slow(*args), number=1, repeat=repeat)) * 1e3
        t_nb = min(timeit.repeat(lambda: fast(*args), number=1, repeat=repeat)) * 1e3
        print(f"{name:<40}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>9.1f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    run(ap.parse_args().repeat)


if __name__ == "__main__":
    main()
