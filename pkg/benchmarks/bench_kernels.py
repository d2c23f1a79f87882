"""Compare the compiled and pure-Python F_p kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on identical random inputs under both backends; results
are checked for equality before timings are reported.
"""

import argparse
import random
import timeit

import numpy as np

from frobskew import _core_py

try:
    from frobskew import _core
except ImportError:
    _core = None


def _poly(rng, deg, p):
    a = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
    return a


def cases(rng):
    p = 7
    M = np.array([[rng.randrange(p) for _ in range(60)] for _ in range(40)], dtype=np.int64)
    a, b = _poly(rng, 200, p), _poly(rng, 150, p)
    d = _poly(rng, 40, p)
    return [
        ("rref_modp 40x60 mod 7", "rref_modp", (M, p)),
        ("poly_mul_modp deg 200*150 mod 7", "poly_mul_modp", (a, b, p)),
        ("poly_divmod_modp deg 200 / 40 mod 7", "poly_divmod_modp", (a, d, p)),
    ]


def _same(x, y):
    if isinstance(x, tuple):
        return all(_same(u, v) for u, v in zip(x, y))
    if isinstance(x, np.ndarray):
        return np.array_equal(x, y)
    return x == y


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    backends = [("python", _core_py)] + ([("cython", _core)] if _core is not None else [])
    if _core is None:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':40s}" + "".join(f"{name:>14s}" for name, _ in backends) + ("     speedup" if _core else ""))
    for label, fn, inputs in cases(rng):
        outs = [getattr(mod, fn)(*inputs) for _, mod in backends]
        if not all(_same(outs[0], o) for o in outs[1:]):
            raise SystemExit(f"backend mismatch in {fn}")
        times = [min(timeit.repeat(lambda m=mod: getattr(m, fn)(*inputs), number=1, repeat=args.repeat))
                 for _, mod in backends]
        line = f"{label:40s}" + "".join(f"{t * 1e3:12.3f}ms" for t in times)
        if len(times) == 2:
            line += f"{times[0] / times[1]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
