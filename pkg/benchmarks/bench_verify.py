"""Time the three verification paths on factorizations of growing size.

    python benchmarks/bench_verify.py            # default cases
    python benchmarks/bench_verify.py --repeat 5 --python-max 2048

Each case checks ``phi psi == f I`` with

* ``python`` -- exact polynomial-matrix product (``mat_mul``) plus comparison,
* ``numpy``  -- packed arrays, vectorized term expansion,
* ``numba``  -- packed arrays, ``@njit`` term expansion (skipped without numba).

The first numba call compiles the kernel; it is warmed up on a small case
and not timed. All paths must agree, otherwise the script exits with 1.
"""
from __future__ import annotations

import argparse
import statistics
import sys
import time

from mfkit import PolyMatrix, expand, mat_mul, parse, standard_factorize
from mfkit import _accel
from mfkit.reducer import improved_factorize

EX2 = "x^3y^2 + (xy+x^2z+yz^2)(xz+y^2+y^2z)"
EX3 = "xy + (xy+x^2z+yz^2)(x^2+z^2) + (yz+xy^2+x^2)(x^3z^2+yx+y^2)"

CASES = [
    ("improved 64", lambda: improved_factorize(parse(EX2)).mf),
    ("standard 512", lambda: standard_factorize(expand(parse(EX2)))),
    ("improved 2048", lambda: improved_factorize(parse(EX3)).mf),
]


def python_path(x) -> bool:
    return mat_mul(x.phi, x.psi) == PolyMatrix.scalar(x.f, x.n)


def packed_path(backend):
    def run(x) -> bool:
        return _accel.product_is_scalar(x.phi, x.psi, x.f, backend)
    return run


def best_of(fn, x, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(x)
        times.append(time.perf_counter() - t0)
    return result, min(times), statistics.median(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--python-max", type=int, default=512,
                    help="skip the pure-Python path above this size (it is slow)")
    args = ap.parse_args(argv)

    paths = [("numpy", packed_path("numpy"))]
    if _accel.HAS_NUMBA:
        paths.insert(0, ("numba", packed_path("numba")))
        warm = standard_factorize("x^2 + y^2 + z^2")
        _accel.product_is_scalar(warm.phi, warm.psi, warm.f, "numba")
    else:
        print("numba unavailable or disabled; timing numpy and python only")
    paths.append(("python", python_path))

    print(f"{'case':<15}{'size':>6}  {'path':<7}{'best ms':>10}{'median ms':>11}{'speedup':>9}")
    agree = True
    for name, build in CASES:
        x = build()
        rows = []
        for pname, fn in paths:
            if pname == "python" and x.n > args.python_max:
                continue
            ok, best, med = best_of(fn, x, args.repeat)
            rows.append((pname, ok, best, med))
        ref = max(r[2] for r in rows)
        for pname, ok, best, med in rows:
            agree &= ok is True
            print(f"{name:<15}{x.n:>6}  {pname:<7}{best * 1e3:>10.1f}{med * 1e3:>11.1f}{ref / best:>8.1f}x")
    if not agree:
        print("paths disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
