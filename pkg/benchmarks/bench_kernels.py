"""Benchmark: compiled kernels vs the pure-numpy fallback.

Times each integrand kernel on batch sizes matching real quadrature loads
(one Gauss-Kronrod panel is 15 nodes) and a full plate-pressure evaluation
with each backend swapped in.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from casimir_metal import PlasmaModel, kernels, pressure_plates_exact
from casimir_metal.kernels import _purepy

try:
    from casimir_metal.kernels import _core
except ImportError:
    _core = None


def time_call(fn, *args, min_time=0.2):
    fn(*args)  # warm up
    n = 1
    while True:
        start = time.perf_counter()
        for _ in range(n):
            fn(*args)
        elapsed = time.perf_counter() - start
        if elapsed >= min_time:
            return elapsed / n
        n = max(n * 2, int(n * min_time / max(elapsed, 1e-9)))


def bench_kernels():
    rng = np.random.default_rng(0)
    ratio = 0.03
    rows = []
    for size in (15, 240, 4096):
        x = np.ascontiguousarray(rng.uniform(1e-3, 60.0, size))
        p = np.ascontiguousarray(1.0 + rng.exponential(5.0, size))
        eps = np.ascontiguousarray(1.0 + (2.0 * p / (ratio * x)) ** 2)
        deps = np.ascontiguousarray(-2.0 * (eps - 1.0) / x)
        calls = [
            ("plates_plasma", (x, p, ratio)),
            ("sphere_log_plasma", (x, p, ratio)),
            ("sphere_parts_plasma", (x, p, ratio)),
            ("plates_generic", (x, p, eps)),
            ("sphere_parts_generic", (x, p, eps, deps)),
        ]
        for name, args in calls:
            t_py = time_call(getattr(_purepy, name), *args)
            t_c = time_call(getattr(_core, name), *args) if _core else float("nan")
            rows.append((name, size, t_py, t_c))
    print(f"{'kernel':24s} {'nodes':>6s} {'numpy':>12s} {'compiled':>12s} {'speedup':>8s}")
    for name, size, t_py, t_c in rows:
        speed = t_py / t_c if t_c == t_c else float("nan")
        print(f"{name:24s} {size:6d} {t_py * 1e6:10.2f}us {t_c * 1e6:10.2f}us {speed:7.1f}x")


def bench_end_to_end():
    model = PlasmaModel(98e-9)
    a = 0.2e-6
    saved = {name: getattr(kernels, name) for name in kernels.__all__ if name != "BACKEND"}
    impls = [("numpy", _purepy)] + ([("compiled", _core)] if _core else [])
    print("\nfull plate-pressure evaluation (a = 0.2 um, defaults):")
    results = {}
    try:
        for label, impl in impls:
            for name in saved:
                setattr(kernels, name, getattr(impl, name))
            t = time_call(pressure_plates_exact, model, a, min_time=1.0)
            res = pressure_plates_exact(model, a)
            results[label] = res.correction_factor
            print(
                f"  {label:9s} {t * 1e3:8.2f} ms/eval   factor={res.correction_factor:.12f}"
                f"   evals={res.n_evals}"
            )
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)
    if len(results) == 2:
        dev = abs(results["numpy"] - results["compiled"])
        print(f"  backend factor difference: {dev:.3e}")


if __name__ == "__main__":
    print(f"active backend at import: {kernels.BACKEND}")
    if _core is None:
        print("compiled extension not available; timing the fallback only")
    bench_kernels()
    bench_end_to_end()
