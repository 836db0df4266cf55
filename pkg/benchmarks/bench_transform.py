"""Timing comparison of the two radix-q transform kernels.

Runs the int64 butterfly over a range of window sizes with the compiled
extension and with the numpy fallback, verifies the outputs are
bit-identical, and prints one line per case.

Usage: python3 benchmarks/bench_transform.py
"""

import time

import numpy as np

from lfwp import _vc_py
from lfwp.localfield import preset
from lfwp.stepspace import _stage_tensor

try:
    from lfwp import _vc
except ImportError:
    _vc = None


def _time(fn, reps=5):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    if _vc is None:
        print("compiled kernel not available; timing the numpy path only")
    cases = [
        ("q2", 10, False), ("q2", 14, False), ("q2", 17, False),
        ("q3", 6, False), ("q3", 9, False),
        ("q4", 5, True), ("q5", 5, False), ("q9", 4, True),
    ]
    header = f"{'field':>5} {'L':>3} {'cells':>8} {'numpy':>10} {'cython':>10} {'speedup':>8}"
    print(header)
    for name, L, with_s in cases:
        params = preset(name)
        q = params.q
        W = (params.p - 1) * (2 if with_s else 1)
        rng = np.random.Generator(np.random.Philox(0))
        arr = rng.integers(-50, 51, size=(q ** L, W), dtype=np.int64)
        stage = _stage_tensor(params, -1, with_s)
        ref = _vc_py.vc_transform(arr, q, L, stage)
        t_py = _time(lambda: _vc_py.vc_transform(arr, q, L, stage))
        if _vc is not None:
            out = _vc.vc_transform(arr, q, L, stage)
            assert np.array_equal(out, ref), "kernel outputs differ"
            t_cy = _time(lambda: _vc.vc_transform(arr, q, L, stage))
            print(f"{name:>5} {L:>3} {q ** L:>8} {t_py * 1e3:>9.2f}ms "
                  f"{t_cy * 1e3:>9.2f}ms {t_py / t_cy:>7.2f}x")
        else:
            print(f"{name:>5} {L:>3} {q ** L:>8} {t_py * 1e3:>9.2f}ms {'-':>10} {'-':>8}")
    print("outputs bit-identical across kernels" if _vc is not None else "")


if __name__ == "__main__":
    main()
