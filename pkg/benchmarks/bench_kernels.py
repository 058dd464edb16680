"""Compare the compiled kernels with the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times each kernel on CNN-preset shapes (batch 64) plus one full Blind
Descent step per architecture under both backends.
"""
import argparse
import time

import numpy as np

from blind_descent import _kernels_py, harness, nn
from blind_descent import optimizer as opt

try:
    from blind_descent import _kernels as _compiled
except ImportError:
    _compiled = None


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times) * 1e3


def kernel_cases(rng):
    x = rng.random((64, 1, 28, 28), dtype=np.float32)
    w = (rng.standard_normal((16, 1, 3, 3)) * 0.01).astype(np.float32)
    b = np.zeros(16, dtype=np.float32)
    act = np.maximum(_kernels_py.conv2d(x, w, b, (1, 1), (0, 0)), 0)
    logits = rng.standard_normal((1000, 10)).astype(np.float32)
    labels = rng.integers(0, 10, 1000)
    return {
        "conv2d 64x1x28x28 * 16x3x3": lambda k: k.conv2d(x, w, b, (1, 1), (0, 0)),
        "maxpool2d 64x16x26x26 k3 s2 p1": lambda k: k.maxpool2d(act, (3, 3), (2, 2), (1, 1)),
        "cross_entropy 1000x10": lambda k: k.cross_entropy_rows(logits, labels),
    }


def step_time(arch, backend, repeat):
    saved = (nn.kernels.conv2d, nn.kernels.maxpool2d, nn.kernels.cross_entropy_rows)
    nn.kernels.conv2d = backend.conv2d
    nn.kernels.maxpool2d = backend.maxpool2d
    nn.kernels.cross_entropy_rows = backend.cross_entropy_rows
    try:
        model = harness.build_preset(arch, seed=0)
        bd = opt.BlindDescent(model, opt.OptimizerConfig(), seed=0)
        rng = np.random.default_rng(0)
        batch = (rng.random((64, 1, 28, 28), dtype=np.float32), rng.integers(0, 10, 64))
        return best_of(lambda: bd.step(batch), repeat)
    finally:
        nn.kernels.conv2d, nn.kernels.maxpool2d, nn.kernels.cross_entropy_rows = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=50)
    args = parser.parse_args()
    backends = [("numpy", _kernels_py)]
    if _compiled is not None:
        backends.insert(0, ("cython", _compiled))
    else:
        print("compiled kernels not built; timing the NumPy fallback only")

    rng = np.random.default_rng(0)
    cases = kernel_cases(rng)
    print(f"{'case':40s}" + "".join(f"{name:>12s}" for name, _ in backends) + "   (ms, best of "
          f"{args.repeat})")
    for label, fn in cases.items():
        row = [best_of(lambda: fn(k), args.repeat) for _, k in backends]
        print(f"{label:40s}" + "".join(f"{t:12.3f}" for t in row))
    for arch in harness.ARCHES:
        row = [step_time(arch, k, max(args.repeat // 5, 5)) for _, k in backends]
        print(f"{'blind descent step, ' + arch + ' batch 64':40s}" + "".join(f"{t:12.3f}" for t in row))


if __name__ == "__main__":
    main()
