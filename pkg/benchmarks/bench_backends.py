"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_backends.py [--repeat N] [--mc N]
"""
import argparse
import time
import timeit

import numpy as np

from beamtrain import available_backends, use_backend
from beamtrain.config import SimConfig
from beamtrain.sweep import run_sweep


def kernel_cases(rng):
    K, N, M, n_rx, L = 4, 8, 8, 16, 3
    cn = lambda *s: rng.standard_normal(s) + 1j * rng.standard_normal(s)  # noqa: E731
    gains, aoa, aod = cn(L), rng.uniform(-3, 3, L), rng.uniform(-0.5, 0.5, L)
    WH, cb, W = cn(K, N * M), cn(M, N), cn(K, n_rx)
    S, Z, G = cn(N, N), cn(N, n_rx), cn(K, N)
    w = rng.dirichlet(np.ones(N))
    return {
        "ula_response": lambda k: k.ula_response(0.3, 64, 0.5),
        "assemble_channel": lambda k: k.assemble_channel(gains, aoa, aod, n_rx, N * M, 0.5),
        "training_observations": lambda k: k.training_observations(WH, cb, W, S, Z, 1.0),
        "subarray_gain": lambda k: k.subarray_gain(WH, cb),
        "com_accumulate": lambda k: k.com_accumulate(w, cb),
        "logdet2_gram": lambda k: k.logdet2_gram(G, 2.0),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=2000, help="calls per kernel timing")
    parser.add_argument("--mc", type=int, default=200, help="iterations per SNR point in the sweep timing")
    args = parser.parse_args(argv)

    backends = available_backends()
    names = sorted(backends)
    cases = kernel_cases(np.random.default_rng(0))
    print(f"{'kernel':<24}" + "".join(f"{n + ' (us)':>16}" for n in names) + f"{'speedup':>10}")
    for label, fn in cases.items():
        times = {n: min(timeit.repeat(lambda: fn(backends[n]), number=args.repeat, repeat=3))
                 / args.repeat * 1e6 for n in names}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:<24}" + "".join(f"{times[n]:>16.2f}" for n in names) + f"{speed:>10.2f}")

    cfg = SimConfig(mc_iterations=args.mc)
    sweep_times = {}
    for n in names:
        with use_backend(n):
            t0 = time.perf_counter()
            run_sweep(cfg)
            sweep_times[n] = time.perf_counter() - t0
    speed = sweep_times["python"] / sweep_times.get("cython", float("nan"))
    print(f"{'full sweep (5 x ' + str(args.mc) + ')':<24}"
          + "".join(f"{sweep_times[n]:>15.3f}s" for n in names) + f"{speed:>10.2f}")


if __name__ == "__main__":
    main()
