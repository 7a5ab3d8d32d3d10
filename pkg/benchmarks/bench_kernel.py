#!/usr/bin/env python3
"""Benchmark the compiled stepping kernel against the pure-Python twin.

Runs identical trials through every available backend, checks the outputs
agree bit-for-bit, and reports per-trial wall time and speedup.
"""

import argparse
import time

import atmc.kernels as kernels
from atmc.config import default_config
from atmc.motility import _simulate_trial


def time_backend(backend, config, x_value, trials, repeats):
    kernels.simulate_steps = kernels.get_kernel(backend).simulate_steps
    best = []
    outcomes = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        outcomes = [_simulate_trial(config, x_value, t)[0].y_received
                    for t in range(trials)]
        best.append((time.perf_counter() - t0) / trials)
    return min(best), outcomes


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tau", type=float, default=250.0,
                        help="symbol duration, s")
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--x", type=int, default=30,
                        help="vesicles released per trial")
    parser.add_argument("--diffusion", type=float, default=1e-3,
                        help="MT diffusion coefficient, um^2/s")
    args = parser.parse_args()

    config = default_config(args.diffusion, symbol_duration=args.tau,
                            trials_per_symbol=args.trials)
    n_steps = int(args.tau / config.dt)
    print(f"symbol duration {args.tau:g} s -> {n_steps} steps x "
          f"{config.num_mts} MTs per trial, {args.trials} trials, "
          f"best of {args.repeats}")

    original = kernels.simulate_steps
    rows = {}
    try:
        for backend in kernels.available_backends():
            per_trial, outcomes = time_backend(backend, config, args.x,
                                               args.trials, args.repeats)
            rows[backend] = (per_trial, outcomes)
            print(f"  {backend:9s} {per_trial * 1e3:8.3f} ms/trial")
    finally:
        kernels.simulate_steps = original

    if len(rows) == 2:
        agree = rows["compiled"][1] == rows["python"][1]
        speedup = rows["python"][0] / rows["compiled"][0]
        print(f"  outcomes identical: {agree}")
        print(f"  speedup: x{speedup:.1f}")
        if not agree:
            raise SystemExit("backend outputs diverged")
    else:
        print("  (compiled kernel not built; nothing to compare)")


if __name__ == "__main__":
    main()
