"""Time the two Pauli-application backends on identical term plans.

Usage: python3 benchmarks/bench_kernels.py [--sizes 4,5,6,7] [--repeats 5]

For each register size the same compiled plan and the same random state
are pushed through every available backend; the table reports the median
per-application time and the agreement between backend outputs.
"""

import argparse
import time

import numpy as np

from spinflow import ModelParams, QubitLayout, build_terms, compile_terms
from spinflow._kernels import available_backends


def time_backend(fn, plan, psi, repeats):
    out = np.empty_like(psi)
    scratch = np.empty_like(psi)
    fn(plan, psi, out, scratch)  # warm up
    reps = max(1, 2_000_000 // psi.shape[0])
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        for _ in range(reps):
            fn(plan, psi, out, scratch)
        samples.append((time.perf_counter() - start) / reps)
    return float(np.median(samples)), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="4,5,6,7",
                        help="comma-separated chain lengths N")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing samples per point (median is reported)")
    parser.add_argument("--ratio", type=float, default=0.71,
                        help="system-chain over intra-chain coupling")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    backends = available_backends()
    print(f"{'qubits':>6} {'dim':>8} {'backend':>9} {'ms/apply':>10} "
          f"{'vs pure':>8} {'max |diff|':>11}")
    for n in (int(s) for s in args.sizes.split(",")):
        params = ModelParams(QubitLayout(n), j_se=args.ratio)
        n_q = params.layout.total_qubits
        plan = compile_terms(build_terms(params), n_q)
        psi = rng.normal(size=plan.dim) + 1j * rng.normal(size=plan.dim)
        psi /= np.linalg.norm(psi)
        reference = None
        base = None
        order = ["pure"] + sorted(set(backends) - {"pure"})
        for name in order:
            seconds, out = time_backend(backends[name], plan, psi, args.repeats)
            if reference is None:
                reference, base, diff = out.copy(), seconds, 0.0
            else:
                diff = float(np.max(np.abs(out - reference)))
            print(f"{n_q:>6} {plan.dim:>8} {name:>9} {seconds * 1e3:>10.3f} "
                  f"{base / seconds:>7.2f}x {diff:>11.2e}")


if __name__ == "__main__":
    main()
