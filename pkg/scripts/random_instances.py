#!/usr/bin/env python3
"""Stress the solver on random instances: random graphs, random distinct
targets, small off-diagonal magnitude.  Prints a per-instance summary and a
final success count."""

import argparse
import pathlib
import sys
import time

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from structured_iep import (
    Graph,
    LeadingDiagonal,
    ProblemSpec,
    TargetSpectrum,
    continuation_solve,
)


def random_graph(rng, n, p=0.5):
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
    return Graph(n=n, edges=tuple(edges))


def random_spec(rng, n, k, epsilon):
    vals = np.sort(rng.uniform(-10.0, 10.0, size=n * k))
    while np.min(np.diff(vals)) < 0.3:
        vals = np.sort(rng.uniform(-10.0, 10.0, size=n * k))
    rng.shuffle(vals)
    return ProblemSpec(
        spectrum=TargetSpectrum(values=vals, n=n, k=k),
        lead=LeadingDiagonal(alpha_k=rng.uniform(0.5, 2.0, size=n)),
        graphs=tuple(random_graph(rng, n) for _ in range(k)),
        epsilon=epsilon,
    )


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--epsilon", type=float, default=0.05)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    ok = 0
    t0 = time.perf_counter()
    for i in range(args.count):
        n = int(rng.integers(2, 6))
        k = int(rng.integers(1, 4))
        spec = random_spec(rng, n, k, args.epsilon)
        rep = continuation_solve(spec)
        status = "ok" if rep.converged and rep.structure_ok else "FAIL"
        ok += status == "ok"
        print(f"[{i:3d}] n={n} k={k} res={rep.residual:.2e} "
              f"steps={len(rep.continuation_path)} {status}")
    print(f"{ok}/{args.count} converged with correct structure "
          f"in {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
