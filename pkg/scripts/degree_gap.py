"""Minimum degree against the certificate target for each construction as n grows.

The targets are asymptotic; this sweep shows how far desk-scale n sits from them.
"""

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field

from chromlab.constructions import (
    construct_cloud,
    construct_copy_deletion,
    construct_rpartite_plant,
    greedy_cycle_process,
)
from chromlab.graph import complete_graph

BUILDERS = {
    "rpartite": (0.4, lambda n, p, seed: construct_rpartite_plant(n, p, 4, 8, seed=seed, trials=0)),
    "cloud": (0.4, lambda n, p, seed: construct_cloud(n, p, 10, seed=seed, trials=0)),
    "copy-deletion": (0.7, lambda n, p, seed: construct_copy_deletion(n, p, complete_graph(3), seed, trials=0)),
    "greedy": (0.6, lambda n, p, seed: greedy_cycle_process(n, p, 2, omega=4, seed=seed)),
}


@dataclass
class GapConfig:
    constructions: list[str] = field(default_factory=lambda: list(BUILDERS))
    sizes: list[int] = field(default_factory=lambda: [500, 1000, 2000, 4000])
    seeds: int = 3


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--constructions", nargs="+", choices=list(BUILDERS), default=list(BUILDERS))
    ap.add_argument("--sizes", type=int, nargs="+", default=GapConfig().sizes)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()
    cfg = GapConfig(args.constructions, args.sizes, args.seeds)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["construction", "n", "p", "seed", "min_degree", "target", "ratio", "seconds"])
    for name in cfg.constructions:
        exponent, build = BUILDERS[name]
        for n in cfg.sizes:
            p = n ** -exponent
            for seed in range(cfg.seeds):
                start = time.perf_counter()
                cert = build(n, p, seed).certificate
                out.writerow([name, n, f"{p:.6f}", seed, cert.min_degree, f"{cert.degree_target:.2f}",
                              f"{cert.min_degree / cert.degree_target:.3f}", f"{time.perf_counter() - start:.1f}"])
                sys.stdout.flush()


if __name__ == "__main__":
    main()
