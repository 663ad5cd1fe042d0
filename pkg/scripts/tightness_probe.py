"""Worst observed (1 - Pr F)/delta for the event inequality over many seeds and space sizes."""

import argparse
import csv
import sys
from dataclasses import dataclass

from chromlab.montecarlo import event_inequality_tightness


@dataclass
class ProbeConfig:
    seeds: int = 5
    budget: int = 2000
    max_outcomes: int = 64
    max_events: int = 8


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(ProbeConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int, default=default)
    cfg = ProbeConfig(**vars(ap.parse_args()))
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["seed", "spaces", "violations", "worst_ratio", "worst_ratio_float"])
    for index in range(cfg.seeds):
        # per-space seeds are base ^ i, so bases must differ above the budget's bits
        seed = index << 32
        rep = event_inequality_tightness(seed, cfg.budget, cfg.max_outcomes, cfg.max_events)
        out.writerow([seed, rep.spaces, rep.violations, rep.worst_ratio, f"{float(rep.worst_ratio):.4f}"])


if __name__ == "__main__":
    main()
