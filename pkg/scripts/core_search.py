"""Record whether random search finds a heavy m-set in G(n, p) at desk scale."""

import argparse
import json
import math
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from chromlab.constructions import core_size, find_small_core, sample_gnp


@dataclass
class CoreConfig:
    n: int = 5000
    p: float = 0.012
    k: int = 3
    eps: str = "3"
    seed: int = 3
    trials: int = 1000


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(CoreConfig()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = CoreConfig(**vars(ap.parse_args()))
    start = time.perf_counter()
    g = sample_gnp(cfg.n, cfg.p, cfg.seed)
    m = core_size(Fraction(cfg.eps), cfg.p)
    core = find_small_core(g, cfg.k, Fraction(cfg.eps), cfg.p, cfg.seed, cfg.trials)
    record = {
        "config": asdict(cfg),
        "m": m,
        "edges_needed": cfg.k * cfg.k * m,
        "mean_edges_per_set": math.comb(m, 2) * cfg.p,
        "found": core is not None,
        "seconds": round(time.perf_counter() - start, 2),
    }
    if core is not None:
        record.update(girth=core.girth, chi_lower=core.chi_lower)
    print(json.dumps(record, indent=2, default=str))


if __name__ == "__main__":
    main()
