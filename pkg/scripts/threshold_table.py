"""Tabulate the threshold calculator over a grid of exponents for a few small patterns."""

import argparse
import csv
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from chromlab.classify import Regime, chromatic_threshold
from chromlab.cli import load_graph
from chromlab.density import format_rational


@dataclass
class TableConfig:
    patterns: list[str] = field(default_factory=lambda: ["K3", "C5", "C7", "C9", "K4", "K5", "petersen"])
    denominator: int = 24


def rows(cfg: TableConfig):
    regimes = [Regime("constant")] + [Regime.power(Fraction(a, cfg.denominator)) for a in range(1, cfg.denominator)]
    for name in cfg.patterns:
        h = load_graph(name)
        for regime in regimes:
            ans = chromatic_threshold(h, regime)
            label = "constant" if regime.kind == "constant" else format_rational(regime.alpha)
            yield {"pattern": name, "alpha": label, "lower": format_rational(ans.lower),
                   "upper": format_rational(ans.upper), "exact": ans.exact, "rules": " ".join(ans.provenance)}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--patterns", nargs="+", default=TableConfig().patterns)
    ap.add_argument("--denominator", type=int, default=24)
    args = ap.parse_args()
    cfg = TableConfig(args.patterns, args.denominator)
    out = csv.DictWriter(sys.stdout, ["pattern", "alpha", "lower", "upper", "exact", "rules"], lineterminator="\n")
    out.writeheader()
    out.writerows(rows(cfg))


if __name__ == "__main__":
    main()
