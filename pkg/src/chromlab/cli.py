"""``lab``: reproducible experiment runner with JSON reports and CSV aggregates.

Exit codes: 0 success, 2 ran but not certified / not found, 1 error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import platform
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import numpy as np
import scipy

from . import __version__
from .classify import (
    Regime,
    build_gadget,
    build_k4_gadget_graph,
    chromatic_threshold,
    is_cloud_forest,
    is_thundercloud_forest,
    verify_unequal_pair,
)
from .coloring import Partition, bounded_coloring_pipeline
from .constructions import (
    Construction,
    certify,
    check_cross_expansion,
    construct_cloud,
    construct_copy_deletion,
    construct_rpartite_plant,
    construct_thundercloud,
    demo_host,
    greedy_cycle_process,
    read_host_partition,
    sample_gnp,
    verify_host,
)
from .density import format_rational, is_two_balanced, turan_density, two_density
from .graph import (
    Graph,
    GraphError,
    complete_graph,
    cycle_graph,
    girth,
    min_degree,
    path_graph,
    petersen_graph,
    read_graph,
    write_graph,
)
from .montecarlo import event_inequality_tightness, ratio_trend_ok, sweep_csv, variance_ratio_sweep, vertex_copy_tail
from .solvers import chromatic_number, count_colorings

EXIT_OK, EXIT_ERROR, EXIT_NOT_CERTIFIED = 0, 1, 2
REQUIRED = object()


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    """A subcommand name (e.g. ``"construct greedy"``) plus its parameters."""

    subcommand: str
    parameters: dict[str, Any] = field(default_factory=dict)
    output: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> ExperimentConfig:
        data = json.loads(text)
        if not isinstance(data, dict) or "subcommand" not in data:
            raise UsageError("config must be a JSON object with a 'subcommand' key")
        unknown = set(data) - {"subcommand", "parameters", "output"}
        if unknown:
            raise UsageError(f"unknown config keys {sorted(unknown)}")
        return cls(data["subcommand"], dict(data.get("parameters") or {}), data.get("output"))


# parameter helpers

_P_POWER = re.compile(r"^n\^\(?-([0-9./]+)\)?$")


def resolve_p(spec, n: int | None) -> float:
    """Decimal literal, fraction, or ``n^-a`` with ``a`` a decimal or fraction."""
    text = str(spec).strip().replace(" ", "")
    match = _P_POWER.match(text)
    if match:
        if n is None:
            raise UsageError("p given as a power of n but n is missing")
        return float(n) ** -float(Fraction(match.group(1)))
    try:
        p = float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse p {spec!r}") from exc
    if not 0 <= p <= 1:
        raise UsageError(f"p = {p} outside [0, 1]")
    return p


_NAMED = re.compile(r"^([KCP])(\d+)$")


def load_graph(spec: str) -> Graph:
    """A graph file path, or a name: ``K<n>``, ``C<n>``, ``P<n>``, ``petersen``."""
    match = _NAMED.match(spec)
    if match and not Path(spec).exists():
        kind, size = match.group(1), int(match.group(2))
        return {"K": complete_graph, "C": cycle_graph, "P": path_graph}[kind](size)
    if spec == "petersen" and not Path(spec).exists():
        return petersen_graph()
    return read_graph(spec)


def _json_number(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def _rational(x) -> Fraction:
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational {x!r}") from exc


# handlers: each takes resolved parameters and returns (certified, result, summary)

Outcome = tuple[bool, dict, dict]


def _invariants(pr: dict) -> Outcome:
    g = load_graph(pr["graph"])
    chi = chromatic_number(g)
    res: dict[str, Any] = {"n": g.n, "m": g.m, "girth": _json_number(girth(g)),
                           "chi": chi.value, "chi_bounds": [chi.lower, chi.upper]}
    res["m2"] = format_rational(two_density(g)) if g.n >= 3 else None
    res["two_balanced"] = is_two_balanced(g) if g.n >= 3 else None
    res["pi"] = format_rational(turan_density(g)) if g.m and chi.exact else None
    return True, res, {"chi": chi.value, "m2": res["m2"]}


def _classify(pr: dict) -> Outcome:
    g = load_graph(pr["graph"])
    cloud = is_cloud_forest(g)
    thunder = is_thundercloud_forest(g)
    res = {"cloud_forest": cloud is not None, "cloud": cloud.to_json() if cloud else None,
           "thundercloud_forest": thunder is not None, "thundercloud": thunder.to_json() if thunder else None}
    return True, res, {"cloud_forest": res["cloud_forest"], "thundercloud_forest": res["thundercloud_forest"]}


def _threshold(pr: dict) -> Outcome:
    g = load_graph(pr["graph"])
    regime = Regime.parse(str(pr["regime"]))
    ans = chromatic_threshold(g, regime).to_json()
    return True, ans, {"lower": ans["lower"], "upper": ans["upper"], "exact": ans["exact"]}


def _gadget(pr: dict) -> Outcome:
    g, x, y = build_gadget()
    verdict = verify_unequal_pair(g, x, y, 3)
    res = {"vertices": g.n, "edges": g.m, "x": x, "y": y, "pair": verdict.status,
           "colorings": count_colorings(g, 3), "colorings_with_equal_pair": count_colorings(g, 3, (x, y))}
    ok = bool(verdict)
    if pr["k4"]:
        k4 = build_k4_gadget_graph()
        chi = chromatic_number(k4)
        res["k4_substitution"] = {"vertices": k4.n, "edges": k4.m, "chi": chi.value,
                                  "m2": format_rational(two_density(k4))}
        ok = ok and chi.value == 4
    return ok, res, {"pair": verdict.status}


def _construction_outcome(c: Construction, pr: dict) -> Outcome:
    cert = c.certificate
    passed, total = cert.subset_pass_count()
    checks = [passed == total]
    if cert.h_free is not None:
        checks.append(cert.h_free is True)
    if cert.degree_ok is not None:
        checks.append(cert.degree_ok)
    checks.extend(v for v in cert.extras.values() if isinstance(v, bool))
    if pr.get("graph_out"):
        write_graph(c.graph, pr["graph_out"])
    res = {"n": c.graph.n, "m": c.graph.m, "certificate": cert.to_json()}
    if pr.get("include_layout"):
        res["layout"] = c.layout
    summary = {"seed": pr["seed"], "m": c.graph.m, "min_degree": cert.min_degree,
               "degree_target": cert.degree_target, "degree_ok": cert.degree_ok,
               "subset_pass": f"{passed}/{total}", "h_free": cert.h_free}
    return all(checks), res, summary


def _construct_rpartite(pr: dict) -> Outcome:
    p = resolve_p(pr["p"], pr["n"])
    c = construct_rpartite_plant(pr["n"], p, pr["r"], pr["s"], _rational(pr["eps"]), pr["seed"],
                                 _rational(pr["gamma"]), pr["trials"])
    return _construction_outcome(c, pr)


def _construct_copy_deletion(pr: dict) -> Outcome:
    p = resolve_p(pr["p"], pr["n"])
    c = construct_copy_deletion(pr["n"], p, load_graph(pr["pattern"]), pr["seed"], _rational(pr["gamma"]))
    return _construction_outcome(c, pr)


def _construct_cloud(pr: dict) -> Outcome:
    p = resolve_p(pr["p"], pr["n"])
    c = construct_cloud(pr["n"], p, pr["s"], _rational(pr["gamma"]), pr["seed"], _rational(pr["eps"]), pr["trials"])
    return _construction_outcome(c, pr)


def _host(spec: str | None):
    return demo_host() if spec in (None, "demo") else read_host_partition(spec)


def _construct_thundercloud(pr: dict) -> Outcome:
    p = resolve_p(pr["p"], pr["n"])
    c = construct_thundercloud(pr["n"], p, pr["s"], _rational(pr["gamma"]), _host(pr["host"]), pr["seed"],
                               _rational(pr["eps"]), pr["trials"])
    return _construction_outcome(c, pr)


def _construct_greedy(pr: dict) -> Outcome:
    p = resolve_p(pr["p"], pr["n"])
    c = greedy_cycle_process(pr["n"], p, pr["k"], pr["omega"], pr["seed"], _rational(pr["gamma"]))
    ok, res, summary = _construction_outcome(c, pr)
    summary[f"c{2 * pr['k'] + 1}_free"] = summary.pop("h_free")
    return ok, res, summary


def _color_pipeline(pr: dict) -> Outcome:
    n = pr["n"]
    if pr["graph"]:
        g = load_graph(pr["graph"])
        n = g.n
        p = resolve_p(pr["p"], n)
    else:
        if n is None:
            raise UsageError("color-pipeline needs --graph or --n")
        p = resolve_p(pr["p"], n)
        g = sample_gnp(n, p, pr["seed"])
        if pr["bipartite"]:
            half = n // 2
            g = g.remove_edges([e for e in g.edges if (e[0] < half) == (e[1] < half)])
    partition = None
    if pr["partition"] == "halves":
        if pr["k"] != 2:
            raise UsageError("the halves partition needs k = 2")
        partition = Partition([list(range(n // 2)), list(range(n // 2, n))])
    elif pr["partition"] != "random":
        raise UsageError("partition must be 'random' or 'halves'")
    out = bounded_coloring_pipeline(g, pr["mode"], pr["k"], _rational(pr["d"]), p, pr["seed"],
                                    pr["cn_threshold"], partition)
    res = out.to_json()
    if out.certified:
        res["proper_coloring_check"] = g.is_proper_coloring(out.assignment.coloring(g.n))
    summary = {"seed": pr["seed"], "certified": out.certified, "x0_size": out.diagnostics["x0_size"]}
    return out.certified and res.get("proper_coloring_check", True), res, summary


def _mc_event_inequality(pr: dict) -> Outcome:
    rep = event_inequality_tightness(pr["seed"], pr["budget"], pr["max_outcomes"], pr["max_events"])
    res = rep.to_json()
    return rep.violations == 0, res, {"worst_ratio": res["worst_ratio"], "violations": rep.violations}


def _mc_variance(pr: dict) -> Outcome:
    rows = variance_ratio_sweep(pr["ns"], _rational(pr["eps"]), pr["k"], pr["m"], pr["trials"], pr["seed"])
    text = sweep_csv(rows)
    if pr["csv_out"]:
        Path(pr["csv_out"]).write_text(text, encoding="utf-8")
    trend = ratio_trend_ok(rows)
    return trend, {"rows": [asdict(r) for r in rows], "trend_ok": trend, "csv": text}, {"trend_ok": trend}


def _mc_copytail(pr: dict) -> Outcome:
    rep = vertex_copy_tail(pr["n"], resolve_p(pr["p"], pr["n"]), load_graph(pr["pattern"]), pr["trials"], pr["seed"])
    return True, rep.to_json(), {"estimate": rep.estimate, "stderr": rep.stderr, "soft_bound_ok": rep.passed}


def _verify_host(pr: dict) -> Outcome:
    report = verify_host(_host(pr["host"]))
    return bool(report), {"clauses": report.clauses, "passed": bool(report)}, {"passed": bool(report)}


def _verify_certificate(pr: dict) -> Outcome:
    g = load_graph(pr["graph"])
    claimed = json.loads(Path(pr["cert"]).read_text(encoding="utf-8"))
    claimed = claimed.get("result", {}).get("certificate", claimed)
    pattern = load_graph(pr["pattern"]) if pr["pattern"] else None
    fresh = certify(g, pattern)
    mismatches = []
    if claimed.get("min_degree") != fresh.min_degree:
        mismatches.append("min_degree")
    if pattern is not None and claimed.get("h_free") is not None and claimed["h_free"] != fresh.h_free:
        mismatches.append("h_free")
    target = claimed.get("degree_target")
    if target is not None and claimed.get("degree_ok") is not None and claimed["degree_ok"] != (fresh.min_degree >= target):
        mismatches.append("degree_ok")
    res = {"mismatches": mismatches, "recomputed": fresh.to_json()}
    return not mismatches, res, {"mismatches": ";".join(mismatches)}


def _verify_expansion(pr: dict) -> Outcome:
    g = load_graph(pr["graph"])
    ok = check_cross_expansion(g, _rational(pr["eps"]), pr["mode"], pr["trials"], pr["seed"])
    return ok, {"expands": ok}, {"expands": ok}


HANDLERS: dict[str, tuple[dict[str, Any], Callable[[dict], Outcome]]] = {
    "invariants": ({"graph": REQUIRED}, _invariants),
    "classify": ({"graph": REQUIRED}, _classify),
    "threshold": ({"graph": REQUIRED, "regime": REQUIRED}, _threshold),
    "gadget": ({"k4": False}, _gadget),
    "construct rpartite": ({"n": REQUIRED, "p": REQUIRED, "seed": REQUIRED, "r": 4, "s": 8, "eps": "1/10",
                            "gamma": "1/10", "trials": 100, "graph_out": None, "include_layout": False},
                           _construct_rpartite),
    "construct copy-deletion": ({"n": REQUIRED, "p": REQUIRED, "seed": REQUIRED, "pattern": "K3", "gamma": "1/10",
                                 "graph_out": None, "include_layout": False}, _construct_copy_deletion),
    "construct cloud": ({"n": REQUIRED, "p": REQUIRED, "seed": REQUIRED, "s": 10, "eps": "1/10", "gamma": "1/10",
                         "trials": 100, "graph_out": None, "include_layout": False}, _construct_cloud),
    "construct thundercloud": ({"n": REQUIRED, "p": REQUIRED, "seed": REQUIRED, "s": 2, "eps": "1/10",
                                "gamma": "1/10", "host": "demo", "trials": 100, "graph_out": None,
                                "include_layout": False}, _construct_thundercloud),
    "construct greedy": ({"n": REQUIRED, "p": REQUIRED, "seed": REQUIRED, "k": 2, "omega": None, "gamma": "1/10",
                          "graph_out": None, "include_layout": False}, _construct_greedy),
    "color-pipeline": ({"graph": None, "n": None, "p": REQUIRED, "seed": REQUIRED, "bipartite": False, "k": 2,
                        "d": "1/10", "mode": "c5", "partition": "random", "cn_threshold": None}, _color_pipeline),
    "mc lemma22": ({"seed": REQUIRED, "budget": 10000, "max_outcomes": 64, "max_events": 8}, _mc_event_inequality),
    "mc variance": ({"seed": REQUIRED, "ns": [16, 32, 64], "eps": "1", "k": 1, "m": 4, "trials": 100,
                     "csv_out": None}, _mc_variance),
    "mc copytail": ({"n": REQUIRED, "p": REQUIRED, "seed": REQUIRED, "pattern": "K3", "trials": 2000}, _mc_copytail),
    "verify host": ({"host": "demo"}, _verify_host),
    "verify certificate": ({"graph": REQUIRED, "cert": REQUIRED, "pattern": None}, _verify_certificate),
    "verify expansion": ({"graph": REQUIRED, "eps": REQUIRED, "mode": "exact", "trials": 1000, "seed": 0},
                         _verify_expansion),
}


def resolve(config: ExperimentConfig) -> ExperimentConfig:
    """Config with every default materialised; rejects unknown or missing parameters."""
    if config.subcommand not in HANDLERS:
        raise UsageError(f"unknown subcommand {config.subcommand!r}")
    defaults, _ = HANDLERS[config.subcommand]
    unknown = set(config.parameters) - set(defaults)
    if unknown:
        raise UsageError(f"unknown parameters for {config.subcommand}: {sorted(unknown)}")
    params = {**defaults, **{k: v for k, v in config.parameters.items() if v is not None}}
    missing = sorted(k for k, v in params.items() if v is REQUIRED)
    if missing:
        raise UsageError(f"{config.subcommand} needs {', '.join('--' + m.replace('_', '-') for m in missing)}")
    return ExperimentConfig(config.subcommand, params, config.output)


def versions() -> dict:
    return {"chromlab": __version__, "python": platform.python_version(), "numpy": np.__version__,
            "scipy": scipy.__version__}


def run(config: ExperimentConfig, deterministic: bool = False) -> tuple[int, dict]:
    """Execute one config. Usage and domain errors become exit code 1 with an ``error`` report."""
    start = time.perf_counter()
    try:
        resolved = resolve(config)
        ok, result, summary = HANDLERS[resolved.subcommand][1](resolved.parameters)
        code = EXIT_OK if ok else EXIT_NOT_CERTIFIED
        report = {"config": asdict(resolved), "status": "ok" if ok else "not-certified",
                  "result": result, "summary": summary}
    except (UsageError, GraphError, ValueError, OSError, RuntimeError) as exc:
        code = EXIT_ERROR
        report = {"config": asdict(config), "status": "error", "error": f"{type(exc).__name__}: {exc}"}
    report["versions"] = versions()
    if not deterministic:
        report["wall_clock_seconds"] = time.perf_counter() - start
    return code, report


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"


# batch

def _run_file(path: Path, deterministic: bool) -> tuple[str, int, dict]:
    try:
        config = ExperimentConfig.from_json(path.read_text(encoding="utf-8"))
    except (OSError, UsageError, json.JSONDecodeError) as exc:
        return path.name, EXIT_ERROR, {"status": "error", "error": f"{type(exc).__name__}: {exc}"}
    code, report = run(config, deterministic)
    if config.output:
        Path(config.output).write_text(dump_report(report), encoding="utf-8")
    return path.name, code, report


def batch(directory, jobs: int = 1, deterministic: bool = False) -> tuple[int, str]:
    """Run every ``*.json`` config in ``directory``; returns (exit code, CSV text)."""
    files = sorted(Path(directory).glob("*.json"))
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_file, files, [deterministic] * len(files)))
    else:
        outcomes = [_run_file(f, deterministic) for f in files]
    rows = []
    for name, code, report in outcomes:
        row = {"config": name, "subcommand": report.get("config", {}).get("subcommand", ""),
               "status": report["status"], "exit_code": code, "error": report.get("error", "")}
        row.update(report.get("summary", {}))
        rows.append(row)
    columns: list[str] = []
    for row in rows:
        columns.extend(k for k in row if k not in columns)
    buf = io.StringIO()
    if columns:
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    code = EXIT_ERROR if any(c == EXIT_ERROR for _, c, _ in outcomes) else EXIT_OK
    return code, buf.getvalue()


# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, *names: str) -> None:
    spec = {
        "graph": dict(help="graph file (edge list) or a name such as K3, C5, petersen"),
        "n": dict(type=int),
        "p": dict(help="decimal, fraction, or n^-a"),
        "seed": dict(type=int, help="random seed (required for randomized runs)"),
        "trials": dict(type=int),
    }
    for name in names:
        p.add_argument(f"--{name}", **spec[name])


def _global_flags(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--out", default=default, help="write the report (or CSV) here instead of stdout")
    p.add_argument("--deterministic", action="store_true", default=default,
                   help="omit wall-clock time from the report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lab", description=__doc__.splitlines()[0])
    _global_flags(parser, None)
    parser.add_argument("--config", help="run a JSON ExperimentConfig instead of flags")
    # leaf parsers accept the global flags too; SUPPRESS keeps them from clobbering earlier values
    leaf = argparse.ArgumentParser(add_help=False)
    _global_flags(leaf, argparse.SUPPRESS)

    def subparsers(owner: argparse.ArgumentParser, dest: str):
        action = owner.add_subparsers(dest=dest, parser_class=_Parser)
        add = action.add_parser
        action.add_parser = lambda *a, **k: add(*a, parents=[leaf], **k)
        return action

    sub = subparsers(parser, "command")

    for name in ("invariants", "classify"):
        _common(sub.add_parser(name), "graph")
    th = sub.add_parser("threshold")
    _common(th, "graph")
    group = th.add_mutually_exclusive_group()
    group.add_argument("--alpha", help="exponent a in p = n^-a")
    group.add_argument("--regime", choices=["constant", "below-connectivity"])
    sub.add_parser("gadget").add_argument("--k4", action="store_true", default=None)

    con = subparsers(sub.add_parser("construct"), "kind")
    for kind in ("rpartite", "copy-deletion", "cloud", "thundercloud", "greedy"):
        sp = con.add_parser(kind)
        _common(sp, "n", "p", "seed")
        sp.add_argument("--gamma")
        sp.add_argument("--graph-out", dest="graph_out")
        sp.add_argument("--include-layout", dest="include_layout", action="store_true", default=None)
        if kind != "copy-deletion" and kind != "greedy":
            _common(sp, "trials")
            sp.add_argument("--s", type=int)
            sp.add_argument("--eps")
        if kind == "rpartite":
            sp.add_argument("--r", type=int)
        if kind == "copy-deletion":
            sp.add_argument("--pattern")
        if kind == "thundercloud":
            sp.add_argument("--host", help="host partition file, or 'demo'")
        if kind == "greedy":
            sp.add_argument("--k", type=int)
            sp.add_argument("--omega", type=int)

    cp = sub.add_parser("color-pipeline")
    _common(cp, "graph", "n", "p", "seed")
    cp.add_argument("--bipartite", action="store_true", default=None, help="keep only edges between the two halves")
    cp.add_argument("--k", type=int)
    cp.add_argument("--d")
    cp.add_argument("--mode", choices=["c5", "long"])
    cp.add_argument("--partition", choices=["random", "halves"])
    cp.add_argument("--cn-threshold", dest="cn_threshold", type=int)

    mc = subparsers(sub.add_parser("mc"), "kind")
    lem = mc.add_parser("lemma22", help="exact probe of the event inequality over random finite spaces")
    _common(lem, "seed")
    lem.add_argument("--budget", type=int)
    lem.add_argument("--max-outcomes", dest="max_outcomes", type=int)
    lem.add_argument("--max-events", dest="max_events", type=int)
    var = mc.add_parser("variance")
    _common(var, "seed", "trials")
    var.add_argument("--ns", type=lambda s: [int(t) for t in s.split(",")], help="comma separated sizes")
    var.add_argument("--eps")
    var.add_argument("--k", type=int)
    var.add_argument("--m", type=int)
    var.add_argument("--csv-out", dest="csv_out")
    tail = mc.add_parser("copytail")
    _common(tail, "n", "p", "seed", "trials")
    tail.add_argument("--pattern")

    ver = subparsers(sub.add_parser("verify"), "kind")
    ver.add_parser("host").add_argument("--host")
    vc = ver.add_parser("certificate")
    _common(vc, "graph")
    vc.add_argument("--cert", help="certificate or report JSON")
    vc.add_argument("--pattern")
    ve = ver.add_parser("expansion")
    _common(ve, "graph", "seed", "trials")
    ve.add_argument("--eps")
    ve.add_argument("--mode", choices=["exact", "sampled"])

    bt = sub.add_parser("batch")
    bt.add_argument("directory")
    bt.add_argument("--jobs", type=int, default=1)
    return parser


_GLOBAL = {"out", "config", "deterministic", "command", "kind", "directory", "jobs"}


def config_from_args(ns: argparse.Namespace) -> ExperimentConfig:
    name = ns.command if getattr(ns, "kind", None) is None else f"{ns.command} {ns.kind}"
    params = {k: v for k, v in vars(ns).items() if k not in _GLOBAL and v is not None}
    if ns.command == "threshold":
        alpha, regime = params.pop("alpha", None), params.pop("regime", None)
        if alpha is not None or regime is not None:
            params["regime"] = alpha if alpha is not None else regime
    return ExperimentConfig(name, params, ns.out)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "batch":
        code, text = batch(ns.directory, ns.jobs, ns.deterministic)
        if ns.out:
            Path(ns.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return code
    if ns.config:
        try:
            config = ExperimentConfig.from_json(Path(ns.config).read_text(encoding="utf-8"))
        except (OSError, UsageError, json.JSONDecodeError) as exc:
            print(f"lab: error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        if ns.out:
            config.output = ns.out
    elif ns.command is None or (ns.command in ("construct", "mc", "verify") and ns.kind is None):
        parser.print_usage(sys.stderr)
        print("lab: error: missing subcommand", file=sys.stderr)
        return EXIT_ERROR
    else:
        config = config_from_args(ns)
    code, report = run(config, ns.deterministic)
    if code == EXIT_ERROR:
        print(f"lab: error: {report['error']}", file=sys.stderr)
    text = dump_report(report)
    if config.output:
        Path(config.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
