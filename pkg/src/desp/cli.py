"""Command-line front end: ``desp run --model M --replications N --seed S --t-end T``."""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from desp import rng
from desp.errors import (AggregationError, ConfigurationError, DespError, InvariantError,
                         ModelError)
from desp.kernel import SimulationConfig, run
from desp.models import MODELS, make_model
from desp.stats import METRICS

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_IO = 4
EXIT_INTERNAL = 5

FORMATS = ("text", "csv", "json")
CSV_HEADER = ["model", "resource", "metric", "mean", "ci_low", "ci_high",
              "replications", "seed", "note"]

_LABELS = {
    "response_mean": "mean response time",
    "wait_mean": "mean waiting time",
    "served": "mean number of clients served",
    "in_service": "mean number of clients still being served",
    "still_waiting": "mean number of clients still waiting",
}


@dataclass
class RunSpec:
    model: str
    config: SimulationConfig
    params: dict = field(default_factory=dict)
    format: str = "text"
    output: str = "-"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser():
    parser = _Parser(prog="desp", description="Resource-view discrete-event simulation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    r = sub.add_parser("run", help="run replications of a model and print statistics")
    r.add_argument("--model", required=True, choices=sorted(MODELS))
    r.add_argument("--replications", required=True, type=int)
    r.add_argument("--seed", required=True, type=int)
    r.add_argument("--t-start", type=float, default=0.0)
    r.add_argument("--t-end", required=True, type=float)
    r.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    r.add_argument("--format", choices=FORMATS, default="text")
    r.add_argument("--output", default="-", metavar="PATH")
    r.add_argument("--ordered-forks", action="store_true")
    return parser


def parse_args(argv):
    """Parse ``argv`` into a RunSpec. Usage errors exit with status 2;
    configuration problems raise ConfigurationError."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    params = {}
    for item in ns.param:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            parser.error(f"malformed --param {item!r}, expected KEY=VALUE")
        params[key.strip()] = value.strip()
    if ns.ordered_forks:
        params["ordered_forks"] = True
    config = SimulationConfig(tmax=ns.t_end, seed=ns.seed, nreplic=ns.replications,
                              tstart=ns.t_start)
    return RunSpec(ns.model, config, params, ns.format, ns.output)


def _g(x):
    return format(x, ".6g")


def _rows(stats, spec):
    for resource in stats.resources:
        for metric in METRICS:
            s = stats[resource][metric]
            yield {
                "model": spec.model,
                "resource": resource,
                "metric": metric,
                "mean": _g(s.mean),
                "ci_low": _g(s.ci_low),
                "ci_high": _g(s.ci_high),
                "replications": str(stats.n),
                "seed": str(spec.config.seed),
                "note": "" if s.ci_defined else "ci_undefined",
            }


def format_csv(stats, spec):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(_rows(stats, spec))
    return buf.getvalue()


def format_json(stats, spec):
    rows = []
    for row in _rows(stats, spec):
        rows.append({
            "resource": row["resource"],
            "metric": row["metric"],
            "mean": float(row["mean"]),
            "ci_low": float(row["ci_low"]),
            "ci_high": float(row["ci_high"]),
            "note": row["note"],
        })
    doc = {
        "model": spec.model,
        "replications": stats.n,
        "seed": spec.config.seed,
        "t_start": spec.config.tstart,
        "t_end": spec.config.tmax,
        "params": {k: str(v) for k, v in sorted(spec.params.items())},
        "drained_replications": stats.drained_replications,
        "rows": rows,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def format_text(stats, spec):
    out = ["*** SIMULATION STATISTICS ***", ""]
    out.append(f"model {spec.model}, {stats.n} replication(s), seed {spec.config.seed}, "
               f"time [{_g(spec.config.tstart)}, {_g(spec.config.tmax)})")
    if stats.drained_replications:
        out.append(f"replications ended early (empty scheduler): {stats.drained_replications}")
    width = max(len(r) for r in stats.resources)
    for kind, title in (("passive", "*** PASSIVE RESOURCES"), ("active", "*** ACTIVE RESOURCES")):
        names = [r for r in stats.resources if stats.kinds.get(r, "passive") == kind]
        if not names:
            continue
        out.append("")
        out.append(title)
        for name in names:
            for metric in METRICS:
                s = stats[name][metric]
                ci = (f"95% CI [{_g(s.ci_low)}, {_g(s.ci_high)}]" if s.ci_defined
                      else "95% CI undefined (one replication)")
                out.append(f"{name:<{width}}  {_LABELS[metric]:<42} {_g(s.mean):>12}  {ci}")
    return "\n".join(out) + "\n"


_FORMATTERS = {"text": format_text, "csv": format_csv, "json": format_json}


def emit(stats, spec, stdout=None):
    text = _FORMATTERS[spec.format](stats, spec)
    if spec.output in ("-", "", None):
        (stdout or sys.stdout).write(text)
    else:
        with open(spec.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    if os.environ.get("DESP_RNG_FIXTURE_CHECK") == "1":
        problems = rng.check_fixtures()
        if problems:
            for p in problems:
                print(f"desp: RNG fixture mismatch: {p}", file=sys.stderr)
            return EXIT_INTERNAL
    try:
        spec = parse_args(argv)
        model = make_model(spec.model, spec.params)
        stats = run(model, spec.config)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (ConfigurationError, ModelError) as exc:
        print(f"desp: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvariantError, AggregationError) as exc:
        print(f"desp: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except DespError as exc:
        print(f"desp: error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    try:
        emit(stats, spec)
    except OSError as exc:
        print(f"desp: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
