"""Command-line runner: ``shearlab run --config cfg.yaml`` and ``shearlab list``.

Exit status is 0 when every declared tolerance passes, 1 when a check
fails (the first failing check is named on stderr) and 2 when the config
is invalid, in which case nothing is written.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .config import EXPERIMENTS, ExperimentConfig, load_config
from .errors import ConfigInvalid, ExperimentFailed, InvalidParameters
from .experiments import CATALOG, Result, run_experiment, validate_tolerances
from .plotting import plot_table

__all__ = ["RunReport", "run", "list_experiments", "main"]

log = logging.getLogger("shearlab")


@dataclass
class RunReport:
    experiment: str
    claim: str
    config: dict[str, Any]
    checks: list[dict[str, Any]]
    passed: bool
    files: list[str]

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, sort_keys=True) + "\n"

    @property
    def first_failure(self) -> str | None:
        return next((c["name"] for c in self.checks if not c["passed"]), None)


def list_experiments() -> list[str]:
    return [f"{name:<18} {CATALOG[name].claim}" for name in EXPERIMENTS]


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, (int, str)):
        return str(v)
    try:
        return format(float(v), ".17g")
    except (TypeError, ValueError):
        return str(v)


def _write_outputs(result: Result, out: Path) -> list[str]:
    files = []
    for table in result.tables:
        name = f"results-{table.name}.csv"
        with open(out / name, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(table.header)
            w.writerows([_fmt(v) for v in row] for row in table.rows)
        files.append(name)
        plot = f"plot-{table.name}.svg"
        plot_table(out / plot, table.header, table.rows, table.x, table.ys, table.group, table.scale, table.name)
        files.append(plot)
    return files


def run(cfg: ExperimentConfig, out_dir: str | Path | None = None, threads: int = 1) -> RunReport:
    """Run one experiment and write its CSV tables, SVG plots and report.json.

    Wall-clock time goes to a separate timing.json so that report.json is
    byte-identical across reruns.
    """
    validate_tolerances(cfg)
    t0 = time.perf_counter()
    try:
        result = run_experiment(cfg, threads)
    except InvalidParameters as exc:
        raise ConfigInvalid(str(exc)) from None
    elapsed = time.perf_counter() - t0
    out = Path(out_dir or cfg.output_dir or f"shearlab-out/{cfg.experiment}")
    out.mkdir(parents=True, exist_ok=True)
    files = _write_outputs(result, out)
    checks = [
        {"name": c.name, "value": float(c.value), "limit": float(c.limit), "op": c.op, "passed": bool(c.passed)}
        for c in result.checks
    ]
    report = RunReport(
        experiment=cfg.experiment,
        claim=CATALOG[cfg.experiment].claim,
        config=cfg.model_dump(mode="json"),
        checks=checks,
        passed=all(c["passed"] for c in checks),
        files=sorted(files + ["report.json"]),
    )
    (out / "report.json").write_text(report.to_json())
    (out / "timing.json").write_text(json.dumps({"wall_clock_seconds": elapsed, "threads": threads}) + "\n")
    return report


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shearlab", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run one experiment from a config file")
    r.add_argument("--config", required=True, help="YAML or JSON experiment config")
    r.add_argument("--out", default=None, help="output directory (overrides output_dir)")
    r.add_argument("--threads", type=int, default=1, help="worker threads for independent cases")
    r.add_argument("--seed", type=int, default=None, help="overrides the config seed")
    sub.add_parser("list", help="list the experiment catalog")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "list":
        print("\n".join(list_experiments()))
        return 0
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg = cfg.model_copy(update={"seed": args.seed})
        if args.threads < 1:
            raise ConfigInvalid("--threads must be >= 1")
        report = run(cfg, args.out, args.threads)
    except ConfigInvalid as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    for c in report.checks:
        log.info("%s %s: %.3e %s %.3e", "PASS" if c["passed"] else "FAIL", c["name"], c["value"], c["op"], c["limit"])
    if not report.passed:
        err = ExperimentFailed(report.first_failure, "tolerance not met")
        print(f"experiment failed: {err}", file=sys.stderr)
        return 1
    print(f"{report.experiment}: all {len(report.checks)} checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
