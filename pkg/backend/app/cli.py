"""
Command-line entry point.

    sponge-lab verify --r 1 --c 1
    sponge-lab coset-census --r 1 --c 2 --format csv --output census.csv
    sponge-lab tradeoff --config configs/tradeoff_r10.json

Exit status: 0 ok, 1 failed invariant, 2 usage error, 3 parameter error.
"""
import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

import pandas as pd
from pydantic import ValidationError

from app.core.config import settings
from app.core.errors import LabError, ParameterError, UnsupportedRegimeError
from app.core.logging import get_logger, run_context
from app.core.monitoring import dump_metrics, experiment_failures_total
from app.schemas.experiment import ExperimentConfig
from app.services.experiments import EXPERIMENTS, ExperimentResult, run_experiment

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_PARAMETER = 3

INT_FLAGS = ("r", "c", "n", "m", "t", "k", "T", "trials", "instances", "challenges",
             "eps_samples", "seed", "workers", "sr_bits", "search_budget")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sponge-lab",
        description="Sponge pre-computation indifferentiability lab",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("experiment", choices=sorted(EXPERIMENTS), help="experiment to run")
    parser.add_argument("--config", type=Path, help="JSON file with experiment settings; flags override it")
    for name in INT_FLAGS:
        parser.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)
    parser.add_argument("--budgets", type=int, nargs="+", help="query budgets for the trapdoor sweep")
    parser.add_argument("--q-grid", dest="q_grid", type=int, nargs="+", help="query counts for the truncation curve")
    parser.add_argument("--distinguisher", help="distinguisher name (indiff, remove-sr)")
    parser.add_argument("--variant", choices=["strong", "weak"])
    parser.add_argument("--mode", choices=["exact", "monte-carlo"])
    parser.add_argument("--output", help="report path, relative to REPORTS_DIR; stdout when omitted")
    parser.add_argument("--format", choices=["json", "csv"])
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """
    Merge the config file and explicit flags into a validated ExperimentConfig.

    Raises:
        ValidationError: on any invalid field
    """
    values: Dict[str, Any] = {}
    if args.config is not None:
        values.update(json.loads(args.config.read_text()))
    flags = {key: value for key, value in vars(args).items() if value is not None and key != "config"}
    values.update(flags)
    return ExperimentConfig(**values)


def _header() -> Dict[str, Any]:
    return {"generated_at": datetime.now(timezone.utc).isoformat(), "version": settings.VERSION}


def write_report(config: ExperimentConfig, result: ExperimentResult, stream: TextIO) -> None:
    """Header line with the timestamp, then the deterministic body."""
    header = _header()
    if config.format == "csv":
        stream.write(f"# generated_at={header['generated_at']} version={header['version']}\n")
        frame = result.frame
        if frame is None:
            frame = _flatten(result.body)
        frame.to_csv(stream, index=False, lineterminator="\n")
        return
    stream.write(json.dumps(header) + "\n")
    body = {
        "experiment": config.experiment,
        "passed": result.passed,
        "config": config.model_dump(mode="json"),
        "report": result.body,
    }
    stream.write(json.dumps(body, indent=2, sort_keys=True, default=str) + "\n")


def _flatten(body: Dict[str, Any]) -> pd.DataFrame:
    return pd.json_normalize(body)


def run(config: ExperimentConfig) -> int:
    """Execute one experiment and write its report. Returns the exit status."""
    with run_context(experiment=config.experiment, seed=config.seed):
        result = run_experiment(config)
    if config.output:
        path = Path(settings.REPORTS_DIR) / config.output
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w") as stream:
            write_report(config, result, stream)
        logger.info("Report written", path=str(path))
    else:
        write_report(config, result, sys.stdout)

    if not result.passed:
        experiment_failures_total.labels(experiment=config.experiment).inc()
        logger.error("Invariant failed", experiment=config.experiment)
        return EXIT_INVARIANT
    return EXIT_OK


def _diagnostics(exc: ValidationError) -> List[str]:
    return [f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in exc.errors()]


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
    except ValidationError as exc:
        for line in _diagnostics(exc):
            print(f"usage error: {line}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"usage error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        status = run(config)
    except UnsupportedRegimeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        status = EXIT_USAGE
    except ParameterError as exc:
        logger.error("Parameter error", error=str(exc))
        print(f"parameter error: {exc}", file=sys.stderr)
        status = EXIT_PARAMETER
    except LabError as exc:
        logger.error("Experiment failed", error=str(exc), error_type=type(exc).__name__)
        status = EXIT_INVARIANT
    finally:
        dump_metrics()
    return status


if __name__ == "__main__":
    sys.exit(main())
