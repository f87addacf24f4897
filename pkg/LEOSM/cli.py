"""
Batch command line: leosm {sweep, compare, complexity-table, se-table, runtime-table, validate}
"""

import os
import sys
import argparse
import logging

from .config import ComparisonSuite, parse_config
from .exceptions import LEOSMError
from .montecarlo import run_sweep
from .report import (DEFAULT_SETS, complexity_table, parse_sets, runtime_table, se_table,
                     write_outputs)
from .utils import SimulationLog, default_output_directory, makedirs, release_logs, worker_count
from .verification import AwgnOracleCheck, default_detector_checks
from ._version import __version__

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_CHECK_FAILED = 3


def _sets_text(sets):
    return ",".join(f"{nt}x{m}" for nt, m in sets)


def build_parser():
    parser = argparse.ArgumentParser(prog="leosm",
                                     description="Link-level Monte Carlo simulator for LEO satellite "
                                                 "spatial modulation and space shift keying")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (("sweep", "BER sweep of one configuration"),
                       ("compare", "BER sweeps of a comparison suite, joined in one CSV")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, help="configuration document")
        p.add_argument("--out", default=None,
                       help="output directory (default: $LEOSM_OUTPUT_DIR or ~/Documents/LEOSM_Reports)")
        p.add_argument("--workers", type=int, default=None, help="worker processes")
        p.add_argument("--no-progress", action="store_true", help="hide progress bars")

    p = sub.add_parser("complexity-table", help="closed-form ML detector operation counts")
    p.add_argument("--nr", type=int, default=2)
    p.add_argument("--sets", default=_sets_text(DEFAULT_SETS), help="comma list of NtxM pairs")
    p.add_argument("--out", default=None, help="write complexity.csv here instead of stdout")

    p = sub.add_parser("se-table", help="spectral efficiency in bits per channel use")
    p.add_argument("--sets", default=_sets_text(DEFAULT_SETS), help="comma list of NtxM pairs")
    p.add_argument("--out", default=None, help="write se.csv here instead of stdout")

    p = sub.add_parser("runtime-table", help="measured ML detection time per scheme")
    p.add_argument("--nr", type=int, default=2)
    p.add_argument("--sets", default=_sets_text(DEFAULT_SETS[:3]), help="comma list of NtxM pairs")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write runtime.csv here instead of stdout")

    p = sub.add_parser("validate", help="AWGN and exhaustive-search oracle checks")
    p.add_argument("--trials", type=int, default=100000, help="trials per AWGN point")
    p.add_argument("--instances", type=int, default=1000, help="random detector instances per scheme")
    p.add_argument("--workers", type=int, default=None)

    return parser


def _read_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def _table(frame, out, name):
    if out is None:
        sys.stdout.write(frame.to_csv(index=False))
        return
    makedirs(out)
    path = os.path.join(out, name)
    frame.to_csv(path, index=False)
    log.info(f"Table written to {path}")


def _sweep(args):
    cfg = _read_config(args.config)
    if isinstance(cfg, ComparisonSuite):
        raise LEOSMError(f"{args.config} describes a suite; use `leosm compare`")

    workers = worker_count(args.workers)
    result = run_sweep(cfg, workers=workers, progress=not args.no_progress)
    stem = os.path.splitext(os.path.basename(args.config))[0]
    write_outputs(cfg, result, args.out, stem, f"sweep --config {args.config}")

    return EXIT_OK


def _compare(args):
    suite = _read_config(args.config)
    if not isinstance(suite, ComparisonSuite):
        raise LEOSMError(f"{args.config} holds no suite.* keys; use `leosm sweep`")

    workers = worker_count(args.workers)
    log.info(f"Suite {suite.name}: {len(suite.members)} members")
    results = [run_sweep(member, workers=workers, progress=not args.no_progress) for member in suite.members]
    stem = os.path.splitext(os.path.basename(args.config))[0]
    write_outputs(suite, results, args.out, stem, f"compare --config {args.config}")

    return EXIT_OK


def _validate(args):
    workers = worker_count(args.workers)
    awgn = AwgnOracleCheck(trials=args.trials, workers=workers).run()
    log.info("AWGN oracle:\n" + awgn.to_string(index=False))

    mismatches = {check.scheme.label: check.run() for check in default_detector_checks(args.instances)}
    for label, count in mismatches.items():
        log.info(f"Detector oracle {label}: {count} mismatches out of {args.instances}")

    if not awgn["passed"].all() or any(mismatches.values()):
        log.error("Validation failed")
        return EXIT_CHECK_FAILED

    log.info("Validation passed")
    return EXIT_OK


def run_command(argv=None):
    """
    Parse the flags, run the subcommand and return the exit status.
    """
    args = build_parser().parse_args(argv)
    if getattr(args, "out", None) is None and args.command in ("sweep", "compare"):
        args.out = default_output_directory()

    # tables printed to stdout leave nothing on disk, logs included
    log_root = getattr(args, "out", None)
    if args.command == "validate":
        log_root = default_output_directory()
    if log_root:
        try:
            SimulationLog(os.path.join(log_root, "logs")).create()
        except OSError as e:
            release_logs().warning(f"file logging disabled: {e}")
    else:
        release_logs()

    try:
        if args.command == "sweep":
            return _sweep(args)
        if args.command == "compare":
            return _compare(args)
        if args.command == "complexity-table":
            _table(complexity_table(args.nr, parse_sets(args.sets)), args.out, "complexity.csv")
            return EXIT_OK
        if args.command == "se-table":
            _table(se_table(parse_sets(args.sets)), args.out, "se.csv")
            return EXIT_OK
        if args.command == "runtime-table":
            _table(runtime_table(args.nr, parse_sets(args.sets), args.trials, args.seed), args.out, "runtime.csv")
            return EXIT_OK
        return _validate(args)
    except LEOSMError as e:
        log.error(str(e))
        return EXIT_INVALID
    except OSError as e:
        log.error(f"I/O failure: {e}")
        return EXIT_IO


def main():
    sys.exit(run_command())
