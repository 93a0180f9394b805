"""Command-line entry point for torsioncert.

Exit status: 0 when every check passed or matched its expectation, 1 when a
verification failed (an M_d row, a published exception list, a replayed
certificate) or an expected exclusion came back inconclusive, 2 on internal
errors.
"""

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import primerange

from torsioncert import __version__
from torsioncert.core.cache_manager import LevelCache
from torsioncert.core.certificate_writer import CertificateWriter
from torsioncert.core.config_manager import RunConfig, load_config
from torsioncert.core.constants import COND3_PUBLISHED, cond3_passes_published
from torsioncert.core.errors import TorsionCertError
from torsioncert.core.logging_config import get_logger, parse_level, setup_logging, task_context
from torsioncert.core.models import (
    ExclusionCertificate,
    ModelKind,
    RunManifest,
    TaskRecord,
    TaskStatus,
    Verdict,
)
from torsioncert.criterion.certify import SearchOptions, exclude_prime, replay_certificate
from torsioncert.curves2.x173 import report_73
from torsioncert.export import (
    ExceptionListGenerator,
    MdTableGenerator,
    ReportExporter,
    X173ReportGenerator,
)
from torsioncert.oesterle.rmatrix import asymptotic_gate, find_Md, verify_md_table
from torsioncert.parsers import CertificateParser, ExpectationsParser
from torsioncert.pointcount.waterhouse import condition3_exceptions

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

MANIFEST_NAME = "manifest.txt"


def _int_list(value: str) -> Tuple[int, ...]:
    try:
        return tuple(int(v) for v in value.split(",") if v.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}") from e


def _emit(content: str, output: Optional[Path]) -> None:
    """Print a report, or write it atomically when an output path was given."""
    if output is None:
        sys.stdout.write(content)
    else:
        ReportExporter.export_text(content, output)


# ======= md-table =======


def cmd_md_table(args: argparse.Namespace, config: RunConfig) -> int:
    rows = verify_md_table(args.d_min, args.d_max, args.ell)
    searched: Dict[int, int] = {}
    if args.search:
        for d, _, _ in rows:
            least = find_Md(d, args.ell)
            if least is not None:
                searched[d] = least
    _emit(MdTableGenerator(rows, searched).generate(), args.output)
    failed = [(d, m) for d, m, passes in rows if not passes]
    for d, m in failed:
        logger.error("M_d table mismatch: d=%s M=%s does not pass mod %s", d, m, args.ell)
    return EXIT_FAILED if failed else EXIT_OK


# ======= pointcount =======


def cmd_pointcount(args: argparse.Namespace, config: RunConfig) -> int:
    exceptions = {
        d: condition3_exceptions(d, args.ell, args.p_max, args.p_min)
        for d in range(args.d_min, args.d_max + 1)
    }
    _emit(ExceptionListGenerator(args.ell, args.p_max, exceptions).generate(), args.output)
    if args.ell != 2:
        return EXIT_OK
    status = EXIT_OK
    for d, failing in exceptions.items():
        if d not in COND3_PUBLISHED and d != 7:
            continue
        low = 5 if d == 7 else COND3_PUBLISHED[d][0]
        for p in primerange(max(low, args.p_min), args.p_max):
            if (p not in failing) != cond3_passes_published(d, int(p)):
                logger.error("d=%s p=%s disagrees with the published exception list", d, p)
                status = EXIT_FAILED
    return status


# ======= x173 / gate =======


def cmd_x173(args: argparse.Namespace, config: RunConfig) -> int:
    report = report_73(args.modulus)
    _emit(X173ReportGenerator(report).generate(), args.output)
    consistent = (
        len(report.parameters) == 24
        and report.sextic_roots_match
        and report.transitive
        and all(n == 73 for n in report.point_counts.values())
    )
    return EXIT_OK if consistent else EXIT_FAILED


def cmd_gate(args: argparse.Namespace, config: RunConfig) -> int:
    passed = asymptotic_gate(args.d)
    print(f"d={args.d} gate={'true' if passed else 'false'}")
    return EXIT_OK


# ======= exclude =======


def _exclude_task(
    p: int,
    d: int,
    model: ModelKind,
    subgroup: Tuple[int, ...],
    options: SearchOptions,
    cache_dir: Optional[Path],
) -> Tuple[int, Optional[ExclusionCertificate], float, str]:
    """Run one prime; every failure is returned, never raised."""
    start = time.monotonic()
    cache = LevelCache(cache_dir) if cache_dir is not None else None
    with task_context(d, p):
        try:
            cert = exclude_prime(p, d, model, subgroup, options, cache)
            return p, cert, time.monotonic() - start, ""
        except Exception as e:  # isolated per prime
            logger.exception("d=%s p=%s failed", d, p)
            return p, None, time.monotonic() - start, f"{type(e).__name__}: {e}"


def _primes(args: argparse.Namespace) -> List[int]:
    if args.primes:
        return sorted(set(args.primes))
    return [int(p) for p in primerange(args.p_min, args.p_max + 1)]


def _run_tasks(
    primes: Sequence[int],
    args: argparse.Namespace,
    config: RunConfig,
    options: SearchOptions,
) -> List[Tuple[int, Optional[ExclusionCertificate], float, str]]:
    model = ModelKind(args.model)
    subgroup = tuple(args.subgroup or ())
    cache_dir = config.cache_dir if config.use_cache else None
    task_args = [(p, args.d, model, subgroup, options, cache_dir) for p in primes]
    if config.jobs <= 1 or len(primes) <= 1:
        return [_exclude_task(*a) for a in task_args]

    results = []
    level = parse_level(config.log_level)
    with ProcessPoolExecutor(
        max_workers=config.jobs,
        initializer=setup_logging,
        initargs=(level, None, level <= logging.DEBUG),
    ) as pool:
        futures = [pool.submit(_exclude_task, *a) for a in task_args]
        for future in as_completed(futures):
            results.append(future.result())
    return sorted(results, key=lambda r: r[0])


def cmd_exclude(args: argparse.Namespace, config: RunConfig) -> int:
    if not 3 <= args.d <= 7:
        logger.error("exclude needs 3 <= d <= 7, got d=%s", args.d)
        return EXIT_ERROR
    expectations = ExpectationsParser.parse_file(args.expectations) if args.expectations else {}
    options = SearchOptions.from_config(config, fast=args.fast)
    primes = _primes(args)
    logger.info("d=%s: %s primes, %s workers", args.d, len(primes), config.jobs)

    manifest = RunManifest(
        version=__version__,
        command="exclude",
        parameters={
            "d": str(args.d),
            "primes": f"{primes[0]}..{primes[-1]}" if primes else "none",
            "model": args.model,
            "subgroup": ",".join(map(str, args.subgroup or ())) or "none",
            "fast": str(args.fast).lower(),
            "t1_budget": str(options.t1_budget),
            "t2_primes": ",".join(map(str, options.t2_primes)),
            "t1_recipe": "factor" if options.factor_recipe else "ann",
        },
    )
    status = EXIT_OK
    for p, cert, seconds, message in _run_tasks(primes, args, config, options):
        if cert is None:
            record = TaskRecord(args.d, p, TaskStatus.ERROR, None, seconds, "", message)
            manifest.tasks.append(record)
            status = EXIT_ERROR
            continue
        path = CertificateWriter.write_certificate(cert, config.output_dir)
        manifest.tasks.append(
            TaskRecord(args.d, p, TaskStatus.OK, cert.verdict, seconds, path.name)
        )
        expected = expectations.get((args.d, p))
        if expected is Verdict.EXCLUDED and cert.verdict is not Verdict.EXCLUDED:
            logger.error("d=%s p=%s expected excluded, got %s", args.d, p, cert.verdict.value)
            if status == EXIT_OK:
                status = EXIT_FAILED

    CertificateWriter.write_manifest(manifest, config.output_dir / MANIFEST_NAME)
    counts = manifest.counts()
    print(" ".join(f"{key}={value}" for key, value in counts.items()))
    return status


# ======= replay =======


def cmd_replay(args: argparse.Namespace, config: RunConfig) -> int:
    status = EXIT_OK
    for path in args.certificates:
        cert = CertificateParser.parse_file(path)
        result = replay_certificate(cert)
        print(f"{path.name}: {'match' if result.matches else 'MISMATCH'}")
        if not result.matches:
            logger.error("%s: %s", path, result.message)
            status = EXIT_FAILED
    return status


# ======= Parser =======


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsioncert",
        description="Exact modular-symbol computations and certificates for prime torsion bounds",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--env-file", type=Path, help=".env file with TORSIONCERT_* settings")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--log-file", type=str, help="also write logs to this file")
    parser.add_argument("--output-dir", type=Path, help="certificate directory")
    parser.add_argument("--cache-dir", type=Path, help="operator cache directory")
    parser.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    parser.add_argument("--jobs", type=int, help="worker processes for per-prime tasks")
    sub = parser.add_subparsers(dest="command", required=True)

    md = sub.add_parser("md-table", help="verify the published M_d table")
    md.add_argument("--d-min", type=int, default=3)
    md.add_argument("--d-max", type=int, default=26)
    md.add_argument("--ell", type=int, default=3)
    md.add_argument("--search", action="store_true", help="also report the least passing M")
    md.add_argument("--output", type=Path)
    md.set_defaults(func=cmd_md_table)

    ex = sub.add_parser("exclude", help="certify primes for the formal-immersion criterion")
    ex.add_argument("--d", type=int, required=True)
    ex.add_argument("--p-min", type=int, default=5)
    ex.add_argument("--p-max", type=int, default=500)
    ex.add_argument("--primes", type=_int_list, help="explicit primes, overrides the range")
    ex.add_argument("--model", choices=[m.value for m in ModelKind], default=ModelKind.X0.value)
    ex.add_argument("--subgroup", type=_int_list, help="generators of H for --model xmu")
    ex.add_argument("--fast", action="store_true", help="use the fast Gamma_H rank check")
    ex.add_argument("--t1-budget", type=int)
    ex.add_argument("--t2-primes", type=_int_list)
    ex.add_argument("--t1-recipe", choices=["ann", "factor"], help="factor enables t1(t)")
    ex.add_argument("--expectations", type=Path, help="file of 'd p verdict' lines")
    ex.set_defaults(func=cmd_exclude)

    pc = sub.add_parser("pointcount", help="list primes failing the point-count condition")
    pc.add_argument("--d-min", type=int, default=3)
    pc.add_argument("--d-max", type=int, default=7)
    pc.add_argument("--ell", type=int, default=2)
    pc.add_argument("--p-min", type=int, default=5)
    pc.add_argument("--p-max", type=int, default=300)
    pc.add_argument("--output", type=Path)
    pc.set_defaults(func=cmd_pointcount)

    x173 = sub.add_parser("x173", help="analyse Y_1(73) over F_64")
    x173.add_argument("--modulus", type=int, default=0, help="defining polynomial of F_64 as bits")
    x173.add_argument("--output", type=Path)
    x173.set_defaults(func=cmd_x173)

    gate = sub.add_parser("gate", help="evaluate the large-d inequality")
    gate.add_argument("--d", type=int, required=True)
    gate.set_defaults(func=cmd_gate)

    replay = sub.add_parser("replay", help="recompute the rank evidence of certificates")
    replay.add_argument("certificates", type=Path, nargs="+")
    replay.set_defaults(func=cmd_replay)
    return parser


def _configure(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.env_file)
    t1_recipe = getattr(args, "t1_recipe", None)
    config = config.with_overrides(
        output_dir=args.output_dir,
        cache_dir=args.cache_dir,
        jobs=max(1, args.jobs) if args.jobs is not None else None,
        log_level="DEBUG" if args.verbose else None,
        t1_budget=getattr(args, "t1_budget", None),
        t2_primes=getattr(args, "t2_primes", None),
        factor_oracle={"factor": "sympy", "ann": ""}.get(t1_recipe or ""),
        use_cache=False if args.no_cache else None,
    )
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, configure logging once and dispatch the subcommand."""
    args = build_parser().parse_args(argv)
    config = _configure(args)
    setup_logging(level=parse_level(config.log_level), log_file=args.log_file, debug=args.verbose)
    logger.debug("Running %s with %s", args.command, config)
    try:
        return int(args.func(args, config))
    except TorsionCertError as e:
        logger.error("%s", e)
        return EXIT_ERROR
    except OSError as e:
        logger.error("I/O failure: %s", e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
