import argparse
import logging
import sys
import time
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Optional

import numpy as np

from cribbing_mac_regions import __version__
from cribbing_mac_regions.discrete_region import (
    ChannelForm,
    check_remark1,
    parse_channel_spec,
    random_channel,
    random_factorization,
    search_region,
)
from cribbing_mac_regions.errors import (
    CapacityError,
    FormError,
    IndexSubsetError,
    InfeasibleSplitError,
    InternalConsistencyError,
    RateRegionError,
    SingularCovarianceError,
    SpecDocumentError,
)
from cribbing_mac_regions.gaussian_oracle import (
    build_scheme_covariance,
    oracle_joint_sum_rate,
    oracle_sum_rate,
    random_draws,
    verify_lemma1,
    verify_markov_structure,
    verify_orthogonality,
)
from cribbing_mac_regions.gaussian_scheme import (
    GaussianMacConfig,
    PowerSplit,
    check_nesting,
    cleaning_gain,
    derive_coefficients,
    normalize_split,
    optimize_sum_rate,
    scenario_sweep,
    sum_rate,
)
from cribbing_mac_regions.misc import FileResource, RuntimeSettings, SweepProgress
from cribbing_mac_regions.region_geometry import emit_region_json, frontier_csv
from cribbing_mac_regions.report_data_model import (
    CheckRecord,
    CheckReport,
    CheckSummary,
    GaussianSumRateReport,
    RunManifest,
    SplitModel,
    dominance_record,
    identity_record,
)

__all__ = [
    "EXIT_OK",
    "EXIT_CHECK_FAILED",
    "EXIT_INFEASIBLE",
    "EXIT_USAGE",
    "EXIT_DATA",
    "EXIT_IO",
    "main",
]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INFEASIBLE = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_IO = 74

SUM_RATE_TOLERANCE = 1e-9
JOINT_BOUND_TOLERANCE = 1e-9

_LOGGER_NAME = "cribbing_mac_regions"
_log = logging.getLogger(_LOGGER_NAME)
_handler: Optional[logging.Handler] = None

_CHECK_ORDER = (
    "orthogonality",
    "lemma1",
    "markov",
    "closed-form-vs-oracle",
    "joint-bound-dominance",
    "remark1",
)


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    """Reports bad flags by raising, so that ``main`` owns the exit status."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


def _real(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not np.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _nonnegative(text: str) -> float:
    value = _real(text)
    if value < 0.0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text!r}")
    return value


def _positive(text: str) -> float:
    value = _real(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return value


def _fraction(text: str) -> float:
    value = _real(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text!r}")
    return value


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text!r}")
    return value


def _positive_count(text: str) -> int:
    value = _count(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text!r}")
    return value


def _add_channel_flags(parser: argparse.ArgumentParser, *, required: bool):
    defaults = GaussianMacConfig.reference_default()
    group = parser.add_argument_group("channel")
    for name in ("p1", "p2", "q0", "q1", "q2"):
        group.add_argument(
            f"--{name}",
            type=_nonnegative,
            required=required,
            default=None if required else getattr(defaults, name),
        )
    group.add_argument("--n", type=_positive, required=required, default=None if required else defaults.n)


def _channel_from_args(args: argparse.Namespace) -> GaussianMacConfig:
    return GaussianMacConfig(p1=args.p1, p2=args.p2, q0=args.q0, q1=args.q1, q2=args.q2, n=args.n)


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="cribbing_mac_regions",
        description="Rate regions of the state-dependent MAC with cribbing encoders.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = commands.add_parser("gaussian-sum-rate", help="Sum-rate of one split, or of the optimized split.")
    _add_channel_flags(p, required=True)
    split = p.add_argument_group("split", "Give all four to evaluate a split; omit all four to optimize.")
    for name in ("eta1", "eta2", "alpha1", "alpha2"):
        split.add_argument(f"--{name}", type=_fraction, default=None)
    p.add_argument("--out", default=None, help="Also write the JSON report to this file.")
    p.set_defaults(handler=_cmd_gaussian_sum_rate)

    p = commands.add_parser("scenarios", help="Frontiers of the five comparison scenarios and their nesting.")
    _add_channel_flags(p, required=False)
    p.add_argument("--out", required=True, help="CSV file receiving all frontiers.")
    p.set_defaults(handler=_cmd_scenarios)

    p = commands.add_parser("verify", help="Property sweeps of the Gaussian scheme and the discrete identities.")
    p.add_argument("--draws", type=_count, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--perturb-gamma",
        type=_real,
        default=0.0,
        help="Add this amount to gamma0 before building the covariance (negative control).",
    )
    p.add_argument("--out", default=None, help="Also write the full reports, one JSON line per check.")
    p.set_defaults(handler=_cmd_verify)

    p = commands.add_parser("discrete-region", help="Searched inner bound of a finite-alphabet channel.")
    p.add_argument("--spec", required=True, help="Channel-spec JSON document.")
    p.add_argument("--budget", type=_positive_count, default=5000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--aux-sizes", type=_positive_count, nargs=3, metavar=("U", "V1", "V2"), default=None)
    p.add_argument("--out", required=True, help="CSV file receiving the frontier.")
    p.set_defaults(handler=_cmd_discrete_region)
    return parser


def _configure_logging(level: int):
    global _handler
    logger = logging.getLogger(_LOGGER_NAME)
    if _handler is not None:
        logger.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(_handler)
    logger.setLevel(level)
    logger.propagate = False


def _say(line: str):
    print(line, file=sys.stderr)


def _require_directory(out: FileResource):
    if not out.path.parent.is_dir():
        raise FileNotFoundError(f"The output directory {str(out.path.parent)!r} does not exist.")
    if out.was_present:
        _log.info("Overwriting %s.", out.path)


def _write_manifest(
    out: FileResource,
    args: argparse.Namespace,
    started: float,
    seed: Optional[int] = None,
):
    parameters: dict[str, Any] = {
        k: v for k, v in vars(args).items() if k not in ("handler", "command", "verbose")
    }
    manifest = RunManifest(
        command=args.command,
        parameters=parameters,
        seed=seed,
        tool_version=__version__,
        duration_seconds=time.perf_counter() - started,
        outputs=[str(out.path)],
    )
    out.sibling(".manifest.json").write_text(manifest.model_dump_json(indent=2) + "\n")


def _cmd_gaussian_sum_rate(args: argparse.Namespace, settings: RuntimeSettings) -> int:
    started = time.perf_counter()
    values = [args.eta1, args.eta2, args.alpha1, args.alpha2]
    given = [v is not None for v in values]
    if any(given) and not all(given):
        raise UsageError("gaussian-sum-rate: give all of --eta1 --eta2 --alpha1 --alpha2, or none of them")
    out = FileResource(args.out)
    if out.is_specified:
        _require_directory(out)
    cfg = _channel_from_args(args)
    optimized = not any(given)
    if optimized:
        split, _ = optimize_sum_rate(cfg)
    else:
        split = normalize_split(cfg, PowerSplit(*values))
    closed = sum_rate(cfg, split)
    sc = build_scheme_covariance(cfg, split)
    oracle = oracle_sum_rate(sc)
    delta = abs(closed - oracle)
    report = GaussianSumRateReport(
        split=SplitModel(eta1=split.eta1, eta2=split.eta2, alpha1=split.alpha1, alpha2=split.alpha2),
        optimized=optimized,
        sum_rate_bits=closed,
        oracle_sum_rate_bits=oracle,
        joint_sum_rate_bits=oracle_joint_sum_rate(sc),
        delta=delta,
    )
    text = report.model_dump_json()
    print(text)
    _say(f"sum-rate: {closed:.6f} bits (oracle {oracle:.6f}, delta {delta:.3e})")
    if out.is_specified:
        out.write_text(text + "\n")
        _write_manifest(out, args, started)
    return EXIT_OK if delta < SUM_RATE_TOLERANCE else EXIT_CHECK_FAILED


def _nesting_report(checks) -> CheckReport:
    records = [
        CheckRecord(
            check=f"{c.inner.tag} <= {c.outer.tag}",
            lhs=c.inner_sum,
            rhs=c.outer_sum,
            delta=c.outer_sum - c.inner_sum,
            passed=c.holds,
        )
        for c in checks
    ]
    return CheckReport(name="nesting", records=records)


def _cmd_scenarios(args: argparse.Namespace, settings: RuntimeSettings) -> int:
    started = time.perf_counter()
    out = FileResource(args.out)
    _require_directory(out)
    cfg = _channel_from_args(args)
    sweep = scenario_sweep(cfg)
    out.write_text(frontier_csv((r.scenario.tag, r.region.sample_frontier()) for r in sweep))
    report = _nesting_report(check_nesting(sweep))
    print(report.to_json())
    for r in sweep:
        _say(f"{r.scenario.tag:>24}: sum-rate {r.sum_bound:.6f} bits")
    _say(f"{'cleaning gain':>24}: {cleaning_gain(cfg):.6f} bits")
    for record in report.failures():
        _say(f"nesting violated: {record.check}")
    _write_manifest(out, args, started)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _singular_record(check: str, exc: SingularCovarianceError) -> CheckRecord:
    return CheckRecord(check=f"{check}: {exc}", lhs=0.0, rhs=0.0, delta=0.0, passed=False)


def _prefixed(prefix: str, report: CheckReport) -> list[CheckRecord]:
    return [r.model_copy(update={"check": f"{prefix} {r.check}"}) for r in report.records]


def _gaussian_draw_records(
    index: int,
    cfg: GaussianMacConfig,
    split: PowerSplit,
    perturb_gamma: float,
) -> dict[str, list[CheckRecord]]:
    prefix = f"draw[{index}]"
    split = normalize_split(cfg, split)
    coefficients = derive_coefficients(cfg, split)
    if perturb_gamma != 0.0:
        coefficients = coefficients.perturbed(perturb_gamma, "gamma0")
    sc = build_scheme_covariance(cfg, split, coefficients=coefficients)
    results = dict[str, list[CheckRecord]]()
    results["orthogonality"] = _prefixed(prefix, verify_orthogonality(sc))
    for name, verify in (("lemma1", verify_lemma1), ("markov", verify_markov_structure)):
        try:
            results[name] = _prefixed(prefix, verify(sc))
        except SingularCovarianceError as exc:
            results[name] = [_singular_record(prefix, exc)]
    try:
        closed = sum_rate(cfg, split)
        results["closed-form-vs-oracle"] = [
            identity_record(f"{prefix} sum-rate", closed, oracle_sum_rate(sc), SUM_RATE_TOLERANCE)
        ]
        results["joint-bound-dominance"] = [
            dominance_record(f"{prefix} joint >= sum-rate", oracle_joint_sum_rate(sc), closed, JOINT_BOUND_TOLERANCE)
        ]
    except SingularCovarianceError as exc:
        results["closed-form-vs-oracle"] = [_singular_record(prefix, exc)]
        results["joint-bound-dominance"] = [_singular_record(prefix, exc)]
    return results


def _run_sweep(
    tasks: Sequence[Callable[[], dict[str, list[CheckRecord]]]],
    settings: RuntimeSettings,
) -> dict[str, list[CheckRecord]]:
    merged = {name: list[CheckRecord]() for name in _CHECK_ORDER}
    progress = SweepProgress(len(tasks), _log.info, unit="draws")
    with ThreadPoolExecutor(max_workers=settings.worker_count) as pool:
        for done, results in enumerate(pool.map(lambda task: task(), tasks), start=1):
            for name, records in results.items():
                merged[name].extend(records)
            progress(done)
    return merged


def _cmd_verify(args: argparse.Namespace, settings: RuntimeSettings) -> int:
    started = time.perf_counter()
    out = FileResource(args.out)
    if out.is_specified:
        _require_directory(out)
    if args.draws == 0:
        _log.warning("No draws requested; every check passes vacuously.")
    tasks = list[Callable[[], dict[str, list[CheckRecord]]]]()
    for k, (cfg, split) in enumerate(random_draws(args.draws, args.seed)):
        tasks.append(lambda k=k, cfg=cfg, split=split: _gaussian_draw_records(k, cfg, split, args.perturb_gamma))
    # the discrete identity gets its own stream so the Gaussian draws do not depend on it
    rng = np.random.default_rng((args.seed, 1))
    for k in range(args.draws):
        spec = random_channel(rng, ChannelForm.T1)
        aux = random_factorization(spec, rng)
        tasks.append(lambda k=k, spec=spec, aux=aux: {"remark1": _prefixed(f"joint[{k}]", check_remark1(spec, aux))})
    merged = _run_sweep(tasks, settings)
    reports = [CheckReport(name=name, records=merged[name]) for name in _CHECK_ORDER]
    for report in reports:
        summary = CheckSummary.of(report)
        print(summary.model_dump_json(by_alias=True))
        status = "pass" if summary.passed else "FAIL"
        _say(
            f"{summary.check:>22}: {status} ({summary.records} records, {summary.failures} failed, "
            f"worst delta {summary.worst_delta:.3e})"
        )
        for record in report.failures()[:5]:
            _log.info("%s failed: lhs %.6f, rhs %.6f", record.check, record.lhs, record.rhs)
    if out.is_specified:
        out.write_text("".join(r.to_json() + "\n" for r in reports))
        _write_manifest(out, args, started, seed=args.seed)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def _cmd_discrete_region(args: argparse.Namespace, settings: RuntimeSettings) -> int:
    started = time.perf_counter()
    out = FileResource(args.out)
    _require_directory(out)
    spec = parse_channel_spec(FileResource(args.spec).read_text())
    aux_sizes = tuple(args.aux_sizes) if args.aux_sizes else None
    region = search_region(spec, args.budget, args.seed, aux_sizes=aux_sizes, print_func=_log.info)
    out.write_text(frontier_csv([(f"discrete-{spec.form.value}", region.frontier)]))
    print(emit_region_json(region))
    _say(f"R1 max {region.r1_max:.6f}, R2 max {region.r2_max:.6f}, sum max {region.sum_max:.6f} bits")
    _write_manifest(out, args, started, seed=args.seed)
    return EXIT_OK


def _exit_code(exc: BaseException) -> int:
    match exc:
        case UsageError() | IndexSubsetError():
            return EXIT_USAGE
        case SpecDocumentError() | FormError():
            return EXIT_DATA
        case InfeasibleSplitError() | CapacityError():
            return EXIT_INFEASIBLE
        case SingularCovarianceError() | InternalConsistencyError():
            return EXIT_CHECK_FAILED
        case OSError():
            return EXIT_IO
        case _:
            return EXIT_CHECK_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Runs one command and returns its exit status.

    Exit statuses: 0 success, 1 failed check, 2 infeasible input, 64 usage error, 65 malformed data, 74 I/O error.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _say(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:
        # --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    try:
        settings = RuntimeSettings.from_env()
    except ValueError as exc:
        _configure_logging(logging.WARNING)
        _say(f"error: {exc}")
        return EXIT_USAGE
    _configure_logging(logging.DEBUG if args.verbose else getattr(logging, settings.log_level))
    _log.debug("Running %s with %d worker threads.", args.command, settings.worker_count)
    try:
        return args.handler(args, settings)
    except (UsageError, RateRegionError, OSError) as exc:
        _say(f"error: {exc}")
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
