"""BearingBox CLI -- the `bbx` command.

Usage:
    bbx run --scenario case4 --estimator bearing-box-mav,bearing-only --seed 0
    bbx run --scenario-file my_scenario.yaml --out out/
    bbx replay --detections det.csv --poses poses.csv --estimator bearing-box --out out/
    bbx observability --scenario case4 --order 2 --out verdicts.jsonl
    bbx scenarios                 List built-in scenarios
    bbx estimators                List estimator plugins

Exit status: 0 success, 2 usage or configuration error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from core.config import build_scenario, format_validation_error, load_env, load_scenario_file, parse_noise_overrides
from core.errors import ConfigError, DetectionLogError
from core.models.scenarios import RunConfig, Scenario

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def setup_logging(level: str) -> None:
    """Configure logging for the application. Logs go to stderr."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )


def _split_names(value: str | None) -> list[str] | None:
    if value is None:
        return None
    return [name.strip() for name in value.split(",") if name.strip()]


def _scenario_from_args(args: argparse.Namespace) -> Scenario:
    if getattr(args, "scenario_file", None):
        return load_scenario_file(args.scenario_file)
    from simulator.catalog import get_scenario

    load_env()
    try:
        return get_scenario(args.scenario)
    except KeyError as e:
        raise ConfigError(str(e.args[0])) from e


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_run(args: argparse.Namespace) -> int:
    from core.data.store import ResultStore
    from simulator.engine import SimulationEngine, export_logs

    try:
        cfg = RunConfig(
            scenario=args.scenario,
            scenario_file=args.scenario_file,
            estimators=_split_names(args.estimator),
            out_dir=args.out,
            seed=args.seed,
            dt=args.dt,
            duration=args.duration,
            noise_overrides=parse_noise_overrides(args.noise or []),
            export_detections=args.export_detections,
        )
    except ValidationError as e:
        raise ConfigError(format_validation_error(e, "arguments")) from e

    scenario = build_scenario(cfg)
    run = SimulationEngine().run(scenario)

    store = ResultStore(cfg.out_dir)
    for trace in run.traces.values():
        store.write_trace_csv(trace)
    store.write_json_list("summary.json", run.summaries)
    if cfg.export_detections:
        if scenario.detection.mode != "detection":
            logger.warning(
                "Noise mode '%s' perturbs measurements after detection; "
                "replaying the exported log will not match this run", scenario.detection.mode,
            )
        export_logs(run, cfg.out_dir)

    print(f"{scenario.name} (seed {scenario.seed}, {run.frames} frames) -> {cfg.out_dir}")
    for s in run.summaries:
        nide = "n/a" if s.nide is None else f"{s.nide:.4f}"
        nees = "n/a" if s.mean_nees is None else f"{s.mean_nees:.3f}"
        print(f"  {s.estimator:18s} NIDE {nide:>8s}  mean NEES {nees:>8s}  "
              f"RMSE ({s.rmse_x:.3f}, {s.rmse_y:.3f}, {s.rmse_z:.3f})")
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    from box3d.detection_log import read_detection_log, read_pose_log
    from core.data.store import ResultStore
    from core.models.states import FilterInit, NoiseParams
    from core.registry import default_registry
    from simulator.engine import replay

    registry = default_registry()
    if not registry.has(args.estimator):
        raise ConfigError(f"No estimator named '{args.estimator}'. Available: {registry.names()}")

    noise, init = NoiseParams(), FilterInit()
    if args.scenario_file:
        scenario = load_scenario_file(args.scenario_file)
        noise, init = scenario.noise, scenario.init

    detections = read_detection_log(Path(args.detections))
    poses = read_pose_log(Path(args.poses))
    est = registry.create(args.estimator, noise)
    trace = replay(
        detections, poses, est, init,
        with_attitude=registry.requires_attitude(args.estimator),
        label=Path(args.detections).stem,
    )
    path = ResultStore(Path(args.out)).write_trace_csv(trace)
    print(f"{args.estimator}: {len(trace)} frames, {len(detections)} detections -> {path}")
    return EXIT_OK


def cmd_observability(args: argparse.Namespace) -> int:
    from core.data.store import ResultStore
    from observability.conditions import sliding_window_verdicts
    from simulator.engine import observation_samples

    scenario = _scenario_from_args(args)
    if args.order < 1:
        raise ConfigError(f"--order must be >= 1, got {args.order}")
    attitude_rows = scenario.target_is_mav and not args.no_attitude
    samples = observation_samples(scenario)
    verdicts = sliding_window_verdicts(
        samples,
        n=args.order,
        window=args.window,
        stride=args.stride,
        spacing=args.spacing,
        attitude_rows=attitude_rows,
        scenario=scenario.name,
        g=scenario.noise.g,
    )
    out = Path(args.out)
    ResultStore(out.parent).write_jsonl(out.name, verdicts)
    observable = sum(v.observable for v in verdicts)
    print(f"{scenario.name}: {observable}/{len(verdicts)} windows observable "
          f"(n={args.order}, attitude rows {'on' if attitude_rows else 'off'}) -> {out}")
    return EXIT_OK


def cmd_scenarios(args: argparse.Namespace) -> int:
    from simulator.catalog import get_scenario, scenario_names

    print()
    for name in scenario_names():
        sc = get_scenario(name)
        kind = "multicopter" if sc.target_is_mav else "object"
        print(f"  {name:20s} {kind:12s} {sc.description}")
    print()
    return EXIT_OK


def cmd_estimators(args: argparse.Namespace) -> int:
    from cli.scanner import discover_estimators

    print()
    for p in discover_estimators():
        attitude = " [needs attitude]" if p.requires_attitude else ""
        print(f"  {p.name:18s} {p.display_name} ({p.state_dim} states){attitude}")
        print(f"  {'':18s} {p.description}")
    print()
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_scenario_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", type=str, help="Built-in scenario name (see `bbx scenarios`)")
    source.add_argument("--scenario-file", type=Path, help="Scenario YAML file")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser."""
    parser = argparse.ArgumentParser(
        prog="bbx",
        description="BearingBox -- target motion estimation from 3D bounding boxes",
    )
    parser.add_argument(
        "--log-level",
        type=str,
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging verbosity (logs go to stderr)",
    )

    sub = parser.add_subparsers(dest="command")

    # run
    run_parser = sub.add_parser("run", help="Run a scenario and write traces + summary")
    _add_scenario_source(run_parser)
    run_parser.add_argument("--estimator", type=str, default=None,
                            help="Comma-separated estimator names (default: the scenario's)")
    run_parser.add_argument("--seed", type=int, default=None, help="Random seed (fallback: BBX_SEED)")
    run_parser.add_argument("--dt", type=float, default=None, help="Frame period override (s)")
    run_parser.add_argument("--duration", type=float, default=None, help="Duration override (s)")
    run_parser.add_argument("--noise", type=str, nargs="*", default=None, metavar="KEY=VALUE",
                            help="Noise overrides, e.g. sigma_h=0.05")
    run_parser.add_argument("--out", type=Path, default=Path("out"), help="Output directory")
    run_parser.add_argument("--export-detections", action="store_true",
                            help="Also write detections.csv and poses.csv for replay")

    # replay
    replay_parser = sub.add_parser("replay", help="Run an estimator over recorded detections")
    replay_parser.add_argument("--detections", type=str, required=True, help="Detection log CSV")
    replay_parser.add_argument("--poses", type=str, required=True, help="Camera pose log CSV")
    replay_parser.add_argument("--estimator", type=str, required=True, help="Estimator name")
    replay_parser.add_argument("--scenario-file", type=Path, default=None,
                               help="Scenario YAML supplying noise and init settings")
    replay_parser.add_argument("--out", type=str, required=True, help="Output directory")

    # observability
    obs_parser = sub.add_parser("observability", help="Rank verdicts over sliding windows")
    _add_scenario_source(obs_parser)
    obs_parser.add_argument("--order", type=int, default=2, help="Target polynomial order n")
    obs_parser.add_argument("--window", type=int, default=10, help="Observations per window")
    obs_parser.add_argument("--stride", type=int, default=25, help="Window step, in observations")
    obs_parser.add_argument("--spacing", type=int, default=5, help="Frames between observations")
    obs_parser.add_argument("--no-attitude", action="store_true", help="Drop the attitude rows")
    obs_parser.add_argument("--out", type=str, required=True, help="Output JSON-lines file")

    sub.add_parser("scenarios", help="List built-in scenarios")
    sub.add_parser("estimators", help="List estimator plugins")

    return parser


COMMANDS = {
    "run": cmd_run,
    "replay": cmd_replay,
    "observability": cmd_observability,
    "scenarios": cmd_scenarios,
    "estimators": cmd_estimators,
}


def main(argv: list[str] | None = None) -> int:
    """CLI entrypoint. Returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_CONFIG

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    setup_logging(args.log_level)
    handler = COMMANDS[args.command]
    try:
        return handler(args)
    except (ConfigError, DetectionLogError) as e:
        print(f"bbx: error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as e:
        logger.debug("Command %s failed", args.command, exc_info=True)
        print(f"bbx: error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
