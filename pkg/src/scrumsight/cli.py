"""Command-line entry point: serve, import/export logs, reports, synthetic cohorts."""

from __future__ import annotations

import argparse
import json
import os
import shutil
import sys
from pathlib import Path

from .errors import CorruptLog, InvalidEvent, ScrumsightError
from .events import read_log, replay, write_log
from .metrics import MoodMissingPolicy, cohort_metrics, compute_skill_report
from .reporting import (
    HeatmapMetric,
    build_competence_productivity_scatter,
    build_heatmap,
    build_skills_vs_external,
    heatmap_to_csv,
    heatmap_to_json,
    parse_external_scores,
    scatter_to_csv,
    scatter_to_json,
    skill_report_to_csv,
    skill_report_to_json,
)
from .synthgen import GeneratorConfig, generate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3

DATA_DIR_ENV = "SCRUMSIGHT_DATA_DIR"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="scrumsight",
        description="Scrum activity tracking and data-driven skill assessment.",
        epilog=f"The {DATA_DIR_ENV} environment variable overrides the configured data directory.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--config", required=True, help="service config JSON file")

    imp = sub.add_parser("import", help="validate a log and install it into the data directory")
    imp.add_argument("--log", required=True)
    imp.add_argument("--data-dir", default="./data")

    exp = sub.add_parser("export", help="write the installed log to stdout or a file")
    exp.add_argument("--data-dir", default="./data")
    exp.add_argument("--out")

    report = sub.add_parser("report", help="emit an analysis artifact from a log")
    report.add_argument(
        "kind", choices=["skills", "scatter", "heatmap-collab", "heatmap-mood"]
    )
    report.add_argument("--log", required=True)
    report.add_argument("--format", choices=["csv", "json"], default="csv")
    report.add_argument("--external", help="external-score CSV (participant_id,score)")
    report.add_argument("--out")
    report.add_argument("--top-k", type=int, default=3)
    report.add_argument(
        "--mood-missing",
        choices=[p.value for p in MoodMissingPolicy],
        default=MoodMissingPolicy.COHORT_WORST.value,
    )
    report.add_argument(
        "--all-sprints",
        action="store_true",
        help="divide productivity by all team sprints, not just membership-active ones",
    )

    synth = sub.add_parser("synth", help="generate a synthetic cohort log")
    synth.add_argument("--teams", type=int, default=21)
    synth.add_argument("--members", type=int, default=None)
    synth.add_argument("--sprints", type=int, default=12)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--config", help="generator config JSON (overrides the flags above)")
    synth.add_argument("--out", required=True)

    validate = sub.add_parser("validate", help="replay-check a log and report the first error")
    validate.add_argument("--log", required=True)

    return parser


def _load_log(path: str):
    if not Path(path).exists():
        print(f"no such file: {path}", file=sys.stderr)
        raise SystemExit(EXIT_IO)
    try:
        events = read_log(path)
        return events, replay(events)
    except (CorruptLog, InvalidEvent) as exc:
        print(f"invalid log: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, "utf-8")
    else:
        sys.stdout.write(text)


def cmd_report(args) -> int:
    events, world = _load_log(args.log)
    policy = MoodMissingPolicy(args.mood_missing)
    try:
        metrics = cohort_metrics(world, all_sprints=args.all_sprints)
        if args.kind == "skills":
            report = compute_skill_report(metrics, policy)
            text = skill_report_to_csv(report) if args.format == "csv" else skill_report_to_json(report)
        elif args.kind == "scatter":
            if args.external:
                report = compute_skill_report(metrics, policy)
                scores = parse_external_scores(Path(args.external).read_text("utf-8"))
                series = build_skills_vs_external(report, scores, top_k=args.top_k)
            else:
                series = build_competence_productivity_scatter(metrics)
            text = scatter_to_csv(series) if args.format == "csv" else scatter_to_json(series)
        else:
            metric = (
                HeatmapMetric.COLLABORATORS_PER_TASK
                if args.kind == "heatmap-collab"
                else HeatmapMetric.INTRA_WEEK_MOOD_CHANGE
            )
            matrix = build_heatmap(metric, world, metrics)
            text = heatmap_to_csv(matrix) if args.format == "csv" else heatmap_to_json(matrix)
    except ScrumsightError as exc:
        print(f"cannot build report: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    _emit(text, args.out)
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.config:
        config = GeneratorConfig.from_json(json.loads(Path(args.config).read_text("utf-8")))
    else:
        config = GeneratorConfig(
            teams=args.teams,
            members_per_team=args.members,
            sprints=args.sprints,
            seed=args.seed,
        )
    events = generate(config)
    write_log(args.out, events)
    print(f"wrote {len(events)} events to {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.subcommand == "serve":
            from .service import ServiceConfig, run

            config = ServiceConfig.from_file(args.config)
            if os.environ.get(DATA_DIR_ENV):
                config.data_dir = os.environ[DATA_DIR_ENV]
                config.__post_init__()
            run(config)
            return EXIT_OK

        if args.subcommand == "import":
            events, _ = _load_log(args.log)
            data_dir = Path(os.environ.get(DATA_DIR_ENV) or args.data_dir)
            data_dir.mkdir(parents=True, exist_ok=True)
            shutil.copyfile(args.log, data_dir / "events.jsonl")
            print(f"installed {len(events)} events into {data_dir}")
            return EXIT_OK

        if args.subcommand == "export":
            data_dir = Path(os.environ.get(DATA_DIR_ENV) or args.data_dir)
            log_path = data_dir / "events.jsonl"
            if not log_path.exists():
                print(f"no installed log at {log_path}", file=sys.stderr)
                return EXIT_IO
            events, _ = _load_log(str(log_path))
            text = "".join(
                line + "\n" for line in log_path.read_text("utf-8").splitlines()
            )
            _emit(text, args.out)
            return EXIT_OK

        if args.subcommand == "report":
            return cmd_report(args)

        if args.subcommand == "synth":
            return cmd_synth(args)

        if args.subcommand == "validate":
            _load_log(args.log)
            print("log is valid")
            return EXIT_OK
    except SystemExit as exc:
        return int(exc.code or 0)
    except ScrumsightError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO

    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
