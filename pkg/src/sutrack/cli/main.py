"""CLI entry point for sutrack.

Invoked as::

    sutrack [OPTIONS] COMMAND [ARGS]...

or, during development::

    python -m sutrack.cli.main

Exit codes: 0 success, 1 usage or configuration error, 2 input-format error,
3 numerical degeneracy.
"""
from __future__ import annotations

import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import TYPE_CHECKING, Any, TextIO, cast

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from sutrack.schema.errors import EXIT_USAGE, SuTrackError

if TYPE_CHECKING:
    from sutrack.association.tracker import TrackerStats
    from sutrack.experiments.ablation import AblationKind
    from sutrack.metrics.report import EvalReport
    from sutrack.schema.config import SimParams, TrackerConfig

console = Console()
error_console = Console(stderr=True, style="bold red")

logger = logging.getLogger("sutrack.cli")

_MOTION_CHOICES = ("ukf", "kf")
_ASSOC_CHOICES = ("fishiou", "iou", "giou", "diou")


# ---------------------------------------------------------------------------
# Root group
# ---------------------------------------------------------------------------


class SuTrackGroup(click.Group):
    """Click group mapping failures onto the documented exit codes."""

    def main(self, *args: Any, **kwargs: Any) -> Any:  # type: ignore[override]
        kwargs["standalone_mode"] = False
        try:
            result = super().main(*args, **kwargs)
        except click.UsageError as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as exc:
            exc.show()
            sys.exit(exc.exit_code)
        except click.Abort:
            error_console.print("Aborted.")
            sys.exit(EXIT_USAGE)
        except SuTrackError as exc:
            error_console.print(f"Error: {exc}", markup=False, soft_wrap=True)
            sys.exit(exc.exit_code)
        sys.exit(result if isinstance(result, int) else 0)


def _configure_logging(verbose: bool) -> None:
    handler = RichHandler(
        console=Console(stderr=True), show_time=False, show_path=False, markup=False
    )
    root = logging.getLogger("sutrack")
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


@click.group(cls=SuTrackGroup)
@click.version_option(package_name="sutrack")
@click.option("--verbose", "-v", is_flag=True, help="Log debug detail to standard error.")
def cli(verbose: bool) -> None:
    """Multi-fish tracker: UKF motion, FishIoU association, cascade matching."""
    _configure_logging(verbose)


_config_option = click.option(
    "--config",
    "-c",
    "config_path",
    default=None,
    envvar="SUT_CONFIG",
    help="Path to a sutrack YAML config file (env: SUT_CONFIG).",
)


def _load_configs(config_path: str | None) -> tuple[TrackerConfig, SimParams]:
    from sutrack.config.loader import load_config

    return load_config(config_path)


def _override(config: TrackerConfig, **updates: Any) -> TrackerConfig:
    from sutrack.schema.config import TrackerConfig

    updates = {key: value for key, value in updates.items() if value is not None}
    if not updates:
        return config
    return TrackerConfig.model_validate({**config.model_dump(), **updates})


# ---------------------------------------------------------------------------
# version
# ---------------------------------------------------------------------------


@cli.command(name="version")
def version_command() -> None:
    """Show detailed version information."""
    from sutrack import __version__

    console.print(f"[bold]sutrack[/bold] v{__version__}")
    console.print(f"Python {sys.version}")


# ---------------------------------------------------------------------------
# init
# ---------------------------------------------------------------------------


@cli.command(name="init")
@click.option(
    "--directory",
    "-d",
    default=".",
    show_default=True,
    help="Directory in which to create the config file.",
)
def init_command(directory: str) -> None:
    """Write a sutrack.yaml holding every default into DIRECTORY."""
    from sutrack.config.defaults import DEFAULT_CONFIG
    from sutrack.config.loader import dump_config

    target_dir = Path(directory).resolve()
    config_path = target_dir / "sutrack.yaml"
    if config_path.exists():
        console.print(f"[yellow]Config already exists at {config_path}. Skipping.[/yellow]")
        return
    try:
        target_dir.mkdir(parents=True, exist_ok=True)
        config_path.write_text(dump_config(DEFAULT_CONFIG), encoding="utf-8")
    except OSError as exc:
        error_console.print(f"Failed to create config: {exc}", markup=False)
        raise SystemExit(EXIT_USAGE) from exc
    console.print(f"[green]Created sutrack config at {config_path}[/green]")


# ---------------------------------------------------------------------------
# config
# ---------------------------------------------------------------------------


@cli.command(name="config")
@click.option("--show", is_flag=True, help="Print the effective configuration.")
@click.option("--validate", is_flag=True, help="Validate the config file and report.")
@_config_option
def config_command(show: bool, validate: bool, config_path: str | None) -> None:
    """Inspect the effective configuration."""
    from sutrack.config.loader import ConfigLoader, dump_config

    loader = ConfigLoader()
    cfg = loader.load_yaml(config_path) if config_path else loader.load_auto()
    if validate:
        console.print("[green]Configuration is valid.[/green]")
    if show or not validate:
        click.echo(dump_config(cfg), nl=False)


# ---------------------------------------------------------------------------
# track
# ---------------------------------------------------------------------------


def _track_file(
    detections_path: Path,
    out_path: Path,
    embeddings_path: Path | None,
    config: TrackerConfig,
) -> TrackerStats:
    from sutrack.association.tracker import track_sequence
    from sutrack.io.bundle import load_bundle
    from sutrack.io.mot import write_results

    bundle = load_bundle(detections_path, embeddings_path=embeddings_path, fps=config.fps)
    outputs, stats = track_sequence(bundle.detections, config, last_frame=bundle.frame_count)
    write_results(outputs, out_path)
    return stats


def _sidecar(directory: Path | None, source: Path) -> Path | None:
    """Embedding file named like *source* inside *directory*, if there is one."""
    if directory is None:
        return None
    candidate = directory / source.name
    return candidate if candidate.is_file() else None


def _print_stats(rows: list[tuple[str, TrackerStats]]) -> None:
    table = Table(title="Tracking summary", header_style="bold cyan")
    table.add_column("sequence")
    for column in ("frames", "born", "emitted", "removed"):
        table.add_column(column, justify="right")
    for name, stats in rows:
        table.add_row(
            name, str(stats.frames), str(stats.born), str(stats.emitted), str(stats.removed)
        )
    console.print(table)


@cli.command(name="track")
@click.argument("detections", type=click.Path(path_type=Path))
@click.option(
    "--out",
    "-o",
    "out_path",
    required=True,
    type=click.Path(path_type=Path),
    help="Result file (or directory when DETECTIONS is a directory).",
)
@click.option(
    "--embeddings",
    "-e",
    "embeddings_path",
    default=None,
    type=click.Path(path_type=Path),
    help="Embedding sidecar (or directory of sidecars named like the detection files).",
)
@click.option("--motion", type=click.Choice(_MOTION_CHOICES), default=None, help="Motion model.")
@click.option(
    "--assoc", type=click.Choice(_ASSOC_CHOICES), default=None, help="Association metric."
)
@click.option(
    "--jobs",
    "-j",
    default=1,
    show_default=True,
    type=click.IntRange(min=1),
    help="Parallel workers for a directory of sequences.",
)
@_config_option
def track_command(
    detections: Path,
    out_path: Path,
    embeddings_path: Path | None,
    motion: str | None,
    assoc: str | None,
    jobs: int,
    config_path: str | None,
) -> None:
    """Track DETECTIONS (a MOT detection file or a directory of them)."""
    tracker_config, _ = _load_configs(config_path)
    tracker_config = _override(tracker_config, motion_model=motion, association_metric=assoc)

    if not detections.is_dir():
        stats = _track_file(detections, out_path, embeddings_path, tracker_config)
        _print_stats([(detections.stem, stats)])
        return

    sources = sorted(detections.glob("*.txt"))
    out_path.mkdir(parents=True, exist_ok=True)
    jobs_args = [
        (source, out_path / source.name, _sidecar(embeddings_path, source), tracker_config)
        for source in sources
    ]
    if jobs == 1:
        results = [_track_file(*args) for args in jobs_args]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_track_file, *args) for args in jobs_args]
            results = [future.result() for future in futures]
    logger.info("Tracked %d sequences with %d workers", len(results), jobs)
    _print_stats([(source.stem, stats) for source, stats in zip(sources, results)])


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def _print_report(report: EvalReport) -> None:
    from sutrack.metrics.report import REPORT_COLUMNS

    row = report.as_row()
    table = Table(title="Evaluation", header_style="bold cyan")
    for column in REPORT_COLUMNS:
        table.add_column(column, justify="right")
    table.add_row(*(_cell(row[c]) for c in REPORT_COLUMNS))
    console.print(table)
    click.echo(",".join(REPORT_COLUMNS))
    click.echo(",".join(_cell(row[c]) for c in REPORT_COLUMNS))


def _cell(value: float | int) -> str:
    return str(value) if isinstance(value, int) else f"{value:.6f}"


@cli.command(name="eval")
@click.argument("gt_path", type=click.Path(path_type=Path))
@click.argument("pred_path", type=click.Path(path_type=Path))
@click.option(
    "--iou-threshold",
    default=0.5,
    show_default=True,
    type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True),
    help="IoU needed for a prediction to match a ground-truth box.",
)
def eval_command(gt_path: Path, pred_path: Path, iou_threshold: float) -> None:
    """Score PRED_PATH (MOT results) against GT_PATH (MOT ground truth)."""
    from sutrack.io.mot import read_gt, read_results
    from sutrack.metrics.report import evaluate

    report = evaluate(read_gt(gt_path), read_results(pred_path), iou_threshold)
    _print_report(report)


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


@cli.command(name="simulate")
@click.option("--gt-out", required=True, type=click.Path(path_type=Path), help="Ground truth.")
@click.option(
    "--dets-out", required=True, type=click.Path(path_type=Path), help="Detections."
)
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Override sim.seed.")
@_config_option
def simulate_command(
    gt_out: Path, dets_out: Path, seed: int | None, config_path: str | None
) -> None:
    """Write a synthetic ground truth and its noisy detections."""
    from sutrack.io.mot import write_detections, write_gt
    from sutrack.sim.corruption import corrupt
    from sutrack.sim.kinematics import kinematic_stats
    from sutrack.sim.simulator import simulate

    _, sim_params = _load_configs(config_path)
    if seed is not None:
        sim_params = sim_params.model_copy(update={"seed": seed})
    ground_truth = simulate(sim_params)
    detections = corrupt(ground_truth, sim_params)
    write_gt(ground_truth, gt_out)
    write_detections(detections, dets_out)

    summary = kinematic_stats(ground_truth).summary()
    table = Table(title="Kinematics", header_style="bold cyan")
    table.add_column("statistic")
    table.add_column("value", justify="right")
    for name, value in summary.items():
        table.add_row(name, f"{value:.6f}")
    console.print(table)


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------


def _exact(value: float | None) -> str:
    return "" if value is None else repr(float(value))


@cli.command(name="stats")
@click.argument("gt_path", type=click.Path(path_type=Path))
@click.option(
    "--out", "-o", "out_file", type=click.File("w"), default="-", help="CSV destination."
)
@click.option("--bins", default=16, show_default=True, type=click.IntRange(min=1))
def stats_command(gt_path: Path, out_file: TextIO, bins: int) -> None:
    """Per-frame speed and angular-velocity series of GT_PATH as CSV."""
    from sutrack.io.mot import read_gt
    from sutrack.sim.kinematics import kinematic_stats

    stats = kinematic_stats(read_gt(gt_path), direction_bins=bins)
    lines = ["frame,mean_speed,mean_abs_angular_velocity"]
    lines += [f"{frame},{_exact(speed)},{_exact(turn)}" for frame, speed, turn in stats.rows()]
    if int(stats.direction_counts.sum()) > 0:
        lines += ["", "direction_bin_start,direction_bin_end,count"]
        edges = stats.direction_edges
        lines += [
            f"{_exact(edges[k])},{_exact(edges[k + 1])},{int(count)}"
            for k, count in enumerate(stats.direction_counts)
        ]
    out_file.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# ablate
# ---------------------------------------------------------------------------


@cli.command(name="ablate")
@click.option(
    "--kind",
    type=click.Choice(("motion", "association")),
    default="motion",
    show_default=True,
    help="Which component to vary.",
)
@click.option(
    "--seed", "seeds", multiple=True, type=click.IntRange(min=0), help="Seed (repeatable)."
)
@click.option(
    "--out",
    "-o",
    "out_path",
    type=click.Path(path_type=Path),
    default=None,
    help="Optional CSV with one row per variant and seed.",
)
@_config_option
def ablate_command(
    kind: str, seeds: tuple[int, ...], out_path: Path | None, config_path: str | None
) -> None:
    """Compare motion models or association metrics on simulated sequences."""
    from sutrack.experiments.ablation import run_ablation, summarize

    tracker_config, sim_params = _load_configs(config_path)
    rows = run_ablation(
        cast("AblationKind", kind), sim_params, tracker_config, seeds=seeds or (0, 1, 2, 3, 4)
    )
    if out_path is not None:
        header = "kind,variant,seed,mota,idf1,idsw,frag,prediction_rmse"
        body = [
            f"{r.kind},{r.variant},{r.seed},{r.mota:.6f},{r.idf1:.6f},{r.idsw},{r.frag},"
            f"{r.prediction_rmse:.6f}"
            for r in rows
        ]
        out_path.write_text("\n".join([header, *body]) + "\n", encoding="utf-8")

    table = Table(title=f"{kind} ablation (mean over seeds)", header_style="bold cyan")
    table.add_column("variant")
    columns = ("mota", "idf1", "idsw", "frag", "prediction_rmse")
    for column in columns:
        table.add_column(column, justify="right")
    for variant, means in summarize(rows).items():
        table.add_row(variant, *(f"{means[c]:.4f}" for c in columns))
    console.print(table)


if __name__ == "__main__":
    cli()
