"""Command-line entry point: `python -m src.cli {mine,bench,describe}`."""

import sys
from pathlib import Path

import click
import structlog

from src.bench import (
    PRESETS,
    BenchSpec,
    ConsistencyError,
    iter_bench,
    preset_specs,
    write_report,
)
from src.config import (
    APP_VERSION,
    DATA_DIR,
    DEFAULT_EXECUTOR,
    DEFAULT_PARTITIONS,
    DEFAULT_WORKERS,
    LOG_LEVEL,
    OUTPUT_DIR,
    configure_logging,
)
from src.counting import TRI_MATRIX_MODES
from src.data.registry import find_dataset
from src.dataset import SupportThreshold, describe, load_horizontal
from src.pipelines import (
    MiningConfig,
    Variant,
    mine,
    write_frequent_items,
    write_itemsets,
)
from src.workers import EXECUTORS

log = structlog.get_logger()

VARIANTS = [str(v) for v in Variant]


class MinSupType(click.ParamType):
    name = "min_sup"

    def convert(self, value, param, ctx):
        if isinstance(value, SupportThreshold):
            return value
        try:
            return SupportThreshold.parse(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


MIN_SUP = MinSupType()


def _io_failure(exc):
    click.echo(f"Error: {exc}", err=True)
    sys.exit(1)


@click.group()
@click.version_option(APP_VERSION)
@click.option(
    "--log-level",
    default=LOG_LEVEL,
    show_default=True,
    type=click.Choice(["debug", "info", "warning", "error"], case_sensitive=False),
)
def main(log_level):
    """Parallel Eclat frequent-itemset miner."""
    configure_logging(log_level)


@main.command("mine")
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--variant", type=click.Choice(VARIANTS), default="v5", show_default=True)
@click.option("--min-sup", type=MIN_SUP, required=True)
@click.option(
    "--partitions",
    type=click.IntRange(min=1),
    default=DEFAULT_PARTITIONS,
    show_default=True,
)
@click.option(
    "--workers", type=click.IntRange(min=1), default=DEFAULT_WORKERS, show_default=True
)
@click.option(
    "--tri-matrix",
    type=click.Choice(TRI_MATRIX_MODES),
    default="auto",
    show_default=True,
)
@click.option(
    "--executor",
    type=click.Choice(sorted(EXECUTORS)),
    default=DEFAULT_EXECUTOR,
    show_default=True,
)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@click.option("--items-output", type=click.Path(dir_okay=False), default=None)
def mine_command(
    input_path,
    variant,
    min_sup,
    partitions,
    workers,
    tri_matrix,
    executor,
    output,
    items_output,
):
    """Mine the frequent itemsets of one transaction file."""
    cfg = MiningConfig(
        variant,
        min_sup,
        tri_matrix_mode=tri_matrix,
        p=partitions,
        workers=workers,
        executor=executor,
    )
    if output is None:
        output = OUTPUT_DIR / f"{Path(input_path).stem}-{variant}.txt"
    try:
        db = load_horizontal(input_path)
    except OSError as exc:
        _io_failure(exc)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc

    try:
        result = mine(db, cfg)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc

    try:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        write_itemsets(result, db.item_names, output)
        if items_output:
            write_frequent_items(result, db.item_names, items_output)
    except OSError as exc:
        _io_failure(exc)
    click.echo(f"variant={variant} {result.summary()} output={output}")


@main.command("bench")
@click.option("--dataset", "datasets", multiple=True, required=True)
@click.option("--variant", "variants", multiple=True, type=click.Choice(VARIANTS))
@click.option("--min-sup", "min_sups", multiple=True, type=MIN_SUP)
@click.option("--workers", "workers", multiple=True, type=click.IntRange(min=1))
@click.option("--replicate", "replications", multiple=True, type=click.IntRange(min=1))
@click.option(
    "--partitions",
    type=click.IntRange(min=1),
    default=DEFAULT_PARTITIONS,
    show_default=True,
)
@click.option(
    "--tri-matrix",
    type=click.Choice(TRI_MATRIX_MODES),
    default=None,
    help="Defaults to each registry dataset's setting, auto for files.",
)
@click.option(
    "--executor",
    type=click.Choice(sorted(EXECUTORS)),
    default=DEFAULT_EXECUTOR,
    show_default=True,
)
@click.option(
    "--output-dir",
    type=click.Path(file_okay=False),
    envvar="ECLAT_OUTPUT_DIR",
    default=str(OUTPUT_DIR),
    show_default=True,
)
@click.option("--data-dir", type=click.Path(file_okay=False), default=str(DATA_DIR))
@click.option("--report", default="bench.csv", show_default=True)
@click.option("--repeat", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--warmup/--no-warmup", default=False, show_default=True)
@click.option("--preset", type=click.Choice(PRESETS), default=None)
def bench_command(
    datasets,
    variants,
    min_sups,
    workers,
    replications,
    partitions,
    tri_matrix,
    executor,
    output_dir,
    data_dir,
    report,
    repeat,
    warmup,
    preset,
):
    """Run a benchmark sweep and write one CSV row per run."""
    if not min_sups and preset is None:
        raise click.UsageError("--min-sup is required unless a --preset is given")
    try:
        spec = BenchSpec(
            datasets=datasets,
            variants=variants or tuple(VARIANTS[:5]),
            min_sups=min_sups or (SupportThreshold(1.0),),
            workers=workers or (DEFAULT_WORKERS,),
            replications=replications or (1,),
            p=partitions,
            tri_matrix=tri_matrix,
            output_dir=Path(output_dir),
            repeat=repeat,
            warmup=warmup,
            executor=executor,
            data_dir=Path(data_dir),
        )
        specs = preset_specs(preset, spec) if preset else [spec]
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc

    rows = []
    report_path = spec.output_dir / report
    try:
        for s in specs:
            for row in iter_bench(s):
                rows.append(row)
    except (ConsistencyError, OSError, ValueError) as exc:
        if rows:
            write_report(rows, report_path)
            log.warning(
                "partial_report_written", path=str(report_path), rows=len(rows)
            )
        if isinstance(exc, OSError):
            _io_failure(exc)
        raise click.ClickException(str(exc)) from exc
    try:
        path = write_report(rows, report_path)
    except OSError as exc:
        _io_failure(exc)
    click.echo(f"rows={len(rows)} report={path}")


@main.command("describe")
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--dataset", "name", default=None, help="Registry name to compare with.")
def describe_command(input_path, name):
    """Print transactions, items and average width of a transaction file."""
    try:
        stats = describe(load_horizontal(input_path))
    except OSError as exc:
        _io_failure(exc)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(
        f"transactions={stats.transactions} items={stats.items} "
        f"avg_width={stats.avg_width:.2f}"
    )
    if name:
        try:
            ds = find_dataset(name)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
        same = (stats.transactions, stats.items) == (ds["transactions"], ds["items"])
        click.echo(
            f"registry {ds['name']}: transactions={ds['transactions']} "
            f"items={ds['items']} avg_width={ds['avg_width']} "
            f"{'match' if same else 'MISMATCH'}"
        )


if __name__ == "__main__":
    main()
