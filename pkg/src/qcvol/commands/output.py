import json
import sys
from contextlib import contextmanager
from typing import NamedTuple, TextIO

import pandas as pd

from qcvol import __version__
from qcvol.models import OutputFormat, RunConfig

FLOAT_FORMAT = "%.17g"


class Report(NamedTuple):
    """Tabular result of a command plus scalar values that do not fit the rows."""

    rows: pd.DataFrame
    summary: dict[str, float | int | str] = {}


def _scalar(value):
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


@contextmanager
def _open_output(cfg: RunConfig):
    if cfg.output_path is None:
        yield sys.stdout
        return

    with open(cfg.output_path, "w", encoding="utf-8", newline="") as f:
        yield f


def render_csv(report: Report, stream: TextIO) -> None:
    report.rows.to_csv(stream, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    for key, value in report.summary.items():
        stream.write(f"# {key},{_scalar(value)}\n")


def render_json(cfg: RunConfig, report: Report, stream: TextIO) -> None:
    document = {
        "meta": {
            "seed": cfg.seed,
            "n": cfg.n,
            "version": __version__,
            "command": ["qcvol", *cfg.argv],
        },
        "summary": report.summary,
        "rows": report.rows.to_dict(orient="records"),
    }
    json.dump(document, stream, indent=2)
    stream.write("\n")


def write_report(cfg: RunConfig, report: Report) -> None:
    with _open_output(cfg) as stream:
        if cfg.output_format is OutputFormat.json:
            render_json(cfg, report, stream)
        else:
            render_csv(report, stream)
