"""
Writes command results as JSON reports or CSV time series.

JSON reports have the top-level keys config, summary, instances and
generated_at; keys are sorted and the file is UTF-8, so two runs with the
same configuration differ only in generated_at.
"""
import json
import sys
from datetime import datetime, timezone
from enum import Enum
from typing import List, Optional

import numpy as np
import pandas as pd

import config
from ..phase_space import PhaseSpaceDescriptor
from .command import CommandResult, OutputFormat, RunConfig


def coordinate_labels(space: PhaseSpaceDescriptor) -> List[str]:
    """Column names (q1.., p1.., x1.., y1..) of a space's coordinates."""
    labels = []
    for prefix, count in (("q", space.n_classical), ("p", space.n_classical),
                          ("x", space.n_quantum), ("y", space.n_quantum)):
        labels += [f"{prefix}{i + 1}" for i in range(count)]
    return labels


def _jsonable(value):
    """Converts numpy scalars, arrays, enums and complex numbers for json."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    return value


def build_report(run_config: RunConfig, result: CommandResult) -> dict:
    return _jsonable({
        "config": run_config.to_record(),
        "summary": result.summary,
        "instances": result.instances,
        "generated_at": datetime.now(timezone.utc).isoformat()
    })


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def render_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(
        index=False,
        sep=config.output.csv_delimiter,
        float_format=config.output.float_format)


def write_result(run_config: RunConfig, result: CommandResult, output: Optional[str] = None) -> None:
    """
    Writes a result in the configured format, to the output path or stdout.
    Results without a table are always written as JSON.
    """
    if run_config.output_format is OutputFormat.CSV and result.frame is not None:
        text = render_csv(result.frame)
    else:
        text = render_json(build_report(run_config, result)) + "\n"

    if output is None:
        sys.stdout.write(text)
        return
    with open(output, "w", encoding="utf-8", newline="") as f:
        f.write(text)


__all__ = [
    "coordinate_labels",
    "build_report",
    "render_json",
    "render_csv",
    "write_result"
]
