"""
CSV and JSON writers for harness results.

CSV files start with '#' comment lines: the config echo as sorted-key JSON,
then any extra header lines. Floats are written with repr so they round-trip.
"""
import csv
import io
import json
import logging
import math
import os
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO, Union

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def _json_default(value: Any):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if hasattr(value, "tolist"):
        return value.tolist()
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def _sanitize(value: Any) -> Any:
    """JSON has no inf/nan: map them to strings."""
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {k: _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    return value


def dumps_json(data: Any) -> str:
    plain = json.loads(json.dumps(data, default=_json_default))
    return json.dumps(_sanitize(plain), sort_keys=True, indent=2)


def write_csv_stream(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]],
                     config_echo: Optional[Dict[str, Any]] = None,
                     comments: Optional[List[str]] = None) -> int:
    if config_echo is not None:
        stream.write(f"# config: {json.dumps(config_echo, sort_keys=True)}\n")
    for comment in comments or []:
        stream.write(f"# {comment}\n")

    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([format_value(v) for v in row])
        count += 1
    return count


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]],
               config_echo: Optional[Dict[str, Any]] = None,
               comments: Optional[List[str]] = None) -> str:
    buffer = io.StringIO()
    write_csv_stream(buffer, header, rows, config_echo, comments)
    return buffer.getvalue()


def write_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]],
              config_echo: Optional[Dict[str, Any]] = None,
              comments: Optional[List[str]] = None) -> Path:
    path = Path(path)
    try:
        os.makedirs(path.parent, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            count = write_csv_stream(f, header, rows, config_echo, comments)
        logger.info(f"Wrote {count} rows to {path}")
        return path
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise


def with_config_echo(data: Dict[str, Any], config_echo: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Copy of a JSON payload carrying the resolved config under "config"."""
    if config_echo is None or "config" in data:
        return data
    return {**data, "config": config_echo}


def write_json(path: PathLike, data: Any) -> Path:
    path = Path(path)
    try:
        os.makedirs(path.parent, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps_json(data))
            f.write("\n")
        logger.info(f"Wrote {path}")
        return path
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise


def read_csv_rows(path: PathLike) -> List[List[str]]:
    """Rows of a written CSV with comment lines and header stripped."""
    with open(path, "r", encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    rows = list(csv.reader(lines))
    return rows[1:]
