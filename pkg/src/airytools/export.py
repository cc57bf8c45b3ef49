import io
import json
import sys
from pathlib import Path
from typing import (
    Optional,
    Sequence
)

import numpy as np

CSV_FORMAT = "%.17g"


def _jsonable(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, np.ndarray):
        return [_jsonable(item) for item in value.tolist()]
    if isinstance(value, np.generic):
        return _jsonable(value.item())
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    return value


def csv_text(columns: Sequence[str], rows: np.ndarray) -> str:
    buffer = io.StringIO()
    np.savetxt(
        buffer,
        np.atleast_2d(np.asarray(rows, dtype=float)),
        fmt=CSV_FORMAT,
        delimiter=",",
        header=",".join(columns),
        comments="",
    )
    return buffer.getvalue()


def json_text(payload) -> str:
    return json.dumps(_jsonable(payload), indent=2) + "\n"


def emit(text: str, out: Optional[Path] = None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def write_csv(columns: Sequence[str], rows: np.ndarray, out: Optional[Path] = None) -> None:
    emit(csv_text(columns, rows), out)


def write_json(payload, out: Optional[Path] = None) -> None:
    emit(json_text(payload), out)
